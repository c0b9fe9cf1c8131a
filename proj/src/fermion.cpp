#include "jwsym/fermion.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace jwsym {

namespace {

using Cplx = std::complex<double>;

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": " + what);
}

SpinSpecies parse_species(const std::string& tok, std::size_t line_no) {
    if (tok == "up") return SpinSpecies::up;
    if (tok == "down") return SpinSpecies::down;
    parse_fail(line_no, "expected 'up' or 'down', got '" + tok + "'");
}

}  // namespace

SpinSpecies other_species(SpinSpecies s) {
    return s == SpinSpecies::up ? SpinSpecies::down : SpinSpecies::up;
}

const char* species_name(SpinSpecies s) {
    return s == SpinSpecies::up ? "up" : "down";
}

std::uint32_t species_qubit(std::uint32_t site, SpinSpecies spin,
                            std::uint32_t n_sites) {
    if (site >= n_sites) throw std::invalid_argument("site index out of range");
    return spin == SpinSpecies::up ? site : n_sites + site;
}

FermionHamiltonian::FermionHamiltonian(std::uint32_t n_sites)
    : n_sites_(n_sites) {
    if (n_sites == 0) throw std::invalid_argument("n_sites must be positive");
}

void FermionHamiltonian::add_quadratic(const QuadraticTerm& term) {
    if (term.i >= n_sites_ || term.k >= n_sites_)
        throw std::invalid_argument("quadratic term: site index out of range");
    if (term.i <= term.k)
        throw std::invalid_argument(
            "quadratic term must be stored with i > k (the Hermitian pair is implied)");
    if (!std::isfinite(term.coeff))
        throw std::invalid_argument("quadratic term: non-finite coefficient");
    for (const auto& t : quadratic_)
        if (t.i == term.i && t.k == term.k && t.spin == term.spin)
            throw std::invalid_argument("duplicate quadratic term key");
    quadratic_.push_back(term);
}

void FermionHamiltonian::add_quartic(const QuarticTerm& term) {
    for (std::uint32_t idx : {term.i, term.j, term.k, term.l})
        if (idx >= n_sites_)
            throw std::invalid_argument("quartic term: site index out of range");
    if (!std::isfinite(term.coeff))
        throw std::invalid_argument("quartic term: non-finite coefficient");
    if (term.kind == QuarticKind::same_spin) {
        if (term.i <= term.j || term.k <= term.l)
            throw std::invalid_argument(
                "same-spin quartic requires i > j and k > l (repeated ladder indices annihilate)");
        if (std::make_pair(term.i, term.j) < std::make_pair(term.k, term.l))
            throw std::invalid_argument(
                "same-spin quartic requires (i,j) >= (k,l) lexicographically");
    } else {
        if (std::make_pair(term.i, term.k) < std::make_pair(term.j, term.l))
            throw std::invalid_argument(
                "mixed-spin quartic requires (i,k) >= (j,l) lexicographically");
    }
    for (const auto& t : quartic_)
        if (t.kind == term.kind && t.i == term.i && t.j == term.j &&
            t.k == term.k && t.l == term.l && t.sigma == term.sigma)
            throw std::invalid_argument("duplicate quartic term key");
    quartic_.push_back(term);
}

std::array<std::pair<Cplx, PauliString>, 2> jw_ladder(std::uint32_t site,
                                                      SpinSpecies spin,
                                                      bool dagger,
                                                      std::uint32_t n_sites) {
    std::uint32_t n_qubits = 2 * n_sites;
    std::uint32_t q = species_qubit(site, spin, n_sites);
    std::uint32_t string_start = spin == SpinSpecies::up ? 0 : n_sites;
    std::vector<PauliString::AxisEntry> zx, zy;
    for (std::uint32_t j = string_start; j < q; ++j) {
        zx.emplace_back(j, PauliAxis::Z);
        zy.emplace_back(j, PauliAxis::Z);
    }
    zx.emplace_back(q, PauliAxis::X);
    zy.emplace_back(q, PauliAxis::Y);
    Cplx y_coeff = dagger ? Cplx(0.0, -0.5) : Cplx(0.0, 0.5);
    return {{{Cplx(0.5, 0.0), PauliString(n_qubits, std::move(zx))},
             {y_coeff, PauliString(n_qubits, std::move(zy))}}};
}

WeightedPauliSum jw_quadratic(const QuadraticTerm& term, std::uint32_t n_sites) {
    if (term.i <= term.k)
        throw std::invalid_argument("quadratic term must have i > k");
    std::uint32_t n_qubits = 2 * n_sites;
    std::uint32_t qk = species_qubit(term.k, term.spin, n_sites);
    std::uint32_t qi = species_qubit(term.i, term.spin, n_sites);
    std::vector<PauliString::AxisEntry> xs, ys;
    xs.emplace_back(qk, PauliAxis::X);
    ys.emplace_back(qk, PauliAxis::Y);
    for (std::uint32_t j = qk + 1; j < qi; ++j) {
        xs.emplace_back(j, PauliAxis::Z);
        ys.emplace_back(j, PauliAxis::Z);
    }
    xs.emplace_back(qi, PauliAxis::X);
    ys.emplace_back(qi, PauliAxis::Y);
    WeightedPauliSum sum(n_qubits);
    sum.add(0.5 * term.coeff, PauliString(n_qubits, std::move(xs)));
    sum.add(0.5 * term.coeff, PauliString(n_qubits, std::move(ys)));
    return sum;
}

WeightedPauliSum jw_quartic(const QuarticTerm& term, std::uint32_t n_sites) {
    std::uint32_t n_qubits = 2 * n_sites;
    SpinSpecies sig = term.sigma;
    SpinSpecies sigbar = other_species(sig);
    // Factor order matches the written term: c+_i c+_j c_k c_l.
    std::array<std::array<std::pair<Cplx, PauliString>, 2>, 4> factors;
    if (term.kind == QuarticKind::same_spin) {
        factors = {jw_ladder(term.i, sig, true, n_sites),
                   jw_ladder(term.j, sig, true, n_sites),
                   jw_ladder(term.k, sig, false, n_sites),
                   jw_ladder(term.l, sig, false, n_sites)};
    } else {
        factors = {jw_ladder(term.i, sig, true, n_sites),
                   jw_ladder(term.j, sigbar, true, n_sites),
                   jw_ladder(term.k, sig, false, n_sites),
                   jw_ladder(term.l, sigbar, false, n_sites)};
    }
    // Expand the 16 branch products exactly, accumulating the complex
    // weight per axes map (individual monomials can carry imaginary parts
    // that only cancel within a group).
    std::map<std::vector<PauliString::AxisEntry>, Cplx> expansion;
    for (const auto& [c0, p0] : factors[0])
        for (const auto& [c1, p1] : factors[1])
            for (const auto& [c2, p2] : factors[2])
                for (const auto& [c3, p3] : factors[3]) {
                    PauliString prod = multiply(multiply(p0, p1), multiply(p2, p3));
                    expansion[prod.axes()] += c0 * c1 * c2 * c3 * prod.phase();
                }
    WeightedPauliSum sum(n_qubits);
    for (const auto& [axes, total] : expansion) {
        double w;
        if (term.self_adjoint()) {
            // The written term is its own conjugate and is not doubled; its
            // expansion is already real (the arithmetic is exact dyadic).
            if (std::abs(total.imag()) > 1e-12)
                throw std::logic_error("self-adjoint quartic produced complex weight");
            w = term.coeff * total.real();
        } else {
            // term + h.c.: each axes map collects 2 Re(weight).
            w = 2.0 * term.coeff * total.real();
        }
        if (w != 0.0) sum.add(w, PauliString(n_qubits, axes));
    }
    sum.prune(0.0);
    return sum;
}

WeightedPauliSum jw_hamiltonian(const FermionHamiltonian& h) {
    WeightedPauliSum sum(h.n_qubits());
    if (h.constant() != 0.0)
        sum.add(h.constant(), PauliString(h.n_qubits()));
    for (const auto& t : h.quadratic()) sum.add_sum(jw_quadratic(t, h.n_sites()));
    for (const auto& t : h.quartic()) sum.add_sum(jw_quartic(t, h.n_sites()));
    sum.prune(0.0);
    return sum;
}

FermionHamiltonian build_hubbard(
    std::uint32_t n_sites,
    const std::vector<std::tuple<std::uint32_t, std::uint32_t, double>>& hoppings,
    double U) {
    FermionHamiltonian h(n_sites);
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    for (const auto& [a, b, t] : hoppings) {
        if (a == b) throw std::invalid_argument("hopping pair needs distinct sites");
        std::uint32_t i = std::max(a, b), k = std::min(a, b);
        if (!seen.insert({i, k}).second)
            throw std::invalid_argument("duplicate hopping pair");
        h.add_quadratic({i, k, SpinSpecies::up, -t});
        h.add_quadratic({i, k, SpinSpecies::down, -t});
    }
    if (U != 0.0) {
        for (std::uint32_t s = 0; s < n_sites; ++s)
            h.add_quartic({QuarticKind::mixed_spin, s, s, s, s, SpinSpecies::up, U});
    }
    return h;
}

FermionHamiltonian build_hubbard_chain(std::uint32_t n_sites, double t, double U,
                                       bool periodic) {
    std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> hoppings;
    for (std::uint32_t s = 0; s + 1 < n_sites; ++s) hoppings.emplace_back(s + 1, s, t);
    if (periodic && n_sites > 2) hoppings.emplace_back(n_sites - 1, 0, t);
    return build_hubbard(n_sites, hoppings, U);
}

FermionHamiltonian load_hamiltonian_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    bool have_sites = false;
    std::uint32_t n_sites = 0;
    std::vector<std::tuple<std::size_t, std::string>> body;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "sites") {
            if (have_sites) parse_fail(line_no, "duplicate 'sites' line");
            long n = -1;
            if (!(ls >> n) || n <= 0) parse_fail(line_no, "bad site count");
            n_sites = static_cast<std::uint32_t>(n);
            have_sites = true;
        } else {
            std::string rest;
            std::getline(ls, rest);
            body.emplace_back(line_no, kw + rest);
        }
    }
    if (!have_sites) throw std::invalid_argument("missing 'sites N' line");
    FermionHamiltonian h(n_sites);
    for (const auto& [no, content] : body) {
        std::istringstream ls(content);
        std::string kw;
        ls >> kw;
        try {
            if (kw == "const") {
                double v;
                if (!(ls >> v)) parse_fail(no, "bad constant");
                h.add_constant(v);
            } else if (kw == "t") {
                long i, k;
                std::string sp;
                double c;
                if (!(ls >> i >> k >> sp >> c)) parse_fail(no, "bad quadratic term");
                if (i < 0 || k < 0) parse_fail(no, "negative site index");
                h.add_quadratic({static_cast<std::uint32_t>(i),
                                 static_cast<std::uint32_t>(k),
                                 parse_species(sp, no), c});
            } else if (kw == "v2" || kw == "vx") {
                long i, j, k, l;
                std::string sp;
                double c;
                if (!(ls >> i >> j >> k >> l >> sp >> c))
                    parse_fail(no, "bad quartic term");
                if (i < 0 || j < 0 || k < 0 || l < 0)
                    parse_fail(no, "negative site index");
                h.add_quartic({kw == "v2" ? QuarticKind::same_spin
                                          : QuarticKind::mixed_spin,
                               static_cast<std::uint32_t>(i),
                               static_cast<std::uint32_t>(j),
                               static_cast<std::uint32_t>(k),
                               static_cast<std::uint32_t>(l),
                               parse_species(sp, no), c});
            } else {
                parse_fail(no, "unknown keyword '" + kw + "'");
            }
        } catch (const std::invalid_argument& e) {
            std::string msg = e.what();
            if (msg.rfind("line ", 0) == 0) throw;
            parse_fail(no, msg);
        }
        std::string extra;
        if (ls >> extra) parse_fail(no, "trailing token '" + extra + "'");
    }
    return h;
}

FermionHamiltonian load_hamiltonian_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_hamiltonian_text(buf.str());
}

std::string hamiltonian_to_text(const FermionHamiltonian& h) {
    std::ostringstream out;
    out.precision(17);
    out << "sites " << h.n_sites() << "\n";
    if (h.constant() != 0.0) out << "const " << h.constant() << "\n";
    for (const auto& t : h.quadratic())
        out << "t " << t.i << " " << t.k << " " << species_name(t.spin) << " "
            << t.coeff << "\n";
    for (const auto& t : h.quartic())
        out << (t.kind == QuarticKind::same_spin ? "v2 " : "vx ") << t.i << " "
            << t.j << " " << t.k << " " << t.l << " " << species_name(t.sigma)
            << " " << t.coeff << "\n";
    return out.str();
}

}  // namespace jwsym
