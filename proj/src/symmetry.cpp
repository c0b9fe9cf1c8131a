#include "jwsym/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace jwsym {

namespace {

PauliString swap_xy(const PauliString& p) {
    std::vector<PauliString::AxisEntry> axes = p.axes();
    for (auto& [q, a] : axes) {
        if (a == PauliAxis::X) a = PauliAxis::Y;
        else if (a == PauliAxis::Y) a = PauliAxis::X;
    }
    return PauliString(p.n_qubits(), std::move(axes));
}

bool x_first(const PauliString& p) {
    for (const auto& [q, a] : p.axes()) {
        if (a == PauliAxis::X) return true;
        if (a == PauliAxis::Y) return false;
    }
    return true;  // no X/Y axes: fixed point, counts as canonical
}

bool nearly_equal(double a, double b) {
    double scale = std::max({std::abs(a), std::abs(b), 1.0});
    return std::abs(a - b) <= 1e-12 * scale;
}

}  // namespace

std::pair<PauliString, int> half_turn_partner(const PauliString& p) {
    int sign = p.count_axis(PauliAxis::Y) % 2 == 0 ? 1 : -1;
    return {swap_xy(p.without_phase()), sign};
}

std::vector<SymmetryClass> dedup_by_symmetry(const WeightedPauliSum& sum) {
    std::map<std::vector<PauliString::AxisEntry>, SymmetryClass> classes;
    for (const auto& t : sum.terms()) {
        PauliString rep = x_first(t.string) ? t.string.without_phase()
                                            : swap_xy(t.string);
        // <member> = s * <rep> with s = (-1)^(Y count of member).
        int s = t.string.count_axis(PauliAxis::Y) % 2 == 0 ? 1 : -1;
        auto [it, inserted] = classes.try_emplace(
            rep.axes(), SymmetryClass{rep, {}, 0.0});
        it->second.members.emplace_back(t.string, s);
        it->second.multiplier += t.coeff * s;
    }
    std::vector<SymmetryClass> out;
    out.reserve(classes.size());
    for (auto& [axes, cls] : classes) out.push_back(std::move(cls));
    return out;
}

std::optional<QuarticFamily> build_quartic_family(const WeightedPauliSum& sum) {
    if (sum.size() != 8) return std::nullopt;
    const auto& terms = sum.terms();
    auto xy = terms[0].string.xy_support();
    if (xy.size() != 4) return std::nullopt;
    auto z = terms[0].string.z_support();
    for (const auto& t : terms) {
        if (t.string.xy_support() != xy || t.string.z_support() != z)
            return std::nullopt;
        if (t.string.count_axis(PauliAxis::Y) % 2 != 0) return std::nullopt;
    }
    QuarticFamily family;
    std::copy(xy.begin(), xy.end(), family.quadruple.begin());
    family.z_interior = z;
    for (const auto& t : terms) family.strings.emplace_back(t.coeff, t.string);
    return family;
}

std::array<std::pair<double, PauliString>, 2> quarter_turn_reduce(
    const QuarticFamily& family) {
    if (family.strings.size() != 8)
        throw std::invalid_argument("quartic family needs exactly 8 strings");
    // Group the 8 strings into their 4 half-turn classes.
    std::map<std::vector<PauliString::AxisEntry>, std::vector<double>> classes;
    for (const auto& [coeff, str] : family.strings) {
        PauliString rep = x_first(str) ? str.without_phase() : swap_xy(str);
        classes[rep.axes()].push_back(coeff);
    }
    if (classes.size() != 4)
        throw std::invalid_argument(
            "incomplete quartic family: expected 4 symmetry classes, found " +
            std::to_string(classes.size()));
    std::optional<std::pair<double, PauliString>> all_x;
    std::vector<std::pair<double, PauliString>> two_y;
    for (const auto& [axes, coeffs] : classes) {
        if (coeffs.size() != 2 || !nearly_equal(coeffs[0], coeffs[1]))
            throw std::invalid_argument(
                "quartic family class members carry unequal weights");
        PauliString rep(family.strings[0].second.n_qubits(), axes);
        if (rep.count_axis(PauliAxis::Y) == 0)
            all_x = {coeffs[0], rep};
        else
            two_y.emplace_back(coeffs[0], rep);
    }
    if (!all_x || two_y.size() != 3)
        throw std::invalid_argument("quartic family lacks the all-X class");
    // <allX> = <B> + <C> + <D> on fixed-number states; eliminating a pair
    // (C, D) with equal weights leaves two representatives. The map order
    // above makes the choice of the pair deterministic.
    int keep = -1;
    for (int b = 0; b < 3 && keep < 0; ++b) {
        int c = (b + 1) % 3, d = (b + 2) % 3;
        if (nearly_equal(two_y[c].first, two_y[d].first)) keep = b;
    }
    if (keep < 0)
        throw std::invalid_argument(
            "quartic family does not have two equal-weight mixed classes");
    double c_equal = two_y[(keep + 1) % 3].first;
    double c_a = all_x->first;
    double c_b = two_y[keep].first;
    return {{{2.0 * (c_a + c_equal), all_x->second},
             {2.0 * (c_b - c_equal), two_y[keep].second}}};
}

ReducedHamiltonian reduce_hamiltonian(const FermionHamiltonian& h,
                                      const ReduceOptions& options) {
    WeightedPauliSum raw = jw_hamiltonian(h);
    std::size_t raw_count = 0;
    for (const auto& t : raw.terms())
        if (!t.string.is_identity_axes()) ++raw_count;

    ReducedHamiltonian out{h.n_qubits(), 0.0, {}, raw_count};
    if (!options.half_turn && !options.quarter_turn) {
        out.constant = raw.identity_coefficient();
        for (const auto& t : raw.terms()) {
            if (t.string.is_identity_axes()) continue;
            out.classes.push_back(
                {t.string, {{t.string, 1}}, t.coeff});
        }
        return out;
    }

    WeightedPauliSum pool(h.n_qubits());
    if (h.constant() != 0.0) pool.add(h.constant(), PauliString(h.n_qubits()));
    for (const auto& t : h.quadratic())
        pool.add_sum(jw_quadratic(t, h.n_sites()));
    for (const auto& t : h.quartic()) {
        WeightedPauliSum image = jw_quartic(t, h.n_sites());
        if (options.quarter_turn) {
            if (auto family = build_quartic_family(image)) {
                for (const auto& [coeff, rep] : quarter_turn_reduce(*family))
                    pool.add(coeff, rep);
                continue;
            }
        }
        pool.add_sum(image);
    }
    pool.prune(0.0);
    out.constant = pool.identity_coefficient();
    for (auto& cls : dedup_by_symmetry(pool)) {
        if (cls.representative.is_identity_axes()) continue;
        out.classes.push_back(std::move(cls));
    }
    return out;
}

double equality_residual(const WeightedPauliSum& lhs, const WeightedPauliSum& rhs,
                         const SectorSpec& spec, int n_states, std::uint64_t seed,
                         std::uint32_t qubit_cap) {
    spec.validate(qubit_cap);
    double max_residual = 0.0;
    for (int s = 0; s < n_states; ++s) {
        StateVector state = random_sector_state(
            spec, seed + static_cast<std::uint64_t>(s), qubit_cap);
        double diff = std::abs(expectation(state, lhs) - expectation(state, rhs));
        max_residual = std::max(max_residual, diff);
    }
    return max_residual;
}

bool VerificationReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.pass; });
}

double VerificationReport::max_residual() const {
    double m = 0.0;
    for (const auto& c : checks) m = std::max(m, c.max_residual);
    return m;
}

std::string VerificationReport::text() const {
    std::ostringstream out;
    for (const auto& c : checks) {
        out << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  (n_qubits="
            << c.n_qubits << ", sector=" << c.sector.n_up << "," << c.sector.n_down
            << ", max_residual=" << c.max_residual << ")\n";
    }
    return out.str();
}

std::string VerificationReport::to_json() const {
    nlohmann::ordered_json j;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        j["checks"].push_back({{"name", c.name},
                               {"n_qubits", c.n_qubits},
                               {"sector", {{"up", c.sector.n_up},
                                           {"down", c.sector.n_down}}},
                               {"max_residual", c.max_residual},
                               {"pass", c.pass}});
    }
    return j.dump(2) + "\n";
}

VerificationReport verify_symmetry(const WeightedPauliSum& sum,
                                   const SectorSpec& spec, int n_states,
                                   std::uint64_t seed, double tolerance,
                                   std::uint32_t qubit_cap) {
    VerificationReport report;
    double worst = 0.0;
    for (const auto& t : sum.terms()) {
        auto [partner, sign] = half_turn_partner(t.string);
        WeightedPauliSum lhs(sum.n_qubits()), rhs(sum.n_qubits());
        lhs.add(1.0, t.string);
        rhs.add(static_cast<double>(sign), partner);
        worst = std::max(worst, equality_residual(lhs, rhs, spec, n_states, seed,
                                                  qubit_cap));
    }
    report.checks.push_back({"half_turn_string_identities", sum.n_qubits(), spec,
                             worst, worst < tolerance});

    WeightedPauliSum reduced(sum.n_qubits());
    for (const auto& cls : dedup_by_symmetry(sum))
        reduced.add(cls.multiplier, cls.representative);
    double dedup_res =
        equality_residual(sum, reduced, spec, n_states, seed + 7919, qubit_cap);
    report.checks.push_back({"dedup_preserves_expectation", sum.n_qubits(), spec,
                             dedup_res, dedup_res < tolerance});
    return report;
}

VerificationReport verify_quartic_families(const FermionHamiltonian& h,
                                           const SectorSpec& spec, int n_states,
                                           std::uint64_t seed, double tolerance,
                                           std::uint32_t qubit_cap) {
    VerificationReport report;
    double identity_worst = 0.0;
    double reduced_worst = 0.0;
    std::size_t families = 0;
    for (const auto& term : h.quartic()) {
        WeightedPauliSum image = jw_quartic(term, h.n_sites());
        auto family = build_quartic_family(image);
        if (!family) continue;
        ++families;
        // <allX> - <B> - <C> - <D> = 0 with the family's Z strings.
        std::map<std::vector<PauliString::AxisEntry>, int> reps;
        for (const auto& [coeff, str] : family->strings) {
            PauliString rep = x_first(str) ? str.without_phase() : swap_xy(str);
            reps[rep.axes()] = 1;
        }
        WeightedPauliSum lhs(h.n_qubits()), rhs(h.n_qubits());
        for (const auto& [axes, unused] : reps) {
            PauliString rep(h.n_qubits(), axes);
            if (rep.count_axis(PauliAxis::Y) == 0)
                lhs.add(1.0, rep);
            else
                rhs.add(1.0, rep);
        }
        identity_worst = std::max(
            identity_worst,
            equality_residual(lhs, rhs, spec, n_states, seed + families, qubit_cap));
        // Reduced pair reproduces the family total.
        WeightedPauliSum family_sum(h.n_qubits());
        for (const auto& [coeff, str] : family->strings) family_sum.add(coeff, str);
        WeightedPauliSum pair_sum(h.n_qubits());
        for (const auto& [coeff, rep] : quarter_turn_reduce(*family))
            pair_sum.add(coeff, rep);
        reduced_worst = std::max(
            reduced_worst,
            equality_residual(family_sum, pair_sum, spec, n_states,
                              seed + 104729 + families, qubit_cap));
    }
    report.checks.push_back({"quarter_turn_class_identity", h.n_qubits(), spec,
                             identity_worst, identity_worst < tolerance});
    report.checks.push_back({"quarter_turn_reduced_pair", h.n_qubits(), spec,
                             reduced_worst, reduced_worst < tolerance});
    return report;
}

}  // namespace jwsym
