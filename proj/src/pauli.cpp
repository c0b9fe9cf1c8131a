#include "jwsym/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace jwsym {

namespace {

constexpr std::complex<double> kIPowers[4] = {
    {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

const char* phase_prefix(std::uint8_t power) {
    switch (power & 3U) {
        case 0: return "+";
        case 1: return "+i";
        case 2: return "-";
        default: return "-i";
    }
}

}  // namespace

char axis_char(PauliAxis a) {
    switch (a) {
        case PauliAxis::I: return 'I';
        case PauliAxis::X: return 'X';
        case PauliAxis::Y: return 'Y';
        case PauliAxis::Z: return 'Z';
    }
    throw std::logic_error("invalid axis");
}

AxisProduct axis_multiply(PauliAxis a, PauliAxis b) {
    // Row a, column b. Phases: XY = iZ, YZ = iX, ZX = iY and conjugates.
    static constexpr AxisProduct table[4][4] = {
        {{PauliAxis::I, 0}, {PauliAxis::X, 0}, {PauliAxis::Y, 0}, {PauliAxis::Z, 0}},
        {{PauliAxis::X, 0}, {PauliAxis::I, 0}, {PauliAxis::Z, 1}, {PauliAxis::Y, 3}},
        {{PauliAxis::Y, 0}, {PauliAxis::Z, 3}, {PauliAxis::I, 0}, {PauliAxis::X, 1}},
        {{PauliAxis::Z, 0}, {PauliAxis::Y, 1}, {PauliAxis::X, 3}, {PauliAxis::I, 0}},
    };
    return table[static_cast<int>(a)][static_cast<int>(b)];
}

PauliString::PauliString(std::uint32_t n_qubits)
    : n_qubits_(n_qubits), phase_power_(0) {
    if (n_qubits == 0) throw std::invalid_argument("n_qubits must be positive");
}

PauliString::PauliString(std::uint32_t n_qubits, std::vector<AxisEntry> axes,
                         std::uint8_t phase_power)
    : n_qubits_(n_qubits), phase_power_(phase_power & 3U) {
    if (n_qubits == 0) throw std::invalid_argument("n_qubits must be positive");
    std::erase_if(axes, [](const AxisEntry& e) { return e.second == PauliAxis::I; });
    std::sort(axes.begin(), axes.end(),
              [](const AxisEntry& a, const AxisEntry& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < axes.size(); ++i) {
        if (axes[i].first >= n_qubits_)
            throw std::invalid_argument("qubit index out of range");
        if (i > 0 && axes[i].first == axes[i - 1].first)
            throw std::invalid_argument("duplicate qubit index");
    }
    axes_ = std::move(axes);
}

std::complex<double> PauliString::phase() const { return kIPowers[phase_power_ & 3U]; }

PauliAxis PauliString::axis(std::uint32_t qubit) const {
    auto it = std::lower_bound(
        axes_.begin(), axes_.end(), qubit,
        [](const AxisEntry& e, std::uint32_t q) { return e.first < q; });
    if (it != axes_.end() && it->first == qubit) return it->second;
    return PauliAxis::I;
}

std::size_t PauliString::count_axis(PauliAxis a) const {
    return static_cast<std::size_t>(std::count_if(
        axes_.begin(), axes_.end(),
        [a](const AxisEntry& e) { return e.second == a; }));
}

std::vector<std::uint32_t> PauliString::xy_support() const {
    std::vector<std::uint32_t> out;
    for (const auto& [q, a] : axes_)
        if (a == PauliAxis::X || a == PauliAxis::Y) out.push_back(q);
    return out;
}

std::vector<std::uint32_t> PauliString::z_support() const {
    std::vector<std::uint32_t> out;
    for (const auto& [q, a] : axes_)
        if (a == PauliAxis::Z) out.push_back(q);
    return out;
}

std::vector<std::uint32_t> PauliString::support() const {
    std::vector<std::uint32_t> out;
    out.reserve(axes_.size());
    for (const auto& [q, a] : axes_) out.push_back(q);
    return out;
}

PauliString PauliString::without_phase() const {
    PauliString copy = *this;
    copy.phase_power_ = 0;
    return copy;
}

PauliString PauliString::with_extra_phase(std::uint8_t i_power) const {
    PauliString copy = *this;
    copy.phase_power_ = static_cast<std::uint8_t>((phase_power_ + i_power) & 3U);
    return copy;
}

std::string PauliString::str() const {
    std::string out = phase_prefix(phase_power_);
    if (axes_.empty()) return out + " I";
    for (const auto& [q, a] : axes_) {
        out += ' ';
        out += axis_char(a);
        out += std::to_string(q);
    }
    return out;
}

PauliString PauliString::parse(const std::string& text, std::uint32_t n_qubits) {
    std::istringstream in(text);
    std::string tok;
    if (!(in >> tok)) throw std::invalid_argument("empty Pauli string");
    std::uint8_t power = 0;
    if (tok == "+") power = 0;
    else if (tok == "+i") power = 1;
    else if (tok == "-") power = 2;
    else if (tok == "-i") power = 3;
    else throw std::invalid_argument("bad phase prefix '" + tok + "'");
    std::vector<AxisEntry> axes;
    bool identity = false;
    while (in >> tok) {
        if (tok == "I") {
            identity = true;
            continue;
        }
        if (tok.size() < 2) throw std::invalid_argument("bad axis token '" + tok + "'");
        PauliAxis a;
        switch (tok[0]) {
            case 'X': a = PauliAxis::X; break;
            case 'Y': a = PauliAxis::Y; break;
            case 'Z': a = PauliAxis::Z; break;
            default: throw std::invalid_argument("bad axis letter in '" + tok + "'");
        }
        std::size_t pos = 0;
        unsigned long q = std::stoul(tok.substr(1), &pos);
        if (pos + 1 != tok.size())
            throw std::invalid_argument("bad qubit index in '" + tok + "'");
        axes.emplace_back(static_cast<std::uint32_t>(q), a);
    }
    if (identity && !axes.empty())
        throw std::invalid_argument("identity token mixed with axes");
    return PauliString(n_qubits, std::move(axes), power);
}

bool PauliString::axes_less(const PauliString& a, const PauliString& b) {
    if (a.n_qubits_ != b.n_qubits_) return a.n_qubits_ < b.n_qubits_;
    if (a.axes_ != b.axes_) return a.axes_ < b.axes_;
    return a.phase_power_ < b.phase_power_;
}

PauliString multiply(const PauliString& a, const PauliString& b) {
    if (a.n_qubits() != b.n_qubits())
        throw std::invalid_argument("qubit-count mismatch in Pauli multiply");
    std::vector<PauliString::AxisEntry> out;
    out.reserve(a.axes().size() + b.axes().size());
    std::uint8_t power =
        static_cast<std::uint8_t>((a.phase_power() + b.phase_power()) & 3U);
    auto ia = a.axes().begin(), ea = a.axes().end();
    auto ib = b.axes().begin(), eb = b.axes().end();
    while (ia != ea || ib != eb) {
        if (ib == eb || (ia != ea && ia->first < ib->first)) {
            out.push_back(*ia++);
        } else if (ia == ea || ib->first < ia->first) {
            out.push_back(*ib++);
        } else {
            AxisProduct p = axis_multiply(ia->second, ib->second);
            power = static_cast<std::uint8_t>((power + p.i_power) & 3U);
            if (p.axis != PauliAxis::I) out.emplace_back(ia->first, p.axis);
            ++ia;
            ++ib;
        }
    }
    return PauliString(a.n_qubits(), std::move(out), power);
}

bool qubitwise_compatible(const PauliString& a, const PauliString& b) {
    if (a.n_qubits() != b.n_qubits())
        throw std::invalid_argument("qubit-count mismatch in compatibility test");
    auto ia = a.axes().begin(), ea = a.axes().end();
    auto ib = b.axes().begin(), eb = b.axes().end();
    while (ia != ea && ib != eb) {
        if (ia->first < ib->first) ++ia;
        else if (ib->first < ia->first) ++ib;
        else {
            if (ia->second != ib->second) return false;
            ++ia;
            ++ib;
        }
    }
    return true;
}

PauliString rotate_z_quarter(const PauliString& p, int quarter_turns) {
    if (quarter_turns < 1 || quarter_turns > 3)
        throw std::invalid_argument("quarter_turns must be 1, 2 or 3");
    std::vector<PauliString::AxisEntry> axes = p.axes();
    std::uint8_t power = p.phase_power();
    for (int t = 0; t < quarter_turns; ++t) {
        for (auto& [q, a] : axes) {
            if (a == PauliAxis::X) {
                a = PauliAxis::Y;
            } else if (a == PauliAxis::Y) {
                a = PauliAxis::X;
                power = static_cast<std::uint8_t>((power + 2) & 3U);  // -1
            }
        }
    }
    return PauliString(p.n_qubits(), std::move(axes), power);
}

WeightedPauliSum::WeightedPauliSum(std::uint32_t n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits == 0) throw std::invalid_argument("n_qubits must be positive");
}

void WeightedPauliSum::add(double coeff, const PauliString& string) {
    if (string.n_qubits() != n_qubits_)
        throw std::invalid_argument("qubit-count mismatch in sum");
    if (!string.is_hermitian())
        throw std::invalid_argument("imaginary phase cannot carry a real weight");
    double folded = string.phase_power() == 2 ? -coeff : coeff;
    if (folded == 0.0) return;
    terms_.push_back({folded, string.without_phase()});
    dirty_ = true;
}

void WeightedPauliSum::add_complex(std::complex<double> coeff,
                                   const PauliString& string, double tol) {
    std::complex<double> total = coeff * string.phase();
    if (std::abs(total.imag()) > tol)
        throw std::invalid_argument("term with non-real weight: imag = " +
                                    std::to_string(total.imag()));
    add(total.real(), string.without_phase());
}

void WeightedPauliSum::add_sum(const WeightedPauliSum& other, double scale) {
    for (const auto& t : other.terms()) add(scale * t.coeff, t.string);
}

void WeightedPauliSum::canonicalize() {
    if (!dirty_) return;
    std::map<std::vector<PauliString::AxisEntry>, double> acc;
    for (const auto& t : terms_) acc[t.string.axes()] += t.coeff;
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [axes, coeff] : acc) {
        if (coeff == 0.0) continue;
        out.push_back({coeff, PauliString(n_qubits_, axes)});
    }
    terms_ = std::move(out);
    dirty_ = false;
}

void WeightedPauliSum::prune(double threshold) {
    canonicalize();
    std::erase_if(terms_, [threshold](const Term& t) {
        return std::abs(t.coeff) <= threshold;
    });
}

const std::vector<WeightedPauliSum::Term>& WeightedPauliSum::terms() const {
    const_cast<WeightedPauliSum*>(this)->canonicalize();
    return terms_;
}

double WeightedPauliSum::identity_coefficient() const {
    for (const auto& t : terms())
        if (t.string.is_identity_axes()) return t.coeff;
    return 0.0;
}

std::string WeightedPauliSum::str() const {
    std::ostringstream out;
    for (const auto& t : terms()) out << t.coeff << " * " << t.string.str() << "\n";
    return out.str();
}

std::string pauli_sum_to_json(const WeightedPauliSum& sum) {
    nlohmann::ordered_json j;
    j["n_qubits"] = sum.n_qubits();
    j["terms"] = nlohmann::ordered_json::array();
    for (const auto& t : sum.terms()) {
        j["terms"].push_back({{"coeff", t.coeff}, {"string", t.string.str()}});
    }
    return j.dump(2) + "\n";
}

WeightedPauliSum pauli_sum_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    WeightedPauliSum sum(j.at("n_qubits").get<std::uint32_t>());
    for (const auto& t : j.at("terms")) {
        sum.add(t.at("coeff").get<double>(),
                PauliString::parse(t.at("string").get<std::string>(), sum.n_qubits()));
    }
    return sum;
}

}  // namespace jwsym
