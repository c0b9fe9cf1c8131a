#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace jwsym {

/// Single-qubit Pauli axis. Identity is never stored inside a PauliString;
/// it only appears as the result of axis-level multiplication.
enum class PauliAxis : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char axis_char(PauliAxis a);

/// Product of two single-qubit axes: result axis plus the power of i the
/// product picks up (X*Y = i Z  ->  {Z, 1}).
struct AxisProduct {
    PauliAxis axis;
    std::uint8_t i_power;  // 0..3, meaning i^i_power
};

AxisProduct axis_multiply(PauliAxis a, PauliAxis b);

/// A Pauli string: global phase (restricted to the fourth roots of unity,
/// stored as a power of i) times a tensor product of X/Y/Z on selected
/// qubits. Non-identity axes are kept sparse, sorted by qubit index, so
/// equality of axis maps is syntactic. Values are immutable after
/// construction.
class PauliString {
  public:
    using AxisEntry = std::pair<std::uint32_t, PauliAxis>;

    /// Identity string on n qubits, phase +1.
    explicit PauliString(std::uint32_t n_qubits);

    /// Build from (qubit, axis) entries; identities are dropped, entries are
    /// sorted. Throws std::invalid_argument on duplicate or out-of-range
    /// qubits.
    PauliString(std::uint32_t n_qubits, std::vector<AxisEntry> axes,
                std::uint8_t phase_power = 0);

    std::uint32_t n_qubits() const { return n_qubits_; }
    std::uint8_t phase_power() const { return phase_power_; }
    std::complex<double> phase() const;

    /// Axis on a given qubit (identity if unlisted).
    PauliAxis axis(std::uint32_t qubit) const;

    /// Sorted non-identity entries.
    const std::vector<AxisEntry>& axes() const { return axes_; }

    /// Number of non-identity axes.
    std::size_t weight() const { return axes_.size(); }

    bool is_identity_axes() const { return axes_.empty(); }

    /// Hermitian iff phase is +1 or -1.
    bool is_hermitian() const { return (phase_power_ & 1U) == 0; }

    std::size_t count_axis(PauliAxis a) const;

    /// Qubits carrying X or Y, ascending.
    std::vector<std::uint32_t> xy_support() const;

    /// Qubits carrying Z, ascending.
    std::vector<std::uint32_t> z_support() const;

    /// All non-identity qubits, ascending.
    std::vector<std::uint32_t> support() const;

    /// Same string with phase forced to +1.
    PauliString without_phase() const;

    /// Multiplied by an extra power of i.
    PauliString with_extra_phase(std::uint8_t i_power) const;

    /// Serialized form: phase prefix ("+", "-", "+i", "-i"), then axis
    /// tokens "X3 Z4 X7" ascending. Identity is "+ I".
    std::string str() const;

    /// Parse the serialized form. Throws std::invalid_argument on malformed
    /// input or indices >= n_qubits.
    static PauliString parse(const std::string& text, std::uint32_t n_qubits);

    friend bool operator==(const PauliString&, const PauliString&) = default;

    /// Ordering on (n_qubits, axes, phase); used for canonical term order.
    static bool axes_less(const PauliString& a, const PauliString& b);

  private:
    std::uint32_t n_qubits_;
    std::uint8_t phase_power_;  // phase = i^phase_power_
    std::vector<AxisEntry> axes_;
};

/// Exact operator product a*b with accumulated phase.
/// Throws std::invalid_argument on qubit-count mismatch.
PauliString multiply(const PauliString& a, const PauliString& b);

/// True iff on every qubit the axes agree or at least one is identity.
/// Such strings commute and are simultaneously measurable in a product
/// basis.
bool qubitwise_compatible(const PauliString& a, const PauliString& b);

/// Image of p under conjugation by the global z-rotation at
/// theta = quarter_turns * pi/2. One quarter turn maps X -> Y, Y -> -X,
/// leaves Z and I fixed; the sign lands in the phase. quarter_turns must be
/// 1, 2 or 3.
PauliString rotate_z_quarter(const PauliString& p, int quarter_turns);

/// Real-weighted sum of Hermitian phase-free Pauli strings. Terms are
/// deduplicated on their axis maps and kept in canonical (axes-ascending)
/// order, so equal operators have equal representations.
class WeightedPauliSum {
  public:
    struct Term {
        double coeff;
        PauliString string;  // phase always +1
    };

    explicit WeightedPauliSum(std::uint32_t n_qubits);

    std::uint32_t n_qubits() const { return n_qubits_; }

    /// Add coeff * string. The string's phase must be +1 or -1; a -1 phase
    /// is folded into the coefficient. Throws on imaginary phase or qubit
    /// mismatch.
    void add(double coeff, const PauliString& string);

    /// Add a complex multiple of a phased string; the total must come out
    /// real (imaginary part below tol), otherwise throws.
    void add_complex(std::complex<double> coeff, const PauliString& string,
                     double tol = 1e-12);

    void add_sum(const WeightedPauliSum& other, double scale = 1.0);

    /// Drop terms with |coeff| <= threshold.
    void prune(double threshold = 0.0);

    const std::vector<Term>& terms() const;
    std::size_t size() const { return terms().size(); }
    bool empty() const { return terms().empty(); }

    /// Coefficient of the identity string (0 if absent).
    double identity_coefficient() const;

    /// Text form, one term per line.
    std::string str() const;

  private:
    void canonicalize();

    std::uint32_t n_qubits_;
    std::vector<Term> terms_;
    bool dirty_ = false;
};

/// JSON (de)serialization of a weighted sum using the documented
/// {n_qubits, terms:[{coeff, string}]} layout.
std::string pauli_sum_to_json(const WeightedPauliSum& sum);
WeightedPauliSum pauli_sum_from_json(const std::string& text);

}  // namespace jwsym
