#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "jwsym/pauli.hpp"

namespace jwsym {

/// Spin species. Site i of the up species lives on qubit i, site i of the
/// down species on qubit n_sites + i; strings never cross species blocks.
enum class SpinSpecies : std::uint8_t { up = 0, down = 1 };

SpinSpecies other_species(SpinSpecies s);
const char* species_name(SpinSpecies s);

/// Qubit carrying (site, spin) for a register of n_sites spatial sites.
std::uint32_t species_qubit(std::uint32_t site, SpinSpecies spin,
                            std::uint32_t n_sites);

/// Hermitian hopping pair  c+_i c_k + c+_k c_i  within one species,
/// stored with i > k. coeff multiplies the whole pair.
struct QuadraticTerm {
    std::uint32_t i;
    std::uint32_t k;
    SpinSpecies spin;
    double coeff;
};

enum class QuarticKind : std::uint8_t { same_spin, mixed_spin };

/// Number-conserving two-body term, stored once per Hermitian pair.
///
/// same_spin:  c+_i c+_j c_k c_l (all spin sigma), i > j, k > l,
///             (i,j) >= (k,l) lexicographically.
/// mixed_spin: c+_{i sigma} c+_{j sigbar} c_{k sigma} c_{l sigbar},
///             (i,k) >= (j,l) lexicographically.
///
/// coeff multiplies the written term plus its Hermitian conjugate; when the
/// written term is already self-adjoint (i == k and j == l) it appears once
/// and is not doubled.
struct QuarticTerm {
    QuarticKind kind;
    std::uint32_t i, j, k, l;
    SpinSpecies sigma;
    double coeff;

    bool self_adjoint() const { return i == k && j == l; }
};

/// Real-coefficient number-conserving fermionic Hamiltonian on n_sites
/// spatial sites (2 * n_sites qubits after the mapping). Terms are
/// validated against the canonical ordering conventions on insertion;
/// duplicate term keys are rejected.
class FermionHamiltonian {
  public:
    explicit FermionHamiltonian(std::uint32_t n_sites);

    std::uint32_t n_sites() const { return n_sites_; }
    std::uint32_t n_qubits() const { return 2 * n_sites_; }

    double constant() const { return constant_; }
    void add_constant(double value) { constant_ += value; }

    void add_quadratic(const QuadraticTerm& term);
    void add_quartic(const QuarticTerm& term);

    const std::vector<QuadraticTerm>& quadratic() const { return quadratic_; }
    const std::vector<QuarticTerm>& quartic() const { return quartic_; }

    /// True when the Hamiltonian has hopping terms only (no quartics).
    bool hopping_only() const { return quartic_.empty(); }

  private:
    std::uint32_t n_sites_;
    double constant_ = 0.0;
    std::vector<QuadraticTerm> quadratic_;
    std::vector<QuarticTerm> quartic_;
};

/// Jordan-Wigner image of a single ladder operator: two weighted strings
/// (1/2) Z...Z X  and  (-+ i/2) Z...Z Y on the species-mapped qubit, with
/// the Z string on the lower qubits of the same species. Creation takes the
/// lowering-operator sign (X - iY)/2 since |0> encodes the empty mode.
std::array<std::pair<std::complex<double>, PauliString>, 2> jw_ladder(
    std::uint32_t site, SpinSpecies spin, bool dagger, std::uint32_t n_sites);

/// Image of a hopping pair: coeff/2 * (X Z..Z X + Y Z..Z Y) on the mapped
/// qubits. Exactly two terms.
WeightedPauliSum jw_quadratic(const QuadraticTerm& term, std::uint32_t n_sites);

/// Image of a quartic term, computed by exact composition of the four
/// ladder expansions (Pauli multiplication resolves every overlapping
/// Z-string sign) plus the Hermitian conjugate when distinct.
WeightedPauliSum jw_quartic(const QuarticTerm& term, std::uint32_t n_sites);

/// Sum over all terms plus the constant; deduplicated, real coefficients.
WeightedPauliSum jw_hamiltonian(const FermionHamiltonian& h);

/// Hubbard model: hopping -t_ij for both species per unordered pair plus a
/// density-density U term per site (omitted when U == 0).
FermionHamiltonian build_hubbard(
    std::uint32_t n_sites,
    const std::vector<std::tuple<std::uint32_t, std::uint32_t, double>>& hoppings,
    double U);

/// Open or periodic chain with uniform hopping t.
FermionHamiltonian build_hubbard_chain(std::uint32_t n_sites, double t, double U,
                                       bool periodic);

/// Text-format loader. One term per line, '#' comments:
///   sites N
///   const <real>
///   t  <i> <k> <up|down> <coeff>                 (quadratic, i > k)
///   v2 <i> <j> <k> <l> <up|down> <coeff>         (same-spin quartic)
///   vx <i> <j> <k> <l> <up|down> <coeff>         (mixed-spin quartic)
/// Rejects non-canonical index ordering with a line-numbered diagnostic.
FermionHamiltonian load_hamiltonian_text(const std::string& text);
FermionHamiltonian load_hamiltonian_file(const std::string& path);
std::string hamiltonian_to_text(const FermionHamiltonian& h);

}  // namespace jwsym
