#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "jwsym/fermion.hpp"
#include "jwsym/pauli.hpp"
#include "jwsym/rng.hpp"

namespace jwsym {

/// Fixed-particle-number sector: n_up fermions on the up block, n_down on
/// the down block of a 2 * n_sites qubit register.
struct SectorSpec {
    std::uint32_t n_sites;
    std::uint32_t n_up;
    std::uint32_t n_down;

    std::uint32_t n_qubits() const { return 2 * n_sites; }
    void validate(std::uint32_t qubit_cap) const;

    friend bool operator==(const SectorSpec&, const SectorSpec&) = default;
};

/// Default limit on register size for the dense oracle.
inline constexpr std::uint32_t kDefaultQubitCap = 14;

/// Basis-state indices with the sector's occupation pattern (qubit 0 is the
/// least significant bit of the index).
std::vector<std::uint64_t> sector_basis_states(const SectorSpec& spec);

/// Dense complex statevector over 2^n basis states. Immutable by
/// convention: gate application returns a new vector.
class StateVector {
  public:
    StateVector(std::uint32_t n_qubits, std::vector<std::complex<double>> amplitudes);

    /// |basis_index> on n_qubits.
    static StateVector basis_state(std::uint32_t n_qubits, std::uint64_t index);

    std::uint32_t n_qubits() const { return n_qubits_; }
    std::uint64_t dim() const { return std::uint64_t(1) << n_qubits_; }
    const std::vector<std::complex<double>>& amplitudes() const { return amp_; }

    double norm() const;
    void normalize();

    /// Debug dump (index, real, imag), one basis state per line; n <= 8.
    std::string dump_amplitudes() const;

  private:
    std::uint32_t n_qubits_;
    std::vector<std::complex<double>> amp_;
};

/// Random superposition over exactly the sector basis states: independent
/// complex normal amplitudes, normalized. Deterministic per seed.
StateVector random_sector_state(const SectorSpec& spec, std::uint64_t seed,
                                std::uint32_t qubit_cap = kDefaultQubitCap);

/// Exact <psi|P|psi> (complex for non-Hermitian phases).
std::complex<double> expectation(const StateVector& state, const PauliString& p);

/// Exact real expectation of a Hermitian weighted sum.
double expectation(const StateVector& state, const WeightedPauliSum& sum);

// Elementary gates (return new vectors).
StateVector apply_hadamard(const StateVector& state, std::uint32_t qubit);
/// Maps Y eigenstates to computational states (H after S-dagger).
StateVector apply_y_basis_rotation(const StateVector& state, std::uint32_t qubit);
StateVector apply_cnot(const StateVector& state, std::uint32_t control,
                       std::uint32_t target);

/// Measurement shots on a decoded state: bitstring -> count, counts summing
/// to `shots`. Deterministic per rng stream.
std::map<std::uint64_t, std::uint64_t> sample_counts(const StateVector& state,
                                                     std::uint64_t shots, Rng& rng);

/// Lowest eigenpair of the Hermitian sum restricted to the sector, by dense
/// diagonalization.
std::pair<double, StateVector> exact_ground_state(
    const WeightedPauliSum& sum, const SectorSpec& spec,
    std::uint32_t qubit_cap = kDefaultQubitCap);
std::pair<double, StateVector> exact_ground_state(
    const FermionHamiltonian& h, const SectorSpec& spec,
    std::uint32_t qubit_cap = kDefaultQubitCap);

/// Result of the anticommutator suite on explicit ladder matrices.
struct MatrixCheckReport {
    std::uint32_t n_sites;
    double max_residual;
    std::size_t checks;
    bool pass;
};

/// Builds explicit matrices for every jw_ladder output at n_sites <= 3 and
/// verifies all fermionic anticommutation relations to machine precision:
/// {c_a, c+_b} = delta_ab, {c_a, c_b} = 0, {c+_a, c+_b} = 0.
MatrixCheckReport jw_matrix_check(std::uint32_t n_sites, double tolerance = 1e-12);

}  // namespace jwsym
