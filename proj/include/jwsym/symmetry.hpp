#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jwsym/fermion.hpp"
#include "jwsym/pauli.hpp"
#include "jwsym/statevector.hpp"

namespace jwsym {

/// X<->Y swapped image of p together with the sign relating the two
/// expectation values on any fixed-particle-number state:
///   <p> = sign * <partner>,  sign = (-1)^(Y count of p).
/// Z and I axes are untouched; the returned string carries phase +1.
std::pair<PauliString, int> half_turn_partner(const PauliString& p);

/// Set of strings whose expectation values coincide (up to recorded signs)
/// on every fixed-particle-number state. The representative is the member
/// whose lowest X/Y axis is X (strings without X/Y axes are their own
/// singleton class). multiplier * <representative> reproduces the summed
/// contribution of all members.
struct SymmetryClass {
    PauliString representative;
    std::vector<std::pair<PauliString, int>> members;  // (member, relative sign)
    double multiplier;
};

/// Partition the terms of a sum into half-turn symmetry classes, folding
/// each member's weight (with its relative sign) into the class multiplier.
/// Classes are returned in canonical order of their representatives.
std::vector<SymmetryClass> dedup_by_symmetry(const WeightedPauliSum& sum);

/// The eight signed strings produced by one quartic term with four distinct
/// mapped qubits: even-Y X/Y patterns on the quadruple times a fixed
/// interior Z string.
struct QuarticFamily {
    std::array<std::uint32_t, 4> quadruple;       // ascending
    std::vector<std::uint32_t> z_interior;        // ascending, disjoint
    std::vector<std::pair<double, PauliString>> strings;  // the 8 members
};

/// Recognize a jw_quartic image as a quartic family. Returns nullopt when
/// the sum does not have the 8-string / shared-support shape (density
/// reductions, coinciding indices).
std::optional<QuarticFamily> build_quartic_family(const WeightedPauliSum& sum);

/// Two-representative reduction of a family, equivalent in expectation on
/// fixed-particle-number states: the quarter-turn identity
/// <XXXX> = <XXYY> + <XYXY> + <XYYX> (class representatives, Z strings
/// carried along) eliminates the two classes with equal weights. Throws
/// std::invalid_argument when the family lacks the four-class structure.
std::array<std::pair<double, PauliString>, 2> quarter_turn_reduce(
    const QuarticFamily& family);

struct ReduceOptions {
    bool half_turn = true;     // theta = pi/2 dedup
    bool quarter_turn = true;  // theta = pi/4 family reduction
};

/// Symmetry-reduced Hamiltonian: measurement classes plus the scalar part.
/// class_id is the index into `classes` (canonical order, stable across
/// runs). Valid only against states in a fixed particle-number sector.
struct ReducedHamiltonian {
    std::uint32_t n_qubits;
    double constant;
    std::vector<SymmetryClass> classes;
    std::size_t raw_string_count;  // distinct non-identity strings before reduction

    std::size_t measured_string_count() const { return classes.size(); }
};

ReducedHamiltonian reduce_hamiltonian(const FermionHamiltonian& h,
                                      const ReduceOptions& options = {});

/// Max |<lhs> - <rhs>| over random states of the sector. The oracle half of
/// every symmetry claim.
double equality_residual(const WeightedPauliSum& lhs, const WeightedPauliSum& rhs,
                         const SectorSpec& spec, int n_states, std::uint64_t seed,
                         std::uint32_t qubit_cap = kDefaultQubitCap);

struct CheckResult {
    std::string name;
    std::uint32_t n_qubits;
    SectorSpec sector;
    double max_residual;
    bool pass;
};

struct VerificationReport {
    std::vector<CheckResult> checks;

    bool all_pass() const;
    double max_residual() const;
    std::string text() const;
    std::string to_json() const;
};

/// Oracle verification of the half-turn claims for every string of a sum,
/// plus conservation of the total expectation under dedup_by_symmetry.
VerificationReport verify_symmetry(const WeightedPauliSum& sum,
                                   const SectorSpec& spec, int n_states,
                                   std::uint64_t seed, double tolerance,
                                   std::uint32_t qubit_cap = kDefaultQubitCap);

/// Oracle verification of the quarter-turn identity and the reduced-pair
/// equivalence for every 4-qubit family of a Hamiltonian.
VerificationReport verify_quartic_families(const FermionHamiltonian& h,
                                           const SectorSpec& spec, int n_states,
                                           std::uint64_t seed, double tolerance,
                                           std::uint32_t qubit_cap = kDefaultQubitCap);

}  // namespace jwsym
