#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jwsym/pauli.hpp"
#include "jwsym/statevector.hpp"
#include "jwsym/symmetry.hpp"

namespace jwsym {

/// Per-qubit measurement setting. Block qubits are owned by an entangled
/// decode block and take no single-qubit rotation.
enum class MeasBasis : char {
    untouched = 'I',
    z = 'Z',
    x = 'X',
    y = 'Y',
    block = 'B',
};

/// Entangled decode block: bell = CNOT(first -> second) then H(first);
/// noon = CNOTs from the lowest qubit to the other three (highest first)
/// then H on the lowest. Qubits are stored ascending.
struct EntangledBlock {
    enum class Kind : std::uint8_t { bell, noon };
    Kind kind;
    std::vector<std::uint32_t> qubits;
};

/// Decode rule for one measured class: its +-1 value for a shot is
///   sign * prod_{q in product_qubits} (-1)^(bit q of the outcome).
/// This fixed signed-product form covers plain basis readout, the Bell
/// rules (XX -> z_k, YY -> -z_k z_i) and the NOON table rows.
struct TermReadout {
    std::uint32_t class_id;
    int sign;
    std::vector<std::uint32_t> product_qubits;
};

int readout_value(const TermReadout& term, std::uint64_t outcome_bits);

struct MeasurementCircuit {
    std::vector<MeasBasis> basis;  // one entry per qubit
    std::vector<EntangledBlock> blocks;
    std::vector<TermReadout> terms;
    std::uint64_t shots = 0;
};

struct MeasurementPlan {
    std::uint32_t n_qubits = 0;
    SectorSpec sector{};
    std::vector<MeasurementCircuit> circuits;
};

/// Closed-form nonentangled circuit count for the all-pairs hopping
/// schedule on N sites:
///   (int[(N+1)/2])^2 + (N-1)(N/2 - int[(N+1)/2]),
/// i.e. (N/2)^2 for even N and ((N+1)/2)^2 - (N-1)/2 for odd N. N >= 2.
std::uint64_t circuit_count_closed_form(std::uint32_t n_sites);

/// Hopping representatives (X Z..Z X on the mapped qubits) for a pair list
/// within one species, mirrored to the other species, in canonical order.
/// The class ids used by plan_hopping_nonentangled index this list.
std::vector<PauliString> hopping_classes(
    std::uint32_t n_sites,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs);

/// Distance-layered nonentangled schedule for hopping pairs of one species
/// (down-species mirrors are co-scheduled in the same circuits): distance-d
/// pairs chain through shared endpoints into d offset circuits while
/// 2d <= N-1, and take one circuit each beyond that.
MeasurementPlan plan_hopping_nonentangled(
    std::uint32_t n_sites,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs,
    const SectorSpec& sector);

/// One Bell-measured hopping pair: qubits (k, i), k < i, plus the interior
/// Z string measured in the computational basis.
struct BellPair {
    std::uint32_t k;
    std::uint32_t i;
    std::vector<std::uint32_t> z_string;
};

/// Bell-basis schedule: each pair is decoded through its own entangled
/// block; blocks never share qubits with anything else in the circuit.
/// Readout ids are 2*pair_index for the XX string and 2*pair_index + 1 for
/// the YY string (the Bell scheme measures both without the symmetry).
MeasurementPlan plan_bell(std::uint32_t n_qubits,
                          const std::vector<BellPair>& pairs,
                          const SectorSpec& sector);

/// NOON-basis schedule: one decode block per family quadruple; all eight
/// pattern strings of family f are read out with ids 8*f + j, where j
/// indexes the family's strings in canonical axes order.
MeasurementPlan plan_noon(std::uint32_t n_qubits,
                          const std::vector<QuarticFamily>& families,
                          const SectorSpec& sector);

enum class Strategy : std::uint8_t { nonentangled, bell, noon, entangled, hybrid };

Strategy parse_strategy(const std::string& name);
const char* strategy_name(Strategy s);

/// Complete plan over the classes of a reduced Hamiltonian; class ids are
/// indices into reduced.classes. Deterministic given the input.
///  - nonentangled: greedy qubitwise packing of everything
///  - bell:         2-qubit XX/YY classes through Bell blocks, rest greedy
///  - noon:         4-qubit pattern classes through NOON blocks, rest greedy
///  - entangled:    bell + noon combined
///  - hybrid:       hopping and pure-Z classes nonentangled, 4-qubit
///                  pattern classes through NOON blocks
/// Throws std::invalid_argument when an entangling strategy finds no class
/// of the required shape.
MeasurementPlan plan_auto(const ReducedHamiltonian& reduced,
                          const SectorSpec& sector, Strategy strategy);

/// Proportional shot allocation: circuit c receives a share of total_shots
/// proportional to the summed |weight| of the classes it reads out, each
/// circuit at least one shot, largest-remainder rounding preserving the
/// total. Throws when total_shots < number of circuits.
std::vector<std::uint64_t> allocate_shots(const MeasurementPlan& plan,
                                          const std::vector<double>& class_weights,
                                          std::uint64_t total_shots);

/// Applies the circuit's basis rotations and decode blocks to a state.
StateVector apply_decode(const StateVector& state, const MeasurementCircuit& circuit);

/// Born-rule shots on the decoded state.
std::map<std::uint64_t, std::uint64_t> sample_circuit(const StateVector& state,
                                                      const MeasurementCircuit& circuit,
                                                      std::uint64_t shots, Rng& rng);

/// Structural validation: every class id in [0, n_classes) is read out at
/// least once, readouts sit on circuits whose bases support their
/// representative (including block patterns), and blocks never overlap.
/// Throws std::logic_error with a description on violation.
void validate_plan(const MeasurementPlan& plan,
                   const std::vector<PauliString>& class_reps);

/// JSON plan file round-trip (byte-stable layout).
std::string plan_to_json(const MeasurementPlan& plan);
MeasurementPlan plan_from_json(const std::string& text);

}  // namespace jwsym
