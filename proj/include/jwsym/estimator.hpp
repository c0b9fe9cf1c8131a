#pragma once

#include <cstdint>
#include <vector>

#include "jwsym/planner.hpp"
#include "jwsym/statevector.hpp"
#include "jwsym/symmetry.hpp"

namespace jwsym {

struct ClassEstimate {
    std::uint32_t class_id;
    double mean;     // decoded +-1 average = estimate of <representative>
    double stderr;   // sample standard error of the mean
    std::uint64_t shots;
};

struct EstimateResult {
    double energy;         // constant + sum of multiplier * mean
    double energy_stderr;  // circuits are independent; within-circuit
                           // covariance is taken from the shot samples
    std::vector<ClassEstimate> classes;
};

/// Shot-based estimate of the reduced Hamiltonian on a state. The plan's
/// per-circuit shot counts must be filled in (allocate_shots) and every
/// class must be read out exactly once across the plan. Sampling uses one
/// deterministic substream per circuit, so results do not depend on
/// execution order.
EstimateResult estimate_energy(const MeasurementPlan& plan,
                               const ReducedHamiltonian& reduced,
                               const StateVector& state, std::uint64_t seed);

/// Least-squares slope of log(stderr) versus log(shots); the
/// shots^(-1/2) law makes this -0.5.
double stderr_scaling_exponent(const std::vector<std::uint64_t>& shots,
                               const std::vector<double>& stderrs);

}  // namespace jwsym
