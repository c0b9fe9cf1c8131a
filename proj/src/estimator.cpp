#include "jwsym/estimator.hpp"

#include <cmath>
#include <stdexcept>

namespace jwsym {

EstimateResult estimate_energy(const MeasurementPlan& plan,
                               const ReducedHamiltonian& reduced,
                               const StateVector& state, std::uint64_t seed) {
    if (plan.n_qubits != reduced.n_qubits || plan.n_qubits != state.n_qubits())
        throw std::invalid_argument("plan, sum and state disagree on qubit count");
    std::vector<ClassEstimate> classes(reduced.classes.size());
    std::vector<bool> seen(reduced.classes.size(), false);
    double energy = reduced.constant;
    double variance_sum = 0.0;
    for (std::size_t ci = 0; ci < plan.circuits.size(); ++ci) {
        const auto& circuit = plan.circuits[ci];
        if (circuit.shots == 0)
            throw std::invalid_argument("circuit without shots; allocate first");
        for (const auto& t : circuit.terms) {
            if (t.class_id >= reduced.classes.size())
                throw std::invalid_argument("plan references an unknown class");
            if (seen[t.class_id])
                throw std::invalid_argument("class measured more than once");
            seen[t.class_id] = true;
        }
        Rng rng = Rng::substream(seed, ci);
        auto counts = sample_circuit(state, circuit, circuit.shots, rng);
        double n = static_cast<double>(circuit.shots);
        // Per-class means plus the shot-wise energy contribution of this
        // circuit (captures the covariance of classes sharing shots).
        double e_sum = 0.0, e_sq_sum = 0.0;
        std::vector<double> term_sum(circuit.terms.size(), 0.0);
        for (const auto& [bits, count] : counts) {
            double wcount = static_cast<double>(count);
            double e = 0.0;
            for (std::size_t ti = 0; ti < circuit.terms.size(); ++ti) {
                int v = readout_value(circuit.terms[ti], bits);
                term_sum[ti] += wcount * v;
                e += reduced.classes[circuit.terms[ti].class_id].multiplier * v;
            }
            e_sum += wcount * e;
            e_sq_sum += wcount * e * e;
        }
        for (std::size_t ti = 0; ti < circuit.terms.size(); ++ti) {
            const auto& t = circuit.terms[ti];
            double mean = term_sum[ti] / n;
            double stderr = 0.0;
            if (circuit.shots > 1) {
                double var = n * (1.0 - mean * mean) / (n - 1.0);
                stderr = std::sqrt(std::max(0.0, var) / n);
            }
            classes[t.class_id] = {t.class_id, mean, stderr, circuit.shots};
            energy += reduced.classes[t.class_id].multiplier * mean;
        }
        if (circuit.shots > 1) {
            double e_mean = e_sum / n;
            double e_var = (e_sq_sum - n * e_mean * e_mean) / (n - 1.0);
            variance_sum += std::max(0.0, e_var) / n;
        }
    }
    for (std::size_t id = 0; id < seen.size(); ++id)
        if (!seen[id])
            throw std::invalid_argument("class " + std::to_string(id) +
                                        " is not measured by the plan");
    return {energy, std::sqrt(variance_sum), std::move(classes)};
}

double stderr_scaling_exponent(const std::vector<std::uint64_t>& shots,
                               const std::vector<double>& stderrs) {
    if (shots.size() != stderrs.size() || shots.size() < 2)
        throw std::invalid_argument("need matching ladders of length >= 2");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    double n = static_cast<double>(shots.size());
    for (std::size_t i = 0; i < shots.size(); ++i) {
        if (stderrs[i] <= 0.0)
            throw std::invalid_argument("stderr ladder must be positive");
        double x = std::log(static_cast<double>(shots[i]));
        double y = std::log(stderrs[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace jwsym
