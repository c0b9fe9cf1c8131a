#include "jwsym/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

namespace jwsym {

namespace {

using Cplx = std::complex<double>;

/// Apply a Pauli string to a basis index: P |b> = phase * |permuted b>.
/// X flips the bit, Y flips with phase +-i, Z contributes a sign.
std::pair<Cplx, std::uint64_t> apply_string_to_basis(const PauliString& p,
                                                     std::uint64_t b) {
    Cplx phase = p.phase();
    std::uint64_t out = b;
    for (const auto& [q, a] : p.axes()) {
        std::uint64_t mask = std::uint64_t(1) << q;
        bool bit = (b & mask) != 0;
        switch (a) {
            case PauliAxis::X:
                out ^= mask;
                break;
            case PauliAxis::Y:
                out ^= mask;
                phase *= bit ? Cplx(0.0, -1.0) : Cplx(0.0, 1.0);
                break;
            case PauliAxis::Z:
                if (bit) phase = -phase;
                break;
            case PauliAxis::I:
                break;
        }
    }
    return {phase, out};
}

Eigen::MatrixXcd string_matrix(const PauliString& p) {
    std::uint64_t dim = std::uint64_t(1) << p.n_qubits();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::uint64_t b = 0; b < dim; ++b) {
        auto [phase, out] = apply_string_to_basis(p, b);
        m(out, b) += phase;
    }
    return m;
}

}  // namespace

void SectorSpec::validate(std::uint32_t qubit_cap) const {
    if (n_sites == 0) throw std::invalid_argument("sector: n_sites must be positive");
    if (n_up > n_sites || n_down > n_sites)
        throw std::invalid_argument("sector: particle number exceeds site count");
    if (n_qubits() > qubit_cap)
        throw std::invalid_argument("sector: " + std::to_string(n_qubits()) +
                                    " qubits exceed the oracle cap of " +
                                    std::to_string(qubit_cap));
}

std::vector<std::uint64_t> sector_basis_states(const SectorSpec& spec) {
    std::vector<std::uint64_t> ups, downs;
    std::uint64_t block = std::uint64_t(1) << spec.n_sites;
    for (std::uint64_t b = 0; b < block; ++b) {
        unsigned n = static_cast<unsigned>(std::popcount(b));
        if (n == spec.n_up) ups.push_back(b);
        if (n == spec.n_down) downs.push_back(b);
    }
    std::vector<std::uint64_t> out;
    out.reserve(ups.size() * downs.size());
    for (std::uint64_t d : downs)
        for (std::uint64_t u : ups) out.push_back(u | (d << spec.n_sites));
    std::sort(out.begin(), out.end());
    return out;
}

StateVector::StateVector(std::uint32_t n_qubits, std::vector<Cplx> amplitudes)
    : n_qubits_(n_qubits), amp_(std::move(amplitudes)) {
    if (n_qubits == 0 || n_qubits > 30)
        throw std::invalid_argument("unsupported qubit count");
    if (amp_.size() != (std::uint64_t(1) << n_qubits))
        throw std::invalid_argument("amplitude array has wrong length");
}

StateVector StateVector::basis_state(std::uint32_t n_qubits, std::uint64_t index) {
    std::vector<Cplx> amp(std::uint64_t(1) << n_qubits, Cplx(0.0, 0.0));
    amp.at(index) = 1.0;
    return StateVector(n_qubits, std::move(amp));
}

double StateVector::norm() const {
    double s = 0.0;
    for (const auto& a : amp_) s += std::norm(a);
    return std::sqrt(s);
}

void StateVector::normalize() {
    double n = norm();
    if (n == 0.0) throw std::runtime_error("cannot normalize the zero vector");
    for (auto& a : amp_) a /= n;
}

std::string StateVector::dump_amplitudes() const {
    if (n_qubits_ > 8)
        throw std::invalid_argument("amplitude dump limited to 8 qubits");
    std::ostringstream out;
    out.precision(17);
    for (std::uint64_t b = 0; b < dim(); ++b)
        out << b << " " << amp_[b].real() << " " << amp_[b].imag() << "\n";
    return out.str();
}

StateVector random_sector_state(const SectorSpec& spec, std::uint64_t seed,
                                std::uint32_t qubit_cap) {
    spec.validate(qubit_cap);
    auto basis = sector_basis_states(spec);
    if (basis.empty()) throw std::invalid_argument("empty sector");
    Rng rng(seed);
    std::vector<Cplx> amp(std::uint64_t(1) << spec.n_qubits(), Cplx(0.0, 0.0));
    for (std::uint64_t b : basis) amp[b] = Cplx(rng.normal(), rng.normal());
    StateVector state(spec.n_qubits(), std::move(amp));
    state.normalize();
    return state;
}

Cplx expectation(const StateVector& state, const PauliString& p) {
    if (p.n_qubits() != state.n_qubits())
        throw std::invalid_argument("qubit-count mismatch in expectation");
    const auto& amp = state.amplitudes();
    Cplx acc(0.0, 0.0);
    for (std::uint64_t b = 0; b < state.dim(); ++b) {
        if (amp[b] == Cplx(0.0, 0.0)) continue;
        auto [phase, out] = apply_string_to_basis(p, b);
        acc += std::conj(amp[out]) * phase * amp[b];
    }
    return acc;
}

double expectation(const StateVector& state, const WeightedPauliSum& sum) {
    if (sum.n_qubits() != state.n_qubits())
        throw std::invalid_argument("qubit-count mismatch in expectation");
    double acc = 0.0;
    for (const auto& t : sum.terms()) {
        Cplx v = expectation(state, t.string);
        acc += t.coeff * v.real();
    }
    return acc;
}

StateVector apply_hadamard(const StateVector& state, std::uint32_t qubit) {
    if (qubit >= state.n_qubits()) throw std::invalid_argument("qubit out of range");
    std::vector<Cplx> amp = state.amplitudes();
    std::uint64_t mask = std::uint64_t(1) << qubit;
    const double inv_sqrt2 = 0.70710678118654752440;
    for (std::uint64_t b = 0; b < amp.size(); ++b) {
        if (b & mask) continue;
        Cplx a0 = amp[b], a1 = amp[b | mask];
        amp[b] = inv_sqrt2 * (a0 + a1);
        amp[b | mask] = inv_sqrt2 * (a0 - a1);
    }
    return StateVector(state.n_qubits(), std::move(amp));
}

StateVector apply_y_basis_rotation(const StateVector& state, std::uint32_t qubit) {
    if (qubit >= state.n_qubits()) throw std::invalid_argument("qubit out of range");
    // H * S^dagger: maps (|0> + i|1>)/sqrt2 -> |0>, (|0> - i|1>)/sqrt2 -> |1>.
    std::vector<Cplx> amp = state.amplitudes();
    std::uint64_t mask = std::uint64_t(1) << qubit;
    const double inv_sqrt2 = 0.70710678118654752440;
    const Cplx minus_i(0.0, -1.0);
    for (std::uint64_t b = 0; b < amp.size(); ++b) {
        if (b & mask) continue;
        Cplx a0 = amp[b], a1 = minus_i * amp[b | mask];
        amp[b] = inv_sqrt2 * (a0 + a1);
        amp[b | mask] = inv_sqrt2 * (a0 - a1);
    }
    return StateVector(state.n_qubits(), std::move(amp));
}

StateVector apply_cnot(const StateVector& state, std::uint32_t control,
                       std::uint32_t target) {
    if (control >= state.n_qubits() || target >= state.n_qubits() ||
        control == target)
        throw std::invalid_argument("bad CNOT wiring");
    std::vector<Cplx> amp = state.amplitudes();
    std::uint64_t cmask = std::uint64_t(1) << control;
    std::uint64_t tmask = std::uint64_t(1) << target;
    for (std::uint64_t b = 0; b < amp.size(); ++b) {
        if ((b & cmask) && !(b & tmask)) std::swap(amp[b], amp[b | tmask]);
    }
    return StateVector(state.n_qubits(), std::move(amp));
}

std::map<std::uint64_t, std::uint64_t> sample_counts(const StateVector& state,
                                                     std::uint64_t shots, Rng& rng) {
    if (shots == 0) throw std::invalid_argument("shots must be >= 1");
    const auto& amp = state.amplitudes();
    std::vector<double> cdf(amp.size());
    double acc = 0.0;
    for (std::size_t b = 0; b < amp.size(); ++b) {
        acc += std::norm(amp[b]);
        cdf[b] = acc;
    }
    std::map<std::uint64_t, std::uint64_t> counts;
    for (std::uint64_t s = 0; s < shots; ++s) {
        double u = rng.uniform() * acc;
        auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        std::uint64_t b = static_cast<std::uint64_t>(it - cdf.begin());
        if (b >= amp.size()) b = amp.size() - 1;
        ++counts[b];
    }
    return counts;
}

std::pair<double, StateVector> exact_ground_state(const WeightedPauliSum& sum,
                                                  const SectorSpec& spec,
                                                  std::uint32_t qubit_cap) {
    spec.validate(qubit_cap);
    if (sum.n_qubits() != spec.n_qubits())
        throw std::invalid_argument("qubit-count mismatch in ground-state solve");
    auto basis = sector_basis_states(spec);
    if (basis.empty()) throw std::invalid_argument("empty sector");
    std::vector<std::int64_t> position(std::uint64_t(1) << spec.n_qubits(), -1);
    for (std::size_t idx = 0; idx < basis.size(); ++idx) position[basis[idx]] = idx;
    // Sector-restricted matrix P H P. Individual strings can map outside
    // the sector (X X vs Y Y components cancel only in the sum), so
    // out-of-sector images simply do not land on any row.
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
    for (std::size_t col = 0; col < basis.size(); ++col) {
        for (const auto& t : sum.terms()) {
            auto [phase, out] = apply_string_to_basis(t.string, basis[col]);
            std::int64_t row = position[out];
            if (row < 0) continue;
            h(row, col) += t.coeff * phase;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("diagonalization failed");
    Eigen::VectorXcd ground = solver.eigenvectors().col(0);
    std::vector<Cplx> amp(std::uint64_t(1) << spec.n_qubits(), Cplx(0.0, 0.0));
    for (std::size_t idx = 0; idx < basis.size(); ++idx) amp[basis[idx]] = ground(idx);
    StateVector state(spec.n_qubits(), std::move(amp));
    state.normalize();
    return {solver.eigenvalues()(0), state};
}

std::pair<double, StateVector> exact_ground_state(const FermionHamiltonian& h,
                                                  const SectorSpec& spec,
                                                  std::uint32_t qubit_cap) {
    if (h.n_sites() != spec.n_sites)
        throw std::invalid_argument("sector does not match Hamiltonian size");
    return exact_ground_state(jw_hamiltonian(h), spec, qubit_cap);
}

MatrixCheckReport jw_matrix_check(std::uint32_t n_sites, double tolerance) {
    if (n_sites == 0 || n_sites > 3)
        throw std::invalid_argument("matrix check supports 1..3 sites");
    std::uint64_t dim = std::uint64_t(1) << (2 * n_sites);
    struct Op {
        std::uint32_t site;
        SpinSpecies spin;
        bool dagger;
        Eigen::MatrixXcd matrix;
    };
    std::vector<Op> ops;
    for (std::uint32_t site = 0; site < n_sites; ++site) {
        for (SpinSpecies spin : {SpinSpecies::up, SpinSpecies::down}) {
            for (bool dagger : {false, true}) {
                Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
                for (const auto& [c, p] : jw_ladder(site, spin, dagger, n_sites))
                    m += c * string_matrix(p);
                ops.push_back({site, spin, dagger, std::move(m)});
            }
        }
    }
    const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(dim, dim);
    double max_residual = 0.0;
    std::size_t checks = 0;
    for (const auto& a : ops) {
        for (const auto& b : ops) {
            Eigen::MatrixXcd anti = a.matrix * b.matrix + b.matrix * a.matrix;
            Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(dim, dim);
            bool delta = a.site == b.site && a.spin == b.spin && a.dagger != b.dagger;
            if (delta) expected = identity;
            max_residual = std::max(max_residual,
                                    (anti - expected).cwiseAbs().maxCoeff());
            ++checks;
        }
    }
    return {n_sites, max_residual, checks, max_residual < tolerance};
}

}  // namespace jwsym
