#include "jwsym/planner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace jwsym {

namespace {

char basis_char(MeasBasis b) { return static_cast<char>(b); }

MeasBasis basis_from_char(char c) {
    switch (c) {
        case 'I': return MeasBasis::untouched;
        case 'Z': return MeasBasis::z;
        case 'X': return MeasBasis::x;
        case 'Y': return MeasBasis::y;
        case 'B': return MeasBasis::block;
        default: throw std::invalid_argument(std::string("bad basis letter '") + c + "'");
    }
}

MeasBasis basis_for_axis(PauliAxis a) {
    switch (a) {
        case PauliAxis::X: return MeasBasis::x;
        case PauliAxis::Y: return MeasBasis::y;
        case PauliAxis::Z: return MeasBasis::z;
        case PauliAxis::I: return MeasBasis::untouched;
    }
    throw std::logic_error("invalid axis");
}

MeasurementCircuit fresh_circuit(std::uint32_t n_qubits) {
    MeasurementCircuit c;
    c.basis.assign(n_qubits, MeasBasis::untouched);
    return c;
}

/// Nonentangled placement: every support qubit free or already in the
/// needed basis.
bool place_plain(MeasurementCircuit& c, const PauliString& rep,
                 std::uint32_t class_id) {
    for (const auto& [q, a] : rep.axes()) {
        MeasBasis need = basis_for_axis(a);
        if (c.basis[q] != MeasBasis::untouched && c.basis[q] != need) return false;
    }
    for (const auto& [q, a] : rep.axes()) c.basis[q] = basis_for_axis(a);
    c.terms.push_back({class_id, 1, rep.support()});
    return true;
}

/// Readout of a block-decoded pattern. For bell, XX reads z_k and YY reads
/// -z_k z_i; for noon the parity qubit is the lowest one and every other
/// Y-axis qubit joins the product, with sign i^(Y count).
std::optional<TermReadout> block_readout(const EntangledBlock& block,
                                         const PauliString& rep,
                                         std::uint32_t class_id) {
    const auto xy = rep.xy_support();
    if (xy != block.qubits) return std::nullopt;
    std::size_t y_count = 0;
    for (std::uint32_t q : xy)
        if (rep.axis(q) == PauliAxis::Y) ++y_count;
    if (block.kind == EntangledBlock::Kind::bell) {
        if (y_count != 0 && y_count != 2) return std::nullopt;
        TermReadout t{class_id, y_count == 0 ? 1 : -1, {}};
        t.product_qubits.push_back(block.qubits[0]);
        if (y_count == 2) t.product_qubits.push_back(block.qubits[1]);
        for (std::uint32_t q : rep.z_support()) t.product_qubits.push_back(q);
        std::sort(t.product_qubits.begin(), t.product_qubits.end());
        return t;
    }
    if (y_count % 2 != 0) return std::nullopt;
    TermReadout t{class_id, y_count == 2 ? -1 : 1, {}};
    t.product_qubits.push_back(block.qubits[0]);
    for (std::size_t j = 1; j < block.qubits.size(); ++j)
        if (rep.axis(block.qubits[j]) == PauliAxis::Y)
            t.product_qubits.push_back(block.qubits[j]);
    for (std::uint32_t q : rep.z_support()) t.product_qubits.push_back(q);
    std::sort(t.product_qubits.begin(), t.product_qubits.end());
    return t;
}

/// Entangled placement: the class's X/Y support becomes (or reuses) a block
/// of the given kind; Z support is measured in the computational basis.
bool place_block(MeasurementCircuit& c, const PauliString& rep,
                 std::uint32_t class_id, EntangledBlock::Kind kind) {
    const auto xy = rep.xy_support();
    std::size_t want = kind == EntangledBlock::Kind::bell ? 2 : 4;
    if (xy.size() != want) return false;
    const EntangledBlock* existing = nullptr;
    for (const auto& b : c.blocks)
        if (b.qubits == xy) {
            if (b.kind != kind) return false;
            existing = &b;
            break;
        }
    if (existing == nullptr) {
        for (std::uint32_t q : xy)
            if (c.basis[q] != MeasBasis::untouched) return false;
    }
    for (std::uint32_t q : rep.z_support())
        if (c.basis[q] != MeasBasis::untouched && c.basis[q] != MeasBasis::z)
            return false;
    EntangledBlock block{kind, xy};
    auto readout = block_readout(block, rep, class_id);
    if (!readout) return false;
    if (existing == nullptr) {
        for (std::uint32_t q : xy) c.basis[q] = MeasBasis::block;
        c.blocks.push_back(std::move(block));
    }
    for (std::uint32_t q : rep.z_support()) c.basis[q] = MeasBasis::z;
    c.terms.push_back(std::move(*readout));
    return true;
}

enum class PlaceMode { plain, bell, noon };

bool place(MeasurementCircuit& c, const PauliString& rep, std::uint32_t class_id,
           PlaceMode mode) {
    switch (mode) {
        case PlaceMode::plain: return place_plain(c, rep, class_id);
        case PlaceMode::bell: return place_block(c, rep, class_id,
                                                 EntangledBlock::Kind::bell);
        case PlaceMode::noon: return place_block(c, rep, class_id,
                                                 EntangledBlock::Kind::noon);
    }
    return false;
}

/// Greedy order: support length descending, then lowest qubit, then axes.
std::vector<std::uint32_t> greedy_order(const std::vector<PauliString>& reps) {
    std::vector<std::uint32_t> order(reps.size());
    std::iota(order.begin(), order.end(), 0U);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        const auto& ra = reps[a];
        const auto& rb = reps[b];
        if (ra.weight() != rb.weight()) return ra.weight() > rb.weight();
        std::uint32_t la = ra.axes().empty() ? 0 : ra.axes().front().first;
        std::uint32_t lb = rb.axes().empty() ? 0 : rb.axes().front().first;
        if (la != lb) return la < lb;
        return ra.axes() < rb.axes();
    });
    return order;
}

void first_fit(MeasurementPlan& plan, const PauliString& rep,
               std::uint32_t class_id, PlaceMode mode) {
    for (auto& c : plan.circuits)
        if (place(c, rep, class_id, mode)) return;
    plan.circuits.push_back(fresh_circuit(plan.n_qubits));
    if (!place(plan.circuits.back(), rep, class_id, mode))
        throw std::logic_error("class does not fit an empty circuit");
}

}  // namespace

int readout_value(const TermReadout& term, std::uint64_t outcome_bits) {
    int v = term.sign;
    for (std::uint32_t q : term.product_qubits)
        if (outcome_bits & (std::uint64_t(1) << q)) v = -v;
    return v;
}

std::uint64_t circuit_count_closed_form(std::uint32_t n_sites) {
    if (n_sites < 2) throw std::invalid_argument("circuit count needs N >= 2");
    std::int64_t n = n_sites;
    std::int64_t h = (n + 1) / 2;
    return static_cast<std::uint64_t>(h * h + (n - 1) * (n - 2 * h) / 2);
}

std::vector<PauliString> hopping_classes(
    std::uint32_t n_sites,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs) {
    std::uint32_t n_qubits = 2 * n_sites;
    std::vector<PauliString> reps;
    for (SpinSpecies spin : {SpinSpecies::up, SpinSpecies::down}) {
        for (const auto& [a, b] : pairs) {
            if (a >= n_sites || b >= n_sites || a == b)
                throw std::invalid_argument("hopping pair indices out of range");
            std::uint32_t lo = species_qubit(std::min(a, b), spin, n_sites);
            std::uint32_t hi = species_qubit(std::max(a, b), spin, n_sites);
            std::vector<PauliString::AxisEntry> axes;
            axes.emplace_back(lo, PauliAxis::X);
            for (std::uint32_t q = lo + 1; q < hi; ++q)
                axes.emplace_back(q, PauliAxis::Z);
            axes.emplace_back(hi, PauliAxis::X);
            reps.emplace_back(n_qubits, std::move(axes));
        }
    }
    std::sort(reps.begin(), reps.end(), PauliString::axes_less);
    return reps;
}

MeasurementPlan plan_hopping_nonentangled(
    std::uint32_t n_sites,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs,
    const SectorSpec& sector) {
    std::uint32_t n_qubits = 2 * n_sites;
    std::vector<PauliString> reps = hopping_classes(n_sites, pairs);
    std::map<std::vector<PauliString::AxisEntry>, std::uint32_t> id_of;
    for (std::uint32_t i = 0; i < reps.size(); ++i) id_of[reps[i].axes()] = i;

    // Normalized (lo, hi) site pairs grouped by distance.
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    std::map<std::uint32_t, std::vector<std::pair<std::uint32_t, std::uint32_t>>>
        layers;
    for (const auto& [a, b] : pairs) {
        std::uint32_t lo = std::min(a, b), hi = std::max(a, b);
        if (!seen.insert({lo, hi}).second)
            throw std::invalid_argument("duplicate hopping pair");
        layers[hi - lo].push_back({lo, hi});
    }
    for (auto& [d, v] : layers) std::sort(v.begin(), v.end());

    MeasurementPlan plan{n_qubits, sector, {}};
    auto add_pair = [&](MeasurementCircuit& c, std::uint32_t lo, std::uint32_t hi) {
        for (SpinSpecies spin : {SpinSpecies::up, SpinSpecies::down}) {
            std::uint32_t qlo = species_qubit(lo, spin, n_sites);
            std::uint32_t qhi = species_qubit(hi, spin, n_sites);
            c.basis[qlo] = MeasBasis::x;
            c.basis[qhi] = MeasBasis::x;
            std::vector<std::uint32_t> product{qlo};
            for (std::uint32_t q = qlo + 1; q < qhi; ++q) {
                c.basis[q] = MeasBasis::z;
                product.push_back(q);
            }
            product.push_back(qhi);
            std::vector<PauliString::AxisEntry> axes;
            axes.emplace_back(qlo, PauliAxis::X);
            for (std::uint32_t q = qlo + 1; q < qhi; ++q)
                axes.emplace_back(q, PauliAxis::Z);
            axes.emplace_back(qhi, PauliAxis::X);
            c.terms.push_back({id_of.at(axes), 1, std::move(product)});
        }
    };

    for (const auto& [d, layer] : layers) {
        if (2 * d <= n_sites - 1) {
            // Chaining regime: pairs at the same offset share endpoint
            // qubits and pack into one circuit per offset.
            for (std::uint32_t offset = 0; offset < d; ++offset) {
                MeasurementCircuit c = fresh_circuit(n_qubits);
                bool used = false;
                for (const auto& [lo, hi] : layer) {
                    if (lo % d != offset) continue;
                    add_pair(c, lo, hi);
                    used = true;
                }
                if (used) plan.circuits.push_back(std::move(c));
            }
        } else {
            for (const auto& [lo, hi] : layer) {
                MeasurementCircuit c = fresh_circuit(n_qubits);
                add_pair(c, lo, hi);
                plan.circuits.push_back(std::move(c));
            }
        }
    }
    return plan;
}

MeasurementPlan plan_bell(std::uint32_t n_qubits,
                          const std::vector<BellPair>& pairs,
                          const SectorSpec& sector) {
    // Sort by span descending, then position, mirroring the greedy order.
    std::vector<std::uint32_t> order(pairs.size());
    std::iota(order.begin(), order.end(), 0U);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        std::uint32_t da = pairs[a].i - pairs[a].k, db = pairs[b].i - pairs[b].k;
        if (da != db) return da > db;
        return pairs[a].k < pairs[b].k;
    });
    MeasurementPlan plan{n_qubits, sector, {}};
    for (std::uint32_t p : order) {
        const BellPair& pair = pairs[p];
        if (pair.k >= pair.i || pair.i >= n_qubits)
            throw std::invalid_argument("bad Bell pair qubits");
        std::vector<PauliString::AxisEntry> xx, yy;
        xx.emplace_back(pair.k, PauliAxis::X);
        yy.emplace_back(pair.k, PauliAxis::Y);
        for (std::uint32_t q : pair.z_string) {
            xx.emplace_back(q, PauliAxis::Z);
            yy.emplace_back(q, PauliAxis::Z);
        }
        xx.emplace_back(pair.i, PauliAxis::X);
        yy.emplace_back(pair.i, PauliAxis::Y);
        PauliString xrep(n_qubits, std::move(xx));
        PauliString yrep(n_qubits, std::move(yy));
        bool placed = false;
        for (auto& c : plan.circuits) {
            MeasurementCircuit trial = c;
            if (place_block(trial, xrep, 2 * p, EntangledBlock::Kind::bell) &&
                place_block(trial, yrep, 2 * p + 1, EntangledBlock::Kind::bell)) {
                c = std::move(trial);
                placed = true;
                break;
            }
        }
        if (!placed) {
            MeasurementCircuit c = fresh_circuit(n_qubits);
            if (!place_block(c, xrep, 2 * p, EntangledBlock::Kind::bell) ||
                !place_block(c, yrep, 2 * p + 1, EntangledBlock::Kind::bell))
                throw std::logic_error("Bell pair does not fit an empty circuit");
            plan.circuits.push_back(std::move(c));
        }
    }
    return plan;
}

MeasurementPlan plan_noon(std::uint32_t n_qubits,
                          const std::vector<QuarticFamily>& families,
                          const SectorSpec& sector) {
    std::vector<std::uint32_t> order(families.size());
    std::iota(order.begin(), order.end(), 0U);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        std::uint32_t sa = families[a].quadruple.back() - families[a].quadruple.front();
        std::uint32_t sb = families[b].quadruple.back() - families[b].quadruple.front();
        if (sa != sb) return sa > sb;
        return families[a].quadruple < families[b].quadruple;
    });
    MeasurementPlan plan{n_qubits, sector, {}};
    for (std::uint32_t f : order) {
        const QuarticFamily& family = families[f];
        if (family.strings.size() != 8)
            throw std::invalid_argument("quartic family needs 8 strings");
        // Canonical axes order fixes the readout ids within the family.
        std::vector<PauliString> members;
        for (const auto& [coeff, str] : family.strings)
            members.push_back(str.without_phase());
        std::sort(members.begin(), members.end(), PauliString::axes_less);
        bool placed = false;
        auto try_all = [&](MeasurementCircuit& c) {
            MeasurementCircuit trial = c;
            for (std::size_t j = 0; j < members.size(); ++j) {
                if (!place_block(trial, members[j],
                                 static_cast<std::uint32_t>(8 * f + j),
                                 EntangledBlock::Kind::noon))
                    return false;
            }
            c = std::move(trial);
            return true;
        };
        for (auto& c : plan.circuits)
            if (try_all(c)) {
                placed = true;
                break;
            }
        if (!placed) {
            MeasurementCircuit c = fresh_circuit(n_qubits);
            if (!try_all(c))
                throw std::logic_error("quartic family does not fit an empty circuit");
            plan.circuits.push_back(std::move(c));
        }
    }
    return plan;
}

Strategy parse_strategy(const std::string& name) {
    if (name == "nonentangled") return Strategy::nonentangled;
    if (name == "bell") return Strategy::bell;
    if (name == "noon") return Strategy::noon;
    if (name == "entangled") return Strategy::entangled;
    if (name == "hybrid") return Strategy::hybrid;
    throw std::invalid_argument("unknown strategy '" + name + "'");
}

const char* strategy_name(Strategy s) {
    switch (s) {
        case Strategy::nonentangled: return "nonentangled";
        case Strategy::bell: return "bell";
        case Strategy::noon: return "noon";
        case Strategy::entangled: return "entangled";
        case Strategy::hybrid: return "hybrid";
    }
    return "?";
}

MeasurementPlan plan_auto(const ReducedHamiltonian& reduced,
                          const SectorSpec& sector, Strategy strategy) {
    if (sector.n_qubits() != reduced.n_qubits)
        throw std::invalid_argument("sector does not match the reduced sum");
    std::vector<PauliString> reps;
    reps.reserve(reduced.classes.size());
    for (const auto& cls : reduced.classes) reps.push_back(cls.representative);

    auto is_bell_shape = [](const PauliString& rep) {
        auto xy = rep.xy_support();
        if (xy.size() != 2) return false;
        std::size_t y = rep.count_axis(PauliAxis::Y);
        return y == 0 || y == 2;
    };
    auto is_noon_shape = [](const PauliString& rep) {
        return rep.xy_support().size() == 4 &&
               rep.count_axis(PauliAxis::Y) % 2 == 0;
    };

    auto mode_of = [&](const PauliString& rep) {
        switch (strategy) {
            case Strategy::nonentangled: return PlaceMode::plain;
            case Strategy::bell:
                return is_bell_shape(rep) ? PlaceMode::bell : PlaceMode::plain;
            case Strategy::noon:
                return is_noon_shape(rep) ? PlaceMode::noon : PlaceMode::plain;
            case Strategy::entangled:
                if (is_bell_shape(rep)) return PlaceMode::bell;
                if (is_noon_shape(rep)) return PlaceMode::noon;
                return PlaceMode::plain;
            case Strategy::hybrid:
                return is_noon_shape(rep) ? PlaceMode::noon : PlaceMode::plain;
        }
        return PlaceMode::plain;
    };

    if (strategy == Strategy::bell &&
        std::none_of(reps.begin(), reps.end(), is_bell_shape))
        throw std::invalid_argument(
            "bell strategy requested but no two-qubit XX/YY class exists");
    if (strategy == Strategy::noon &&
        std::none_of(reps.begin(), reps.end(), is_noon_shape))
        throw std::invalid_argument(
            "noon strategy requested but no quartic family class exists");

    MeasurementPlan plan{reduced.n_qubits, sector, {}};
    for (std::uint32_t id : greedy_order(reps))
        first_fit(plan, reps[id], id, mode_of(reps[id]));
    return plan;
}

std::vector<std::uint64_t> allocate_shots(const MeasurementPlan& plan,
                                          const std::vector<double>& class_weights,
                                          std::uint64_t total_shots) {
    std::size_t n = plan.circuits.size();
    if (n == 0) return {};
    if (total_shots < n)
        throw std::invalid_argument("shot budget below circuit count");
    std::vector<double> weight(n, 0.0);
    for (std::size_t c = 0; c < n; ++c)
        for (const auto& t : plan.circuits[c].terms)
            weight[c] += std::abs(class_weights.at(t.class_id));
    double total_weight = std::accumulate(weight.begin(), weight.end(), 0.0);
    std::vector<std::uint64_t> shots(n, 0);
    std::vector<std::pair<double, std::size_t>> fractional;
    std::uint64_t assigned = 0;
    for (std::size_t c = 0; c < n; ++c) {
        double quota = total_weight > 0.0
                           ? static_cast<double>(total_shots) * weight[c] / total_weight
                           : static_cast<double>(total_shots) / static_cast<double>(n);
        shots[c] = static_cast<std::uint64_t>(std::floor(quota));
        assigned += shots[c];
        fractional.push_back({quota - std::floor(quota), c});
    }
    // Largest remainder, ties to the earlier circuit.
    std::sort(fractional.begin(), fractional.end(),
              [](const auto& a, const auto& b) {
                  if (a.first != b.first) return a.first > b.first;
                  return a.second < b.second;
              });
    for (std::size_t j = 0; assigned < total_shots; ++j, ++assigned)
        ++shots[fractional[j % n].second];
    // Every circuit runs at least once.
    for (std::size_t c = 0; c < n; ++c) {
        while (shots[c] == 0) {
            std::size_t donor = std::max_element(shots.begin(), shots.end()) -
                                shots.begin();
            if (shots[donor] <= 1) throw std::logic_error("infeasible shot budget");
            --shots[donor];
            ++shots[c];
        }
    }
    return shots;
}

StateVector apply_decode(const StateVector& state, const MeasurementCircuit& circuit) {
    if (circuit.basis.size() != state.n_qubits())
        throw std::invalid_argument("circuit does not match the register");
    StateVector out = state;
    for (std::uint32_t q = 0; q < circuit.basis.size(); ++q) {
        if (circuit.basis[q] == MeasBasis::x) out = apply_hadamard(out, q);
        else if (circuit.basis[q] == MeasBasis::y) out = apply_y_basis_rotation(out, q);
    }
    for (const auto& block : circuit.blocks) {
        if (block.kind == EntangledBlock::Kind::bell) {
            out = apply_cnot(out, block.qubits[0], block.qubits[1]);
            out = apply_hadamard(out, block.qubits[0]);
        } else {
            out = apply_cnot(out, block.qubits[0], block.qubits[3]);
            out = apply_cnot(out, block.qubits[0], block.qubits[2]);
            out = apply_cnot(out, block.qubits[0], block.qubits[1]);
            out = apply_hadamard(out, block.qubits[0]);
        }
    }
    return out;
}

std::map<std::uint64_t, std::uint64_t> sample_circuit(const StateVector& state,
                                                      const MeasurementCircuit& circuit,
                                                      std::uint64_t shots, Rng& rng) {
    return sample_counts(apply_decode(state, circuit), shots, rng);
}

void validate_plan(const MeasurementPlan& plan,
                   const std::vector<PauliString>& class_reps) {
    std::vector<bool> covered(class_reps.size(), false);
    for (std::size_t ci = 0; ci < plan.circuits.size(); ++ci) {
        const auto& c = plan.circuits[ci];
        auto fail = [&](const std::string& what) {
            throw std::logic_error("circuit " + std::to_string(ci) + ": " + what);
        };
        if (c.basis.size() != plan.n_qubits) fail("basis length mismatch");
        std::set<std::uint32_t> block_qubits;
        for (const auto& b : c.blocks) {
            std::size_t want = b.kind == EntangledBlock::Kind::bell ? 2 : 4;
            if (b.qubits.size() != want) fail("block arity");
            if (!std::is_sorted(b.qubits.begin(), b.qubits.end())) fail("block order");
            for (std::uint32_t q : b.qubits) {
                if (q >= plan.n_qubits) fail("block qubit range");
                if (!block_qubits.insert(q).second) fail("overlapping blocks");
                if (c.basis[q] != MeasBasis::block) fail("block qubit not marked B");
            }
        }
        for (std::uint32_t q = 0; q < plan.n_qubits; ++q)
            if (c.basis[q] == MeasBasis::block && !block_qubits.count(q))
                fail("stray block marker");
        for (const auto& t : c.terms) {
            if (t.class_id >= class_reps.size()) fail("class id out of range");
            covered[t.class_id] = true;
            const PauliString& rep = class_reps[t.class_id];
            for (std::uint32_t q : rep.z_support())
                if (c.basis[q] != MeasBasis::z) fail("Z support not in Z basis");
            auto xy = rep.xy_support();
            bool plain = true;
            for (std::uint32_t q : xy)
                if (c.basis[q] == MeasBasis::block) plain = false;
            TermReadout expected{t.class_id, 1, {}};
            if (plain) {
                for (const auto& [q, a] : rep.axes())
                    if (c.basis[q] != basis_for_axis(a))
                        fail("basis does not measure the representative");
                expected.product_qubits = rep.support();
            } else {
                const EntangledBlock* host = nullptr;
                for (const auto& b : c.blocks)
                    if (b.qubits == xy) host = &b;
                if (host == nullptr) fail("X/Y support does not match a block");
                auto r = block_readout(*host, rep, t.class_id);
                if (!r) fail("block cannot decode the representative");
                expected = *r;
            }
            if (expected.sign != t.sign ||
                expected.product_qubits != t.product_qubits)
                fail("stored readout differs from the decode rule");
        }
    }
    for (std::size_t id = 0; id < covered.size(); ++id)
        if (!covered[id])
            throw std::logic_error("class " + std::to_string(id) +
                                   " is not measured by any circuit");
}

std::string plan_to_json(const MeasurementPlan& plan) {
    nlohmann::ordered_json j;
    j["n_qubits"] = plan.n_qubits;
    j["sector"] = {{"up", plan.sector.n_up}, {"down", plan.sector.n_down}};
    j["circuits"] = nlohmann::ordered_json::array();
    for (const auto& c : plan.circuits) {
        std::string basis;
        for (MeasBasis b : c.basis) basis += basis_char(b);
        nlohmann::ordered_json blocks = nlohmann::ordered_json::array();
        for (const auto& b : c.blocks)
            blocks.push_back(
                {{"kind", b.kind == EntangledBlock::Kind::bell ? "bell" : "noon"},
                 {"qubits", b.qubits}});
        nlohmann::ordered_json terms = nlohmann::ordered_json::array();
        for (const auto& t : c.terms)
            terms.push_back({{"class_id", t.class_id},
                             {"sign", t.sign},
                             {"product_qubits", t.product_qubits}});
        j["circuits"].push_back({{"basis", basis},
                                 {"blocks", blocks},
                                 {"terms", terms},
                                 {"shots", c.shots}});
    }
    return j.dump(2) + "\n";
}

MeasurementPlan plan_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    MeasurementPlan plan;
    plan.n_qubits = j.at("n_qubits").get<std::uint32_t>();
    if (plan.n_qubits == 0 || plan.n_qubits % 2 != 0)
        throw std::invalid_argument("plan needs a positive even qubit count");
    plan.sector = SectorSpec{plan.n_qubits / 2,
                             j.at("sector").at("up").get<std::uint32_t>(),
                             j.at("sector").at("down").get<std::uint32_t>()};
    for (const auto& cj : j.at("circuits")) {
        MeasurementCircuit c;
        std::string basis = cj.at("basis").get<std::string>();
        if (basis.size() != plan.n_qubits)
            throw std::invalid_argument("plan basis length mismatch");
        for (char ch : basis) c.basis.push_back(basis_from_char(ch));
        for (const auto& bj : cj.at("blocks")) {
            EntangledBlock b;
            std::string kind = bj.at("kind").get<std::string>();
            if (kind == "bell") b.kind = EntangledBlock::Kind::bell;
            else if (kind == "noon") b.kind = EntangledBlock::Kind::noon;
            else throw std::invalid_argument("unknown block kind '" + kind + "'");
            b.qubits = bj.at("qubits").get<std::vector<std::uint32_t>>();
            c.blocks.push_back(std::move(b));
        }
        for (const auto& tj : cj.at("terms")) {
            TermReadout t;
            t.class_id = tj.at("class_id").get<std::uint32_t>();
            t.sign = tj.at("sign").get<int>();
            if (t.sign != 1 && t.sign != -1)
                throw std::invalid_argument("readout sign must be +-1");
            t.product_qubits =
                tj.at("product_qubits").get<std::vector<std::uint32_t>>();
            c.terms.push_back(std::move(t));
        }
        c.shots = cj.at("shots").get<std::uint64_t>();
        plan.circuits.push_back(std::move(c));
    }
    return plan;
}

}  // namespace jwsym
