/*
 * Copyright 2026 The pgfix authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "game.hpp"
#include "solve_result.hpp"
#include "timestamp.hpp"

namespace pgfix {

/* Nested fixpoint solver.
 *
 * The winning region of player Even is the value of a fixpoint expression
 * over d = max_priority + 1 set variables X_0..X_{d-1}, alternating between
 * greatest (even index) and least (odd index) fixpoints from the inside
 * out. One evaluation step computes
 *
 *   Psi(X) = { v in V_Even | some successor t has t in X_{prio(t)} }
 *          | { v in V_Odd  | every successor t has t in X_{prio(t)} }
 *
 * and stores it in X_0. When X_i stops changing its value is shifted into
 * X_{i+1} and everything below restarts. The counter vector `count` tracks
 * the iteration number at every level and doubles as the timestamp attached
 * to recorded strategy decisions.
 */

struct SolverConfig {
    // Keep X_i restricted to nodes of priority i; Psi is computed in a
    // working set and only its priority-i slice is stored per level.
    bool restrict_to_priority = false;
    // Cache the per-level diamond/box contributions and recompute only
    // levels whose variable changed since the last evaluation.
    bool cache_modal_parts = false;
    // On a restart after a shift to level i, re-initialize only
    // X_{i-1}, X_{i-3}, ...; variables of the other kind resume from their
    // current value (they move monotonically in the right direction).
    bool eliminate_resets = false;
    // Record a deep copy of the variable bank after every evaluation.
    bool log_snapshots = false;
    // Keep iterating every level until its counter reaches n even after the
    // value stabilized. Used by the credit-game oracle tests, which need
    // the bank value at every counter combination. Forces log_snapshots and
    // excludes the optimization flags.
    bool full_iteration_mode = false;

    uint64_t snapshot_budget = 10'000'000;
};

struct Snapshot {
    Timestamp stamp;
    std::vector<NodeSet> bank;
};

struct IterationState {
    std::vector<NodeSet> x;
    std::vector<std::optional<NodeSet>> x_shadow; // unset until first written
    Timestamp count;
    std::vector<uint32_t> high_water;
    uint64_t evals = 0;
    std::vector<Snapshot> snapshots;
};

/** Re-initialize level i: X_i becomes the full set (even i) or empty (odd
 *  i), restricted to priority-i nodes under restrict_to_priority, and the
 *  level counter restarts. */
inline void init_level(IterationState& st, const ParityGame& g, const SolverConfig& cfg,
                       uint32_t i) {
    if (i % 2 == 0) {
        st.x[i] = cfg.restrict_to_priority ? g.priority_mask(i) : g.full_set();
    } else {
        st.x[i] = NodeSet(g.node_count());
    }
    st.count[i] = 0;
}

inline IterationState make_iteration_state(const ParityGame& g, const SolverConfig& cfg) {
    uint32_t d = g.priority_bound();
    IterationState st;
    st.x.assign(d, NodeSet(g.node_count()));
    st.x_shadow.assign(d, std::nullopt);
    st.count = Timestamp(d);
    st.high_water.assign(d, 0);
    for (uint32_t i = 0; i < d; ++i) init_level(st, g, cfg, i);
    return st;
}

inline NodeSet eval_diamond(const ParityGame& g, std::span<const NodeSet> x) {
    NodeSet out(g.node_count());
    for (uint32_t v = 0; v < g.node_count(); ++v) {
        if (g.owner(v) != Player::Even) continue;
        for (NodeId t : g.successors(v)) {
            if (x[g.priority(t)].test(t)) {
                out.set(v);
                break;
            }
        }
    }
    return out;
}

inline NodeSet eval_box(const ParityGame& g, std::span<const NodeSet> x) {
    NodeSet out(g.node_count());
    for (uint32_t v = 0; v < g.node_count(); ++v) {
        if (g.owner(v) != Player::Odd) continue;
        bool all = true;
        for (NodeId t : g.successors(v)) {
            if (!x[g.priority(t)].test(t)) {
                all = false;
                break;
            }
        }
        if (all) out.set(v);
    }
    return out;
}

/** Observer for strategy-relevant evaluation events; see recording.hpp. */
class RecordingHooks {
  public:
    virtual ~RecordingHooks() = default;
    // v was included in the diamond part; t is the first successor with
    // t in X_{prio(t)} in list order.
    virtual void diamond_include(NodeId v, const Timestamp& count, NodeId t) = 0;
    // v was excluded from the box part; t is the first successor with
    // t not in X_{prio(t)} in list order.
    virtual void box_exclude(NodeId v, const Timestamp& count, NodeId t) = 0;
};

/** eval_diamond that reports each included node's witness successor. */
inline NodeSet eval_diamond_hooked(const ParityGame& g, std::span<const NodeSet> x,
                                   const Timestamp& count, RecordingHooks& hooks) {
    NodeSet out(g.node_count());
    for (uint32_t v = 0; v < g.node_count(); ++v) {
        if (g.owner(v) != Player::Even) continue;
        for (NodeId t : g.successors(v)) {
            if (x[g.priority(t)].test(t)) {
                out.set(v);
                hooks.diamond_include(v, count, t);
                break;
            }
        }
    }
    return out;
}

/** eval_box that reports each excluded node's failing successor. */
inline NodeSet eval_box_hooked(const ParityGame& g, std::span<const NodeSet> x,
                               const Timestamp& count, RecordingHooks& hooks) {
    NodeSet out(g.node_count());
    for (uint32_t v = 0; v < g.node_count(); ++v) {
        if (g.owner(v) != Player::Odd) continue;
        bool all = true;
        for (NodeId t : g.successors(v)) {
            if (!x[g.priority(t)].test(t)) {
                hooks.box_exclude(v, count, t);
                all = false;
                break;
            }
        }
        if (all) out.set(v);
    }
    return out;
}

namespace detail {

/** Fused Psi evaluation (diamond union box) without intermediate sets. */
inline NodeSet eval_psi_plain(const ParityGame& g, std::span<const NodeSet> x) {
    NodeSet out(g.node_count());
    for (uint32_t v = 0; v < g.node_count(); ++v) {
        if (g.owner(v) == Player::Even) {
            for (NodeId t : g.successors(v)) {
                if (x[g.priority(t)].test(t)) {
                    out.set(v);
                    break;
                }
            }
        } else {
            bool all = true;
            for (NodeId t : g.successors(v)) {
                if (!x[g.priority(t)].test(t)) {
                    all = false;
                    break;
                }
            }
            if (all) out.set(v);
        }
    }
    return out;
}

/** (n+1)^d, saturating at uint64 max; bound on the number of evaluations. */
inline uint64_t saturating_iteration_bound(uint32_t n, uint32_t d) {
    uint64_t bound = 1;
    for (uint32_t i = 0; i < d; ++i) {
        if (bound > ~uint64_t(0) / (n + 1)) return ~uint64_t(0);
        bound *= n + 1;
    }
    return bound;
}

} // namespace detail

/** One post-evaluation bookkeeping step of the main loop: compares X_0
 *  against its shadow (or the level counter against n in full iteration
 *  mode), shifts stabilized values upward while incrementing their
 *  counters, and restarts the levels below the last shift. Returns the
 *  level reached; the run terminates when it returns d-1 with a stable
 *  value there. `psi` is the evaluation result that was just stored in
 *  X_0. If `changed_levels` is given, every level whose X value changed
 *  (by shift or by reset) is appended to it.
 */
inline uint32_t shift_and_reset(IterationState& st, const ParityGame& g,
                                const SolverConfig& cfg, const NodeSet& psi,
                                std::vector<uint32_t>* changed_levels = nullptr) {
    uint32_t d = (uint32_t)st.x.size();
    uint32_t n = g.node_count();
    auto stable = [&](uint32_t lvl, bool value_equal) {
        return cfg.full_iteration_mode ? st.count[lvl] == n : value_equal;
    };

    bool cur_equal = st.x_shadow[0].has_value() && *st.x_shadow[0] == st.x[0];
    uint32_t i = 0;
    while (i + 1 < d && stable(i, cur_equal)) {
        ++i;
        if (st.count[i] == ~uint32_t(0))
            throw Error(ErrorKind::InvariantViolation, "level counter overflow");
        ++st.count[i];
        if (st.count[i] > st.high_water[i]) st.high_water[i] = st.count[i];
        NodeSet next = cfg.restrict_to_priority ? (psi & g.priority_mask(i)) : st.x[i - 1];
        cur_equal = st.x[i] == next;
        st.x_shadow[i] = std::move(st.x[i]);
        st.x[i] = std::move(next);
        if (!cur_equal && changed_levels) changed_levels->push_back(i);
    }

    if (i > 0) {
        // restart everything below the shift target
        for (uint32_t j = i; j-- > 0;) {
            bool reinit = !cfg.eliminate_resets || (i - j) % 2 == 1;
            if (reinit) {
                NodeSet before = std::move(st.x[j]);
                init_level(st, g, cfg, j);
                if (changed_levels && !(before == st.x[j])) changed_levels->push_back(j);
            } else {
                st.count[j] = 0;
            }
        }
    }

    // termination signal for the caller: level d-1 reached and stable there
    return stable(i, cur_equal) && i + 1 == d ? d : i;
}

namespace detail {

class FixpointEngine {
  public:
    FixpointEngine(const ParityGame& g, SolverConfig cfg, RecordingHooks* rec = nullptr,
                   std::vector<NodeSet>* x0_trace = nullptr)
        : g_(g), cfg_(cfg), rec_(rec), x0_trace_(x0_trace) {
        if (cfg_.full_iteration_mode) {
            cfg_.log_snapshots = true;
            if (cfg_.restrict_to_priority || cfg_.cache_modal_parts || cfg_.eliminate_resets)
                throw Error(ErrorKind::InvalidSpec,
                            "full_iteration_mode requires the baseline solver variant");
            if (rec_)
                throw Error(ErrorKind::InvalidSpec,
                            "strategy recording requires the normal iteration mode");
        }
        if (rec_ && (cfg_.restrict_to_priority || cfg_.cache_modal_parts ||
                     cfg_.eliminate_resets))
            throw Error(ErrorKind::InvalidSpec,
                        "strategy recording requires the baseline solver variant");
    }

    SolveResult run() {
        auto t0 = std::chrono::steady_clock::now();
        uint32_t n = g_.node_count();
        uint32_t d = g_.priority_bound();
        st_ = make_iteration_state(g_, cfg_);
        uint64_t bound = saturating_iteration_bound(n, d);
        // full lexicographic re-checks are cheap on shallow games; deeper
        // games rely on the structural argument (level i incremented, lower
        // levels zeroed, higher untouched) enforced by shift_and_reset
        bool deep_check = d <= 8 || cfg_.log_snapshots;
        Timestamp prev = st_.count;

        if (cfg_.cache_modal_parts) init_cache_();

        NodeSet psi(n);
        std::vector<uint32_t> changed;
        for (;;) {
            ++st_.evals;
            if (st_.evals > bound)
                throw Error(ErrorKind::InvariantViolation,
                            "evaluation count exceeded (n+1)^d");
            ++st_.count[0];
            if (st_.count[0] > st_.high_water[0]) st_.high_water[0] = st_.count[0];

            psi = eval_();

            NodeSet x0 = cfg_.restrict_to_priority ? (psi & g_.priority_mask(0)) : psi;
            bool x0_changed = !(x0 == st_.x[0]);
            st_.x_shadow[0] = std::move(st_.x[0]);
            st_.x[0] = std::move(x0);

            if (cfg_.log_snapshots) {
                if (st_.snapshots.size() >= cfg_.snapshot_budget)
                    throw Error(ErrorKind::ResourceLimit,
                                "snapshot budget of " + std::to_string(cfg_.snapshot_budget) +
                                    " entries exceeded");
                st_.snapshots.push_back(Snapshot{st_.count, st_.x});
            }
            if (x0_trace_) x0_trace_->push_back(st_.x[0]);

            changed.clear();
            if (x0_changed) changed.push_back(0);
            uint32_t reached = shift_and_reset(st_, g_, cfg_, psi,
                                               cfg_.cache_modal_parts ? &changed : nullptr);
            if (cfg_.cache_modal_parts)
                for (uint32_t lvl : changed) dirty_[lvl] = true;

            if (deep_check) {
                if (!lex_less(prev, st_.count))
                    throw Error(ErrorKind::InvariantViolation,
                                "count did not increase lexicographically");
                prev = st_.count;
            }
            if (reached == d) break;
        }

        SolveResult r(n);
        r.w_even = psi;
        r.w_odd = psi;
        r.w_odd.complement();
        r.stats.outer_iterations = st_.evals;
        r.stats.per_level_iterations = st_.high_water;
        r.stats.solver_variant = variant_tag_();
        r.stats.wall_time_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        return r;
    }

    IterationState& state() { return st_; }

  private:
    NodeSet eval_() {
        if (rec_) {
            NodeSet dia = eval_diamond_hooked(g_, st_.x, st_.count, *rec_);
            NodeSet box = eval_box_hooked(g_, st_.x, st_.count, *rec_);
            dia |= box;
            return dia;
        }
        if (cfg_.cache_modal_parts) return eval_cached_();
        return eval_psi_plain(g_, st_.x);
    }

    void init_cache_() {
        uint32_t d = g_.priority_bound();
        dia_part_.assign(d, NodeSet(g_.node_count()));
        box_fail_.assign(d, NodeSet(g_.node_count()));
        dirty_.assign(d, true);
    }

    /* Per level i the cache keeps
     *   dia_part_[i] = predecessors of X_i's priority-i members
     *   box_fail_[i] = predecessors of priority-i nodes missing from X_i
     * so Psi = (union dia_part_ & V_Even) | (V_Odd - union box_fail_).
     * Only levels whose variable changed are rescanned.
     */
    NodeSet eval_cached_() {
        uint32_t n = g_.node_count();
        uint32_t d = g_.priority_bound();
        for (uint32_t i = 0; i < d; ++i) {
            if (!dirty_[i]) continue;
            dirty_[i] = false;
            NodeSet in_slice = st_.x[i] & g_.priority_mask(i);
            NodeSet out_slice = g_.priority_mask(i) - in_slice;
            dia_part_[i].clear();
            in_slice.for_each([&](uint32_t t) {
                for (NodeId u : g_.predecessors(t)) dia_part_[i].set(u);
            });
            box_fail_[i].clear();
            out_slice.for_each([&](uint32_t t) {
                for (NodeId u : g_.predecessors(t)) box_fail_[i].set(u);
            });
        }
        NodeSet dia(n), fail(n);
        for (uint32_t i = 0; i < d; ++i) {
            dia |= dia_part_[i];
            fail |= box_fail_[i];
        }
        dia &= g_.owned_by(Player::Even);
        NodeSet box = g_.owned_by(Player::Odd);
        box -= fail;
        dia |= box;
        return dia;
    }

    std::string variant_tag_() const {
        if (cfg_.restrict_to_priority && cfg_.cache_modal_parts && cfg_.eliminate_resets)
            return cfg_.full_iteration_mode ? "fpiter-opt+full" : "fpiter-opt";
        std::string tag = "fpiter";
        if (cfg_.restrict_to_priority) tag += "+restrict";
        if (cfg_.cache_modal_parts) tag += "+cache";
        if (cfg_.eliminate_resets) tag += "+noreset";
        if (cfg_.full_iteration_mode) tag += "+full";
        return tag;
    }

    const ParityGame& g_;
    SolverConfig cfg_;
    RecordingHooks* rec_;
    std::vector<NodeSet>* x0_trace_;
    IterationState st_;
    std::vector<NodeSet> dia_part_, box_fail_;
    std::vector<bool> dirty_;
};

} // namespace detail

inline SolveResult solve(const ParityGame& g, const SolverConfig& cfg = {}) {
    return detail::FixpointEngine(g, cfg).run();
}

inline std::pair<SolveResult, std::vector<Snapshot>>
solve_with_snapshots(const ParityGame& g, SolverConfig cfg) {
    cfg.log_snapshots = true;
    detail::FixpointEngine engine(g, cfg);
    SolveResult r = engine.run();
    return {std::move(r), std::move(engine.state().snapshots)};
}

/** solve() that also returns the X_0 value after every evaluation; used to
 *  check that the modal-part cache is transparent. */
inline std::pair<SolveResult, std::vector<NodeSet>>
solve_collect_x0(const ParityGame& g, const SolverConfig& cfg = {}) {
    std::vector<NodeSet> trace;
    detail::FixpointEngine engine(g, cfg, nullptr, &trace);
    SolveResult r = engine.run();
    return {std::move(r), std::move(trace)};
}

} // namespace pgfix
