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

#include <cstdint>
#include <functional>
#include <span>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fpiter.hpp"
#include "game.hpp"
#include "solve_result.hpp"
#include "timestamp.hpp"

namespace pgfix {

/* Strategy recording and extraction.
 *
 * While the solver runs, every evaluation that includes an Even node in the
 * diamond part (or excludes an Odd node from the box part) pushes the pair
 * (count, witness successor) onto that node's decision stack. After the run,
 * a guided depth-first search recovers a positional strategy from the
 * stacks: reaching node v with credit C discards all decisions recorded
 * later than C in the owner's timestamp order and adopts the latest
 * surviving one.
 */

struct Decision {
    Timestamp stamp;
    NodeId target;
};

/** Read-only view of one stack entry; stamp aliases stack storage. */
struct DecisionView {
    std::span<const uint32_t> stamp;
    NodeId target;
};

class DecisionStacks {
  public:
    DecisionStacks(uint32_t nodes, uint32_t levels) : levels_(levels), stamps_(nodes), targets_(nodes) {}

    uint32_t node_count() const { return (uint32_t)targets_.size(); }
    uint32_t levels() const { return levels_; }
    size_t size(NodeId v) const { return targets_[v].size(); }
    bool empty(NodeId v) const { return targets_[v].empty(); }

    size_t total_size() const {
        size_t s = 0;
        for (const auto& t : targets_) s += t.size();
        return s;
    }

    /** Append a decision at the top. Stamps on one node's stack must grow
     *  strictly in lexicographic order; the solver only records at
     *  lexicographically increasing counters, so a violation means the
     *  caller fed out-of-order data. */
    void push(NodeId v, const Timestamp& stamp, NodeId target) {
        if (stamp.levels() != levels_)
            throw Error(ErrorKind::LengthMismatch, "decision stamp length mismatch");
        if (!targets_[v].empty() && !lex_less(top(v).stamp, std::span<const uint32_t>(stamp.c)))
            throw Error(ErrorKind::InvariantViolation,
                        "decision stamps must increase strictly along a stack");
        stamps_[v].insert(stamps_[v].end(), stamp.c.begin(), stamp.c.end());
        targets_[v].push_back(target);
    }

    DecisionView top(NodeId v) const {
        return entry(v, targets_[v].size() - 1);
    }

    /** Entry k counted from the bottom (k = 0 is the oldest). */
    DecisionView entry(NodeId v, size_t k) const {
        return DecisionView{{stamps_[v].data() + k * levels_, levels_}, targets_[v][k]};
    }

    Decision decision(NodeId v, size_t k) const {
        DecisionView e = entry(v, k);
        Decision d;
        d.stamp.c.assign(e.stamp.begin(), e.stamp.end());
        d.target = e.target;
        return d;
    }

    void pop(NodeId v) {
        targets_[v].pop_back();
        stamps_[v].resize(stamps_[v].size() - levels_);
    }

    /** Remove every entry with stamp >_p c, preserving the order of the
     *  rest; matching entries need not be contiguous. Returns the number
     *  removed. */
    size_t remove_later_than(NodeId v, std::span<const uint32_t> c, Player p) {
        auto& st = stamps_[v];
        auto& tg = targets_[v];
        size_t kept = 0;
        for (size_t e = 0; e < tg.size(); ++e) {
            std::span<const uint32_t> stamp{st.data() + e * levels_, levels_};
            if (later_than(stamp, c, p)) continue;
            if (kept != e) {
                std::copy(st.begin() + (ptrdiff_t)(e * levels_),
                          st.begin() + (ptrdiff_t)((e + 1) * levels_),
                          st.begin() + (ptrdiff_t)(kept * levels_));
                tg[kept] = tg[e];
            }
            ++kept;
        }
        size_t removed = tg.size() - kept;
        tg.resize(kept);
        st.resize(kept * levels_);
        return removed;
    }

    void clear() {
        for (auto& s : stamps_) s.clear();
        for (auto& t : targets_) t.clear();
    }

  private:
    uint32_t levels_;
    std::vector<std::vector<uint32_t>> stamps_; // levels_ words per entry, bottom first
    std::vector<std::vector<NodeId>> targets_;
};

struct TraceEvent {
    NodeId node;
    Timestamp stamp;
    NodeId target;
    bool box; // false: diamond inclusion, true: box exclusion
};

using TraceSink = std::function<void(const TraceEvent&)>;

namespace detail {

class StackRecorder final : public RecordingHooks {
  public:
    StackRecorder(DecisionStacks& stacks, const TraceSink* sink) : stacks_(stacks), sink_(sink) {}

    void diamond_include(NodeId v, const Timestamp& count, NodeId t) override {
        stacks_.push(v, count, t);
        if (sink_ && *sink_) (*sink_)(TraceEvent{v, count, t, false});
    }

    void box_exclude(NodeId v, const Timestamp& count, NodeId t) override {
        stacks_.push(v, count, t);
        if (sink_ && *sink_) (*sink_)(TraceEvent{v, count, t, true});
    }

  private:
    DecisionStacks& stacks_;
    const TraceSink* sink_;
};

} // namespace detail

/** eval_diamond plus a pushed (count, witness) per included node. */
inline NodeSet diamond_recording(const ParityGame& g, std::span<const NodeSet> x,
                                 const Timestamp& count, DecisionStacks& stacks,
                                 const TraceSink* sink = nullptr) {
    detail::StackRecorder rec(stacks, sink);
    return eval_diamond_hooked(g, x, count, rec);
}

/** eval_box plus a pushed (count, witness) per excluded node. */
inline NodeSet box_recording(const ParityGame& g, std::span<const NodeSet> x,
                             const Timestamp& count, DecisionStacks& stacks,
                             const TraceSink* sink = nullptr) {
    detail::StackRecorder rec(stacks, sink);
    return eval_box_hooked(g, x, count, rec);
}

/** Baseline solve with decision recording. The optimization flags are
 *  rejected: recording is defined against the unoptimized iteration order.
 */
inline SolveResult solve_recording(const ParityGame& g, DecisionStacks& stacks,
                                   const TraceSink* sink = nullptr, SolverConfig cfg = {}) {
    detail::StackRecorder rec(stacks, sink);
    detail::FixpointEngine engine(g, cfg, &rec);
    return engine.run();
}

struct ExtractionState {
    explicit ExtractionState(uint32_t nodes)
        : sigma(nodes, kNoStrategy), last(nodes) {}

    std::vector<NodeId> sigma;    // kNoStrategy = unassigned
    std::vector<Timestamp> last;  // stamp of the adopted decision, informational
};

/** Drop from v's stack every decision recorded later than c in p's order.
 *  True when entries were removed, and also when sigma(v) is still
 *  unassigned and the stack is nonempty: the literal removal test alone
 *  would never adopt a first decision at the maximal credit. */
inline bool strip(Player p, NodeId v, std::span<const uint32_t> c, DecisionStacks& stacks,
                  const ExtractionState& st) {
    size_t removed = stacks.remove_later_than(v, c, p);
    if (removed > 0) return true;
    return st.sigma[v] == kNoStrategy && !stacks.empty(v);
}

inline bool strip(Player p, NodeId v, const Timestamp& c, DecisionStacks& stacks,
                  const ExtractionState& st) {
    return strip(p, v, std::span<const uint32_t>(c.c), stacks, st);
}

namespace detail {

struct CreditKey {
    NodeId node;
    std::vector<uint32_t> credit;
    bool operator==(const CreditKey& o) const { return node == o.node && credit == o.credit; }
};

struct CreditKeyHash {
    size_t operator()(const CreditKey& k) const {
        uint64_t h = 0x9e3779b97f4a7c15ull ^ k.node;
        for (uint32_t w : k.credit) {
            h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return (size_t)h;
    }
};

/** Indices of the timestamp that carry information for p's strategy:
 *  odd ones for Even, even ones for Odd (the coordinates p's order reads). */
inline bool relevant_index(Player p, uint32_t j) {
    return (j % 2 == 1) == (p == Player::Even);
}

/** Tighten the credit for stepping onto a node of priority q. Crossing a
 *  priority of the opponent's parity demands strictly earlier decisions at
 *  the truncation from q upward: decrement the lowest nonzero relevant
 *  coordinate at or above q and free everything below it. Crossing p's own
 *  parity only forgets the coordinates below q. Returns false when no
 *  strictly earlier credit exists, which ends the branch. */
inline bool arrive_credit(Timestamp& b, uint32_t q, Player p, uint32_t n) {
    uint32_t d = b.levels();
    uint32_t cut = q;
    if (relevant_index(p, q)) {
        uint32_t j = q;
        while (j < d && b[j] == 0) j += 2;
        if (j >= d) return false;
        b.c[j] -= 1;
        cut = j;
    }
    for (uint32_t h = 0; h < cut; ++h) b.c[h] = n;
    return true;
}

/** Guided depth-first search from (root, full credit). The walk maintains
 *  a credit bounding which decisions may still be adopted; every crossing
 *  into a node tightens it per arrive_credit, so around a cycle whose
 *  maximal priority favours p the credit resets and decisions survive,
 *  while around any other cycle the relevant coordinate drains until the
 *  strip below removes the stale decisions recorded at higher counters;
 *  the strategy is recovered back-to-front. At nodes owned by p the stack
 *  is stripped down to decisions not later than the credit, the surviving
 *  top is (re)adopted, and the walk follows it with the adopted stamp as
 *  the new credit. At opponent nodes the walk fans out to every successor.
 *  A (node, credit) pair is expanded at most once per top-level call. */
inline void traverse(const ParityGame& g, Player p, NodeId root, const Timestamp& full,
                     DecisionStacks& stacks, ExtractionState& st, const NodeSet& region) {
    uint32_t n = g.node_count();
    std::unordered_set<CreditKey, CreditKeyHash> visited;
    std::vector<std::pair<NodeId, Timestamp>> work;
    work.emplace_back(root, full);
    auto push = [&](NodeId to, const Timestamp& from) {
        Timestamp b = from;
        if (arrive_credit(b, g.priority(to), p, n)) work.emplace_back(to, std::move(b));
    };
    while (!work.empty()) {
        auto [v, b] = std::move(work.back());
        work.pop_back();
        if (!visited.emplace(CreditKey{v, b.c}).second) continue;
        if (g.owner(v) == p) {
            if (!stacks.empty(v)) {
                size_t removed = stacks.remove_later_than(v, std::span<const uint32_t>(b.c), p);
                if (removed > 0 || st.sigma[v] == kNoStrategy) {
                    if (!stacks.empty(v)) {
                        DecisionView top = stacks.top(v);
                        st.sigma[v] = top.target;
                        st.last[v].c.assign(top.stamp.begin(), top.stamp.end());
                    }
                }
            }
            if (stacks.empty(v)) {
                if (region.test(v))
                    throw Error(ErrorKind::ExtractionStuck,
                                "stack of node " + std::to_string(v) +
                                    " emptied inside its winning region");
                continue;
            }
            push(st.sigma[v], st.last[v]);
        } else {
            auto succ = g.successors(v);
            for (size_t k = succ.size(); k-- > 0;) push(succ[k], b);
        }
    }
}

} // namespace detail

/** Recover positional strategies for both players from a completed
 *  recording run. Consumes the stacks (stripping is destructive). Every
 *  node a player owns inside their own winning region receives a strategy
 *  target; nodes outside stay unassigned. */
inline std::pair<std::vector<NodeId>, std::vector<NodeId>>
extract_strategies(const ParityGame& g, DecisionStacks& stacks, const NodeSet& w_even,
                   const NodeSet& w_odd) {
    uint32_t n = g.node_count();
    ExtractionState st(n);
    Timestamp full(g.priority_bound(), n);
    for (Player p : {Player::Even, Player::Odd}) {
        const NodeSet& region = p == Player::Even ? w_even : w_odd;
        NodeSet mine = g.owned_by(p) & region;
        mine.for_each([&](uint32_t v) {
            if (st.sigma[v] == kNoStrategy)
                detail::traverse(g, p, v, full, stacks, st, region);
            if (st.sigma[v] == kNoStrategy)
                throw Error(ErrorKind::ExtractionStuck,
                            "no decision adopted for node " + std::to_string(v) +
                                " inside its winning region");
        });
    }
    std::vector<NodeId> even(n, kNoStrategy), odd(n, kNoStrategy);
    for (uint32_t v = 0; v < n; ++v) {
        if (st.sigma[v] == kNoStrategy) continue;
        if (g.owner(v) == Player::Even && w_even.test(v)) even[v] = st.sigma[v];
        if (g.owner(v) == Player::Odd && w_odd.test(v)) odd[v] = st.sigma[v];
    }
    return {std::move(even), std::move(odd)};
}

/** Full pipeline: baseline solve with recording, then strategy extraction.
 *  The result carries winning regions, strategies, and solver statistics. */
inline SolveResult solve_with_strategies(const ParityGame& g, const TraceSink* sink = nullptr) {
    DecisionStacks stacks(g.node_count(), g.priority_bound());
    SolveResult r = solve_recording(g, stacks, sink);
    auto [even, odd] = extract_strategies(g, stacks, r.w_even, r.w_odd);
    r.strategy_even = std::move(even);
    r.strategy_odd = std::move(odd);
    r.stats.solver_variant += "+strategies";
    return r;
}

} // namespace pgfix
