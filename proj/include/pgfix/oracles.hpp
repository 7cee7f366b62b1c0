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

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "game.hpp"
#include "solve_result.hpp"

namespace pgfix {

/* Solver-independent oracles.
 *
 * brute_solve enumerates one player's positional strategies outright and
 * keeps the one winning the most nodes; positional determinacy guarantees
 * that maximum is the exact winning region. reference_solve is the
 * classical recursive decomposition by attractors. verify_positional
 * checks a claimed strategy/region pair structurally: strategy edges stay
 * inside the region, the opponent cannot leave it, and no reachable cycle
 * favors the opponent.
 */

namespace detail {

struct Csr {
    std::vector<uint32_t> off;
    std::vector<NodeId> adj;
};

/** Edge-restricted copy of the game graph: nodes the strategy player owns
 *  keep only their chosen edge (all edges where the choice is unset),
 *  opponent nodes keep everything. */
inline void build_strategy_graph(const ParityGame& g, Player p, const std::vector<NodeId>& sigma,
                                 Csr& out) {
    uint32_t n = g.node_count();
    out.off.assign(n + 1, 0);
    out.adj.clear();
    for (uint32_t v = 0; v < n; ++v) {
        out.off[v] = (uint32_t)out.adj.size();
        if (g.owner(v) == p && v < sigma.size() && sigma[v] != kNoStrategy) {
            out.adj.push_back(sigma[v]);
        } else {
            auto succ = g.successors(v);
            out.adj.insert(out.adj.end(), succ.begin(), succ.end());
        }
    }
    out.off[n] = (uint32_t)out.adj.size();
}

/** Tarjan's algorithm over the mask-restricted graph; on_comp receives
 *  each strongly connected component as a node list. */
template <class OnComp>
inline void scc_components(const Csr& c, const NodeSet& mask, uint32_t n, OnComp&& on_comp) {
    std::vector<int32_t> idx(n, -1), low(n, 0);
    std::vector<uint8_t> onstk(n, 0);
    std::vector<NodeId> stk;
    struct Frame {
        NodeId v;
        uint32_t ei;
    };
    std::vector<Frame> call;
    std::vector<NodeId> comp;
    int32_t counter = 0;
    for (uint32_t root = 0; root < n; ++root) {
        if (!mask.test(root) || idx[root] != -1) continue;
        idx[root] = low[root] = counter++;
        stk.push_back(root);
        onstk[root] = 1;
        call.push_back({root, c.off[root]});
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.ei < c.off[f.v + 1]) {
                NodeId w = c.adj[f.ei++];
                if (!mask.test(w)) continue;
                if (idx[w] == -1) {
                    idx[w] = low[w] = counter++;
                    stk.push_back(w);
                    onstk[w] = 1;
                    call.push_back({w, c.off[w]});
                } else if (onstk[w]) {
                    low[f.v] = std::min(low[f.v], idx[w]);
                }
            } else {
                NodeId v = f.v;
                call.pop_back();
                if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
                if (low[v] == idx[v]) {
                    comp.clear();
                    for (;;) {
                        NodeId w = stk.back();
                        stk.pop_back();
                        onstk[w] = 0;
                        comp.push_back(w);
                        if (w == v) break;
                    }
                    on_comp(comp);
                }
            }
        }
    }
}

inline bool has_masked_self_loop(const Csr& c, NodeId v, const NodeSet& mask) {
    if (!mask.test(v)) return false;
    for (uint32_t e = c.off[v]; e < c.off[v + 1]; ++e)
        if (c.adj[e] == v) return true;
    return false;
}

/** Nodes from which the restricted graph can reach a cycle whose maximal
 *  priority has losing parity for p. Cycle detection runs per losing
 *  priority q on the subgraph of priorities <= q; a nontrivial component
 *  through a priority-q node pins such a cycle. */
inline NodeSet losing_cycle_reach(const ParityGame& g, Player p, const Csr& h,
                                  const std::vector<NodeSet>& prio_le) {
    uint32_t n = g.node_count();
    uint32_t bad_parity = p == Player::Even ? 1 : 0;
    NodeSet seeds(n);
    for (uint32_t q = g.max_priority() + 1; q-- > 0;) {
        if (q % 2 != bad_parity || !g.priority_mask(q).any()) continue;
        const NodeSet& mask = prio_le[q];
        scc_components(h, mask, n, [&](const std::vector<NodeId>& comp) {
            bool nontrivial = comp.size() > 1 || has_masked_self_loop(h, comp[0], mask);
            if (!nontrivial) return;
            for (NodeId v : comp)
                if (g.priority(v) == q) {
                    for (NodeId w : comp) seeds.set(w);
                    return;
                }
        });
    }
    // backward closure over the restricted graph
    Csr rev;
    rev.off.assign(n + 2, 0);
    for (NodeId t : h.adj) ++rev.off[t + 1];
    for (uint32_t v = 0; v + 1 <= n; ++v) rev.off[v + 1] += rev.off[v];
    rev.adj.resize(h.adj.size());
    {
        std::vector<uint32_t> fill(rev.off.begin(), rev.off.end() - 1);
        for (uint32_t v = 0; v < n; ++v)
            for (uint32_t e = h.off[v]; e < h.off[v + 1]; ++e) rev.adj[fill[h.adj[e]]++] = v;
    }
    std::vector<NodeId> queue;
    seeds.for_each([&](uint32_t v) { queue.push_back(v); });
    NodeSet reach = seeds;
    for (size_t head = 0; head < queue.size(); ++head) {
        NodeId t = queue[head];
        for (uint32_t e = rev.off[t]; e < rev.off[t + 1]; ++e) {
            NodeId u = rev.adj[e];
            if (!reach.test(u)) {
                reach.set(u);
                queue.push_back(u);
            }
        }
    }
    return reach;
}

inline std::vector<NodeSet> priority_prefix_masks(const ParityGame& g) {
    uint32_t n = g.node_count();
    std::vector<NodeSet> prio_le(g.max_priority() + 1, NodeSet(n));
    for (uint32_t q = 0; q <= g.max_priority(); ++q) {
        if (q > 0) prio_le[q] = prio_le[q - 1];
        prio_le[q] |= g.priority_mask(q);
    }
    return prio_le;
}

} // namespace detail

/** Exact regions and strategies by enumerating positional strategies of
 *  each player in turn. The budget bounds the product of the enumerating
 *  player's out-degrees. */
inline SolveResult brute_solve(const ParityGame& g, uint64_t budget = 1'000'000) {
    uint32_t n = g.node_count();
    SolveResult r(n);
    r.stats.solver_variant = "brute";
    std::vector<NodeSet> prio_le = detail::priority_prefix_masks(g);
    detail::Csr h;
    for (Player p : {Player::Even, Player::Odd}) {
        std::vector<NodeId> owned;
        for (uint32_t v = 0; v < n; ++v)
            if (g.owner(v) == p) owned.push_back(v);
        uint64_t combos = 1;
        for (NodeId v : owned) {
            uint64_t deg = g.successors(v).size();
            if (combos > budget / deg) {
                combos = budget + 1;
                break;
            }
            combos *= deg;
        }
        if (combos > budget)
            throw Error(ErrorKind::ResourceLimit,
                        "positional strategy space exceeds budget of " + std::to_string(budget));

        std::vector<uint32_t> digit(owned.size(), 0);
        std::vector<NodeId> sigma(n, kNoStrategy), best_sigma;
        NodeSet best_win(n);
        bool have_best = false;
        for (;;) {
            for (size_t k = 0; k < owned.size(); ++k)
                sigma[owned[k]] = g.successors(owned[k])[digit[k]];
            detail::build_strategy_graph(g, p, sigma, h);
            NodeSet win = detail::losing_cycle_reach(g, p, h, prio_le);
            win.complement();
            if (!have_best || win.count() > best_win.count()) {
                best_win = win;
                best_sigma = sigma;
                have_best = true;
            }
            size_t k = 0;
            while (k < owned.size()) {
                if (++digit[k] < g.successors(owned[k]).size()) break;
                digit[k] = 0;
                ++k;
            }
            if (k == owned.size()) break;
        }

        auto& strat = p == Player::Even ? r.strategy_even : r.strategy_odd;
        auto& region = p == Player::Even ? r.w_even : r.w_odd;
        region = best_win;
        for (NodeId v : owned) strat[v] = best_win.test(v) ? best_sigma[v] : kNoStrategy;
    }
    NodeSet check = r.w_even;
    check.complement();
    if (!(check == r.w_odd))
        throw Error(ErrorKind::InvariantViolation,
                    "strategy enumeration did not partition the node set");
    return r;
}

namespace detail {

struct ZielonkaCtx {
    const ParityGame& g;
    std::vector<NodeId>& sigma_even;
    std::vector<NodeId>& sigma_odd;
    std::vector<uint32_t> pending;
    std::vector<NodeId> queue;

    std::vector<NodeId>& sigma(Player p) {
        return p == Player::Even ? sigma_even : sigma_odd;
    }

    /** Grow a into the p-attractor of itself within mask. Nodes p pulls in
     *  record the edge that pulled them. */
    void attract(const NodeSet& mask, Player p, NodeSet& a) {
        uint32_t n = g.node_count();
        pending.assign(n, 0);
        Player opp = opponent(p);
        // pending counts all in-mask successors; the queue pass below visits
        // every attractor member exactly once, so each in-mask edge into the
        // attractor decrements exactly once
        mask.for_each([&](uint32_t v) {
            if (g.owner(v) != opp || a.test(v)) return;
            uint32_t cnt = 0;
            for (NodeId t : g.successors(v))
                if (mask.test(t)) ++cnt;
            pending[v] = cnt;
        });
        queue.clear();
        a.for_each([&](uint32_t v) { queue.push_back(v); });
        std::vector<NodeId>& sig = sigma(p);
        for (size_t head = 0; head < queue.size(); ++head) {
            NodeId t = queue[head];
            for (NodeId u : g.predecessors(t)) {
                if (!mask.test(u) || a.test(u)) continue;
                if (g.owner(u) == p) {
                    a.set(u);
                    sig[u] = t;
                    queue.push_back(u);
                } else if (--pending[u] == 0) {
                    a.set(u);
                    queue.push_back(u);
                }
            }
        }
    }

    std::pair<NodeSet, NodeSet> run(const NodeSet& mask) {
        uint32_t n = g.node_count();
        if (!mask.any()) return {NodeSet(n), NodeSet(n)};
        uint32_t q = g.max_priority() + 1;
        while (q-- > 0)
            if (g.priority_mask(q).intersects(mask)) break;
        Player p = q % 2 == 0 ? Player::Even : Player::Odd;

        NodeSet seeds = g.priority_mask(q) & mask;
        NodeSet a = seeds;
        attract(mask, p, a);
        auto [we1, wo1] = run(mask - a);
        const NodeSet& w_opp_sub = p == Player::Even ? wo1 : we1;

        if (!w_opp_sub.any()) {
            // p wins everywhere: priority q repeats or the play settles in
            // the fully-won subgame
            std::vector<NodeId>& sig = sigma(p);
            seeds.for_each([&](uint32_t v) {
                if (g.owner(v) != p) return;
                for (NodeId t : g.successors(v))
                    if (mask.test(t)) {
                        sig[v] = t;
                        break;
                    }
            });
            return p == Player::Even ? std::pair{mask, NodeSet(n)}
                                     : std::pair{NodeSet(n), mask};
        }

        NodeSet b = w_opp_sub;
        attract(mask, opponent(p), b);
        auto [we2, wo2] = run(mask - b);
        if (p == Player::Even) return {we2, wo2 | b};
        return {we2 | b, wo2};
    }
};

} // namespace detail

/** Exact regions and strategies via recursive attractor decomposition. */
inline SolveResult reference_solve(const ParityGame& g) {
    uint32_t n = g.node_count();
    SolveResult r(n);
    r.stats.solver_variant = "reference";
    std::vector<NodeId> se(n, kNoStrategy), so(n, kNoStrategy);
    detail::ZielonkaCtx ctx{g, se, so, {}, {}};
    auto [we, wo] = ctx.run(g.full_set());
    r.w_even = we;
    r.w_odd = wo;
    for (uint32_t v = 0; v < n; ++v) {
        if (g.owner(v) == Player::Even && we.test(v)) r.strategy_even[v] = se[v];
        if (g.owner(v) == Player::Odd && wo.test(v)) r.strategy_odd[v] = so[v];
    }
    return r;
}

struct VerifyResult {
    bool ok = true;
    std::string reason;
    std::vector<NodeId> cycle; // offending cycle, when one exists

    static VerifyResult valid() { return VerifyResult{}; }
    static VerifyResult invalid(std::string why, std::vector<NodeId> cyc = {}) {
        return VerifyResult{false, std::move(why), std::move(cyc)};
    }
};

/** Check that sigma is a winning positional strategy for p on region:
 *  (a) every p-node in the region has a strategy edge back into the
 *  region, (b) opponent nodes cannot leave the region, (c) the region's
 *  strategy-restricted subgraph has no cycle whose maximal priority has
 *  the opponent's parity. */
inline VerifyResult verify_positional(const ParityGame& g, Player p,
                                      const std::vector<NodeId>& sigma, const NodeSet& region) {
    uint32_t n = g.node_count();
    bool fail = false;
    std::string why;
    region.for_each([&](uint32_t v) {
        if (fail) return;
        if (g.owner(v) == p) {
            NodeId t = v < sigma.size() ? sigma[v] : kNoStrategy;
            if (t == kNoStrategy) {
                fail = true;
                why = "node " + std::to_string(v) + " has no strategy edge";
                return;
            }
            auto succ = g.successors(v);
            if (std::find(succ.begin(), succ.end(), t) == succ.end()) {
                fail = true;
                why = "strategy target " + std::to_string(t) + " is not a successor of node " +
                      std::to_string(v);
                return;
            }
            if (!region.test(t)) {
                fail = true;
                why = "strategy edge " + std::to_string(v) + " -> " + std::to_string(t) +
                      " leaves the region";
            }
        } else {
            for (NodeId t : g.successors(v)) {
                if (!region.test(t)) {
                    fail = true;
                    why = "opponent edge " + std::to_string(v) + " -> " + std::to_string(t) +
                          " leaves the region";
                    return;
                }
            }
        }
    });
    if (fail) return VerifyResult::invalid(std::move(why));

    detail::Csr h;
    detail::build_strategy_graph(g, p, sigma, h);
    std::vector<NodeSet> prio_le = detail::priority_prefix_masks(g);
    uint32_t bad_parity = p == Player::Even ? 1 : 0;
    for (uint32_t q = g.max_priority() + 1; q-- > 0;) {
        if (q % 2 != bad_parity || !g.priority_mask(q).any()) continue;
        NodeSet mask = prio_le[q] & region;
        std::vector<NodeId> flagged;
        detail::scc_components(h, mask, n, [&](const std::vector<NodeId>& comp) {
            if (!flagged.empty()) return;
            bool nontrivial = comp.size() > 1 || detail::has_masked_self_loop(h, comp[0], mask);
            if (!nontrivial) return;
            for (NodeId v : comp)
                if (g.priority(v) == q) {
                    flagged = comp;
                    return;
                }
        });
        if (flagged.empty()) continue;

        // shortest cycle through the smallest priority-q node of the component
        NodeSet in_comp(n);
        for (NodeId v : flagged) in_comp.set(v);
        NodeId s = kNoStrategy;
        for (NodeId v : flagged)
            if (g.priority(v) == q && (s == kNoStrategy || v < s)) s = v;
        std::vector<NodeId> parent(n, kNoStrategy);
        std::vector<NodeId> queue{s};
        std::vector<NodeId> cycle;
        for (size_t head = 0; head < queue.size() && cycle.empty(); ++head) {
            NodeId u = queue[head];
            for (uint32_t e = h.off[u]; e < h.off[u + 1] && cycle.empty(); ++e) {
                NodeId w = h.adj[e];
                if (!in_comp.test(w)) continue;
                if (w == s) {
                    for (NodeId x = u; x != s; x = parent[x]) cycle.push_back(x);
                    cycle.push_back(s);
                    std::reverse(cycle.begin(), cycle.end());
                } else if (parent[w] == kNoStrategy) {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        // canonical form: start the cycle at its smallest node
        auto smallest = std::min_element(cycle.begin(), cycle.end());
        std::rotate(cycle.begin(), smallest, cycle.end());
        std::string text;
        for (NodeId v : cycle) text += std::to_string(v) + " -> ";
        text += std::to_string(cycle.empty() ? s : cycle[0]);
        return VerifyResult::invalid("cycle " + text + " has maximal priority " +
                                         std::to_string(q) + " favoring the opponent",
                                     std::move(cycle));
    }
    return VerifyResult::valid();
}

} // namespace pgfix
