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
#include <unordered_map>
#include <vector>

#include "game.hpp"
#include "timestamp.hpp"

namespace pgfix {

/* The credit pay-off game.
 *
 * A configuration is a node plus a credit vector (c_{d-1},…,c_0). If the
 * credit at the current node's priority p is exhausted the game ends and
 * Even wins exactly when p is even. Otherwise the node's owner moves along
 * an edge and the credit updates: entries above p keep their value, entry
 * p decreases by one, entries below p refill to n. Every move strictly
 * decreases the credit lexicographically, so plays are finite and the
 * winner is computable by backward induction.
 */

struct PayoffConfig {
    NodeId node;
    Timestamp credit;
};

struct PayoffOutcome {
    Player winner;
    std::vector<PayoffConfig> witness; // optimal play ending in a terminal configuration
};

/** Credit update for a move from a node of priority p. */
inline Timestamp step_credit(const Timestamp& c, uint32_t p, uint32_t n) {
    if (p >= c.levels())
        throw Error(ErrorKind::LengthMismatch, "priority outside credit range");
    if (c[p] == 0)
        throw Error(ErrorKind::TerminalConfig, "no move from a configuration with spent credit");
    Timestamp r = c;
    r[p] -= 1;
    for (uint32_t h = 0; h < p; ++h) r[h] = n;
    return r;
}

/** Winner table for every configuration of the pay-off game on g, computed
 *  by one backward-induction sweep in lexicographically ascending credit
 *  order. Space is n * (n+1)^d winner bits. */
class PayoffAnalysis {
  public:
    explicit PayoffAnalysis(const ParityGame& g, uint64_t budget = 10'000'000) : g_(g) {
        uint32_t n = g.node_count();
        uint32_t d = g.priority_bound();
        uint64_t radix = n + 1;
        pow_.assign(d + 1, 1);
        for (uint32_t h = 0; h < d; ++h) {
            if (pow_[h] > budget / radix + 1) pow_[h + 1] = budget + 1;
            else pow_[h + 1] = pow_[h] * radix;
        }
        total_ = pow_[d];
        if (total_ > budget / n || total_ > budget)
            throw Error(ErrorKind::ResourceLimit,
                        "pay-off configuration space exceeds budget of " +
                            std::to_string(budget) + " entries");
        even_wins_.assign((total_ * n + 63) / 64, 0);
        for (uint64_t idx = 0; idx < total_; ++idx) {
            for (uint32_t v = 0; v < n; ++v) {
                uint32_t p = g.priority(v);
                uint64_t cp = idx / pow_[p] % radix;
                bool win;
                if (cp == 0) {
                    win = p % 2 == 0;
                } else {
                    uint64_t child = (idx / pow_[p] - 1) * pow_[p] + (pow_[p] - 1);
                    auto succ = g.successors(v);
                    if (succ.empty()) {
                        // unreachable through the validated constructor
                        win = g.owner(v) != Player::Even;
                    } else if (g.owner(v) == Player::Even) {
                        win = false;
                        for (NodeId t : succ)
                            if (wins(child, t)) {
                                win = true;
                                break;
                            }
                    } else {
                        win = true;
                        for (NodeId t : succ)
                            if (!wins(child, t)) {
                                win = false;
                                break;
                            }
                    }
                }
                if (win) even_wins_[(idx * n + v) / 64] |= uint64_t(1) << (idx * n + v) % 64;
            }
        }
    }

    Player winner(NodeId v, const Timestamp& credit) const {
        return wins(index(credit), v) ? Player::Even : Player::Odd;
    }

    /** Winner plus a play in which the winner moves optimally and the
     *  loser takes their first listed successor. */
    PayoffOutcome outcome(NodeId v, const Timestamp& credit) const {
        uint32_t n = g_.node_count();
        uint64_t idx = index(credit);
        PayoffOutcome out;
        out.winner = wins(idx, v) ? Player::Even : Player::Odd;
        Timestamp c = credit;
        for (;;) {
            out.witness.push_back(PayoffConfig{v, c});
            uint32_t p = g_.priority(v);
            if (c[p] == 0) break;
            uint64_t child = (idx / pow_[p] - 1) * pow_[p] + (pow_[p] - 1);
            NodeId pick = g_.successors(v)[0];
            if (g_.owner(v) == out.winner) {
                bool want = out.winner == Player::Even;
                for (NodeId t : g_.successors(v))
                    if (wins(child, t) == want) {
                        pick = t;
                        break;
                    }
            }
            c = step_credit(c, p, n);
            idx = child;
            v = pick;
        }
        return out;
    }

  private:
    uint64_t index(const Timestamp& credit) const {
        uint32_t n = g_.node_count();
        uint32_t d = g_.priority_bound();
        if (credit.levels() != d)
            throw Error(ErrorKind::LengthMismatch, "credit length differs from priority count");
        uint64_t idx = 0;
        for (uint32_t h = 0; h < d; ++h) {
            if (credit[h] > n)
                throw Error(ErrorKind::InvalidSpec, "credit entry exceeds node count");
            idx += pow_[h] * credit[h];
        }
        return idx;
    }

    bool wins(uint64_t idx, NodeId v) const {
        uint64_t bit = idx * g_.node_count() + v;
        return even_wins_[bit / 64] >> bit % 64 & 1;
    }

    const ParityGame& g_;
    std::vector<uint64_t> pow_;
    uint64_t total_ = 0;
    std::vector<uint64_t> even_wins_;
};

inline PayoffOutcome payoff_winner(const ParityGame& g, const PayoffConfig& start,
                                   uint64_t budget = 10'000'000) {
    PayoffAnalysis a(g, budget);
    return a.outcome(start.node, start.credit);
}

namespace detail {

struct U32VecHash {
    size_t operator()(const std::vector<uint32_t>& v) const {
        uint64_t h = 0x9e3779b97f4a7c15ull;
        for (uint32_t w : v) h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return (size_t)h;
    }
};

} // namespace detail

/** Second route to the same values: the priority-h slice of the variable
 *  bank at counter moment c, characterized recursively. With c_h spent the
 *  slice is everything (h even) or nothing (h odd); otherwise a node
 *  qualifies through its successors evaluated at the stepped credit
 *  (c_{d-1},…,c_h - 1, n,…,n). Only the coordinates at h and above matter,
 *  which keys the memo table. */
class SnapshotOracle {
  public:
    explicit SnapshotOracle(const ParityGame& g, uint64_t budget = 10'000'000)
        : g_(g), budget_(budget) {}

    NodeSet value(uint32_t h, const Timestamp& c) {
        uint32_t n = g_.node_count();
        uint32_t d = g_.priority_bound();
        if (c.levels() != d)
            throw Error(ErrorKind::LengthMismatch, "credit length differs from priority count");
        if (h >= d) throw Error(ErrorKind::InvalidSpec, "priority out of range");
        for (uint32_t i = 0; i < d; ++i)
            if (c[i] > n) throw Error(ErrorKind::InvalidSpec, "credit entry exceeds node count");

        std::vector<uint32_t> key(d - h + 1);
        key[0] = h;
        for (uint32_t i = h; i < d; ++i) key[i - h + 1] = c[i];
        auto hit = memo_.find(key);
        if (hit != memo_.end()) return hit->second;

        if (++used_ > budget_)
            throw Error(ErrorKind::ResourceLimit, "snapshot evaluation budget exceeded");

        NodeSet out(n);
        if (c[h] == 0) {
            if (h % 2 == 0) out = g_.priority_mask(h);
        } else {
            Timestamp next = step_credit(c, h, n);
            g_.priority_mask(h).for_each([&](uint32_t v) {
                bool in;
                if (g_.owner(v) == Player::Even) {
                    in = false;
                    for (NodeId t : g_.successors(v))
                        if (value(g_.priority(t), next).test(t)) {
                            in = true;
                            break;
                        }
                } else {
                    in = true;
                    for (NodeId t : g_.successors(v))
                        if (!value(g_.priority(t), next).test(t)) {
                            in = false;
                            break;
                        }
                }
                if (in) out.set(v);
            });
        }
        memo_.emplace(std::move(key), out);
        return out;
    }

  private:
    const ParityGame& g_;
    uint64_t budget_;
    uint64_t used_ = 0;
    std::unordered_map<std::vector<uint32_t>, NodeSet, detail::U32VecHash> memo_;
};

inline NodeSet snapshot_value(const ParityGame& g, uint32_t h, const Timestamp& c,
                              uint64_t budget = 10'000'000) {
    SnapshotOracle oracle(g, budget);
    return oracle.value(h, c);
}

} // namespace pgfix
