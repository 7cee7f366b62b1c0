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
#include <string>
#include <vector>

#include "game.hpp"

namespace pgfix {

/** Sentinel for "no strategy recorded at this node". */
constexpr NodeId kNoStrategy = ~NodeId(0);

struct SolveStats {
    uint64_t outer_iterations = 0;          // number of Psi evaluations
    std::vector<uint32_t> per_level_iterations; // high-water mark of each counter
    double wall_time_ms = 0.0;
    std::string solver_variant;
};

/** Winning regions, optional positional strategies and run statistics.
 *
 *  strategy_even / strategy_odd hold one successor per node or kNoStrategy;
 *  when a solver fills them, entries are set exactly on the owner's nodes
 *  inside the owner's winning region.
 */
struct SolveResult {
    NodeSet w_even;
    NodeSet w_odd;
    std::vector<NodeId> strategy_even;
    std::vector<NodeId> strategy_odd;
    SolveStats stats;

    SolveResult() = default;
    explicit SolveResult(uint32_t n)
        : w_even(n), w_odd(n), strategy_even(n, kNoStrategy), strategy_odd(n, kNoStrategy) {}

    Player winner(NodeId v) const { return w_even.test(v) ? Player::Even : Player::Odd; }

    const std::vector<NodeId>& strategy(Player p) const {
        return p == Player::Even ? strategy_even : strategy_odd;
    }
    std::vector<NodeId>& strategy(Player p) {
        return p == Player::Even ? strategy_even : strategy_odd;
    }
    const NodeSet& region(Player p) const { return p == Player::Even ? w_even : w_odd; }
};

} // namespace pgfix
