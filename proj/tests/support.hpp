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
#include <vector>

#include <pgfix/pgfix.hpp>

namespace pgfix::testing {

/** Five nodes, two loops sharing node 0: an Even choice between a cycle
 *  whose top priority is even (0-1-4) and one whose top priority is odd
 *  (0-2-3). Even wins everywhere, but only by taking the 0 -> 1 edge. */
inline ParityGame make_bowtie_game() {
    std::vector<NodeSpec> nodes;
    nodes.emplace_back(0, Player::Even, std::vector<NodeId>{1, 2});
    nodes.emplace_back(1, Player::Odd, std::vector<NodeId>{4});
    nodes.emplace_back(2, Player::Odd, std::vector<NodeId>{3});
    nodes.emplace_back(3, Player::Odd, std::vector<NodeId>{0});
    nodes.emplace_back(4, Player::Odd, std::vector<NodeId>{0});
    return build_game(nodes);
}

/** All nonempty successor lists over n nodes with at most max_deg distinct
 *  targets, in ascending order. */
inline std::vector<std::vector<NodeId>> successor_options(uint32_t n, uint32_t max_deg) {
    std::vector<std::vector<NodeId>> opts;
    std::vector<NodeId> cur;
    auto rec = [&](auto&& self, uint32_t next) -> void {
        if (!cur.empty()) opts.push_back(cur);
        if (cur.size() == max_deg) return;
        for (uint32_t t = next; t < n; ++t) {
            cur.push_back(t);
            self(self, t + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return opts;
}

/** Enumerate every game with 1..max_n nodes, priorities below num_prio,
 *  and out-degree at most max_deg; fn receives each game. Returns how many
 *  games were visited. */
template <class F>
inline uint64_t for_each_small_game(uint32_t max_n, uint32_t num_prio, uint32_t max_deg, F&& fn) {
    uint64_t seen = 0;
    for (uint32_t n = 1; n <= max_n; ++n) {
        std::vector<std::vector<NodeId>> opts = successor_options(n, max_deg);
        uint64_t per_node = 2ull * num_prio * opts.size();
        std::vector<uint64_t> digit(n, 0);
        std::vector<NodeSpec> specs;
        for (;;) {
            specs.clear();
            for (uint32_t v = 0; v < n; ++v) {
                uint64_t d = digit[v];
                int64_t prio = (int64_t)(d % num_prio);
                d /= num_prio;
                Player owner = d % 2 == 0 ? Player::Even : Player::Odd;
                d /= 2;
                specs.emplace_back(prio, owner, opts[d]);
            }
            fn(build_game(specs));
            ++seen;
            uint32_t k = 0;
            while (k < n) {
                if (++digit[k] < per_node) break;
                digit[k] = 0;
                ++k;
            }
            if (k == n) break;
        }
    }
    return seen;
}

/** Deterministic stream of random games: n in [2, max_n], priority bound
 *  in [1, max_d], degrees in [1, min(3, n)]. */
inline ParityGame nth_random_game(uint64_t master_seed, uint32_t i, uint32_t max_n,
                                  uint32_t max_d) {
    uint64_t s = master_seed + 0x100000001b3ull * i;
    uint32_t n = 2 + (uint32_t)detail::draw_below(s, max_n - 1);
    uint32_t d = 1 + (uint32_t)detail::draw_below(s, max_d);
    uint32_t cap = n < 3 ? n : 3;
    uint32_t lo = 1 + (uint32_t)detail::draw_below(s, cap);
    uint32_t hi = lo + (uint32_t)detail::draw_below(s, cap - lo + 1);
    return make_random_game(n, d, lo, hi, detail::splitmix64(s));
}

} // namespace pgfix::testing
