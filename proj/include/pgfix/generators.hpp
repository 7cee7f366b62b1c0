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
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "game.hpp"

namespace pgfix {

/* Deterministic benchmark-game generators.
 *
 * ladder(k) stacks k five-node gadgets whose priorities climb three per
 * level. Within a gadget the even-priority slots hold self-loops and a
 * cycle among themselves; the odd-priority slots point into them, and
 * three rail edges descend onto the even slots of the gadget below. Every
 * least-fixpoint variable therefore restarts all the ones below it without
 * ever changing the evaluation, and the iteration count doubles with each
 * odd priority the stack adds.
 *
 * jurdzinski(n, w) builds n+1 rows of w lamp pairs; rows below the top
 * also carry w spine nodes. Lamps cycle through an odd priority per row,
 * spines carry the even priority above it.
 *
 * random(n, d, min_deg, max_deg, seed) draws priorities, owners, and
 * distinct successors from a splitmix64 stream; equal seeds give equal
 * games on every platform.
 */

struct GeneratorSpec {
    enum class Family { Ladder, Jurdzinski, Random } family;
    // ladder: a = levels
    // jurdzinski: a = rows, b = width
    // random: a = nodes, b = priority bound, c = min degree, d = max degree
    uint64_t a = 0, b = 0, c = 0, d = 0;
    uint64_t seed = 0;
};

inline ParityGame make_ladder_game(uint32_t levels) {
    if (levels < 1) throw Error(ErrorKind::InvalidSpec, "ladder needs at least one level");
    std::vector<NodeSpec> nodes;
    nodes.reserve(levels * 5);
    auto id = [](uint32_t level, uint32_t slot) { return level * 5 + slot; };
    std::vector<uint32_t> below_even;
    for (uint32_t l = 0; l < levels; ++l) {
        // distinct priorities: 3 per low level, 4 on the next-to-top level,
        // 5 on the top level, totaling 3*levels + 3
        int64_t base = 3 * (int64_t)l;
        int64_t prio[5];
        if (l + 1 == levels) {
            base = levels == 1 ? 1 : 3 * (int64_t)levels - 2;
            for (uint32_t s = 0; s < 5; ++s) prio[s] = base + s;
        } else if (l + 2 == levels) {
            int64_t off[5] = {0, 1, 2, 3, 0};
            for (uint32_t s = 0; s < 5; ++s) prio[s] = base + off[s];
        } else {
            int64_t off[5] = {0, 1, 2, 0, 1};
            for (uint32_t s = 0; s < 5; ++s) prio[s] = base + off[s];
        }
        // a gadget always has two or three even-priority slots
        std::vector<uint32_t> evens, odds;
        for (uint32_t s = 0; s < 5; ++s) (prio[s] % 2 == 0 ? evens : odds).push_back(s);
        std::vector<std::vector<NodeId>> succ(5);
        for (size_t i = 0; i < evens.size(); ++i) {
            succ[evens[i]].push_back(id(l, evens[i]));
            succ[evens[i]].push_back(id(l, evens[(i + 1) % evens.size()]));
        }
        for (uint32_t o : odds) succ[o].push_back(id(l, evens[0]));
        if (evens.size() == 2) succ[odds[0]].push_back(id(l, evens[1]));
        // three rail edges per level above the bottom, landing on the even
        // slots of the gadget below
        if (l > 0) {
            uint32_t src[3] = {0, 2, 4};
            for (uint32_t e = 0; e < 3; ++e)
                succ[src[e]].push_back(id(l - 1, below_even[e % below_even.size()]));
        }
        for (uint32_t s = 0; s < 5; ++s) {
            Player owner = prio[s] % 2 == 0 ? Player::Even : Player::Odd;
            nodes.emplace_back(prio[s], owner, std::move(succ[s]));
        }
        below_even = std::move(evens);
    }
    return build_game(nodes);
}

inline ParityGame make_jurdzinski_game(uint32_t rows, uint32_t width) {
    if (rows < 1 || width < 1)
        throw Error(ErrorKind::InvalidSpec, "jurdzinski needs at least one row and column");
    std::vector<NodeSpec> nodes;
    // rows 0..rows-1 carry 2*width lamp nodes plus width spine nodes; the
    // top boundary row carries lamps only
    uint32_t per_row = 3 * width;
    auto lamp_odd = [&](uint32_t r, uint32_t j) { return r * per_row + 2 * j; };
    auto lamp_even = [&](uint32_t r, uint32_t j) { return r * per_row + 2 * j + 1; };
    auto spine = [&](uint32_t r, uint32_t j) { return r * per_row + 2 * width + j; };
    for (uint32_t r = 0; r <= rows; ++r) {
        bool top = r == rows;
        for (uint32_t j = 0; j < width; ++j) {
            // lamp pair: odd-priority node cycling with an even-priority mate,
            // both able to bail out onto the spine of their row
            std::vector<NodeId> so;
            so.push_back(lamp_even(r, j));
            if (!top) so.push_back(spine(r, j));
            nodes.emplace_back(2 * (int64_t)r + 1, Player::Even, std::move(so));
            std::vector<NodeId> se;
            se.push_back(lamp_odd(r, j));
            if (top) {
                // boundary mates carry the one even priority above every lamp
                // and feed the play back down onto the last spine
                if (j + 1 < width) se.push_back(lamp_odd(r, j + 1));
                se.push_back(spine(r - 1, j));
            } else {
                se.push_back(spine(r, j));
            }
            nodes.emplace_back(top ? 2 * (int64_t)rows + 2 : 0, Player::Odd, std::move(se));
        }
        if (top) break;
        for (uint32_t j = 0; j < width; ++j) {
            // the spine walks both ways along its row and climbs one row up
            std::vector<NodeId> ss;
            ss.push_back(lamp_odd(r, j));
            if (j > 0) ss.push_back(spine(r, j - 1));
            if (j + 1 < width) ss.push_back(spine(r, j + 1));
            ss.push_back(lamp_odd(r + 1, j));
            nodes.emplace_back(2 * (int64_t)r + 2, Player::Odd, std::move(ss));
        }
    }
    return build_game(nodes);
}

namespace detail {

inline uint64_t splitmix64(uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ z >> 30) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ z >> 27) * 0x94d049bb133111ebull;
    return z ^ z >> 31;
}

/** Uniform-enough draw below m by modulo reduction; the bias is at most
 *  m/2^64 and irrelevant for test-corpus generation. */
inline uint64_t draw_below(uint64_t& state, uint64_t m) { return splitmix64(state) % m; }

} // namespace detail

inline ParityGame make_random_game(uint32_t n, uint32_t priorities, uint32_t min_deg,
                                   uint32_t max_deg, uint64_t seed) {
    if (n < 1 || priorities < 1) throw Error(ErrorKind::InvalidSpec, "empty random game");
    if (min_deg < 1 || min_deg > max_deg || max_deg > n)
        throw Error(ErrorKind::InvalidSpec, "degree bounds must satisfy 1 <= min <= max <= n");
    uint64_t state = seed;
    std::vector<NodeSpec> nodes;
    nodes.reserve(n);
    std::vector<NodeId> pool(n);
    for (uint32_t v = 0; v < n; ++v) {
        int64_t prio = (int64_t)detail::draw_below(state, priorities);
        Player owner = detail::draw_below(state, 2) == 0 ? Player::Even : Player::Odd;
        uint32_t deg = min_deg + (uint32_t)detail::draw_below(state, max_deg - min_deg + 1);
        std::iota(pool.begin(), pool.end(), 0);
        std::vector<NodeId> succ(deg);
        for (uint32_t j = 0; j < deg; ++j) {
            uint32_t pick = j + (uint32_t)detail::draw_below(state, n - j);
            std::swap(pool[j], pool[pick]);
            succ[j] = pool[j];
        }
        nodes.emplace_back(prio, owner, std::move(succ));
    }
    return build_game(nodes);
}

inline ParityGame generate(const GeneratorSpec& spec) {
    switch (spec.family) {
    case GeneratorSpec::Family::Ladder:
        return make_ladder_game((uint32_t)spec.a);
    case GeneratorSpec::Family::Jurdzinski:
        return make_jurdzinski_game((uint32_t)spec.a, (uint32_t)spec.b);
    case GeneratorSpec::Family::Random:
        return make_random_game((uint32_t)spec.a, (uint32_t)spec.b, (uint32_t)spec.c,
                                (uint32_t)spec.d, spec.seed);
    }
    throw Error(ErrorKind::InvalidSpec, "unknown generator family");
}

/** Parse a one-line spec: "ladder <levels>", "jurdzinski <rows> <width>",
 *  or "random <nodes> <priorities> <min_deg> <max_deg> <seed>". */
inline GeneratorSpec parse_generator_spec(std::string_view line) {
    std::vector<std::string> tok;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) tok.emplace_back(line.substr(i, j - i));
        i = j;
    }
    auto num = [&](size_t k) -> uint64_t {
        if (k >= tok.size())
            throw Error(ErrorKind::InvalidSpec, "missing generator parameter");
        uint64_t val = 0;
        for (char ch : tok[k]) {
            if (ch < '0' || ch > '9')
                throw Error(ErrorKind::InvalidSpec, "generator parameters must be integers");
            val = val * 10 + (uint64_t)(ch - '0');
            if (val > 1'000'000'000'000ull)
                throw Error(ErrorKind::InvalidSpec, "generator parameter out of range");
        }
        return val;
    };
    GeneratorSpec s;
    if (tok.empty()) throw Error(ErrorKind::InvalidSpec, "empty generator spec");
    if (tok[0] == "ladder") {
        s.family = GeneratorSpec::Family::Ladder;
        s.a = num(1);
        if (tok.size() > 2) throw Error(ErrorKind::InvalidSpec, "ladder takes one parameter");
    } else if (tok[0] == "jurdzinski") {
        s.family = GeneratorSpec::Family::Jurdzinski;
        s.a = num(1);
        s.b = num(2);
        if (tok.size() > 3)
            throw Error(ErrorKind::InvalidSpec, "jurdzinski takes two parameters");
    } else if (tok[0] == "random") {
        s.family = GeneratorSpec::Family::Random;
        s.a = num(1);
        s.b = num(2);
        s.c = num(3);
        s.d = num(4);
        s.seed = num(5);
        if (tok.size() > 6) throw Error(ErrorKind::InvalidSpec, "random takes five parameters");
    } else {
        throw Error(ErrorKind::InvalidSpec, "unknown generator family: " + tok[0]);
    }
    return s;
}

inline std::string family_name(const GeneratorSpec& s) {
    switch (s.family) {
    case GeneratorSpec::Family::Ladder: return "ladder";
    case GeneratorSpec::Family::Jurdzinski: return "jurdzinski";
    case GeneratorSpec::Family::Random: return "random";
    }
    return "?";
}

inline std::vector<uint64_t> spec_params(const GeneratorSpec& s) {
    switch (s.family) {
    case GeneratorSpec::Family::Ladder: return {s.a};
    case GeneratorSpec::Family::Jurdzinski: return {s.a, s.b};
    case GeneratorSpec::Family::Random: return {s.a, s.b, s.c, s.d, s.seed};
    }
    return {};
}

} // namespace pgfix
