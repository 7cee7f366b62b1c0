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
#include <span>
#include <string>
#include <vector>

#include "game.hpp"

namespace pgfix {

/** A d-tuple of per-level counters (c_{d-1},…,c_0), doubling as the credit
 *  of the pay-off game. Index h stores c_h, so counters[0] is the innermost
 *  (fastest-moving) counter. Rendered highest level first: [c_{d-1},…,c_0].
 */
struct Timestamp {
    std::vector<uint32_t> c;

    Timestamp() = default;
    explicit Timestamp(size_t levels, uint32_t fill = 0) : c(levels, fill) {}

    /** Build from display order [c_{d-1},…,c_0]. */
    static Timestamp from_display(std::initializer_list<uint32_t> highest_first) {
        Timestamp t;
        t.c.assign(highest_first.begin(), highest_first.end());
        for (size_t i = 0, j = t.c.size(); i + 1 < j; ++i, --j) std::swap(t.c[i], t.c[j - 1]);
        return t;
    }

    size_t levels() const { return c.size(); }
    uint32_t operator[](size_t h) const { return c[h]; }
    uint32_t& operator[](size_t h) { return c[h]; }

    bool operator==(const Timestamp& o) const { return c == o.c; }
    bool operator!=(const Timestamp& o) const { return c != o.c; }

    std::string to_string() const {
        std::string s = "[";
        for (size_t i = c.size(); i-- > 0;) {
            s += std::to_string(c[i]);
            if (i) s += ",";
        }
        return s + "]";
    }
};

/** Strict lexicographic order reading the highest level c_{d-1} first. */
inline bool lex_less(std::span<const uint32_t> a, std::span<const uint32_t> b) {
    if (a.size() != b.size())
        throw Error(ErrorKind::LengthMismatch, "timestamp length mismatch");
    for (size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

inline bool lex_less(const Timestamp& a, const Timestamp& b) {
    return lex_less(std::span<const uint32_t>(a.c), std::span<const uint32_t>(b.c));
}

/** The player orders >_Even / >_Odd: a is later than b for p iff at the
 *  highest differing coordinate whose index parity is odd (for Even) or
 *  even (for Odd), a exceeds b. Coordinates of the other parity are
 *  invisible to the order.
 */
inline bool later_than(std::span<const uint32_t> a, std::span<const uint32_t> b, Player p) {
    if (a.size() != b.size())
        throw Error(ErrorKind::LengthMismatch, "timestamp length mismatch");
    uint32_t want = p == Player::Even ? 1 : 0;
    for (size_t i = a.size(); i-- > 0;) {
        if ((i & 1) != want) continue;
        if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
}

inline bool later_than(const Timestamp& a, const Timestamp& b, Player p) {
    return later_than(std::span<const uint32_t>(a.c), std::span<const uint32_t>(b.c), p);
}

} // namespace pgfix
