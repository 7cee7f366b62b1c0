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
#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace pgfix;

TEST_CASE("credit updates follow the three-zone rule") {
    // Above the moved priority: unchanged. At it: minus one. Below: refill.
    Timestamp c = Timestamp::from_display({3, 2, 1});
    Timestamp r = step_credit(c, 2, 4);
    REQUIRE(r == Timestamp::from_display({2, 4, 4}));

    Timestamp r0 = step_credit(c, 0, 4);
    REQUIRE(r0 == Timestamp::from_display({3, 2, 0}));

    Timestamp top = step_credit(Timestamp::from_display({5, 0, 0}), 2, 7);
    REQUIRE(top == Timestamp::from_display({4, 7, 7}));
}

TEST_CASE("credit updates reject spent or out-of-range priorities") {
    Timestamp c = Timestamp::from_display({1, 0});
    try {
        step_credit(c, 0, 3);
        FAIL("expected terminal error");
    } catch (const Error& e) {
        REQUIRE(e.kind == ErrorKind::TerminalConfig);
    }
    try {
        step_credit(c, 2, 3);
        FAIL("expected range error");
    } catch (const Error& e) {
        REQUIRE(e.kind == ErrorKind::LengthMismatch);
    }
}

TEST_CASE("credit updates strictly decrease the credit") {
    uint32_t n = 3, d = 4;
    // Every nonterminal configuration steps to a lexicographically smaller one.
    std::vector<uint32_t> digits(d, 0);
    for (;;) {
        Timestamp c(d);
        for (uint32_t h = 0; h < d; ++h) c[h] = digits[h];
        for (uint32_t p = 0; p < d; ++p) {
            if (c[p] == 0) continue;
            Timestamp r = step_credit(c, p, n);
            REQUIRE(lex_less(r, c));
        }
        uint32_t i = 0;
        while (i < d && digits[i] == n) digits[i++] = 0;
        if (i == d) break;
        ++digits[i];
    }
}

TEST_CASE("terminal configurations resolve by priority parity") {
    std::vector<NodeSpec> specs;
    specs.emplace_back(0, Player::Odd, std::vector<NodeId>{1});
    specs.emplace_back(1, Player::Odd, std::vector<NodeId>{0});
    ParityGame g = build_game(specs);
    PayoffAnalysis a(g);
    REQUIRE(a.winner(0, Timestamp::from_display({2, 0})) == Player::Even);
    REQUIRE(a.winner(1, Timestamp::from_display({0, 2})) == Player::Odd);
}

TEST_CASE("the bowtie payoff at full credit favors Even everywhere") {
    ParityGame g = testing::make_bowtie_game();
    Timestamp full(5, 5);
    PayoffAnalysis a(g);
    for (uint32_t v = 0; v < 5; ++v) {
        PayoffOutcome out = a.outcome(v, full);
        REQUIRE(out.winner == Player::Even);
    }
}

TEST_CASE("witness plays are legal and end in a matching terminal") {
    for (uint32_t i = 0; i < 25; ++i) {
        ParityGame g = testing::nth_random_game(0x9a1eULL, i, 4, 3);
        uint32_t n = g.node_count();
        PayoffAnalysis a(g);
        Timestamp full(g.priority_bound(), n);
        for (uint32_t v = 0; v < n; ++v) {
            PayoffOutcome out = a.outcome(v, full);
            REQUIRE(!out.witness.empty());
            REQUIRE(out.witness.front().node == v);
            REQUIRE(out.witness.front().credit == full);
            for (size_t k = 0; k + 1 < out.witness.size(); ++k) {
                const PayoffConfig& cur = out.witness[k];
                const PayoffConfig& nxt = out.witness[k + 1];
                auto succ = g.successors(cur.node);
                REQUIRE(std::find(succ.begin(), succ.end(), nxt.node) != succ.end());
                REQUIRE(nxt.credit == step_credit(cur.credit, g.priority(cur.node), n));
            }
            const PayoffConfig& last = out.witness.back();
            uint32_t h = g.priority(last.node);
            REQUIRE(last.credit[h] == 0);
            REQUIRE((h % 2 == 0) == (out.winner == Player::Even));
        }
    }
}

TEST_CASE("full credit reproduces the parity winner") {
    for (uint32_t i = 0; i < 60; ++i) {
        ParityGame g = testing::nth_random_game(0x1e91ULL, i, 5, 3);
        SolveResult r = solve(g);
        PayoffAnalysis a(g);
        Timestamp full(g.priority_bound(), g.node_count());
        for (uint32_t v = 0; v < g.node_count(); ++v)
            REQUIRE((a.winner(v, full) == Player::Even) == r.w_even.test(v));
    }
}

TEST_CASE("visited banks match the payoff winner at their stamp") {
    SolverConfig cfg;
    cfg.full_iteration_mode = true;
    for (uint32_t i = 0; i < 8; ++i) {
        ParityGame g = testing::nth_random_game(0x7e57ULL, i, 3, 3);
        auto [r, snaps] = solve_with_snapshots(g, cfg);
        (void)r;
        PayoffAnalysis a(g);
        for (const Snapshot& s : snaps)
            for (uint32_t v = 0; v < g.node_count(); ++v) {
                bool banked = s.bank[g.priority(v)].test(v);
                bool even_wins = a.winner(v, s.stamp) == Player::Even;
                INFO("game " << i << " node " << v << " at " << s.stamp.to_string());
                REQUIRE(banked == even_wins);
            }
    }
}

TEST_CASE("snapshot recursion grounds out at spent credit") {
    ParityGame g = testing::make_bowtie_game();
    // Credit zero everywhere: even levels keep their nodes, odd levels drain.
    Timestamp zero(5, 0);
    for (uint32_t h = 0; h < 5; ++h) {
        NodeSet got = snapshot_value(g, h, zero);
        if (h % 2 == 0)
            REQUIRE(got == g.priority_mask(h));
        else
            REQUIRE(got.empty());
    }
    REQUIRE(snapshot_value(g, 0, Timestamp(5, 5)).to_vector() == std::vector<NodeId>{0});
    // An odd level with its own credit spent drains regardless of the rest.
    Timestamp mixed = Timestamp::from_display({5, 5, 5, 0, 5});
    REQUIRE(snapshot_value(g, 1, mixed).empty());
}

TEST_CASE("both snapshot routes agree") {
    for (uint32_t i = 0; i < 12; ++i) {
        ParityGame g = testing::nth_random_game(0x2b0bULL, i, 3, 3);
        uint32_t n = g.node_count();
        uint32_t d = g.priority_bound();
        PayoffAnalysis a(g);
        SnapshotOracle oracle(g);
        // Walk a sample of credits: all coordinates equal.
        for (uint32_t k = 0; k <= n; ++k) {
            Timestamp c(d, k);
            for (uint32_t h = 0; h < d; ++h) {
                NodeSet via_recursion = oracle.value(h, c);
                g.priority_mask(h).for_each([&](uint32_t v) {
                    REQUIRE(via_recursion.test(v) == (a.winner(v, c) == Player::Even));
                });
            }
        }
    }
}

TEST_CASE("snapshot values ignore credit below their level") {
    ParityGame g = testing::make_bowtie_game();
    SnapshotOracle oracle(g);
    Timestamp a = Timestamp::from_display({2, 1, 3, 0, 0});
    Timestamp b = Timestamp::from_display({2, 1, 3, 5, 1});
    REQUIRE(oracle.value(2, a) == oracle.value(2, b));
}

TEST_CASE("payoff budgets are enforced") {
    ParityGame g = testing::make_bowtie_game();
    try {
        PayoffAnalysis a(g, 100); // needs 5 * 6^5 table entries
        FAIL("expected budget error");
    } catch (const Error& e) {
        REQUIRE(e.kind == ErrorKind::ResourceLimit);
    }
    try {
        SnapshotOracle oracle(g, 3);
        oracle.value(4, Timestamp(5, 5));
        FAIL("expected budget error");
    } catch (const Error& e) {
        REQUIRE(e.kind == ErrorKind::ResourceLimit);
    }
}

TEST_CASE("payoff queries validate their credit") {
    ParityGame g = testing::make_bowtie_game();
    PayoffAnalysis a(g);
    try {
        a.winner(0, Timestamp(4, 5)); // wrong arity
        FAIL("expected length error");
    } catch (const Error& e) {
        REQUIRE(e.kind == ErrorKind::LengthMismatch);
    }
    try {
        a.winner(0, Timestamp(5, 6)); // entry above n
        FAIL("expected range error");
    } catch (const Error& e) {
        REQUIRE(e.kind == ErrorKind::InvalidSpec);
    }
}
