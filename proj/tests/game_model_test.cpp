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

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind;
    }
    FAIL("expected an error");
    return ErrorKind::SyntaxError;
}

} // namespace

TEST_CASE("node sets cover set/reset/count over both storage sizes") {
    for (uint32_t n : {1u, 5u, 63u, 64u, 65u, 127u, 128u, 129u, 200u}) {
        NodeSet s(n);
        REQUIRE(s.empty());
        REQUIRE(s.universe() == n);
        s.set(0);
        s.set(n - 1);
        REQUIRE(s.test(0));
        REQUIRE(s.test(n - 1));
        REQUIRE(s.count() == (n == 1 ? 1u : 2u));
        NodeSet t = s;
        REQUIRE(t == s);
        t.complement();
        REQUIRE(t.count() == n - s.count());
        REQUIRE(!t.intersects(s));
        t |= s;
        REQUIRE(t == NodeSet::all(n));
        t -= s;
        REQUIRE(!t.test(0));
        t &= s;
        REQUIRE(t.empty());
    }
}

TEST_CASE("node set iteration runs in ascending order") {
    NodeSet s(150);
    for (uint32_t v : {3u, 64u, 65u, 149u}) s.set(v);
    std::vector<uint32_t> got;
    s.for_each([&](uint32_t v) { got.push_back(v); });
    REQUIRE(got == std::vector<uint32_t>{3, 64, 65, 149});
    REQUIRE(s.to_vector() == std::vector<NodeId>{3, 64, 65, 149});
}

TEST_CASE("node set operations demand equal universes") {
    NodeSet a(5), b(6);
    REQUIRE(kind_of([&] { a |= b; }) == ErrorKind::LengthMismatch);
}

TEST_CASE("subset and intersection predicates") {
    NodeSet a(10), b(10);
    a.set(1);
    b.set(1);
    b.set(7);
    REQUIRE(a.subset_of(b));
    REQUIRE(!b.subset_of(a));
    REQUIRE(a.intersects(b));
    NodeSet c(10);
    c.set(2);
    REQUIRE(!a.intersects(c));
}

TEST_CASE("game construction rejects malformed input") {
    REQUIRE(kind_of([] { build_game({}); }) == ErrorKind::EmptyGame);

    std::vector<NodeSpec> no_succ;
    no_succ.emplace_back(0, Player::Even, std::vector<NodeId>{});
    REQUIRE(kind_of([&] { build_game(no_succ); }) == ErrorKind::NoSuccessor);

    std::vector<NodeSpec> dangling;
    dangling.emplace_back(0, Player::Even, std::vector<NodeId>{3});
    REQUIRE(kind_of([&] { build_game(dangling); }) == ErrorKind::DanglingEdge);

    std::vector<NodeSpec> negative;
    negative.emplace_back(-1, Player::Even, std::vector<NodeId>{0});
    REQUIRE(kind_of([&] { build_game(negative); }) == ErrorKind::NegativePriority);

    std::vector<NodeSpec> dup;
    dup.emplace_back(0, Player::Even, std::vector<NodeId>{0, 0});
    REQUIRE(kind_of([&] { build_game(dup); }) == ErrorKind::DuplicateEdge);
}

TEST_CASE("constructed game exposes owners, priorities, and adjacency") {
    ParityGame g = testing::make_bowtie_game();
    REQUIRE(g.node_count() == 5);
    REQUIRE(g.edge_count() == 6);
    REQUIRE(g.max_priority() == 4);
    REQUIRE(g.min_priority() == 0);
    REQUIRE(g.priority_bound() == 5);
    REQUIRE(g.priority_span() == 5);
    REQUIRE(distinct_priority_count(g) == 5);
    REQUIRE(g.owner(0) == Player::Even);
    REQUIRE(g.owner(3) == Player::Odd);
    REQUIRE(g.owned_by(Player::Even).count() == 1);
    std::vector<NodeId> succ0(g.successors(0).begin(), g.successors(0).end());
    REQUIRE(succ0 == std::vector<NodeId>{1, 2});
    std::vector<NodeId> pred0(g.predecessors(0).begin(), g.predecessors(0).end());
    REQUIRE(pred0 == std::vector<NodeId>{3, 4});
    REQUIRE(g.priority_mask(4).to_vector() == std::vector<NodeId>{4});
}

TEST_CASE("predecessors mirror successors on random games") {
    for (uint32_t i = 0; i < 20; ++i) {
        ParityGame g = testing::nth_random_game(0xfeedULL, i, 8, 4);
        for (uint32_t u = 0; u < g.node_count(); ++u)
            for (NodeId t : g.successors(u)) {
                auto preds = g.predecessors(t);
                REQUIRE(std::find(preds.begin(), preds.end(), u) != preds.end());
            }
    }
}

TEST_CASE("priority compression collapses parity runs") {
    // values {2,5,7}: 2 is even and lowest, 5 flips parity, 7 does not
    std::vector<NodeSpec> specs;
    specs.emplace_back(2, Player::Even, std::vector<NodeId>{1});
    specs.emplace_back(5, Player::Odd, std::vector<NodeId>{2});
    specs.emplace_back(7, Player::Odd, std::vector<NodeId>{0});
    auto [c, remap] = compress_priorities(build_game(specs));
    REQUIRE(remap.at(2) == 0);
    REQUIRE(remap.at(5) == 1);
    REQUIRE(remap.at(7) == 1);
    REQUIRE(c.max_priority() == 1);

    // values {1,3}: both odd, lowest class keeps its parity
    std::vector<NodeSpec> odd_only;
    odd_only.emplace_back(1, Player::Even, std::vector<NodeId>{1});
    odd_only.emplace_back(3, Player::Odd, std::vector<NodeId>{0});
    auto [c2, remap2] = compress_priorities(build_game(odd_only));
    REQUIRE(remap2.at(1) == 1);
    REQUIRE(remap2.at(3) == 1);
    REQUIRE(c2.priority_bound() == 2);
}

TEST_CASE("priority compression preserves winners") {
    for (uint32_t i = 0; i < 50; ++i) {
        ParityGame g = testing::nth_random_game(0xc0ffeeULL, i, 6, 6);
        auto [c, remap] = compress_priorities(g);
        REQUIRE(c.node_count() == g.node_count());
        SolveResult a = brute_solve(g);
        SolveResult b = brute_solve(c);
        REQUIRE(a.w_even == b.w_even);
    }
}

TEST_CASE("parser accepts the header and canonical rows") {
    std::string text = "parity 2;\n"
                       "0 3 0 1,2 \"start\";\n"
                       "1 2 1 0;\n"
                       "2 0 1 2,0;\n";
    ParityGame g = parse_pgsolver(text);
    REQUIRE(g.node_count() == 3);
    REQUIRE(g.priority(0) == 3);
    REQUIRE(g.owner(0) == Player::Even);
    REQUIRE(g.owner(1) == Player::Odd);
    REQUIRE(g.has_names());
    REQUIRE(g.name(0) == "start");
    std::vector<NodeId> s2(g.successors(2).begin(), g.successors(2).end());
    REQUIRE(s2 == std::vector<NodeId>{2, 0});
}

TEST_CASE("parser tolerates missing header and extra whitespace") {
    ParityGame g = parse_pgsolver("0 0 0   0 ;\n\n  1 1 1 0,1;\n");
    REQUIRE(g.node_count() == 2);
    REQUIRE(g.edge_count() == 3);
}

TEST_CASE("parser reports the offending line") {
    auto line_of = [](const std::string& text) {
        try {
            parse_pgsolver(text);
        } catch (const Error& e) {
            return e.line;
        }
        return 0u;
    };
    REQUIRE(line_of("parity 1;\n0 0 0 0;\nbogus;\n") == 3);
    REQUIRE(line_of("0 0 0 0\n") == 1);       // missing semicolon
    REQUIRE(line_of("0 0 2 0;\n") == 1);      // owner out of range
    REQUIRE(line_of("0 0 0 0;\n0 0 0 0;\n") == 2); // duplicate id
}

TEST_CASE("parser classifies structural failures") {
    auto kind = [](const std::string& text) {
        try {
            parse_pgsolver(text);
        } catch (const Error& e) {
            return e.kind;
        }
        return ErrorKind::EmptyGame;
    };
    REQUIRE(kind("") == ErrorKind::EmptyGame);
    REQUIRE(kind("0 0 0 0;\n0 0 0 0;\n") == ErrorKind::DuplicateNode);
    REQUIRE(kind("1 0 0 1;\n") == ErrorKind::SyntaxError);        // id 0 missing
    REQUIRE(kind("parity 5;\n0 0 0 0;\n") == ErrorKind::SyntaxError); // header mismatch
    REQUIRE(kind("0 -2 0 0;\n") == ErrorKind::NegativePriority);
    REQUIRE(kind("0 0 0 1;\n1 0 0 0,0;\n") == ErrorKind::DuplicateEdge);
}

TEST_CASE("writer emits a canonical reparsable document") {
    ParityGame g = testing::make_bowtie_game();
    std::string text = write_pgsolver(g);
    REQUIRE(text.substr(0, 9) == "parity 4;");
    ParityGame h = parse_pgsolver(text);
    REQUIRE(write_pgsolver(h) == text);
    REQUIRE(h.node_count() == g.node_count());
    for (uint32_t v = 0; v < g.node_count(); ++v) {
        REQUIRE(h.priority(v) == g.priority(v));
        REQUIRE(h.owner(v) == g.owner(v));
    }
}

TEST_CASE("write/parse round-trip over random games") {
    for (uint32_t i = 0; i < 30; ++i) {
        ParityGame g = testing::nth_random_game(0xabcdULL, i, 8, 5);
        ParityGame h = parse_pgsolver(write_pgsolver(g));
        REQUIRE(write_pgsolver(h) == write_pgsolver(g));
    }
}

TEST_CASE("solution documents round-trip") {
    ParityGame g = testing::make_bowtie_game();
    SolveResult r(g.node_count());
    r.w_even = g.full_set();
    r.w_odd = NodeSet(g.node_count());
    r.strategy_even[0] = 1;
    std::string text = write_solution(r);
    REQUIRE(text == "paritysol 4;\n0 0 1;\n1 0;\n2 0;\n3 0;\n4 0;\n");
    Solution s = parse_solution(text);
    REQUIRE(s.winner == std::vector<Player>(5, Player::Even));
    REQUIRE(s.strategy[0] == 1);
    REQUIRE(s.strategy[1] == kNoStrategy);
}

TEST_CASE("solution parser rejects malformed documents") {
    auto kind = [](const std::string& text) {
        try {
            parse_solution(text);
        } catch (const Error& e) {
            return e.kind;
        }
        return ErrorKind::EmptyGame;
    };
    REQUIRE(kind("paritysol 1;\n0 0;\n") == ErrorKind::SyntaxError); // id 1 missing
    REQUIRE(kind("0 2;\n") == ErrorKind::SyntaxError);               // winner out of range
    REQUIRE(kind("0 0;\n0 1;\n") == ErrorKind::DuplicateNode);
}

TEST_CASE("quoted names survive a round-trip") {
    std::vector<NodeSpec> specs;
    specs.emplace_back(1, Player::Odd, std::vector<NodeId>{0}, "first node");
    auto g = build_game(specs);
    ParityGame h = parse_pgsolver(write_pgsolver(g));
    REQUIRE(h.name(0) == "first node");
}
