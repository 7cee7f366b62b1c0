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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "game.hpp"
#include "solve_result.hpp"

namespace pgfix {

/* PGSolver game format:
 *
 *   parity <maxid>;                        (optional header)
 *   <id> <priority> <owner> <s>(,<s>)* ("name")? ;   (one line per node)
 *
 * owner 0 = Even, 1 = Odd. Ids must be exactly 0..maxid. Output is
 * canonical: header present, ids ascending, successors comma-separated
 * without spaces, every line newline-terminated. Input tolerates extra
 * blanks and \r\n line ends.
 *
 * Solution format:
 *
 *   paritysol <maxid>;
 *   <id> <winner>( <strategy-successor>)? ;
 *
 * winner 0 = Even, 1 = Odd; the third field is present only where the
 * solver recorded a strategy edge for the node.
 */

namespace detail {

class LineLexer {
  public:
    LineLexer(std::string_view line, uint32_t lineno) : s_(line), lineno_(lineno) {}

    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ >= s_.size();
    }

    bool peek_is(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    void expect(char c, const char* what) {
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected ") + what);
        ++pos_;
    }

    int64_t integer(const char* what) {
        skip_ws();
        size_t start = pos_;
        if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
        while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') ++pos_;
        if (pos_ == start || (s_[start] == '-' && pos_ == start + 1))
            fail(std::string("expected ") + what);
        if (pos_ - start > 18) fail(std::string(what) + " out of range");
        return std::stoll(std::string(s_.substr(start, pos_ - start)));
    }

    std::string quoted() {
        skip_ws();
        ++pos_; // opening quote, already peeked
        size_t start = pos_;
        while (pos_ < s_.size() && s_[pos_] != '"') ++pos_;
        if (pos_ >= s_.size()) fail("unterminated name string");
        std::string out(s_.substr(start, pos_ - start));
        ++pos_;
        return out;
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw Error(ErrorKind::SyntaxError,
                    "line " + std::to_string(lineno_) + ": " + msg, lineno_);
    }

  private:
    std::string_view s_;
    size_t pos_ = 0;
    uint32_t lineno_;
};

/** Split into lines, dropping a trailing '\r' on each; keeps 1-based numbering. */
inline std::vector<std::pair<uint32_t, std::string_view>> logical_lines(std::string_view text) {
    std::vector<std::pair<uint32_t, std::string_view>> out;
    uint32_t lineno = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string_view line = nl == std::string_view::npos
                                    ? text.substr(pos)
                                    : text.substr(pos, nl - pos);
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        bool blank = true;
        for (char ch : line)
            if (ch != ' ' && ch != '\t') { blank = false; break; }
        if (!blank) out.emplace_back(lineno, line);
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return out;
}

inline NodeId checked_id(int64_t raw, LineLexer& lex, const char* what) {
    if (raw < 0) lex.fail(std::string(what) + " is negative");
    if (raw > 0x7fffffff) lex.fail(std::string(what) + " out of range");
    return (NodeId)raw;
}

} // namespace detail

inline ParityGame parse_pgsolver(std::string_view text) {
    auto lines = detail::logical_lines(text);
    size_t li = 0;

    std::optional<uint32_t> header_maxid;
    if (li < lines.size()) {
        std::string_view first = lines[li].second;
        size_t p = first.find_first_not_of(" \t");
        if (p != std::string_view::npos && first.substr(p, 6) == "parity") {
            detail::LineLexer lex(first.substr(p + 6), lines[li].first);
            header_maxid = detail::checked_id(lex.integer("max node id"), lex, "max node id");
            lex.expect(';', "';'");
            if (!lex.at_end()) lex.fail("trailing characters after header");
            ++li;
        }
    }

    struct Row {
        uint32_t lineno;
        int64_t priority;
        Player owner;
        std::vector<NodeId> succ;
        std::string name;
        bool seen = false;
    };
    std::vector<Row> rows;
    bool any_names = false;

    for (; li < lines.size(); ++li) {
        detail::LineLexer lex(lines[li].second, lines[li].first);
        NodeId id = detail::checked_id(lex.integer("node id"), lex, "node id");
        int64_t prio = lex.integer("priority");
        int64_t owner_raw = lex.integer("owner");
        if (owner_raw != 0 && owner_raw != 1) lex.fail("owner must be 0 or 1");

        std::vector<NodeId> succ;
        succ.push_back(detail::checked_id(lex.integer("successor id"), lex, "successor id"));
        while (lex.peek_is(',')) {
            lex.expect(',', "','");
            succ.push_back(detail::checked_id(lex.integer("successor id"), lex, "successor id"));
        }

        std::string name;
        if (lex.peek_is('"')) {
            name = lex.quoted();
            any_names = true;
        }
        lex.expect(';', "';'");
        if (!lex.at_end()) lex.fail("trailing characters after ';'");

        if (id >= rows.size()) rows.resize(id + 1);
        if (rows[id].seen)
            throw Error(ErrorKind::DuplicateNode,
                        "line " + std::to_string(lines[li].first) + ": node " +
                            std::to_string(id) + " defined twice",
                        lines[li].first);
        rows[id] = Row{lines[li].first, prio, owner_raw == 0 ? Player::Even : Player::Odd,
                       std::move(succ), std::move(name), true};
    }

    if (rows.empty()) throw Error(ErrorKind::EmptyGame, "no node definitions in input");
    for (uint32_t id = 0; id < rows.size(); ++id)
        if (!rows[id].seen)
            throw Error(ErrorKind::SyntaxError,
                        "node " + std::to_string(id) + " missing: ids must be dense");
    if (header_maxid && *header_maxid != rows.size() - 1)
        throw Error(ErrorKind::SyntaxError,
                    "header maxid " + std::to_string(*header_maxid) + " but highest node id is " +
                        std::to_string(rows.size() - 1));

    std::vector<NodeSpec> specs;
    specs.reserve(rows.size());
    for (Row& r : rows)
        specs.emplace_back(r.priority, r.owner, std::move(r.succ),
                           any_names ? r.name : std::string());
    return build_game(specs);
}

inline std::string write_pgsolver(const ParityGame& g) {
    std::string out = "parity " + std::to_string(g.node_count() - 1) + ";\n";
    for (uint32_t v = 0; v < g.node_count(); ++v) {
        out += std::to_string(v);
        out += ' ';
        out += std::to_string(g.priority(v));
        out += ' ';
        out += g.owner(v) == Player::Even ? '0' : '1';
        out += ' ';
        auto ss = g.successors(v);
        for (size_t k = 0; k < ss.size(); ++k) {
            if (k) out += ',';
            out += std::to_string(ss[k]);
        }
        if (g.has_names() && !g.name(v).empty()) {
            out += " \"";
            out += g.name(v);
            out += '"';
        }
        out += ";\n";
    }
    return out;
}

/** Per-node winner plus optional strategy edge, as read from a solution file. */
struct Solution {
    std::vector<Player> winner;
    std::vector<NodeId> strategy; // kNoStrategy where absent

    uint32_t node_count() const { return (uint32_t)winner.size(); }
};

inline std::string write_solution(const SolveResult& r) {
    uint32_t n = r.w_even.universe();
    std::string out = "paritysol " + std::to_string(n - 1) + ";\n";
    for (uint32_t v = 0; v < n; ++v) {
        Player w = r.winner(v);
        out += std::to_string(v);
        out += ' ';
        out += w == Player::Even ? '0' : '1';
        NodeId s = r.strategy(w).empty() ? kNoStrategy : r.strategy(w)[v];
        if (s != kNoStrategy) {
            out += ' ';
            out += std::to_string(s);
        }
        out += ";\n";
    }
    return out;
}

inline Solution parse_solution(std::string_view text) {
    auto lines = detail::logical_lines(text);
    if (lines.empty()) throw Error(ErrorKind::SyntaxError, "empty solution file");

    size_t li = 0;
    std::optional<uint32_t> header_maxid;
    {
        std::string_view first = lines[0].second;
        size_t p = first.find_first_not_of(" \t");
        if (p != std::string_view::npos && first.substr(p, 9) == "paritysol") {
            detail::LineLexer lex(first.substr(p + 9), lines[0].first);
            header_maxid = detail::checked_id(lex.integer("max node id"), lex, "max node id");
            lex.expect(';', "';'");
            if (!lex.at_end()) lex.fail("trailing characters after header");
            ++li;
        }
    }

    struct Row {
        Player winner;
        NodeId strategy;
        bool seen = false;
    };
    std::vector<Row> rows;
    for (; li < lines.size(); ++li) {
        detail::LineLexer lex(lines[li].second, lines[li].first);
        NodeId id = detail::checked_id(lex.integer("node id"), lex, "node id");
        int64_t w = lex.integer("winner");
        if (w != 0 && w != 1) lex.fail("winner must be 0 or 1");
        NodeId strat = kNoStrategy;
        if (!lex.peek_is(';'))
            strat = detail::checked_id(lex.integer("strategy successor"), lex,
                                       "strategy successor");
        lex.expect(';', "';'");
        if (!lex.at_end()) lex.fail("trailing characters after ';'");

        if (id >= rows.size()) rows.resize(id + 1);
        if (rows[id].seen)
            throw Error(ErrorKind::DuplicateNode,
                        "line " + std::to_string(lines[li].first) + ": node " +
                            std::to_string(id) + " listed twice",
                        lines[li].first);
        rows[id] = Row{w == 0 ? Player::Even : Player::Odd, strat, true};
    }

    if (rows.empty()) throw Error(ErrorKind::SyntaxError, "solution lists no nodes");
    for (uint32_t id = 0; id < rows.size(); ++id)
        if (!rows[id].seen)
            throw Error(ErrorKind::SyntaxError,
                        "node " + std::to_string(id) + " missing from solution");
    if (header_maxid && *header_maxid != rows.size() - 1)
        throw Error(ErrorKind::SyntaxError,
                    "header maxid " + std::to_string(*header_maxid) +
                        " but highest node id is " + std::to_string(rows.size() - 1));

    Solution sol;
    sol.winner.reserve(rows.size());
    sol.strategy.reserve(rows.size());
    for (const Row& r : rows) {
        sol.winner.push_back(r.winner);
        sol.strategy.push_back(r.strategy);
    }
    return sol;
}

} // namespace pgfix
