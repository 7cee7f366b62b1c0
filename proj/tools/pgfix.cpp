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

/* Command-line front end.
 *
 *   pgfix solve <game.pg> [-o sol] [--solver ...] [--strategies] [--stats s.json] [--check]
 *   pgfix verify <game.pg> <sol>
 *   pgfix generate <family> <params...> [-o game.pg]
 *   pgfix bench <specs.txt> [--solver ...] [--repeat k] [--out b.json]
 *   pgfix trace <game.pg> [--out t.jsonl] [--budget n]
 *
 * Exit codes: 0 success, 2 parse error in an input file or generator spec,
 * 3 verification failure, 4 resource limit exceeded.
 */

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pgfix/pgfix.hpp"

namespace {

using nlohmann::json;
using namespace pgfix;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitVerify = 3;
constexpr int kExitResource = 4;

/** Verification failures detected by the CLI itself (region mismatch,
 *  bad strategy, solution round-trip damage). */
struct VerifyFailure {
    std::string message;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::SyntaxError, "cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) throw Error(ErrorKind::SyntaxError, "cannot write " + path);
}

/** Writes to the path, or to standard output when the path is "-". */
void emit(const std::string& path, const std::string& text) {
    if (path == "-")
        std::cout << text;
    else
        write_file(path, text);
}

ParityGame load_game(const std::string& path) { return parse_pgsolver(read_file(path)); }

uint32_t edge_count(const ParityGame& g) {
    uint32_t e = 0;
    for (uint32_t v = 0; v < g.node_count(); ++v) e += (uint32_t)g.successors(v).size();
    return e;
}

SolveResult run_solver(const ParityGame& g, const std::string& solver, bool strategies) {
    if (solver == "fpiter")
        return strategies ? solve_with_strategies(g) : solve(g);
    if (solver == "fpiter-opt") {
        SolverConfig cfg;
        cfg.restrict_to_priority = true;
        cfg.cache_modal_parts = true;
        cfg.eliminate_resets = true;
        return solve(g, cfg);
    }
    if (solver == "brute") return brute_solve(g);
    if (solver == "reference") return reference_solve(g);
    throw Error(ErrorKind::InvalidSpec, "unknown solver: " + solver);
}

json stats_record(const ParityGame& g, const SolveResult& r, double measured_ms) {
    json j;
    j["solver_variant"] = r.stats.solver_variant;
    j["nodes"] = g.node_count();
    j["edges"] = edge_count(g);
    j["index"] = distinct_priority_count(g);
    j["outer_iterations"] = r.stats.outer_iterations;
    j["per_level_iterations"] = r.stats.per_level_iterations;
    j["wall_time_ms"] = r.stats.wall_time_ms > 0 ? r.stats.wall_time_ms : measured_ms;
    return j;
}

json stamp_json(const Timestamp& t) {
    json arr = json::array();
    for (uint32_t i = t.levels(); i-- > 0;) arr.push_back(t[i]);
    return arr;
}

/** Check the extracted strategies of r on their winning regions; throws
 *  VerifyFailure naming the offending node. */
void check_strategies(const ParityGame& g, const SolveResult& r) {
    VerifyResult even = verify_positional(g, Player::Even, r.strategy_even, r.w_even);
    if (!even.ok) throw VerifyFailure{"Even strategy invalid: " + even.reason};
    VerifyResult odd = verify_positional(g, Player::Odd, r.strategy_odd, r.w_odd);
    if (!odd.ok) throw VerifyFailure{"Odd strategy invalid: " + odd.reason};
}

int cmd_solve(const std::string& game_path, const std::string& out_path,
              const std::string& solver, bool strategies, const std::string& stats_path,
              bool check) {
    ParityGame g = load_game(game_path);
    auto t0 = std::chrono::steady_clock::now();
    SolveResult r = run_solver(g, solver, strategies);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();

    std::string text = write_solution(r);
    emit(out_path, text);
    if (!stats_path.empty()) emit(stats_path, stats_record(g, r, ms).dump(2) + "\n");

    if (check) {
        bool has_strategies = strategies || solver == "brute" || solver == "reference";
        if (has_strategies) check_strategies(g, r);
        // cross-check the regions against an independent solver
        SolveResult ref = reference_solve(g);
        for (uint32_t v = 0; v < g.node_count(); ++v)
            if (ref.w_even.test(v) != r.w_even.test(v))
                throw VerifyFailure{"region mismatch against reference solver at node " +
                                    std::to_string(v)};
        if (g.node_count() <= 6) {
            SolveResult br = brute_solve(g);
            for (uint32_t v = 0; v < g.node_count(); ++v)
                if (br.w_even.test(v) != r.w_even.test(v))
                    throw VerifyFailure{"region mismatch against brute-force solver at node " +
                                        std::to_string(v)};
        }
        // the written file must parse back to the same solution
        if (out_path != "-") {
            Solution sol;
            try {
                sol = parse_solution(read_file(out_path));
            } catch (const Error& e) {
                throw VerifyFailure{std::string("written solution does not parse: ") + e.what()};
            }
            if (sol.node_count() != g.node_count())
                throw VerifyFailure{"written solution has wrong node count"};
            for (uint32_t v = 0; v < g.node_count(); ++v) {
                NodeId s = r.strategy(r.winner(v)).empty() ? kNoStrategy
                                                           : r.strategy(r.winner(v))[v];
                if (sol.winner[v] != r.winner(v) || sol.strategy[v] != s)
                    throw VerifyFailure{"written solution differs at node " + std::to_string(v)};
            }
        }
    }
    return kExitOk;
}

int cmd_verify(const std::string& game_path, const std::string& sol_path) {
    ParityGame g = load_game(game_path);
    Solution sol = parse_solution(read_file(sol_path));
    if (sol.node_count() != g.node_count())
        throw VerifyFailure{"solution covers " + std::to_string(sol.node_count()) +
                            " nodes, game has " + std::to_string(g.node_count())};

    SolveResult ref = reference_solve(g);
    for (uint32_t v = 0; v < g.node_count(); ++v) {
        Player actual = ref.w_even.test(v) ? Player::Even : Player::Odd;
        if (sol.winner[v] != actual)
            throw VerifyFailure{"node " + std::to_string(v) + " is won by " +
                                (actual == Player::Even ? "Even" : "Odd") +
                                ", solution claims the opposite"};
    }
    std::cout << "regions match the reference solver\n";

    for (Player p : {Player::Even, Player::Odd}) {
        NodeSet region(g.node_count());
        bool supplied = false;
        for (uint32_t v = 0; v < g.node_count(); ++v) {
            if (sol.winner[v] != p) continue;
            region.set(v);
            if (g.owner(v) == p && sol.strategy[v] != kNoStrategy) supplied = true;
        }
        const char* name = p == Player::Even ? "Even" : "Odd";
        if (!supplied) {
            std::cout << "no " << name << " strategy supplied\n";
            continue;
        }
        VerifyResult vr = verify_positional(g, p, sol.strategy, region);
        if (!vr.ok) throw VerifyFailure{name + (" strategy invalid: " + vr.reason)};
        std::cout << name << " strategy is winning on its region\n";
    }
    return kExitOk;
}

int cmd_generate(const std::vector<std::string>& words, const std::string& out_path) {
    std::string line;
    for (const std::string& w : words) {
        if (!line.empty()) line += ' ';
        line += w;
    }
    ParityGame g = generate(parse_generator_spec(line));
    emit(out_path, write_pgsolver(g));
    return kExitOk;
}

int cmd_bench(const std::string& list_path, const std::string& solver, uint32_t repeat,
              const std::string& out_path) {
    std::istringstream lines(read_file(list_path));
    json records = json::array();
    size_t entries = 0, failures = 0;
    std::string line;
    while (std::getline(lines, line)) {
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        ++entries;
        try {
            GeneratorSpec spec = parse_generator_spec(line);
            ParityGame g = generate(spec);
            std::vector<double> times;
            SolveResult r;
            for (uint32_t i = 0; i < repeat; ++i) {
                auto t0 = std::chrono::steady_clock::now();
                r = run_solver(g, solver, false);
                times.push_back(std::chrono::duration<double, std::milli>(
                                    std::chrono::steady_clock::now() - t0)
                                    .count());
            }
            std::sort(times.begin(), times.end());
            double median = repeat % 2 == 1
                                ? times[repeat / 2]
                                : 0.5 * (times[repeat / 2 - 1] + times[repeat / 2]);
            json rec;
            rec["family"] = family_name(spec);
            rec["params"] = spec_params(spec);
            rec["nodes"] = g.node_count();
            rec["edges"] = edge_count(g);
            rec["index"] = distinct_priority_count(g);
            rec["solver_variant"] = r.stats.solver_variant;
            rec["outer_iterations"] = r.stats.outer_iterations;
            rec["wall_time_ms"] = median;
            records.push_back(std::move(rec));
        } catch (const Error& e) {
            ++failures;
            records.push_back(json{{"spec", line}, {"error", e.what()}});
        }
    }
    emit(out_path, records.dump(2) + "\n");
    return entries > 0 && failures == entries ? kExitParse : kExitOk;
}

int cmd_trace(const std::string& game_path, const std::string& out_path, uint64_t budget) {
    ParityGame g = load_game(game_path);
    if (budget == 0) throw Error(ErrorKind::ResourceLimit, "trace budget is zero");

    std::ostringstream out;
    uint64_t events = 0;
    TraceSink sink = [&](const TraceEvent& ev) {
        if (events == budget)
            throw Error(ErrorKind::ResourceLimit,
                        "trace budget of " + std::to_string(budget) + " events exceeded");
        ++events;
        json j;
        j["node"] = ev.node;
        j["stamp"] = stamp_json(ev.stamp);
        j["target"] = ev.target;
        j["operator"] = ev.box ? "box" : "diamond";
        out << j.dump() << '\n';
    };
    DecisionStacks stacks(g.node_count(), g.priority_bound());
    SolveResult r = solve_recording(g, stacks, &sink);

    json tail;
    tail["counters"] = r.stats.per_level_iterations;
    tail["outer_iterations"] = r.stats.outer_iterations;
    out << tail.dump() << '\n';
    emit(out_path, out.str());
    return kExitOk;
}

int exit_code_for(const Error& e) {
    switch (e.kind) {
    case ErrorKind::EmptyGame:
    case ErrorKind::NoSuccessor:
    case ErrorKind::DanglingEdge:
    case ErrorKind::NegativePriority:
    case ErrorKind::DuplicateEdge:
    case ErrorKind::DuplicateNode:
    case ErrorKind::InvalidName:
    case ErrorKind::SyntaxError:
    case ErrorKind::InvalidSpec:
        return kExitParse;
    case ErrorKind::ResourceLimit:
        return kExitResource;
    default:
        return kExitVerify;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"parity game solver based on nested fixpoint iteration"};
    app.require_subcommand(1);

    std::string game_path, sol_path, out_path = "-", stats_path, solver = "fpiter";
    std::string list_path;
    std::vector<std::string> gen_words;
    bool strategies = false, check = false;
    uint32_t repeat = 1;
    uint64_t budget = 10'000'000;

    auto solver_opt = [&](CLI::App* cmd) {
        cmd->add_option("--solver", solver, "fpiter, fpiter-opt, brute, or reference")
            ->check(CLI::IsMember({"fpiter", "fpiter-opt", "brute", "reference"}));
    };

    CLI::App* c_solve = app.add_subcommand("solve", "solve a game and write the solution");
    c_solve->add_option("game", game_path, "game in PGSolver format")->required();
    c_solve->add_option("-o,--out", out_path, "solution path, - for stdout");
    solver_opt(c_solve);
    c_solve->add_flag("--strategies", strategies, "record and extract winning strategies");
    c_solve->add_option("--stats", stats_path, "write solver statistics as JSON");
    c_solve->add_flag("--check", check, "verify the result before exiting");

    CLI::App* c_verify = app.add_subcommand("verify", "check a solution file against a game");
    c_verify->add_option("game", game_path, "game in PGSolver format")->required();
    c_verify->add_option("solution", sol_path, "solution file to check")->required();

    CLI::App* c_gen = app.add_subcommand("generate", "emit a benchmark game");
    c_gen->add_option("spec", gen_words,
                      "ladder <levels> | jurdzinski <rows> <width> | "
                      "random <nodes> <priorities> <min_deg> <max_deg> <seed>")
        ->required()
        ->expected(-1);
    c_gen->add_option("-o,--out", out_path, "game path, - for stdout");

    CLI::App* c_bench = app.add_subcommand("bench", "solve a list of generated games");
    c_bench->add_option("specs", list_path, "file with one generator spec per line")
        ->required();
    solver_opt(c_bench);
    c_bench->add_option("--repeat", repeat, "timed runs per entry; the median is reported")
        ->check(CLI::PositiveNumber);
    c_bench->add_option("--out", out_path, "stats path, - for stdout");

    CLI::App* c_trace = app.add_subcommand("trace", "dump recording events as JSON lines");
    c_trace->add_option("game", game_path, "game in PGSolver format")->required();
    c_trace->add_option("--out", out_path, "trace path, - for stdout");
    c_trace->add_option("--budget", budget, "maximum number of logged events");

    // recording is defined on the baseline iteration only
    c_solve->callback([&] {
        if (strategies && solver != "fpiter" && solver != "brute" && solver != "reference")
            throw CLI::ValidationError("--strategies requires the fpiter, brute, or "
                                       "reference solver");
    });

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_solve->parsed())
            return cmd_solve(game_path, out_path, solver, strategies, stats_path, check);
        if (c_verify->parsed()) return cmd_verify(game_path, sol_path);
        if (c_gen->parsed()) return cmd_generate(gen_words, out_path);
        if (c_bench->parsed()) return cmd_bench(list_path, solver, repeat, out_path);
        if (c_trace->parsed()) return cmd_trace(game_path, out_path, budget);
    } catch (const VerifyFailure& f) {
        std::cerr << "error: " << f.message << '\n';
        return kExitVerify;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitOk;
}
