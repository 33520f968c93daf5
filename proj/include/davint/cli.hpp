#pragma once

#include <atomic>
#include <cmath>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "davint/arith.hpp"
#include "davint/bounds.hpp"
#include "davint/davenport.hpp"
#include "davint/errors.hpp"
#include "davint/ordering.hpp"
#include "davint/rho.hpp"
#include "davint/search.hpp"
#include "davint/zseq.hpp"

namespace davint::cli {

using nlohmann::json;

enum class output_format { text, json_lines, csv };

namespace detail {

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n ") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string scalar_to_string(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::string out;
        for (auto& e : v) {
            if (!out.empty()) out += ';';
            out += e.is_string() ? e.get<std::string>() : e.dump();
        }
        return out;
    }
    return v.dump();
}

// flat view: command, inputs.*, results.*, provenance — object keys sorted
inline std::vector<std::pair<std::string, std::string>> flatten(const json& rec) {
    std::vector<std::pair<std::string, std::string>> out;
    out.emplace_back("command", rec.at("command").get<std::string>());
    for (auto& [k, v] : rec.at("inputs").items()) out.emplace_back(k, scalar_to_string(v));
    for (auto& [k, v] : rec.at("results").items()) out.emplace_back(k, scalar_to_string(v));
    out.emplace_back("provenance", scalar_to_string(rec.at("provenance")));
    return out;
}

} // namespace detail

/// One record per result line; keys inside a record are emitted sorted, so
/// every format serializes deterministically.
class record_emitter {
public:
    record_emitter(output_format fmt, std::ostream& out) : fmt_(fmt), out_(out) {}

    void emit(const json& rec) {
        switch (fmt_) {
            case output_format::json_lines:
                out_ << rec.dump() << '\n';
                return;
            case output_format::text: {
                bool first = true;
                for (auto& [k, v] : detail::flatten(rec)) {
                    if (!first) out_ << ' ';
                    out_ << k << '=' << v;
                    first = false;
                }
                out_ << '\n';
                return;
            }
            case output_format::csv: {
                auto flat = detail::flatten(rec);
                if (!header_done_) {
                    bool first = true;
                    for (auto& [k, v] : flat) {
                        if (!first) out_ << ',';
                        out_ << detail::csv_escape(k);
                        first = false;
                    }
                    out_ << '\n';
                    header_done_ = true;
                }
                bool first = true;
                for (auto& [k, v] : flat) {
                    if (!first) out_ << ',';
                    out_ << detail::csv_escape(v);
                    first = false;
                }
                out_ << '\n';
                return;
            }
        }
    }

    void emit_raw_csv(const std::vector<std::vector<std::string>>& rows) {
        for (auto& row : rows) {
            bool first = true;
            for (auto& cell : row) {
                if (!first) out_ << ',';
                out_ << detail::csv_escape(cell);
                first = false;
            }
            out_ << '\n';
        }
    }

    output_format format() const { return fmt_; }

private:
    output_format fmt_;
    std::ostream& out_;
    bool header_done_ = false;
};

namespace detail {

inline json finite_or_token(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    return v;
}

inline json table_cells_json(const prime_table& table) {
    json cells = json::array();
    for (auto& [cell, p] : table.cells)
        cells.push_back({{"pos_shift", cell.pos_shift}, {"neg_shift", cell.neg_shift}, {"prime", p}});
    return cells;
}

// paper-style grid: rows are partner shifts, columns argument shifts
inline std::vector<std::vector<std::string>> table_grid(const prime_table& table) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{""};
    for (i64 t2 = 0; t2 < table.level; ++t2)
        header.push_back(std::to_string(table.arg - t2));
    rows.push_back(header);
    for (i64 t1 = 0; t1 < table.level; ++t1) {
        std::vector<std::string> row{t1 == 0 ? "M" : "M-" + std::to_string(t1)};
        for (i64 t2 = 0; t2 < table.level; ++t2) {
            std::string cell;
            for (auto& [c, p] : table.cells)
                if (c.pos_shift == t1 && c.neg_shift == t2) cell = std::to_string(p);
            row.push_back(cell);
        }
        rows.push_back(row);
    }
    return rows;
}

struct verify_row {
    i64 neg = 0, pos = 0, formula = 0, oracle = 0;
};

} // namespace detail

/// Runs the command line given by args (without the program name), writing
/// records to `out` and diagnostics to `err`.  Returns 0 on success, 1 on a
/// domain error, 2 on a usage error.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"effective computations around minimal zero-sum sequences over integer intervals"};
    app.require_subcommand(1);
    // global flags may trail the subcommand arguments
    app.fallthrough();

    std::string format_name = "text";
    i64 jobs = std::max<i64>(1, std::thread::hardware_concurrency());
    i64 budget = default_desk_limit;
    app.add_option("--format", format_name, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--jobs", jobs, "worker threads for grid scans")->check(CLI::PositiveNumber);
    app.add_option("--budget", budget, "enumeration budget (max neg+pos for oracle searches)")
        ->check(CLI::PositiveNumber);

    int exit_code = 0;

    struct {
        i64 m = 0, M = 0, n = 0;
        i64 lemma = 2;
        std::string seq_text;
        bool with_oracle = false, with_extremal = false, with_min_partner = false;
        i64 level = 1, m_max = 319;
        i64 verify_m_max = 7, verify_M_max = 7;
    } opt;

    auto* rho_cmd = app.add_subcommand("rho", "least coprime-making total shift and its witness");
    rho_cmd->add_option("m", opt.m, "negative extent")->required()->check(CLI::PositiveNumber);
    rho_cmd->add_option("M", opt.M, "positive extent")->required()->check(CLI::PositiveNumber);

    auto* chi_cmd = app.add_subcommand("chi", "supremum of (|x|+|y|)/gcd over opposite-sign pairs");
    chi_cmd->add_option("m", opt.m, "negative extent")->required()->check(CLI::PositiveNumber);
    chi_cmd->add_option("M", opt.M, "positive extent")->required()->check(CLI::PositiveNumber);

    auto* dav_cmd = app.add_subcommand("davenport", "maximal length of a minimal zero-sum sequence");
    dav_cmd->add_option("m", opt.m, "negative extent")->required()->check(CLI::PositiveNumber);
    dav_cmd->add_option("M", opt.M, "positive extent")->required()->check(CLI::PositiveNumber);
    dav_cmd->add_flag("--oracle", opt.with_oracle, "also run the exhaustive oracle");
    dav_cmd->add_flag("--extremal", opt.with_extremal, "also enumerate the extremal sequences");

    auto* order_cmd = app.add_subcommand("order", "partial-sum-bounded ordering of a sequence");
    order_cmd->add_option("m", opt.m, "negative extent")->required()->check(CLI::PositiveNumber);
    order_cmd->add_option("M", opt.M, "positive extent")->required()->check(CLI::PositiveNumber);
    order_cmd->add_option("--lemma", opt.lemma, "construction variant")->required()->check(CLI::IsMember({2, 3, 4}));
    order_cmd->add_option("--seq", opt.seq_text, "sequence, e.g. \"10^3,-6^5\"")->required();

    auto* jac_cmd = app.add_subcommand("jacobsthal", "maximal gap between integers coprime to n");
    jac_cmd->add_option("n", opt.n, "modulus")->required()->check(CLI::PositiveNumber);

    auto* gate_cmd = app.add_subcommand("bounds-gate", "effective upper bounds and the square-root gate");
    gate_cmd->add_option("m", opt.m, "negative extent")->required()->check(CLI::PositiveNumber);
    gate_cmd->add_option("M", opt.M, "positive extent")->required()->check(CLI::PositiveNumber);

    auto* search_cmd = app.add_subcommand("search", "arguments admitting partners at a given rho level");
    search_cmd->add_option("--rho-at-least", opt.level, "required rho level")->required()->check(CLI::PositiveNumber);
    search_cmd->add_option("--m-max", opt.m_max, "scan limit")->check(CLI::PositiveNumber);
    search_cmd->add_flag("--min-partner", opt.with_min_partner, "also compute the least partner");

    auto* verify_cmd = app.add_subcommand("verify", "oracle vs formula over a grid");
    verify_cmd->add_option("--m-max", opt.verify_m_max, "grid bound for the negative extent")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--M-max", opt.verify_M_max, "grid bound for the positive extent")->check(CLI::PositiveNumber);

    auto* cross_cmd = app.add_subcommand("crossover-check", "exact and floating checks behind the gate");

    try {
        std::vector<const char*> argv;
        argv.push_back("davint");
        for (auto& a : args) argv.push_back(a.c_str());
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    output_format fmt = output_format::text;
    if (format_name == "json") fmt = output_format::json_lines;
    if (format_name == "csv") fmt = output_format::csv;
    record_emitter emitter(fmt, out);

    try {
        if (rho_cmd->parsed()) {
            const rho_witness w = rho(interval(opt.m, opt.M));
            emitter.emit({{"command", "rho"},
                          {"inputs", {{"m", opt.m}, {"M", opt.M}}},
                          {"results", {{"t", w.total}, {"t1", w.pos_shift}, {"t2", w.neg_shift}}},
                          {"provenance", {"rho-witness"}}});
        } else if (chi_cmd->parsed()) {
            emitter.emit({{"command", "chi"},
                          {"inputs", {{"m", opt.m}, {"M", opt.M}}},
                          {"results", {{"chi", chi(interval(opt.m, opt.M))}}},
                          {"provenance", {"chi-supremum"}}});
        } else if (dav_cmd->parsed()) {
            const interval iv(opt.m, opt.M);
            const auto rep = make_davenport_report(iv, opt.with_oracle, opt.with_extremal, budget);
            json results = {{"formula", rep.formula_value}};
            json provenance = {"davenport-formula"};
            if (rep.oracle_value) {
                results["oracle"] = *rep.oracle_value;
                results["agreement"] = *rep.oracle_value == rep.formula_value;
                provenance.push_back("davenport-oracle");
            }
            if (rep.extremal_count) {
                results["extremal_count"] = *rep.extremal_count;
                json seqs = json::array();
                for (auto& s : enumerate_extremal(iv, budget)) seqs.push_back(s.serialize());
                results["extremal"] = seqs;
                provenance.push_back("extremal-enumeration");
            }
            emitter.emit({{"command", "davenport"},
                          {"inputs", {{"m", opt.m}, {"M", opt.M}}},
                          {"results", results},
                          {"provenance", provenance}});
        } else if (order_cmd->parsed()) {
            const interval iv(opt.m, opt.M);
            const zseq s = parse_seq(opt.seq_text);
            ordering_result res;
            if (opt.lemma == 2) res = order_lemma2(s, iv);
            else if (opt.lemma == 3) res = order_lemma3(s, iv);
            else res = order_lemma4(s, iv);
            json order = json::array(), sums = json::array();
            i64 run = 0;
            for (auto& [v, occ] : res.order) {
                order.push_back(v);
                run += v;
                sums.push_back(run);
            }
            emitter.emit({{"command", "order"},
                          {"inputs", {{"m", opt.m}, {"M", opt.M}, {"lemma", opt.lemma}, {"seq", s.serialize()}}},
                          {"results",
                           {{"order", order},
                            {"prefix_sums", sums},
                            {"window_lo", res.window_lo},
                            {"window_hi", res.window_hi},
                            {"label", label_token(res.label)}}},
                          {"provenance", {std::string("ordering-lemma") + std::to_string(opt.lemma)}}});
        } else if (jac_cmd->parsed()) {
            const auto rep = jacobsthal(opt.n);
            json results = {{"g", rep.g},
                            {"omega", rep.omega},
                            {"kanold_bound", rep.kanold_bound},
                            {"stevens_bound", detail::finite_or_token(rep.stevens_bound)}};
            if (rep.robin_omega_bound) results["robin_omega_bound"] = *rep.robin_omega_bound;
            emitter.emit({{"command", "jacobsthal"},
                          {"inputs", {{"n", opt.n}}},
                          {"results", results},
                          {"provenance", {"jacobsthal-gap", "kanold", "stevens", "robin"}}});
        } else if (gate_cmd->parsed()) {
            const interval iv(opt.m, opt.M);
            const auto details = rho_bound_details(iv);
            json results = {{"rho", rho(iv).total},
                            {"gate", bounds_gate(iv)},
                            {"sharp_bound", details.sharp}};
            if (details.small_case_bound) results["small_case_bound"] = *details.small_case_bound;
            if (details.power_bound) results["power_bound"] = *details.power_bound;
            emitter.emit({{"command", "bounds-gate"},
                          {"inputs", {{"m", opt.m}, {"M", opt.M}}},
                          {"results", results},
                          {"provenance", {"rho-witness", "jacobsthal-gap", "sqrt-gate"}}});
        } else if (search_cmd->parsed()) {
            for (i64 m = 2; m <= opt.m_max; ++m) {
                auto table = exists_partner(m, opt.level);
                if (!table) continue;
                json results = {{"cells", detail::table_cells_json(*table)}};
                json provenance = {"prime-table-backtracking"};
                std::optional<partner_result> partner;
                if (opt.with_min_partner) {
                    partner = min_partner(m, opt.level);
                    if (partner) {
                        results["partner"] = partner->partner;
                        results["partner_cells"] = detail::table_cells_json(partner->table);
                        provenance.push_back("crt-min-partner");
                    }
                }
                if (emitter.format() == output_format::csv) {
                    emitter.emit_raw_csv({{"arg", std::to_string(m), "level", std::to_string(opt.level)}});
                    emitter.emit_raw_csv(detail::table_grid(partner ? partner->table : *table));
                    if (partner)
                        emitter.emit_raw_csv({{"partner", std::to_string(partner->partner)}});
                } else {
                    emitter.emit({{"command", "search"},
                                  {"inputs", {{"arg", m}, {"level", opt.level}}},
                                  {"results", results},
                                  {"provenance", provenance}});
                }
            }
        } else if (verify_cmd->parsed()) {
            const i64 a = opt.verify_m_max, b = opt.verify_M_max;
            if (a + b > budget)
                throw budget_error("verify grid exceeds the enumeration budget; raise --budget");
            std::vector<detail::verify_row> rows(std::size_t(a * b));
            std::atomic<i64> next{0};
            std::atomic<bool> failed{false};
            std::string failure;
            std::mutex failure_mutex;
            const i64 workers = std::max<i64>(1, std::min<i64>(jobs, a * b));
            std::vector<std::thread> pool;
            for (i64 w = 0; w < workers; ++w) {
                pool.emplace_back([&] {
                    for (i64 idx = next.fetch_add(1); idx < a * b; idx = next.fetch_add(1)) {
                        try {
                            const i64 m = idx / b + 1, M = idx % b + 1;
                            const interval iv(m, M);
                            rows[idx] = {m, M, davenport_formula(iv), davenport_oracle(iv, budget)};
                        } catch (const std::exception& e) {
                            std::scoped_lock lk(failure_mutex);
                            failed = true;
                            failure = e.what();
                            return;
                        }
                    }
                });
            }
            for (auto& t : pool) t.join();
            if (failed) throw error(failure);
            i64 mismatches = 0;
            for (auto& r : rows) {
                const bool match = r.formula == r.oracle;
                if (!match) ++mismatches;
                emitter.emit({{"command", "verify"},
                              {"inputs", {{"m", r.neg}, {"M", r.pos}}},
                              {"results", {{"formula", r.formula}, {"oracle", r.oracle}, {"match", match}}},
                              {"provenance", {"davenport-formula", "davenport-oracle"}}});
            }
            emitter.emit({{"command", "verify-summary"},
                          {"inputs", {{"m_max", a}, {"M_max", b}}},
                          {"results", {{"pairs", a * b}, {"mismatches", mismatches}}},
                          {"provenance", {"davenport-formula", "davenport-oracle"}}});
            exit_code = mismatches == 0 ? 0 : 1;
        } else if (cross_cmd->parsed()) {
            const bool pass = crossover_check();
            emitter.emit({{"command", "crossover-check"},
                          {"inputs", json::object()},
                          {"results",
                           {{"pass", pass},
                            {"boundary", 319},
                            {"boundary_square", 18 * 18},
                            {"boundary_sum", 319 + 5}}},
                          {"provenance", {"gate-crossover"}}});
            exit_code = pass ? 0 : 1;
        }
    } catch (const error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return exit_code;
}

} // namespace davint::cli
