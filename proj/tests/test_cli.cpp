#include "doctest.h"

#include <sstream>

#include "davint/cli.hpp"

using namespace davint;
using nlohmann::json;

namespace {

struct run_result {
    int code = 0;
    std::string out;
    std::string err;
};

run_result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

json first_json_line(const std::string& text) {
    return json::parse(text.substr(0, text.find('\n')));
}

} // namespace

TEST_CASE("rho subcommand matches the library call") {
    auto res = run({"rho", "6", "10", "--format", "json"});
    REQUIRE(res.code == 0);
    json rec = first_json_line(res.out);
    CHECK(rec["command"] == "rho");
    const rho_witness w = rho(interval(6, 10));
    CHECK(rec["results"]["t"] == w.total);
    CHECK(rec["results"]["t1"] == w.pos_shift);
    CHECK(rec["results"]["t2"] == w.neg_shift);
}

TEST_CASE("chi subcommand") {
    auto res = run({"chi", "6", "10"});
    CHECK(res.code == 0);
    CHECK(res.out == "command=chi M=10 m=6 chi=14 provenance=chi-supremum\n");
}

TEST_CASE("davenport subcommand with oracle") {
    auto res = run({"davenport", "4", "6", "--oracle", "--format", "json"});
    REQUIRE(res.code == 0);
    json rec = first_json_line(res.out);
    CHECK(rec["results"]["formula"] == 9);
    CHECK(rec["results"]["oracle"] == 9);
    CHECK(rec["results"]["agreement"] == true);
}

TEST_CASE("davenport extremal listing") {
    auto res = run({"davenport", "2", "2", "--extremal", "--format", "json"});
    REQUIRE(res.code == 0);
    json rec = first_json_line(res.out);
    CHECK(rec["results"]["extremal_count"] == 2);
    CHECK(rec["results"]["extremal"] == json::array({"-2,1^2", "-1^2,2"}));
}

TEST_CASE("jacobsthal subcommand") {
    auto res = run({"jacobsthal", "6", "--format", "json"});
    REQUIRE(res.code == 0);
    json rec = first_json_line(res.out);
    CHECK(rec["results"]["g"] == 4);
    CHECK(rec["results"]["kanold_bound"] == 4);
}

TEST_CASE("order subcommand emits the full record") {
    auto res = run({"order", "3", "2", "--lemma", "2", "--seq", "1,2,-3", "--format", "json"});
    REQUIRE(res.code == 0);
    json rec = first_json_line(res.out);
    CHECK(rec["results"]["order"] == json::array({1, -3, 2}));
    CHECK(rec["results"]["prefix_sums"] == json::array({1, -2, 0}));
    CHECK(rec["results"]["label"] == "L2");
    CHECK(rec["results"]["window_lo"] == -2);
    CHECK(rec["results"]["window_hi"] == 1);
}

TEST_CASE("search subcommand streams one record per hit") {
    auto res = run({"search", "--rho-at-least", "2", "--m-max", "8", "--min-partner", "--format", "json"});
    REQUIRE(res.code == 0);
    std::istringstream lines(res.out);
    std::string line;
    std::vector<json> recs;
    while (std::getline(lines, line)) recs.push_back(json::parse(line));
    REQUIRE(recs.size() == 1);
    CHECK(recs[0]["inputs"]["arg"] == 6);
    CHECK(recs[0]["results"]["partner"] == 10);
}

TEST_CASE("search csv emits the table grid") {
    auto res = run({"search", "--rho-at-least", "2", "--m-max", "6", "--format", "csv"});
    REQUIRE(res.code == 0);
    CHECK(res.out.find(",6,5") != std::string::npos);  // column header: arg, arg-1
    CHECK(res.out.find("M,") != std::string::npos);    // row labels
    CHECK(res.out.find("M-1,") != std::string::npos);
}

TEST_CASE("verify subcommand reports zero mismatches on the 7x7 grid") {
    auto res = run({"verify", "--m-max", "7", "--M-max", "7", "--format", "json", "--jobs", "2"});
    REQUIRE(res.code == 0);
    std::istringstream lines(res.out);
    std::string line, last;
    int count = 0;
    while (std::getline(lines, line)) {
        last = line;
        ++count;
    }
    CHECK(count == 50); // 49 pairs + summary
    json summary = json::parse(last);
    CHECK(summary["command"] == "verify-summary");
    CHECK(summary["results"]["mismatches"] == 0);
}

TEST_CASE("crossover-check passes") {
    auto res = run({"crossover-check", "--format", "json"});
    CHECK(res.code == 0);
    CHECK(first_json_line(res.out)["results"]["pass"] == true);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({"rho", "6"}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({"rho", "6", "10", "--format", "yaml"}).code == 2);
    CHECK(run({}).code == 2);
}

TEST_CASE("domain errors exit with 1") {
    auto res = run({"davenport", "20", "20", "--oracle"});
    CHECK(res.code == 1);
    CHECK(res.err.find("budget") != std::string::npos);

    CHECK(run({"order", "1", "1", "--lemma", "2", "--seq", "1,-1"}).code == 1);
    CHECK(run({"order", "3", "2", "--lemma", "2", "--seq", "bogus"}).code == 1);
}

TEST_CASE("budget flag unlocks larger oracle runs") {
    auto res = run({"davenport", "9", "8", "--oracle", "--budget", "17", "--format", "json"});
    REQUIRE(res.code == 0);
    json rec = first_json_line(res.out);
    CHECK(rec["results"]["agreement"] == true);
}

TEST_CASE("records are deterministic across runs") {
    for (auto fmt : {"text", "json", "csv"}) {
        auto a = run({"rho", "22", "78", "--format", fmt});
        auto b = run({"rho", "22", "78", "--format", fmt});
        CHECK(a.out == b.out);
    }
}

TEST_CASE("help exits zero") {
    CHECK(run({"--help"}).code == 0);
}
