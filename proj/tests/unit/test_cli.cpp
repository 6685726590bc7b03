#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "eulerprod/cli.hpp"
#include "eulerprod/constants.hpp"
#include "eulerprod/moments.hpp"
#include "eulerprod/serialize.hpp"

using namespace eulerprod;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("constants --name C1") {
    const auto r = run({"constants", "--name", "C1"});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["results"]["name"] == "C1");
    CHECK(std::abs(doc["results"]["value"].get<double>() - 0.8187) < 5e-4);
    CHECK(doc.contains("version"));
    CHECK(doc["seed"] == 1);
    CHECK(doc["caveats"].is_array());
}

TEST_CASE("diagonal moment through the CLI") {
    const auto r = run({"moments", "--method", "diagonal", "--coeff", "zeta", "--y", "3", "--k", "1"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["results"]["value"].get<double>() == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("closed-form tail through the CLI") {
    const double c1 = C1_value();
    char a[32];
    std::snprintf(a, sizeof a, "%.17g", c1);
    const auto r = run({"tail", "--closed-form", "--A", a, "--tau", "3"});
    REQUIRE(r.code == 0);
    const json res = json::parse(r.out)["results"];
    CHECK(res[0]["phi"].get<double>() == doctest::Approx(std::exp(-std::exp(3 - c1) / 3)).epsilon(1e-15));
    const auto csv = run({"tail", "--closed-form", "--A", a, "--tau", "3", "4", "--format", "csv"});
    CHECK(csv.out.rfind("tau,phi,lower,upper\n3,", 0) == 0);
}

TEST_CASE("round trip of the output document") {
    const auto r = run({"--seed", "9", "moments", "--method", "exact", "--r", "2", "4", "--model", "rademacher",
                        "--prime-limit", "100"});
    REQUIRE(r.code == 0);
    const auto [cfg, results] = parse_run_output(r.out);
    CHECK(cfg.command == "moments");
    CHECK(cfg.seed == 9);
    CHECK(cfg.params["method"] == "exact");
    REQUIRE(results.size() == 2);
    const auto e = results[1].get<MomentEstimate>();
    CHECK(e.r == 4);
    CHECK(e.method == MomentMethod::exact_product);
    CHECK(e.log_moment == exact_moment_log(make_model("rademacher"), 4, 100).log_moment);
    json again = cfg;
    CHECK(again.get<RunConfig>().params == cfg.params);
}

TEST_CASE("seeded sample dumps are byte-identical") {
    const std::vector<std::string> args{"--seed", "3", "--threads", "1", "sample", "--n", "50", "--y", "200"};
    const auto a = run(args), b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("0,", 0) == 0);  // headerless
    const auto c = run({"--seed", "3", "--threads", "4", "sample", "--n", "50", "--y", "200"});
    CHECK(c.out == a.out);
    const auto d = run({"--seed", "4", "--threads", "1", "sample", "--n", "50", "--y", "200"});
    CHECK(d.out != a.out);
}

TEST_CASE("multi-threaded aggregates match") {
    const auto a = run({"--threads", "1", "moments", "--method", "empirical", "--r", "2", "--n", "5000", "--y", "300"});
    const auto b = run({"--threads", "3", "moments", "--method", "empirical", "--r", "2", "--n", "5000", "--y", "300"});
    REQUIRE(a.code == 0);
    const double x = json::parse(a.out)["results"][0]["log_moment"], y = json::parse(b.out)["results"][0]["log_moment"];
    CHECK(std::abs(x - y) <= 1e-12 * std::abs(x));
}

TEST_CASE("exit codes and error objects") {
    auto r = run({"moments", "--method", "asymptotic", "--r", "100", "--model", "sym2"});
    CHECK(r.code == exit_domain);
    CHECK(json::parse(r.err)["error"]["kind"] == "domain");
    r = run({"constants"});
    CHECK(r.code == exit_usage);
    CHECK(json::parse(r.err)["error"]["kind"] == "usage");
    r = run({"no-such-command"});
    CHECK(r.code == exit_usage);
    r = run({"constants", "--name", "C3"});
    CHECK(r.code == exit_usage);
    r = run({"tail", "--tau", "3"});
    CHECK(r.code == exit_usage);
    r = run({"constants", "--name", "C1", "--format", "csv"});
    CHECK(r.code == exit_usage);
    r = run({"extreme-scan", "--T", "100", "--count", "1000"});
    CHECK(r.code == exit_domain);
    r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("moments") != std::string::npos);
}

TEST_CASE("output file") {
    const std::string path = "cli_test_output.json";
    const auto r = run({"--output", path, "constants", "--name", "C2"});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(json::parse(ss.str())["results"]["value"].get<double>() == doctest::Approx(C2_value()));
    std::remove(path.c_str());
}

TEST_CASE("arithmetic subcommands") {
    auto r = run({"zeta-empirical", "--T", "1e5", "--y", "20", "--k", "1", "--n", "2000"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["results"]["relative_gap"].get<double>() < 0.05);
    r = run({"quadratic-empirical", "--x", "2000", "--y", "100", "--l", "3"});
    REQUIRE(r.code == 0);
    const json q = json::parse(r.out)["results"];
    CHECK(q["square_sums"][0]["l"] == 3);
    r = run({"quadratic-empirical", "--x", "20", "--y", "10", "--format", "csv"});
    CHECK(r.out.rfind("-20,", 0) == 0);
    r = run({"extreme-scan", "--T", "1e4", "--count", "100", "--y", "100"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["results"]["max_abs"].get<double>() > 0);
    r = run({"validate-model", "--model", "rademacher", "--n", "10000"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["results"]["checks"].size() == 4);
}
