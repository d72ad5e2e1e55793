#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "dyson/report.hpp"
#include "dyson/run.hpp"

using namespace dyson;

TEST_CASE("minimal config fills defaults", "[config]") {
    const auto cfg = parse_run_config("alpha = 1.5\nbeta = 5\ncommand = probe\n");
    CHECK(cfg.command == Command::probe);
    CHECK(cfg.alpha == 1.5);
    CHECK(cfg.beta == 5.0);
    CHECK(cfg.h == 0.0);
    CHECK(cfg.algorithm == Algorithm::cluster);
    CHECK(cfg.tail == TailRule::alternating_even);
    CHECK(cfg.format == "csv");
    CHECK(cfg.L_list == std::vector<long long>{4, 8, 16});
}

TEST_CASE("comments, blank lines, and spacing are tolerated", "[config]") {
    const auto cfg = parse_run_config(
        "# probe run\n\ncommand = probe   # trailing comment\n  alpha=1.3\nL_list = 2, 4 ,8\n");
    CHECK(cfg.alpha == 1.3);
    CHECK(cfg.L_list == std::vector<long long>{2, 4, 8});
}

TEST_CASE("bad configs fail with line numbers", "[config]") {
    const auto fails_with = [](const std::string& text, const std::string& needle) {
        try {
            parse_run_config(text);
            FAIL("expected ConfigError for: " << text);
        } catch (const ConfigError& err) {
            CHECK_THAT(err.what(), Catch::Matchers::ContainsSubstring(needle));
        }
    };
    fails_with("command = check\nalpha = 0.9\n", "line 2");
    fails_with("command = check\nalpha = 0.9\n", "alpha must exceed 1");
    fails_with("command = check\nunknown_key = 3\n", "unknown key 'unknown_key'");
    fails_with("command = check\nbeta = -1\n", "beta must be nonnegative");
    fails_with("command = check\nalpha = abc\n", "malformed number");
    fails_with("command = bogus\n", "unknown command");
    fails_with("command = check\nsweeps = 100\nburn_in = 100\n", "burn_in < sweeps");
    fails_with("alpha = 1.5\n", "missing required key 'command'");
    fails_with("command = check\nformat = xml\n", "csv or json");
}

TEST_CASE("emit then parse is the identity", "[config]") {
    RunConfig cfg;
    cfg.command = Command::probe;
    cfg.alpha = 1.3;
    cfg.beta = 4.75;
    cfg.h = -0.125;
    cfg.L_list = {2, 6};
    cfg.beta_list = {0.1, 0.30000000000000004, 7.5};
    cfg.seed = 987654321;
    cfg.observable = "product:0,2";
    cfg.out = "run.csv";
    cfg.format = "json";
    const auto round = parse_run_config(emit_run_config(cfg));
    CHECK(round == cfg);

    // and emission is a fixed point
    CHECK(emit_run_config(round) == emit_run_config(cfg));
}

TEST_CASE("observable descriptors parse into the closed set", "[config]") {
    const Interval volume{-3, 3};
    CHECK(parse_observable("spin:0", volume).kind == Observable::Kind::spin);
    const auto prod = parse_observable("product:0,1", volume);
    CHECK(prod.sites == std::vector<Site>{0, 1});
    const auto pat = parse_observable("pattern:0:+1,2:-1", volume);
    CHECK(pat.pattern == std::vector<Spin>{+1, -1});
    const auto mean = parse_observable("mean", volume);
    CHECK(mean.sites.size() == 7);
    CHECK_THROWS_AS(parse_observable("spline:0", volume), ConfigError);
    CHECK_THROWS_AS(parse_observable("pattern:0:+2", volume), ConfigError);
}

TEST_CASE("report tables carry metadata and 17-digit floats", "[config]") {
    RunConfig cfg;
    cfg.command = Command::exact;
    ReportTable table(cfg, {"x", "name"});
    table.add_row({0.1, std::string("row")});
    std::ostringstream csv;
    table.write_csv(csv);
    const std::string text = csv.str();
    CHECK_THAT(text, Catch::Matchers::ContainsSubstring("# rng = mt19937_64+u53/sm64split"));
    CHECK_THAT(text, Catch::Matchers::ContainsSubstring("# command = exact"));
    CHECK_THAT(text, Catch::Matchers::ContainsSubstring("x,name"));
    CHECK_THAT(text, Catch::Matchers::ContainsSubstring("0.10000000000000001,row"));

    cfg.format = "json";
    ReportTable jtable(cfg, {"x"});
    jtable.add_row({2.5});
    std::ostringstream json;
    jtable.write(json);
    CHECK_THAT(json.str(), Catch::Matchers::ContainsSubstring("\"columns\""));
    CHECK_THAT(json.str(), Catch::Matchers::ContainsSubstring("2.5"));
}

TEST_CASE("run_command executes exact queries end to end", "[config]") {
    auto cfg = parse_run_config(
        "command = exact\nalpha = 2\nbeta = 1\nvolume = 0\nboundary = plus\n"
        "observable = spin:0\nout = -\n");
    // capture stdout through a file to keep the test hermetic
    cfg.out = "test_exact_out.csv";
    CHECK(run_command(cfg) == 0);
    std::ifstream in(cfg.out);
    REQUIRE(in.good());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK_THAT(text, Catch::Matchers::ContainsSubstring("expectation"));
    CHECK_THAT(text, Catch::Matchers::ContainsSubstring("0.997"));
    std::remove(cfg.out.c_str());
}

TEST_CASE("sampling commands demand a seed", "[config]") {
    auto cfg = parse_run_config("command = sample\nalpha = 1.5\nbeta = 0.5\nvolume = 3\n");
    CHECK(cfg.seed == 0);
    CHECK_THROWS_AS(run_command(cfg), ConfigError);
}
