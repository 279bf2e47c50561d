#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "censtail/config.hpp"
#include "censtail/error.hpp"
#include "censtail/io.hpp"
#include "doctest.h"

using namespace censtail;

TEST_CASE("format_double round-trips") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> exps(-300, 300);
    for (int j = 0; j < 2000; ++j) {
        const double x = std::pow(10.0, exps(rng)) * (j % 2 ? -1 : 1);
        CHECK(parse_double(format_double(x)) == x);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(std::isnan(parse_double("nan")));
    CHECK(format_double(HUGE_VAL) == "inf");
}

TEST_CASE("parse_double is strict") {
    CHECK(parse_double("2.5e-3") == 0.0025);
    CHECK_THROWS_AS(parse_double(""), DataError);
    CHECK_THROWS_AS(parse_double("1.5x"), DataError);
    CHECK_THROWS_AS(parse_double("abc"), DataError);
}

TEST_CASE("ingest the three-row fixture") {
    std::istringstream in("z,delta\n1.5,1\n2.0,0\n3.1,1\n");
    auto s = ingest(in);
    CHECK(s.size() == 3);
    CHECK(s.censored_count() == 1);
    CHECK(s.z == std::vector<double>{1.5, 2.0, 3.1});
    CHECK(ingest_summary(s) == "n=3 censored=1 censored_fraction=0.3333333333333333");

    auto f = ingest_file(CENSTAIL_TEST_DATA_DIR "/three_rows.csv");
    CHECK(f.z == s.z);
    CHECK(f.delta == s.delta);
}

TEST_CASE("ingest accepts any column order, an id column and CRLF") {
    std::istringstream in("id,delta,z\r\na,1,2.5\r\nb,0,1e1\r\n");
    auto s = ingest(in);
    CHECK(s.z == std::vector<double>{2.5, 10.0});
    CHECK(s.delta == std::vector<std::uint8_t>{1, 0});
}

TEST_CASE("ingest errors name the line") {
    auto fails_with = [](const std::string& text, const std::string& needle) {
        std::istringstream in(text);
        try {
            ingest(in, "data.csv");
        } catch (const DataError& e) {
            return std::string(e.what()).find(needle) != std::string::npos;
        }
        return false;
    };
    CHECK(fails_with("z,delta\n1,1\n-2,1\n", "line 3"));
    CHECK(fails_with("z,delta\n1,1\n0,1\n", "line 3"));
    CHECK(fails_with("z,delta\n1,2\n", "line 2"));
    CHECK(fails_with("z,delta\n1,1\nfoo,1\n", "line 3"));
    CHECK(fails_with("z,delta\n1,1,7\n", "line 2"));
    CHECK(fails_with("x,delta\n1,1\n", "column"));
    CHECK(fails_with("", "header"));
    CHECK(fails_with("z,delta\n", "no observations"));
    CHECK_THROWS_AS(ingest_file("/nonexistent/file.csv"), DataError);
}

TEST_CASE("path CSV round-trip") {
    EstimatePath p;
    p.estimator = {EstimatorKind::EFG};
    p.k_values = {3, 4, 6};
    p.estimates = {0.1, 1.0 / 3.0, 2e-17};
    p.failures = {{2, Reason::AllCensoredTail}, {5, Reason::NonFinite}};
    std::stringstream buf;
    write_path_csv(buf, p);
    CHECK(buf.str() ==
          "k,estimate,reason\n2,,all-censored-tail\n3,0.1,ok\n4,0.3333333333333333,ok\n5,,non-finite\n6,2e-17,ok\n");
    auto back = read_path_csv(buf);
    CHECK(back.k_values == p.k_values);
    CHECK(back.estimates == p.estimates);
    REQUIRE(back.failures.size() == 2);
    CHECK(back.failures[1].k == 5);
    CHECK(back.failures[1].reason == Reason::NonFinite);

    std::istringstream bad("k,estimate,reason\n2,0.5,ok\n2,0.5,ok\n");
    CHECK_THROWS_AS(read_path_csv(bad), DataError);
}

TEST_CASE("kselect CSV") {
    std::ostringstream out;
    write_kselect_csv(out, {51, 0.0125});
    CHECK(out.str() == "k_opt,criterion\n51,0.0125\n");
}

TEST_CASE("figure table CSV layout") {
    std::vector<FigureRow> rows{{2, "efg", std::nullopt, 0.25, 0.125, 3}, {2, "weighted-na", 1.01, 0.5, 0.75, 0}};
    std::stringstream buf;
    write_figure_table(buf, rows);
    CHECK(buf.str() == "k,estimator_id,beta,abs_bias,mse,failures\n2,efg,,0.25,0.125,3\n2,weighted-na,1.01,0.5,0.75,0\n");
    CHECK(read_figure_table(buf) == rows);
}

TEST_CASE("run config parsing") {
    const char* good = R"({
      "schema_version": 1,
      "scenario": {"family": "burr", "gamma1": 0.4, "p": 0.3, "eta": 0.25},
      "n": 500, "replications": 10, "seed": 7,
      "estimators": [{"kind": "weighted-na", "beta": 1.01}, {"kind": "efg"}],
      "k_grid": {"min": 5, "max": 100, "stride": 5}
    })";
    auto cfg = parse_run_config(good);
    CHECK(cfg.n == 500);
    CHECK(cfg.seed.master == 7);
    CHECK(cfg.scenario.p() == doctest::Approx(0.3));
    CHECK(cfg.scenario.censor()->eta == 0.25);
    CHECK(cfg.estimators.size() == 2);
    CHECK(cfg.k_grid.front() == 5);
    CHECK(cfg.k_grid.back() == 100);
    CHECK(cfg.k_grid.size() == 20);

    auto explicit_models = parse_run_config(R"({"schema_version": 1,
      "scenario": {"target": {"family": "pareto", "tail_index": 0.4}, "censor": null},
      "n": 50, "replications": 1, "estimators": [{"kind": "hill"}], "k_grid": [2, 10]})");
    CHECK(explicit_models.scenario.p() == 1.0);
    CHECK(explicit_models.k_grid == std::vector<std::size_t>{2, 10});
    auto dflt = parse_run_config(R"({"schema_version": 1,
      "scenario": {"target": {"family": "frechet", "tail_index": 0.4}, "censor": {"family": "frechet", "tail_index": 0.4}},
      "n": 50, "replications": 1, "estimators": [{"kind": "hill"}]})");
    CHECK(dflt.k_grid.size() == 48);
    CHECK(dflt.scenario.p() == 0.5);
}

TEST_CASE("run config errors name the key") {
    auto error_of = [](const std::string& text) {
        try {
            parse_run_config(text);
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    const std::string base_tail =
        R"("n": 50, "replications": 1, "estimators": [{"kind": "hill"}])";
    const std::string scen = R"("scenario": {"family": "pareto", "gamma1": 0.4, "p": 0.5})";
    CHECK(error_of("{") .find("invalid JSON") != std::string::npos);
    CHECK(error_of(R"({"schema_version": 2, )" + scen + "," + base_tail + "}").find("schema_version") !=
          std::string::npos);
    CHECK(error_of(R"({"schema_version": 1, "extra": 1, )" + scen + "," + base_tail + "}").find("'extra'") !=
          std::string::npos);
    CHECK(error_of(R"({"schema_version": 1, )" + base_tail + "}").find("'scenario'") != std::string::npos);
    CHECK(error_of(R"({"schema_version": 1, "scenario": {"family": "weibull", "gamma1": 0.4, "p": 0.5}, )" +
                   base_tail + "}")
              .find("scenario.family") != std::string::npos);
    CHECK(error_of(R"({"schema_version": 1, "scenario": {"family": "pareto", "gamma1": 0.4, "p": 1.5}, )" +
                   base_tail + "}")
              .find("scenario") != std::string::npos);
    CHECK(error_of(R"({"schema_version": 1, )" + scen +
                   R"(, "n": 50, "replications": 1, "estimators": [{"kind": "weighted-na"}]})")
              .find("estimators[0]") != std::string::npos);
    CHECK(error_of(R"({"schema_version": 1, )" + scen +
                   R"(, "n": 50, "replications": 1, "estimators": [{"kind": "hill", "bta": 1}]})")
              .find("'bta'") != std::string::npos);
    CHECK(error_of(R"({"schema_version": 1, )" + scen + "," + base_tail + R"(, "k_grid": {"max": 50}})")
              .find("k_grid.max") != std::string::npos);
    CHECK(error_of(R"({"schema_version": 1, )" + scen + R"(, "n": -5, "replications": 1, "estimators": [{"kind": "hill"}]})")
              .find("n:") != std::string::npos);
    CHECK_THROWS_AS(load_run_config("/nonexistent.json"), ConfigError);
}
