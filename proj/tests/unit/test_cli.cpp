#include <filesystem>
#include <fstream>
#include <sstream>

#include "censtail/cli.hpp"
#include "doctest.h"

using namespace censtail;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(CENSTAIL_TEST_DATA_DIR) + "/" + name; }

fs::path scratch() {
    auto dir = fs::temp_directory_path() / "censtail_cli_test";
    fs::create_directories(dir);
    return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string read(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

const char* kConfig = R"({
  "schema_version": 1,
  "scenario": {"family": "frechet", "gamma1": 0.7, "p": 0.3},
  "n": 300, "replications": 40, "seed": 11,
  "estimators": [{"kind": "weighted-na", "beta": 1.01}, {"kind": "mns-na"}, {"kind": "efg"}],
  "k_grid": {"min": 5, "max": 200, "stride": 15}
})";

}  // namespace

TEST_CASE("estimate hill on the (1, e, e^2) fixture") {
    auto r = cli({"estimate", "--est", "hill", "--k", "2", data("hill_e.csv")});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("estimate=1.5\n") != std::string::npos);
    CHECK(r.out.find("k=2\n") != std::string::npos);
    CHECK(r.out.find("p_hat=1\n") != std::string::npos);
    CHECK(r.err.find("n=3 censored=0") != std::string::npos);
}

TEST_CASE("estimate with auto k, CI and JSON") {
    const auto dir = scratch();
    auto r = cli({"estimate", "--est", "weighted-na", "--beta", "1.5", "--auto-k", "--ci", "0.9", "--json",
                  (dir / "report.json").string(), data("three_rows.csv")});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("criterion=") != std::string::npos);
    CHECK(r.out.find("ci_lower=") != std::string::npos);
    CHECK(read(dir / "report.json").find("\"ci\"") != std::string::npos);

    auto bad = cli({"estimate", "--est", "hill", "--k", "2", "--ci", "0.9", data("hill_e.csv")});
    CHECK(bad.code == kExitUsage);
}

TEST_CASE("path p-hat on the three-point fixture") {
    auto r = cli({"path", "--est", "p-hat", data("three_rows.csv")});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "k,estimate,reason\n2,0.5,ok\n3,0.6666666666666666,ok\n");
}

TEST_CASE("kselect on a constant path") {
    auto r = cli({"kselect", data("constant_path.csv")});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "k_opt,criterion\n2,0\n");

    const auto dir = scratch();
    auto d = cli({"kselect", "--est", "hill", "--out", (dir / "ks.csv").string(), data("three_rows.csv")});
    CHECK(d.code == kExitOk);
    CHECK(read(dir / "ks.csv").rfind("k_opt,criterion\n", 0) == 0);
}

TEST_CASE("compare") {
    auto r = cli({"compare", "--est", "hill", "--est", "weighted-km:1.2", data("three_rows.csv")});
    CHECK(r.code == kExitOk);
    CHECK(r.out.rfind("k,hill,weighted-km(1.2)\n2,", 0) == 0);
    auto d = cli({"compare", data("three_rows.csv")});
    CHECK(d.out.rfind("k,weighted-na(1.01),weighted-na(1.5),weighted-na(2),mns-na,efg\n", 0) == 0);
}

TEST_CASE("simulate is reproducible across worker counts") {
    const auto dir = scratch();
    write(dir / "cfg.json", kConfig);
    auto a = cli({"simulate", "--config", (dir / "cfg.json").string(), "--threads", "1"});
    auto b = cli({"simulate", "--config", (dir / "cfg.json").string(), "--threads", "4"});
    auto c = cli({"simulate", "--config", (dir / "cfg.json").string(), "--seed", "12"});
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    CHECK(a.out != c.out);
    CHECK(a.out.rfind("k,estimator_id,beta,abs_bias,mse,failures\n5,efg,,", 0) == 0);
}

TEST_CASE("exit codes") {
    const auto dir = scratch();
    CHECK(cli({}).code == kExitUsage);
    CHECK(cli({"bogus"}).code == kExitUsage);
    CHECK(cli({"estimate", data("hill_e.csv")}).code == kExitUsage);  // neither --k nor --auto-k
    CHECK(cli({"estimate", "--est", "nope", "--k", "2", data("hill_e.csv")}).code == kExitUsage);
    CHECK(cli({"estimate", "--est", "weighted-na", "--beta", "0", "--k", "2", data("hill_e.csv")}).code ==
          kExitUsage);
    CHECK(cli({"estimate", "--est", "hill", "--k", "3", data("hill_e.csv")}).code == kExitUsage);
    CHECK(cli({"--help"}).code == kExitOk);

    CHECK(cli({"estimate", "--est", "hill", "--k", "2", (dir / "missing.csv").string()}).code == kExitData);
    write(dir / "neg.csv", "z,delta\n1,1\n-1,0\n");
    auto neg = cli({"path", "--est", "hill", (dir / "neg.csv").string()});
    CHECK(neg.code == kExitData);
    CHECK(neg.err.find("line 3") != std::string::npos);

    write(dir / "cens.csv", "z,delta\n1,1\n2,1\n3,0\n4,0\n");
    CHECK(cli({"estimate", "--est", "efg", "--k", "2", (dir / "cens.csv").string()}).code == kExitNumerical);

    write(dir / "bad.json", R"({"schema_version": 1, "oops": true})");
    auto bad = cli({"simulate", "--config", (dir / "bad.json").string()});
    CHECK(bad.code == kExitUsage);
    CHECK(bad.err.find("oops") != std::string::npos);
}
