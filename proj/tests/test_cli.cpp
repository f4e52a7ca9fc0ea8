#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "ow/cli.hpp"

namespace {

using ow::cli::Command;
using ow::cli::RunConfig;

std::string cli_binary() {
    const char* env = std::getenv("OW_CLI");
    return env ? env : "./orbit-wigner";
}

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    RunResult r;
    const std::string cmd = cli_binary() + " " + args + " 2>/dev/null";
    FILE* f = popen(cmd.c_str(), "r");
    if (!f) return r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
    const int status = pclose(f);
    if (WIFEXITED(status)) r.code = WEXITSTATUS(status);
    return r;
}

}  // namespace

TEST_CASE("config serialization round-trips losslessly") {
    RunConfig cfg;  // defaults
    nlohmann::json j = cfg;
    CHECK(j.at("d") == 2);
    CHECK(j.at("E") == 1.0);
    CHECK(j.at("m") == -1);
    CHECK(j.at("format") == "csv");
    CHECK(j.get<RunConfig>() == cfg);

    RunConfig full;
    full.command = Command::scaling;
    full.N = 123;
    full.d = 3;
    full.E = 0.7071067811865476;
    full.method = "oracle";
    full.m = 130;
    full.point = {0.1, -0.2, 0.3, -0.4, 1e-17, 12345.6789012345678};
    full.plane = "1,0,0,0;0,0,0,1";
    full.extent = 3.25;
    full.res = 511;
    full.u_min = -0.123456789012345678;
    full.u_max = 0.3;
    full.w_max = 0.25;
    full.steps = 17;
    full.K = 8192;
    full.regime = "interior";
    full.observable = "energy";
    full.criterion = 9;
    full.out = "/tmp/somewhere.csv";
    full.format = "json";
    nlohmann::json jf = full;
    CHECK(jf.get<RunConfig>() == full);
    // and a second hop through text
    CHECK(nlohmann::json::parse(jf.dump()).get<RunConfig>() == full);
}

TEST_CASE("argument parsing") {
    const auto parsed = ow::cli::parse_args(
        {"eval", "--N", "7", "--d", "3", "--E", "2.5", "--method", "oracle",
         "--m", "12", "--point", "1,0,0,0,1,0", "--out", "x.csv", "--format",
         "json"});
    REQUIRE(parsed.exit_code == -1);
    CHECK(parsed.cfg.command == Command::eval);
    CHECK(parsed.cfg.N == 7);
    CHECK(parsed.cfg.d == 3);
    CHECK(parsed.cfg.E == 2.5);
    CHECK(parsed.cfg.method == "oracle");
    CHECK(parsed.cfg.m == 12);
    CHECK(parsed.cfg.point == std::vector<double>{1, 0, 0, 0, 1, 0});
    CHECK(parsed.cfg.out == "x.csv");
    CHECK(parsed.cfg.format == "json");

    const auto defs = ow::cli::parse_args({"eval", "--point", "0,0,0,0"});
    REQUIRE(defs.exit_code == -1);
    CHECK(defs.cfg.N == 10);
    CHECK(defs.cfg.d == 2);
    CHECK(defs.cfg.E == 1.0);
    CHECK(defs.cfg.m == -1);
    CHECK(defs.cfg.method == "exact");
    CHECK(defs.cfg.format == "csv");
    CHECK(defs.cfg.out == "-");

    CHECK(ow::cli::parse_args({"pointwise"}).cfg.N == 200);
    CHECK(ow::cli::parse_args({"pointwise"}).cfg.regime == "on-orbit");
    CHECK(ow::cli::parse_args({"pointwise", "interior"}).cfg.regime == "interior");
    CHECK(ow::cli::parse_args({"pointwise", "--N", "80"}).cfg.N == 80);
    CHECK(ow::cli::parse_args({"weak-limit"}).cfg.N == 16);
    CHECK(ow::cli::parse_args({"projector"}).cfg.N == 50);

    CHECK(ow::cli::parse_args({"bogus"}).exit_code == 1);
    CHECK(ow::cli::parse_args({}).exit_code == 1);
    CHECK(ow::cli::parse_args({"eval"}).exit_code == 1);  // --point missing
    CHECK(ow::cli::parse_args({"selftest", "--criterion", "99"}).exit_code == 1);
    CHECK(ow::cli::parse_args({"pointwise", "sideways"}).exit_code == 1);
    CHECK(ow::cli::parse_args({"--help"}).exit_code == 0);
}

TEST_CASE("binary end-to-end") {
    REQUIRE_MESSAGE(access(cli_binary().c_str(), X_OK) == 0,
                    "CLI binary not found; run under ctest from the build tree "
                    "or set OW_CLI");

    const auto origin = run_cli("eval --N 10 --E 1 --point 0,0,0,0");
    CHECK(origin.code == 0);
    CHECK(origin.out.find("12.2598632207228") != std::string::npos);
    CHECK(origin.out.rfind("N,d,E,method,m,x1,x2,xi1,xi2,W\n", 0) == 0);

    const auto again = run_cli("eval --N 10 --E 1 --point 0,0,0,0");
    CHECK(again.out == origin.out);

    const auto as_json = run_cli("eval --N 10 --E 1 --point 0,0,0,0 --format json");
    CHECK(as_json.code == 0);
    const auto j = nlohmann::json::parse(as_json.out);
    CHECK(j.at("W").get<double>() ==
          doctest::Approx(12.259863220722824).epsilon(1e-14));

    const auto help = run_cli("--help");
    CHECK(help.code == 0);
    for (const char* flag :
         {"--N", "--d", "--E", "--method", "--m", "--point", "--plane",
          "--extent", "--res", "--u-min", "--u-max", "--w-max", "--steps",
          "--K", "--out", "--format"})
        CHECK_MESSAGE(help.out.find(flag) != std::string::npos, flag);

    CHECK(run_cli("eval --point 1,2").code == 1);
    CHECK(run_cli("eval --N 10 --m 5 --point 0,0,0,0").code == 1);

    const auto grid = run_cli("grid --N 4 --res 3");
    CHECK(grid.code == 0);
    CHECK(grid.out.find("i,j,x1,x2,xi1,xi2,W") != std::string::npos);

    const auto scal = run_cli("scaling --N 30 --steps 3");
    CHECK(scal.code == 0);
    CHECK(scal.out.rfind("u,w1,w2,exact,predicted,error_scale\n", 0) == 0);

    const auto weak = run_cli("weak-limit unit --N 5");
    CHECK(weak.code == 0);
    CHECK(weak.out.rfind("N,E,observable,lhs,rhs,error\n", 0) == 0);

    const auto proj = run_cli("projector --N 5 --K 16");
    CHECK(proj.code == 0);
    CHECK(proj.out.rfind("N,E,K,x1,x2,xi1,xi2,value,value_half,est_error\n", 0) ==
          0);

    // writing to a file moves the payload off stdout
    const std::string path = "/tmp/ow_cli_test_out.csv";
    std::remove(path.c_str());
    const auto filed = run_cli("eval --N 3 --point 0,0,0,0 --out " + path);
    CHECK(filed.code == 0);
    CHECK(filed.out.find("W = ") != std::string::npos);
    CHECK(filed.out.find("x1") == std::string::npos);
    std::ifstream f(path);
    std::string contents((std::istreambuf_iterator<char>(f)),
                         std::istreambuf_iterator<char>());
    CHECK(contents.rfind("N,d,E,method,m", 0) == 0);
    std::remove(path.c_str());
}

TEST_CASE("binary gate hooks") {
    REQUIRE(access(cli_binary().c_str(), X_OK) == 0);

    const auto good = run_cli("selftest --criterion 13");
    CHECK(good.code == 0);
    CHECK(good.out.find("[PASS] criterion 13") != std::string::npos);

    // this criterion is red by design; the gate must say so and exit 2
    const auto red = run_cli("selftest --criterion 5");
    CHECK(red.code == 2);
    CHECK(red.out.find("[FAIL] criterion 5") != std::string::npos);

    const auto decay = run_cli("pointwise on-orbit --N 100");
    CHECK(decay.code == 2);
    CHECK(decay.out.rfind("N,error\n", 0) == 0);
}
