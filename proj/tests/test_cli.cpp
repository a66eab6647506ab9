#include "brute.hpp"

#include "fgv/cli.hpp"
#include "fgv/io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace fgv;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "fgv");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Result r;
    r.code = parse_and_dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "fgv_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("deconv prints mobius over k") {
    unsetenv("FGV_OUT_DIR");
    auto r = run({"deconv", "--theta", "floor", "--target", "recip", "--n", "100", "--mode", "exact", "--emit", "a", "--quiet"});
    REQUIRE(r.code == 0);
    auto s = parse_sequence_csv(r.out, "a");
    REQUIRE(s.size() == 100);
    for (std::size_t k = 1; k <= 100; ++k) REQUIRE(s.exact(k) == brute::rat(brute::mobius(k), static_cast<std::int64_t>(k)));
    CHECK(r.out.rfind("n,value\n1,1\n2,-1/2\n", 0) == 0);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({"vd", "--theta", "nonsense"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"deconv", "--theta", "floor"}).code == 2);
    CHECK(run({"deconv", "--theta", "floor", "--n", "10", "--mode", "fuzzy"}).code == 2);
    CHECK(run({"deconv", "--theta", "floor", "--n", "10", "--target", "bogus"}).code == 2);
    CHECK(run({"deconv", "--theta", "frac:r=0.5", "--n", "30000", "--quiet"}).code == 2);
    CHECK(run({"deconv", "--theta", "floor", "--n", "20000", "--mode", "exact", "--quiet"}).code == 2);
    CHECK(run({"check", "--suite", "lemma1", "--z", "zeta"}).code == 2);
    CHECK(run({"sieve", "--kind", "primes", "--n", "10"}).code == 2);
    auto bad = run({"vd", "--theta", "nonsense"});
    CHECK(bad.err.find("nonsense") != std::string::npos);
}

TEST_CASE("check suites") {
    unsetenv("FGV_OUT_DIR");
    auto lemma = run({"check", "--suite", "lemma1", "--z", "chi4", "--t", "500"});
    CHECK(lemma.code == 0);
    CHECK(lemma.out.find("PASS") != std::string::npos);
    CHECK(run({"check", "--suite", "compensation", "--theta", "floor", "--depth", "64"}).code == 0);
    auto dh = run({"check", "--suite", "compensation", "--theta", "coeffs:dh", "--depth", "64"});
    CHECK(dh.code == 1);
    CHECK(dh.out.find("FAIL") != std::string::npos);
    CHECK(run({"check", "--suite", "section7", "--grid", "200"}).code == 0);
    CHECK(run({"check", "--suite", "comparison", "--theta1", "smooth:lambda=2.2", "--theta2", "smooth:lambda=2"}).code == 0);
    CHECK(run({"check", "--suite", "comparison", "--theta1", "smooth:lambda=2", "--theta2", "linear:r=1,s=1"}).code == 1);
}

TEST_CASE("output is byte-identical across runs") {
    unsetenv("FGV_OUT_DIR");
    const std::vector<std::vector<std::string>> commands = {
        {"deconv", "--theta", "m:4", "--n", "3000", "--emit", "scaled", "--alpha", "0.5", "--quiet"},
        {"deconv", "--theta", "coeffs:dh", "--n", "2000", "--emit", "A", "--quiet"},
        {"vd", "--theta", "coeffs:chi4", "--points", "300", "--tmin", "0.05"},
        {"oracle", "--case", "v23", "--quiet"},
        {"oracle", "--case", "dirac", "--r", "0.75", "--n", "65"},
        {"sieve", "--kind", "tau", "--n", "50"},
        {"scan", "--theta", "floor", "--n", "4096", "--alphas", "0.3:0.7:0.1", "--quiet"},
    };
    for (const auto& cmd : commands) {
        auto a = run(cmd), b = run(cmd);
        CAPTURE(cmd[0]);
        REQUIRE(a.code == 0);
        CHECK_FALSE(a.out.empty());
        CHECK(a.out == b.out);
    }
}

TEST_CASE("file output carries a sidecar") {
    const auto path = scratch("mu.csv");
    auto r = run({"deconv", "--theta", "floor", "--target", "recip", "--n", "50", "--mode", "exact", "--out", path.string(), "--quiet"});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    const std::string content = read_text_file(path);
    auto meta = nlohmann::json::parse(read_text_file(path.string() + ".json"));
    CHECK(meta["theta"] == "floor");
    CHECK(meta["target"] == "recip");
    CHECK(meta["n"] == 50);
    CHECK(meta["mode"] == "exact");
    CHECK(meta["version"] == std::string(tool_version));
    CHECK(meta["sha256"] == sha256_hex(content));
    CHECK(meta["subcommand"] == "deconv");
    CHECK(meta["argv"].size() > 3);

    // Rerunning from the recorded argv reproduces the output byte for byte.
    std::vector<std::string> argv = meta["argv"].get<std::vector<std::string>>();
    argv.erase(argv.begin());
    std::filesystem::remove(path);
    REQUIRE(run(argv).code == 0);
    CHECK(read_text_file(path) == content);
}

TEST_CASE("output directory from the environment") {
    const auto dir = scratch("outdir");
    std::filesystem::create_directories(dir);
    setenv("FGV_OUT_DIR", dir.c_str(), 1);
    auto r = run({"sieve", "--kind", "mobius", "--n", "30", "--quiet"});
    unsetenv("FGV_OUT_DIR");
    REQUIRE(r.code == 0);
    CHECK(std::filesystem::exists(dir / "sieve_mobius.csv"));
    CHECK(std::filesystem::exists(dir / "sieve_mobius.csv.json"));
}

TEST_CASE("config file fills in flags, command line wins") {
    unsetenv("FGV_OUT_DIR");
    const auto cfg = scratch("run.cfg");
    write_text_file(cfg, "# comment\ntheta = floor\nn = 12\nmode = exact\nemit = A\nquiet = true\n");
    auto r = run({"--config", cfg.string(), "deconv"});
    REQUIRE(r.code == 0);
    auto s = parse_sequence_csv(r.out, "M");
    CHECK(s.size() == 12);
    Rational m = 0;
    for (std::int64_t k = 1; k <= 12; ++k) m += brute::rat(brute::mobius(k), k);
    CHECK(s.exact(12) == m);
    auto wins = run({"--config", cfg.string(), "deconv", "--n", "5"});
    CHECK(parse_sequence_csv(wins.out, "M").size() == 5);
    CHECK(run({"--config", scratch("missing.cfg").string(), "deconv"}).code == 2);
}

TEST_CASE("standalone binary") {
    const char* exe = std::getenv("FGV_CLI");
    if (!exe) return;
    auto status = [&](const std::string& args) {
        const std::string cmd = std::string(exe) + " " + args + " > /dev/null 2>&1";
        const int raw = std::system(cmd.c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    CHECK(status("check --suite lemma1 --z chi4 --t 500") == 0);
    CHECK(status("vd --theta nonsense") == 2);
    CHECK(status("check --suite compensation --theta coeffs:dh") == 1);
    CHECK(status("--version") == 0);
    CHECK(status("--help") == 0);
}
