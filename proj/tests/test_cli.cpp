#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#ifndef ETERNALBAR_CLI_PATH
#error "ETERNALBAR_CLI_PATH must be defined"
#endif

namespace {

struct RunResult {
    int status = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    // merge stderr so diagnostics are visible in failure output
    std::string cmd = std::string(ETERNALBAR_CLI_PATH) + " " + args + " 2>&1";
    RunResult r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int rc = pclose(p);
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

std::string write_temp(const std::string& name, const std::string& body) {
    std::string path = std::string("/tmp/") + name;
    std::ofstream f(path);
    f << body;
    return path;
}

} // namespace

TEST_CASE("torus subcommand: unit loop") {
    RunResult r = run("torus --ham linear:1 --classes 0 --gamma");
    CHECK(r.status == 0);
    CHECK(r.out == "c=1 gamma=2\n");
}

TEST_CASE("torus subcommand: multiple classes and spectrum") {
    RunResult r = run("torus --ham linear:0,0 --classes '3,4;0,1'");
    CHECK(r.status == 0);
    CHECK(r.out.find("k=3,4 c=5") != std::string::npos);
    CHECK(r.out.find("k=0,1 c=1") != std::string::npos);

    RunResult s = run("torus --ham linear:1 --classes 0 --spectrum");
    CHECK(s.status == 0);
    CHECK(s.out.find("-1") != std::string::npos);
}

TEST_CASE("spectral subcommand") {
    std::string path = write_temp("cli_bars.json",
                                  R"({"bars": [{"birth": "2", "death": "inf"}]})");
    RunResult r = run("spectral " + path + " --class 0");
    CHECK(r.status == 0);
    CHECK(r.out.find("c=2") != std::string::npos);
    CHECK(r.out.find("eternal=false") != std::string::npos);
}

TEST_CASE("barcode subcommand renders a presentation") {
    std::string path = write_temp("cli_pres.json", R"({
        "generators": [{"id": "a", "birth": "0"}, {"id": "b", "birth": "1"}],
        "relations": [{"level": "3", "support": ["a", "b"]}]
    })");
    RunResult r = run("barcode " + path + " --render");
    CHECK(r.status == 0);
    CHECK(r.out.find("\"birth\"") != std::string::npos);
    CHECK(r.out.find("[1, 3)") != std::string::npos);
}

TEST_CASE("complex subcommand computes the minimal level") {
    std::string path = write_temp("cli_cx.json", R"({
        "generators": [{"id": "x1", "action": "0"}, {"id": "x2", "action": "0"},
                       {"id": "y", "action": "1"}],
        "boundary": {"y": [["x1", "0"], ["x2", "1"]]}
    })");
    RunResult r = run("complex " + path + " --min-filtration x1");
    CHECK(r.status == 0);
    CHECK(r.out.find("l=-1") != std::string::npos);
}

TEST_CASE("malformed input exits with status 2") {
    std::string path = write_temp("cli_bad.json", R"({"generators": "oops"})");
    RunResult r = run("complex " + path + " --min-filtration x");
    CHECK(r.status == 2);
}
