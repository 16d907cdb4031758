#include "doctest.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

const std::string kCli = SFSTOKES_CLI_PATH;
const std::string kDir = "cli_tmp";

int run_cli(const std::string& args, const std::string& capture = "") {
    std::string cmd = kCli + " " + args;
    if (!capture.empty())
        cmd += " > " + capture + " 2>&1";
    else
        cmd += " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    REQUIRE(WIFEXITED(rc));
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

long line_count(const std::string& text) {
    return std::count(text.begin(), text.end(), '\n');
}

struct TmpDir {
    TmpDir() { fs::create_directories(kDir); }
};
const TmpDir tmp_dir;

} // namespace

TEST_CASE("usage errors exit with status 2") {
    CHECK(run_cli("") == 2);
    CHECK(run_cli("solve --bc nope --n 4") == 2);
    CHECK(run_cli("solve --frobnicate") == 2);
    CHECK(run_cli("solve --n 1") == 2);
    CHECK(run_cli("solve --g -1 --n 4") == 2);
    CHECK(run_cli("solve --bc sbcf --gauge full --n 4") == 2);
    CHECK(run_cli("solve --bc lbcf --gauge mean-zero --n 4") == 2);
}

TEST_CASE("help exits cleanly") {
    CHECK(run_cli("--help", kDir + "/help.txt") == 0);
    CHECK(run_cli("solve --help") == 0);
}

TEST_CASE("solve writes the three field files") {
    const std::string pfx = kDir + "/run";
    const std::string log = kDir + "/solve_out.txt";
    CHECK(run_cli("solve --bc sbcf --n 4 --g 0.8 --rho 50 --out " + pfx, log) == 0);
    for (const std::string ext : {".vtk", "_multiplier.csv", "_log.csv"}) {
        CAPTURE(ext);
        REQUIRE(fs::exists(pfx + ext));
        CHECK(fs::file_size(pfx + ext) > 0);
    }
    const std::string out = slurp(log);
    CHECK(out.find("iterations=") != std::string::npos);
    CHECK(out.find("bc=sbcf") != std::string::npos);
}

TEST_CASE("solve surfaces solver failures with status 1") {
    CHECK(run_cli("solve --bc sbcf --n 4 --g 0.8 --rho 50 --max-iter 1") == 1);
}

TEST_CASE("convergence study") {
    const std::string csv = kDir + "/study.csv";
    const std::string log = kDir + "/conv_out.txt";
    CHECK(run_cli("convergence --bc sbcf --g 0.8 --rho 50 --levels 2,4 --ref 8 --out " +
                      csv, log) == 0);
    const std::string out = slurp(log);
    CHECK(out.find("ls_slope h1=") != std::string::npos);
    const std::string table = slurp(csv);
    CHECK(table.rfind("N, h, h1_error, h1_rate, l2_error, l2_rate, k_itr\n", 0) == 0);
    CHECK(line_count(table) == 3);

    CHECK(run_cli("convergence --levels 3 --ref 8") == 2);       // 8 % 3 != 0
    CHECK(run_cli("convergence --levels 2,3 --ref 8") == 2);
    CHECK(run_cli("convergence --gauge mean-zero --levels 2,4 --ref 8") == 2);
}

TEST_CASE("threshold sweep") {
    const std::string csv = kDir + "/thr.csv";
    CHECK(run_cli("thresholds --bc sbcf --n 4 --case 0.8:50 --case 2.0:3 --out " + csv) == 0);
    const std::string table = slurp(csv);
    CHECK(table.rfind("g, rho, max_trace, active_nodes, k_itr\n", 0) == 0);
    CHECK(line_count(table) == 3);
    CHECK(run_cli("thresholds --n 4 --case garbage") == 2);
    CHECK(run_cli("thresholds --n 4 --case 0.8") == 2);
}

TEST_CASE("multiplier table") {
    const std::string csv = kDir + "/mult.csv";
    CHECK(run_cli("multiplier-table --n 4 --column sbcf:0.8:50 --column lbcf:1.2:15 --out " +
                  csv) == 0);
    const std::string table = slurp(csv);
    CHECK(table.rfind("x, sbcf_g0.8_rho50, lbcf_g1.2_rho15\n", 0) == 0);
    CHECK(line_count(table) == 13); // header + x = 0.0 .. 1.0 + iteration footer
    CHECK(table.find("\nk_itr, ") != std::string::npos);
    CHECK(run_cli("multiplier-table --n 4 --column sbcf:0.8") == 2);
    CHECK(run_cli("multiplier-table --n 4 --column what:0.8:50") == 2);
}
