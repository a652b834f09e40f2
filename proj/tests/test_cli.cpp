// Spawns the installed CLI binary and asserts the documented exit-code
// contract end to end.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

int run_cli(const std::string& args, const std::string& stdout_file = "") {
    std::string cmd = std::string(SPHNS_CLI_PATH) + " " + args;
    if (!stdout_file.empty())
        cmd += " > " + stdout_file + " 2>/dev/null";
    else
        cmd += " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    f << text;
}

const char* kRunConfig =
    "gamma = 1.2\n"
    "delta = 0.8\n"
    "a = 1.0\n"
    "r_max = 6.0\n"
    "n = 48\n"
    "eta = 0.05\n"
    "t_end = 0.02\n"
    "cfl = 0.45\n"
    "init = gaussian-bump\n";

}  // namespace

TEST_CASE("check exit codes") {
    CHECK(run_cli("check --delta 0.75 --gamma 1.0") == 0);
    CHECK(run_cli("check --delta 0.70 --gamma 1.0") == 2);
    CHECK(run_cli("check --gamma 1.0") == 1);              // missing delta
    CHECK(run_cli("check --delta notanumber") != 0);

    CHECK(run_cli("check --delta 0.75 --find-threshold --tol 1e-6",
                  "cli_check.txt") == 0);
    const std::string out = slurp("cli_check.txt");
    CHECK(out.find("delta_star   = 0.7427") != std::string::npos);
    CHECK(out.find("admissible   = true") != std::string::npos);
}

TEST_CASE("run exit codes and determinism") {
    spit("cli_run.txt", kRunConfig);
    CHECK(run_cli("run cli_run.txt -o cli1.csv --summary cli1.json") == 0);
    CHECK(run_cli("run cli_run.txt -o cli2.csv") == 0);
    CHECK(slurp("cli1.csv") == slurp("cli2.csv"));

    spit("cli_bad.txt", std::string(kRunConfig) + "mystery = 1\n");
    CHECK(run_cli("run cli_bad.txt -o never.csv") == 1);

    spit("cli_fail.txt",
         "gamma = 1.2\ndelta = 0.8\na = 1.0\nr_max = 800.0\nn = 16\n"
         "eta = 0.0\nt_end = 0.1\ncfl = 0.45\ninit = decaying\n");
    CHECK(run_cli("run cli_fail.txt -o never.csv") == 3);
}

TEST_CASE("mms exit codes") {
    spit("cli_mms.txt", "mms_preset = transport\ngrids = 48, 64, 96\nt_end = 0.1\n");
    CHECK(run_cli("mms cli_mms.txt", "cli_mms_out.txt") == 0);
    CHECK(slurp("cli_mms_out.txt").find("slope") != std::string::npos);

    spit("cli_mms_neg.txt",
         "mms_preset = transport\ngrids = 48, 64, 96\nt_end = 0.1\nmin_slope = 5.0\n");
    CHECK(run_cli("mms cli_mms_neg.txt") == 4);
}

TEST_CASE("sweep exit codes and determinism") {
    spit("cli_sweep.txt", "delta_min = 0.70\ndelta_max = 0.80\ndelta_step = 0.01\n");
    CHECK(run_cli("sweep cli_sweep.txt -o cli_sweep1.csv") == 0);
    CHECK(run_cli("sweep cli_sweep.txt -o cli_sweep2.csv") == 0);
    CHECK(slurp("cli_sweep1.csv") == slurp("cli_sweep2.csv"));

    spit("cli_sweep_bad.txt", "delta_min = 0.8\ndelta_max = 0.7\ndelta_step = 0.1\n");
    CHECK(run_cli("sweep cli_sweep_bad.txt -o never.csv") == 1);
}
