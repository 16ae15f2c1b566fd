// SPDX-License-Identifier: Apache-2.0
//
// End-to-end tests of the command-line tool: output bytes, exit codes, and
// determinism across repeated runs and thread counts.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifndef CLI_PATH
#error "CLI_PATH must point at the built command-line binary"
#endif
#ifndef DATA_DIR
#error "DATA_DIR must point at the test data directory"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;  // stdout and stderr interleaved
};

// Runs a shell command, capturing combined output and the exit code.
RunResult run(const std::string& args) {
  RunResult r;
  const std::string cmd = std::string(CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  int status = pclose(pipe);
  r.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(DATA_DIR) + "/" + name; }

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("moments subcommand prints exact rationals") {
  RunResult r = run("moments " + data("bernoulli.json") + " 4");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "0 1 0 1\n");

  RunResult p = run("moments " + data("point2.json") + " 3");
  CHECK(p.exit_code == 0);
  CHECK(p.out == "2 4 8\n");

  RunResult s = run("moments " + data("skew.json") + " 2");
  CHECK(s.exit_code == 0);
  CHECK(s.out == "0 3/4\n");
}

TEST_CASE("cumulants subcommand prints free cumulants") {
  RunResult r = run("cumulants " + data("bernoulli.json") + " 4");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "0 1 0 -1\n");
}

TEST_CASE("convolve subcommand: classical atoms and free moments") {
  const std::string b = data("bernoulli.json");
  RunResult cl = run("convolve " + b + " " + b + " --mode classical");
  CHECK(cl.exit_code == 0);
  CHECK(cl.out == "-2:1/4 0:1/2 2:1/4\n");

  RunResult fr = run("convolve " + b + " " + b + " --mode free --order 4");
  CHECK(fr.exit_code == 0);
  CHECK(fr.out == "0 2 0 6\n");

  // The first three moments of the two convolutions coincide.
  RunResult fr3 = run("convolve " + b + " " + b + " --mode free --order 3");
  CHECK(fr3.exit_code == 0);
  CHECK(fr3.out == "0 2 0\n");

  // Free mode without an order is an input error.
  RunResult miss = run("convolve " + b + " " + b + " --mode free");
  CHECK(miss.exit_code == 2);
}

TEST_CASE("ccm subcommand: moment table JSON") {
  const std::string b = data("bernoulli.json");
  RunResult r = run("ccm " + b + " " + b + " --moments 0");
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "{\"order\":0,\"entries\":[{\"nmu\":0,\"nnu\":0,\"value\":\"1/12\"}]}\n");

  // A point mass forces the zero table.
  RunResult z = run("ccm " + data("point2.json") + " " + b + " --moments 2");
  CHECK(z.exit_code == 0);
  CHECK(z.out.find("\"value\":\"0\"") != std::string::npos);
  CHECK(z.out.find("\"value\":\"1/") == std::string::npos);
}

TEST_CASE("ccm subcommand: density grid CSV with positive entries") {
  const std::string b = data("bernoulli.json");
  RunResult r = run("ccm " + b + " " + b + " --grid 4x4 --tol 1e-4");
  CHECK(r.exit_code == 0);
  CHECK(r.out.substr(0, 12) == "t_mu,t_nu,w\n");
  CHECK(count_lines(r.out) == 17);  // header + 16 cells

  // Every value column entry is nonnegative.
  size_t pos = r.out.find('\n') + 1;
  while (pos < r.out.size()) {
    size_t end = r.out.find('\n', pos);
    std::string line = r.out.substr(pos, end - pos);
    size_t last_comma = line.rfind(',');
    REQUIRE(last_comma != std::string::npos);
    CHECK(std::stod(line.substr(last_comma + 1)) >= 0.0);
    pos = end + 1;
  }

  // Undersized grids are rejected for comparison output.
  RunResult small = run("ccm " + b + " " + b + " --grid 2x4 --tol 1e-4");
  CHECK(small.exit_code == 2);
}

TEST_CASE("omega subcommand emits the defect-density grid") {
  RunResult r = run("omega " + data("bernoulli.json") + " --grid 6x5");
  CHECK(r.exit_code == 0);
  CHECK(r.out.substr(0, 10) == "a,b,omega\n");
  CHECK(count_lines(r.out) == 31);  // header + 30 cells
}

TEST_CASE("outputs are byte-identical across runs and thread counts") {
  const std::string b = data("bernoulli.json");
  const std::string f = data("fourpoint.json");

  RunResult g1 = run("ccm " + b + " " + f + " --grid 4x4 --tol 1e-4");
  RunResult g2 = run("ccm " + b + " " + f + " --grid 4x4 --tol 1e-4");
  CHECK(g1.exit_code == 0);
  CHECK(g1.out == g2.out);

  RunResult g4 = run("ccm " + b + " " + f + " --grid 4x4 --tol 1e-4 --threads 4");
  CHECK(g4.exit_code == 0);
  CHECK(g1.out == g4.out);

  // FREECONV_THREADS overrides --threads without changing the bytes.
  RunResult genv = run("ccm " + b + " " + f + " --grid 4x4 --tol 1e-4 --threads 1");
  RunResult genv2;
  {
    const std::string cmd = "FREECONV_THREADS=3 " + std::string(CLI_PATH) + " ccm " + b + " " +
                            f + " --grid 4x4 --tol 1e-4 --threads 1";
    RunResult r;
    FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    int status = pclose(pipe);
    r.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    genv2 = r;
  }
  CHECK(genv.exit_code == 0);
  CHECK(genv2.exit_code == 0);
  CHECK(genv.out == genv2.out);

  RunResult v1 = run("verify --suite identities --seed 7");
  RunResult v2 = run("verify --suite identities --seed 7");
  CHECK(v1.exit_code == 0);
  CHECK(v1.out == v2.out);
}

TEST_CASE("verify subcommand reports and exits by tally") {
  RunResult r = run("verify --suite identities --seed 7");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("[PASS]") != std::string::npos);
  CHECK(r.out.find("[FAIL]") == std::string::npos);
  CHECK(r.out.find("failures: 0") != std::string::npos);

  RunResult bad = run("verify --suite nonsense");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("input errors exit with code 2 and a message") {
  RunResult missing = run("moments /nonexistent/measure.json 4");
  CHECK(missing.exit_code == 2);
  CHECK(missing.out.find("error:") != std::string::npos);

  // Malformed JSON written on the fly.
  std::string bad_path;
  {
    const char* tmp = std::getenv("TMPDIR");
    bad_path = std::string(tmp ? tmp : "/tmp") + "/freeconv_bad_measure.json";
    FILE* f = fopen(bad_path.c_str(), "w");
    REQUIRE(f != nullptr);
    fputs("{\"atoms\": oops", f);
    fclose(f);
  }
  RunResult bad = run("moments " + bad_path + " 4");
  CHECK(bad.exit_code == 2);
  std::remove(bad_path.c_str());

  RunResult zero = run("moments " + data("bernoulli.json") + " 0");
  CHECK(zero.exit_code == 2);

  RunResult grid = run("omega " + data("bernoulli.json") + " --grid nonsense");
  CHECK(grid.exit_code == 2);

  RunResult tol = run("ccm " + data("bernoulli.json") + " " + data("bernoulli.json") +
                      " --grid 4x4 --tol -1");
  CHECK(tol.exit_code == 2);

  RunResult unknown = run("frobnicate");
  CHECK(unknown.exit_code == 2);
}
