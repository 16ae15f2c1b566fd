// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end over the C interface in freeconv/freeconv.h.
//
// Subcommands: moments, cumulants, convolve, ccm, omega, verify.
// Exit codes: 0 success, 1 verification failure, 2 input error,
//             3 numerical non-convergence.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "freeconv/freeconv.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitNumericError = 3;

// Exception carrying the process exit code.
struct CliError {
  int code;
  std::string message;
};

int status_to_exit(fc_status st) {
  switch (st) {
    case FC_OK:
      return kExitOk;
    case FC_ERR_INPUT:
      return kExitInputError;
    case FC_ERR_NUMERIC:
      return kExitNumericError;
    default:
      return kExitNumericError;
  }
}

void check(fc_status st) {
  if (st != FC_OK) throw CliError{status_to_exit(st), fc_last_error()};
}

// Owned C string from the API.
struct ApiString {
  char* ptr = nullptr;
  ~ApiString() { fc_string_free(ptr); }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

// Owned measure handle.
struct Measure {
  fc_measure* ptr = nullptr;
  ~Measure() { fc_measure_free(ptr); }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{kExitInputError, "cannot open file: " + path};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Measure load_measure(const std::string& path) {
  Measure m;
  check(fc_measure_parse_json(read_file(path).c_str(), &m.ptr));
  return m;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw CliError{kExitInputError, "cannot open output file: " + out_path};
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
  if (!out) throw CliError{kExitInputError, "write failed: " + out_path};
}

// Parses "NAxNB" into two positive grid dimensions.
void parse_grid_spec(const std::string& spec, int& na, int& nb) {
  const auto pos = spec.find('x');
  if (pos == std::string::npos || pos == 0 || pos + 1 >= spec.size())
    throw CliError{kExitInputError, "grid must be NAxNB, e.g. 64x64"};
  try {
    size_t used = 0;
    na = std::stoi(spec.substr(0, pos), &used);
    if (used != pos) throw std::invalid_argument(spec);
    const std::string tail = spec.substr(pos + 1);
    nb = std::stoi(tail, &used);
    if (used != tail.size()) throw std::invalid_argument(spec);
  } catch (const std::exception&) {
    throw CliError{kExitInputError, "grid must be NAxNB with integer sizes: " + spec};
  }
  if (na < 1 || nb < 1) throw CliError{kExitInputError, "grid sizes must be positive"};
}

// --threads value, overridden by FREECONV_THREADS when set to a positive
// integer.
int effective_threads(int flag_value) {
  const char* env = std::getenv("FREECONV_THREADS");
  if (env && *env) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1 && v <= 1024) return static_cast<int>(v);
  }
  return flag_value;
}

int run(int argc, char** argv) {
  CLI::App app{"exact classical and free additive convolution of atomic measures,\n"
               "and the comparison measure separating the two"};
  app.require_subcommand(1);

  // --- moments ---
  std::string moments_file;
  long moments_order = 0;
  auto* cmd_moments = app.add_subcommand("moments", "raw moments m_1..m_N of a measure");
  cmd_moments->add_option("measure", moments_file, "measure JSON file")->required();
  cmd_moments->add_option("order", moments_order, "highest moment order N >= 1")->required();

  // --- cumulants ---
  std::string cumulants_file;
  long cumulants_order = 0;
  auto* cmd_cumulants =
      app.add_subcommand("cumulants", "free cumulants k_1..k_N of a measure");
  cmd_cumulants->add_option("measure", cumulants_file, "measure JSON file")->required();
  cmd_cumulants->add_option("order", cumulants_order, "highest cumulant order N >= 1")->required();

  // --- convolve ---
  std::string conv_mu, conv_nu, conv_mode;
  long conv_order = 0;
  auto* cmd_convolve = app.add_subcommand(
      "convolve", "classical convolution (atom list) or free convolution (moment list)");
  cmd_convolve->add_option("mu", conv_mu, "first measure JSON file")->required();
  cmd_convolve->add_option("nu", conv_nu, "second measure JSON file")->required();
  cmd_convolve->add_option("--mode", conv_mode, "classical or free")
      ->required()
      ->check(CLI::IsMember({"classical", "free"}));
  cmd_convolve->add_option("-n,--order", conv_order, "moment order for --mode free");

  // --- ccm ---
  std::string ccm_mu, ccm_nu, ccm_grid_spec, ccm_out;
  long ccm_order = -1;
  double ccm_tol = 1e-6;
  int ccm_threads = 1;
  auto* cmd_ccm = app.add_subcommand(
      "ccm", "comparison measure: exact mixed moments (JSON) or density grid (CSV)");
  cmd_ccm->add_option("mu", ccm_mu, "first measure JSON file")->required();
  cmd_ccm->add_option("nu", ccm_nu, "second measure JSON file")->required();
  auto* ccm_moments_opt =
      cmd_ccm->add_option("--moments", ccm_order, "emit all mixed moments with nmu+nnu <= N");
  auto* ccm_grid_opt =
      cmd_ccm->add_option("--grid", ccm_grid_spec, "emit density CSV on an NAxNB grid");
  ccm_moments_opt->excludes(ccm_grid_opt);
  ccm_grid_opt->excludes(ccm_moments_opt);
  cmd_ccm->add_option("--tol", ccm_tol, "quadrature tolerance for --grid (default 1e-6)");
  cmd_ccm->add_option("--threads", ccm_threads, "worker threads for --grid (default 1)");
  cmd_ccm->add_option("-o,--output", ccm_out, "write to file instead of stdout");

  // --- omega ---
  std::string omega_file, omega_grid_spec, omega_out;
  auto* cmd_omega = app.add_subcommand(
      "omega", "defect density of the measure embedding on hull(mu) x [0,1] (CSV)");
  cmd_omega->add_option("mu", omega_file, "measure JSON file")->required();
  cmd_omega->add_option("--grid", omega_grid_spec, "grid sizes NAxNB")->required();
  cmd_omega->add_option("-o,--output", omega_out, "write to file instead of stdout");

  // --- verify ---
  std::string verify_suite = "all";
  std::uint64_t verify_seed = 1;
  auto* cmd_verify = app.add_subcommand("verify", "run the self-verification suites");
  cmd_verify->add_option("--suite", verify_suite, "identities, spectral, ccm or all")
      ->check(CLI::IsMember({"identities", "spectral", "ccm", "all"}));
  cmd_verify->add_option("--seed", verify_seed, "seed for randomized instances (default 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInputError;
  }

  if (cmd_moments->parsed()) {
    if (moments_order < 1) throw CliError{kExitInputError, "order must be >= 1"};
    Measure m = load_measure(moments_file);
    ApiString s;
    check(fc_measure_moments(m.ptr, moments_order, &s.ptr));
    std::cout << s.str() << '\n';
    return kExitOk;
  }

  if (cmd_cumulants->parsed()) {
    if (cumulants_order < 1) throw CliError{kExitInputError, "order must be >= 1"};
    Measure m = load_measure(cumulants_file);
    ApiString s;
    check(fc_measure_cumulants(m.ptr, cumulants_order, &s.ptr));
    std::cout << s.str() << '\n';
    return kExitOk;
  }

  if (cmd_convolve->parsed()) {
    Measure mu = load_measure(conv_mu);
    Measure nu = load_measure(conv_nu);
    if (conv_mode == "classical") {
      Measure sum;
      check(fc_classical_convolve(mu.ptr, nu.ptr, &sum.ptr));
      ApiString s;
      check(fc_measure_atoms_text(sum.ptr, &s.ptr));
      std::cout << s.str() << '\n';
    } else {
      if (conv_order < 1)
        throw CliError{kExitInputError, "--mode free requires --order N with N >= 1"};
      ApiString s;
      check(fc_free_convolve_moments(mu.ptr, nu.ptr, conv_order, &s.ptr));
      std::cout << s.str() << '\n';
    }
    return kExitOk;
  }

  if (cmd_ccm->parsed()) {
    if (ccm_moments_opt->count() == 0 && ccm_grid_opt->count() == 0)
      throw CliError{kExitInputError, "ccm requires --moments N or --grid NAxNB"};
    Measure mu = load_measure(ccm_mu);
    Measure nu = load_measure(ccm_nu);
    if (ccm_moments_opt->count() > 0) {
      if (ccm_order < 0) throw CliError{kExitInputError, "--moments order must be >= 0"};
      ApiString s;
      check(fc_ccm_moments_json(mu.ptr, nu.ptr, ccm_order, &s.ptr));
      emit(s.str(), ccm_out);
    } else {
      int na = 0, nb = 0;
      parse_grid_spec(ccm_grid_spec, na, nb);
      if (na < 4 || nb < 4) throw CliError{kExitInputError, "ccm grid sizes must be >= 4"};
      if (!(ccm_tol > 0.0)) throw CliError{kExitInputError, "--tol must be > 0"};
      ApiString s;
      check(fc_ccm_grid_csv(mu.ptr, nu.ptr, na, nb, ccm_tol, effective_threads(ccm_threads),
                            &s.ptr));
      emit(s.str(), ccm_out);
    }
    return kExitOk;
  }

  if (cmd_omega->parsed()) {
    Measure mu = load_measure(omega_file);
    int na = 0, nb = 0;
    parse_grid_spec(omega_grid_spec, na, nb);
    ApiString s;
    check(fc_omega_grid_csv(mu.ptr, na, nb, &s.ptr));
    emit(s.str(), omega_out);
    return kExitOk;
  }

  if (cmd_verify->parsed()) {
    ApiString report;
    int failures = 0;
    check(fc_verify(verify_suite.c_str(), verify_seed, &report.ptr, &failures));
    std::cout << report.str();
    return failures == 0 ? kExitOk : kExitVerifyFailed;
  }

  throw CliError{kExitInputError, "no subcommand selected"};
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << '\n';
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumericError;
  }
}
