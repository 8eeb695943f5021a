// Command-line front end: critical-strain tables, stiffness sweeps,
// first-order-correction scaling studies, and the internal verification
// suites, with CSV output to a file or stdout.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error,
// 3 solver failure.

#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qc1d/csv.hpp"
#include "qc1d/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitSolverFailure = 3;

// "a:b:step" (inclusive of both ends when step divides exactly), a comma
// list, or a single value.
std::vector<double> parse_range(const std::string& spec) {
  std::vector<double> values;
  if (spec.find(':') != std::string::npos) {
    double a = 0, b = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec);
    if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0 || b < a)
      throw std::invalid_argument("bad range spec '" + spec + "' (expected a:b:step)");
    for (double x = a; x <= b + 1e-9 * step; x += step) values.push_back(x);
    return values;
  }
  std::istringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    values.push_back(std::stod(item));
  }
  if (values.empty()) throw std::invalid_argument("empty range spec");
  return values;
}

int write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return kExitOk;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file '" << path << "'\n";
    return kExitConfigError;
  }
  out << content;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1D atomistic chain and quasicontinuum stability toolkit"};
  app.require_subcommand(1);

  std::string potential = "morse:alpha=5";
  std::string out_path = "-";
  std::string alpha_spec = "2:7:1";
  std::string group = "all";
  int n_half = 40;
  int k_interface = 10;
  std::uint64_t seed = 42;
  double fixed_strain = 0.0;  // 0 means per-alpha energy minimum

  auto* cmd_table = app.add_subcommand("table-cerr", "Error constants C_err per potential");
  std::string table_potential;
  cmd_table->add_option("--potential", table_potential, "restrict to one potential descriptor");
  cmd_table->add_option("--out", out_path, "output path or '-' for stdout");

  auto* cmd_strains =
      app.add_subcommand("critical-strains", "All six critical strains for one potential");
  cmd_strains->add_option("--potential", potential, "potential descriptor");
  cmd_strains->add_option("--n", n_half, "period half-count N");
  cmd_strains->add_option("--k", k_interface, "atomistic-region half-width K");
  cmd_strains->add_option("--out", out_path, "output path or '-' for stdout");

  auto* cmd_sweep = app.add_subcommand("sweep", "Morse stiffness sweep of critical strains");
  cmd_sweep->add_option("--alpha", alpha_spec, "alpha list or range a:b:step");
  cmd_sweep->add_option("--n", n_half, "period half-count N");
  cmd_sweep->add_option("--k", k_interface, "atomistic-region half-width K");
  cmd_sweep->add_option("--out", out_path, "output path or '-' for stdout");

  auto* cmd_lemma =
      app.add_subcommand("lemma-scaling", "First-order-correction error scaling study");
  std::string lemma_alpha = "3:8:1";
  cmd_lemma->add_option("--alpha", lemma_alpha, "alpha list or range a:b:step");
  cmd_lemma->add_option("--n", n_half, "period half-count N");
  cmd_lemma->add_option("--k", k_interface, "atomistic-region half-width K");
  cmd_lemma->add_option("--strain", fixed_strain,
                        "fixed strain for all rows (default: per-alpha energy minimum)");
  cmd_lemma->add_option("--out", out_path, "output path or '-' for stdout");

  auto* cmd_verify = app.add_subcommand("verify", "Run the internal identity suites");
  cmd_verify->add_option("--group", group, "fd|prop31|prop32|prop33|ghost|lambdak|mueps|all");
  cmd_verify->add_option("--seed", seed, "seed for randomized deformation samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (cmd_table->parsed()) {
      std::vector<std::string> descriptors;
      if (!table_potential.empty()) {
        descriptors.push_back(table_potential);
      } else {
        for (int a = 2; a <= 7; ++a) descriptors.push_back("morse:alpha=" + std::to_string(a));
        descriptors.push_back("lj");
      }
      return write_output(out_path, qc1d::table_cerr_csv(descriptors));
    }

    if (cmd_strains->parsed()) {
      const auto p = qc1d::make_potential(potential);
      const qc1d::ChainParams params(n_half, k_interface, 1.0);
      return write_output(out_path, qc1d::critical_strains_csv(*p, params));
    }

    if (cmd_sweep->parsed()) {
      const qc1d::ChainParams params(n_half, k_interface, 1.0);
      const auto rows = qc1d::sweep_alpha(parse_range(alpha_spec), params);
      const int rc = write_output(out_path, qc1d::sweep_csv(rows));
      if (rc != kExitOk) return rc;
      bool any_failed = false;
      for (const auto& row : rows)
        if (!row.ok) {
          std::cerr << "warning: alpha=" << row.alpha << " failed: " << row.note << '\n';
          any_failed = true;
        }
      return any_failed ? kExitSolverFailure : kExitOk;
    }

    if (cmd_lemma->parsed()) {
      const qc1d::ChainParams params(n_half, k_interface, 1.0);
      std::optional<double> strain;
      if (fixed_strain > 0.0) strain = fixed_strain;
      const auto study = qc1d::lemma_scaling_study(parse_range(lemma_alpha), params, strain);
      std::cerr << "# fitted slope of log(error) vs log(delta1^2 + delta1*delta2): "
                << study.fitted_slope << '\n';
      const int rc = write_output(out_path, qc1d::lemma_scaling_csv(study));
      if (rc != kExitOk) return rc;
      for (const auto& row : study.rows)
        if (!row.ok) {
          std::cerr << "warning: alpha=" << row.alpha << " row failed\n";
          return kExitSolverFailure;
        }
      return kExitOk;
    }

    if (cmd_verify->parsed()) {
      const auto results = qc1d::run_verification(group == "all" ? "" : group, seed);
      if (results.empty()) {
        std::cerr << "error: unknown verification group '" << group << "'\n";
        return kExitConfigError;
      }
      bool all_passed = true;
      for (const auto& r : results) {
        std::cout << (r.passed ? "PASS" : "FAIL") << "  " << r.group << ": " << r.name << " ("
                  << r.detail << ")\n";
        all_passed = all_passed && r.passed;
      }
      std::cout << (all_passed ? "all checks passed\n" : "some checks FAILED\n");
      return all_passed ? kExitOk : kExitVerifyFailure;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kExitSolverFailure;
  }
  return kExitConfigError;
}
