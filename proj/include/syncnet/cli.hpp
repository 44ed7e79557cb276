#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace syncnet::cli {

/// Exit codes: 0 success / verdict true, 1 verdict false, 2 invalid input.
enum ExitCode : int { kOk = 0, kVerdictFalse = 1, kInvalidInput = 2 };

struct RunConfig {
  std::string command;
  std::string graph;
  std::string F;
  std::string H;
  std::string b;
  std::string out = ".";
  std::string dynamics = "chua";
  std::vector<double> chua;  // kappa, alpha_c, beta_c, gamma_c, a_c, b_c
  std::vector<std::pair<int, int>> add;

  double c = 0.0;
  double sigma_max = 0.0;  // 0 = derive (3·c·λ_N with a graph, else 10)
  double grid_step = 0.0;  // 0 = 1e-3·sigma_max
  double boundary_tol = 1e-6;
  double step = 1e-3;
  double horizon = 200.0;
  std::uint64_t seed = 1;
  double eps = 1e-3;
  double window = 20.0;
  int stride = 100;
  double q_scale = 1.0;
};

/// Fills fields present in a JSON config document; keys mirror RunConfig names.
void apply_config_json(RunConfig& cfg, const std::string& text);

/// Runs one subcommand; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace syncnet::cli
