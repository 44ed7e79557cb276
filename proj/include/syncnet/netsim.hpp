#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "syncnet/dynamics.hpp"
#include "syncnet/graph.hpp"
#include "syncnet/matrix.hpp"

namespace syncnet {

/// ẋᵢ = f(xᵢ) - c·Σⱼ Lᵢⱼ·H·xⱼ over the Laplacian of graph.
struct NetworkSystem {
  Graph graph;
  double c = 0.0;
  Matrix H;
  NodeDynamics dynamics;

  std::size_t node_dim() const noexcept { return dynamics.dim; }
  /// Throws Errc::DimensionMismatch / Errc::InvalidArgument.
  void validate() const;
};

struct SimOptions {
  double step = 1e-3;
  double horizon = 200.0;
  int stride = 1;  // record every stride-th step (the final step is always recorded)
  double blowup_guard = 1e6;
};

struct Trajectory {
  std::size_t nodes = 0;
  std::size_t node_dim = 0;
  std::vector<double> times;
  /// One row per recorded time, N·n values laid out node-major.
  std::vector<std::vector<double>> states;
  std::vector<double> sync_error;
  bool blowup = false;
  std::optional<double> blowup_time;
};

/// Node-major N·n vector of independent uniform draws in [lo, hi].
std::vector<double> random_initial_states(std::size_t nodes, std::size_t node_dim, std::uint64_t seed,
                                          double lo = -0.5, double hi = 0.5);

/// Fixed-step classic RK4. Blow-up (some ‖xᵢ‖ above the guard) truncates the
/// trajectory and sets the flag instead of throwing.
Trajectory simulate(const NetworkSystem& sys, std::span<const double> x0, const SimOptions& opts = {});

/// max over nodes of ‖xᵢ - x̄‖₂ for one node-major state.
double sync_error(std::span<const double> state, std::size_t nodes, std::size_t node_dim);
std::vector<double> sync_error_series(const Trajectory& traj);

/// sync_error < eps at every recorded time in the final window, and no blow-up.
bool is_synchronized(const Trajectory& traj, double eps, double window);

}  // namespace syncnet
