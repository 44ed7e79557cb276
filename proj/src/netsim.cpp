#include "syncnet/netsim.hpp"

#include <algorithm>
#include <cmath>

#include "syncnet/error.hpp"
#include "syncnet/rng.hpp"

namespace syncnet {

void NetworkSystem::validate() const {
  const std::size_t n = dynamics.dim;
  if (n == 0 || !dynamics.field) throw Error(Errc::InvalidArgument, "network needs node dynamics");
  if (H.rows() != n || H.cols() != n) throw Error(Errc::DimensionMismatch, "H must be node_dim x node_dim");
  if (!std::isfinite(c) || c < 0.0) throw Error(Errc::InvalidArgument, "coupling strength must be finite and >= 0");
}

std::vector<double> random_initial_states(std::size_t nodes, std::size_t node_dim, std::uint64_t seed, double lo,
                                          double hi) {
  Rng rng(seed);
  std::vector<double> x(nodes * node_dim);
  for (double& v : x) v = rng.uniform(lo, hi);
  return x;
}

double sync_error(std::span<const double> state, std::size_t nodes, std::size_t node_dim) {
  std::vector<double> mean(node_dim, 0.0);
  for (std::size_t i = 0; i < nodes; ++i)
    for (std::size_t d = 0; d < node_dim; ++d) mean[d] += state[i * node_dim + d];
  for (double& m : mean) m /= static_cast<double>(nodes);
  double worst = 0.0;
  for (std::size_t i = 0; i < nodes; ++i) {
    double s = 0.0;
    for (std::size_t d = 0; d < node_dim; ++d) {
      const double diff = state[i * node_dim + d] - mean[d];
      s += diff * diff;
    }
    worst = std::max(worst, std::sqrt(s));
  }
  return worst;
}

namespace {

class NetworkRhs {
 public:
  explicit NetworkRhs(const NetworkSystem& sys)
      : sys_(sys), nodes_(static_cast<std::size_t>(sys.graph.node_count())), dim_(sys.node_dim()),
        hx_(nodes_ * dim_) {}

  void operator()(std::span<const double> x, std::span<double> dx) {
    // hx_ holds H·xⱼ per node; the Laplacian sum is Σⱼ Lᵢⱼ hxⱼ = deg(i)·hxᵢ - Σ_{j~i} hxⱼ.
    for (std::size_t j = 0; j < nodes_; ++j) {
      const auto xj = x.subspan(j * dim_, dim_);
      for (std::size_t r = 0; r < dim_; ++r) hx_[j * dim_ + r] = dot(sys_.H.row_span(r), xj);
    }
    const auto& adj = sys_.graph.adjacency();
    for (std::size_t i = 0; i < nodes_; ++i) {
      auto dxi = dx.subspan(i * dim_, dim_);
      sys_.dynamics.field(x.subspan(i * dim_, dim_), dxi);
      if (sys_.c == 0.0) continue;
      const double deg = static_cast<double>(adj[i].size());
      for (std::size_t r = 0; r < dim_; ++r) {
        double lap = deg * hx_[i * dim_ + r];
        for (int j : adj[i]) lap -= hx_[static_cast<std::size_t>(j) * dim_ + r];
        dxi[r] -= sys_.c * lap;
      }
    }
  }

 private:
  const NetworkSystem& sys_;
  std::size_t nodes_;
  std::size_t dim_;
  std::vector<double> hx_;
};

bool exceeds_guard(std::span<const double> x, std::size_t nodes, std::size_t dim, double guard) {
  for (std::size_t i = 0; i < nodes; ++i) {
    const double norm = norm2(x.subspan(i * dim, dim));
    if (!(norm <= guard)) return true;
  }
  return false;
}

}  // namespace

Trajectory simulate(const NetworkSystem& sys, std::span<const double> x0, const SimOptions& opts) {
  sys.validate();
  if (!(opts.step > 0.0) || !(opts.horizon > 0.0) || opts.stride < 1) {
    throw Error(Errc::InvalidArgument, "simulate: step, horizon and stride must be positive");
  }
  const auto nodes = static_cast<std::size_t>(sys.graph.node_count());
  const std::size_t dim = sys.node_dim();
  const std::size_t size = nodes * dim;
  if (x0.size() != size) throw Error(Errc::DimensionMismatch, "x0 must hold N*n values");
  if (!std::all_of(x0.begin(), x0.end(), [](double v) { return std::isfinite(v); })) {
    throw Error(Errc::InvalidArgument, "x0 must be finite");
  }

  Trajectory traj;
  traj.nodes = nodes;
  traj.node_dim = dim;
  auto record = [&](double t, const std::vector<double>& x) {
    traj.times.push_back(t);
    traj.states.push_back(x);
    traj.sync_error.push_back(sync_error(x, nodes, dim));
  };

  NetworkRhs rhs(sys);
  std::vector<double> x(x0.begin(), x0.end()), k1(size), k2(size), k3(size), k4(size), tmp(size);
  record(0.0, x);

  const auto steps = static_cast<long>(std::llround(opts.horizon / opts.step));
  const double h = opts.step;
  for (long s = 1; s <= steps; ++s) {
    rhs(x, k1);
    for (std::size_t i = 0; i < size; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
    rhs(tmp, k2);
    for (std::size_t i = 0; i < size; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
    rhs(tmp, k3);
    for (std::size_t i = 0; i < size; ++i) tmp[i] = x[i] + h * k3[i];
    rhs(tmp, k4);
    for (std::size_t i = 0; i < size; ++i) x[i] += h / 6.0 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);

    const double t = static_cast<double>(s) * h;
    if (exceeds_guard(x, nodes, dim, opts.blowup_guard)) {
      traj.blowup = true;
      traj.blowup_time = t;
      break;
    }
    if (s % opts.stride == 0 || s == steps) record(t, x);
  }
  return traj;
}

std::vector<double> sync_error_series(const Trajectory& traj) {
  std::vector<double> out;
  out.reserve(traj.states.size());
  for (const auto& x : traj.states) out.push_back(sync_error(x, traj.nodes, traj.node_dim));
  return out;
}

bool is_synchronized(const Trajectory& traj, double eps, double window) {
  if (traj.blowup || traj.times.empty()) return false;
  const double t_end = traj.times.back();
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    if (traj.times[i] < t_end - window) continue;
    if (!(traj.sync_error[i] < eps)) return false;
  }
  return true;
}

}  // namespace syncnet
