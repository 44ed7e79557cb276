#include "syncnet/coupling_design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "syncnet/error.hpp"
#include "syncnet/numerics.hpp"
#include "syncnet/rng.hpp"

namespace syncnet {

namespace {

constexpr double kRankTol = 1e-9;
// Roots of an m-fold eigenvalue scatter by about eps^(1/m), so clustering is loose
// and each cluster is then refined before any rank test.
constexpr double kClusterTol = 1e-4;

struct EigenGroup {
  Complex value;
  int multiplicity = 0;
  double spread = 0.0;  // largest distance from a member root to value
};

Polynomial derivative(const Polynomial& p) {
  const std::size_t deg = p.size() - 1;
  Polynomial d(deg);
  for (std::size_t i = 0; i < deg; ++i) d[i] = p[i] * static_cast<double>(deg - i);
  return d;
}

// An m-fold root of p is a simple root of p^(m-1); Newton there is well conditioned.
Complex refine_multiple_root(const Polynomial& p, Complex z, int m) {
  Polynomial q = p;
  for (int i = 1; i < m; ++i) q = derivative(q);
  const Polynomial dq = derivative(q);
  for (int it = 0; it < 50 && dq.size() > 0; ++it) {
    const Complex d = poly_eval(dq, z);
    if (d == Complex(0.0)) break;
    const Complex step = poly_eval(q, z) / d;
    z -= step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) break;
  }
  return z;
}

// Eigenvalues of f grouped by single linkage, each group refined as a multiple root.
std::vector<EigenGroup> eigen_groups(const Matrix& f) {
  const Polynomial p = char_poly(f);
  const auto roots = poly_roots(p);
  double scale = 1.0;
  for (const Complex& r : roots) scale = std::max(scale, std::abs(r));
  const double tol = kClusterTol * scale;

  std::vector<int> group(roots.size(), -1);
  int groups = 0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (group[i] >= 0) continue;
    const int id = groups++;
    std::vector<std::size_t> frontier{i};
    group[i] = id;
    while (!frontier.empty()) {
      const std::size_t a = frontier.back();
      frontier.pop_back();
      for (std::size_t b = 0; b < roots.size(); ++b) {
        if (group[b] < 0 && std::abs(roots[a] - roots[b]) <= tol) {
          group[b] = id;
          frontier.push_back(b);
        }
      }
    }
  }
  std::vector<EigenGroup> out(groups);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    out[group[i]].value += roots[i];
    ++out[group[i]].multiplicity;
  }
  for (auto& g : out) {
    g.value /= static_cast<double>(g.multiplicity);
    if (g.multiplicity > 1) g.value = refine_multiple_root(p, g.value, g.multiplicity);
  }
  for (std::size_t i = 0; i < roots.size(); ++i) {
    auto& g = out[group[i]];
    g.spread = std::max(g.spread, std::abs(roots[i] - g.value));
  }
  return out;
}

double rank_threshold(const Matrix& f, std::span<const double> b) {
  return kRankTol * std::max({1.0, f.frobenius_norm(), norm2(b)});
}

// Complex rank of [λI - F | b] through the real embedding [[Re, -Im], [Im, Re]],
// whose real rank is twice the complex rank.
int complex_rank(const Matrix& f, Complex lambda, std::span<const double> b, double threshold) {
  const std::size_t n = f.rows();
  const std::size_t extra = b.empty() ? 0 : 1;
  const std::size_t cols = n + extra;
  Matrix re(n, cols), im(n, cols);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) re(i, j) = -f(i, j);
    re(i, i) += lambda.real();
    im(i, i) = lambda.imag();
    if (extra) re(i, n) = b[i];
  }
  if (lambda.imag() == 0.0) return rank_abs(re, threshold);
  Matrix emb(2 * n, 2 * cols);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      emb(i, j) = re(i, j);
      emb(i, cols + j) = -im(i, j);
      emb(n + i, j) = im(i, j);
      emb(n + i, cols + j) = re(i, j);
    }
  return rank_abs(emb, threshold) / 2;
}

void require_square(const Matrix& f) {
  if (!f.square() || f.rows() == 0) throw Error(Errc::DimensionMismatch, "F must be a nonempty square matrix");
}

void require_b(const Matrix& f, std::span<const double> b) {
  if (b.size() != f.rows()) throw Error(Errc::DimensionMismatch, "b must have one entry per row of F");
}

}  // namespace

bool jordan_condition(const Matrix& f, double tol) {
  require_square(f);
  const std::size_t n = f.rows();
  const double threshold = rank_threshold(f, {});
  for (const EigenGroup& g : eigen_groups(f)) {
    if (g.value.real() < -tol) continue;
    if (complex_rank(f, g.value, {}, std::max(threshold, 10.0 * g.spread)) < static_cast<int>(n) - 1) return false;
  }
  return true;
}

bool pbh_stabilizable(const Matrix& f, std::span<const double> b, double tol) {
  require_square(f);
  require_b(f, b);
  const double threshold = rank_threshold(f, b);
  for (const EigenGroup& g : eigen_groups(f)) {
    if (g.value.real() < -tol) continue;
    if (complex_rank(f, g.value, b, std::max(threshold, 10.0 * g.spread)) < static_cast<int>(f.rows())) return false;
  }
  return true;
}

bool pbh_controllable(const Matrix& f, std::span<const double> b) {
  return pbh_stabilizable(f, b, std::numeric_limits<double>::infinity());
}

std::vector<double> ackermann(const Matrix& f, std::span<const double> b, std::span<const double> poles) {
  require_square(f);
  require_b(f, b);
  const std::size_t n = f.rows();
  if (poles.size() != n) throw Error(Errc::DimensionMismatch, "ackermann needs n poles");

  // Controllability matrix [b, Fb, ..., F^{n-1}b].
  Matrix ctrb(n, n);
  std::vector<double> col(b.begin(), b.end());
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) ctrb(i, j) = col[i];
    col = f * std::span<const double>(col);
  }

  // Desired polynomial ∏(λ - p) and φ(F) by Horner.
  Polynomial phi{1.0};
  for (double p : poles) {
    Polynomial next(phi.size() + 1, 0.0);
    for (std::size_t i = 0; i < phi.size(); ++i) {
      next[i] += phi[i];
      next[i + 1] -= p * phi[i];
    }
    phi = std::move(next);
  }
  Matrix phi_f = Matrix::identity(n) * phi[0];
  for (std::size_t i = 1; i < phi.size(); ++i) phi_f = f * phi_f + Matrix::identity(n) * phi[i];

  Matrix en(n, 1);
  en(n - 1, 0) = 1.0;
  Matrix w;
  try {
    w = solve(ctrb.transpose(), en);
  } catch (const Error&) {
    throw Error(Errc::NotControllable, "controllability matrix is singular");
  }
  std::vector<double> k(n, 0.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) k[j] += w(i, 0) * phi_f(i, j);
  return k;
}

std::vector<std::vector<double>> candidate_bs(std::size_t n, std::uint64_t seed) {
  std::vector<std::vector<double>> out;
  for (std::size_t i = n; i-- > 0;) {
    std::vector<double> e(n, 0.0);
    e[i] = 1.0;
    out.push_back(std::move(e));
  }
  Rng rng(seed);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(n);
    for (double& x : v) x = rng.normal();
    const double norm = norm2(v);
    if (norm == 0.0) continue;
    for (double& x : v) x /= norm;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<double> choose_b(const Matrix& f, std::uint64_t seed) {
  require_square(f);
  if (!jordan_condition(f)) {
    throw Error(Errc::NotStabilizable, "an unstable eigenvalue of F has more than one Jordan block");
  }
  const bool stable = is_hurwitz(f);
  for (auto& b : candidate_bs(f.rows(), seed)) {
    if (!pbh_stabilizable(f, b)) continue;
    if (!stable && !pbh_controllable(f, b)) continue;
    return b;
  }
  throw Error(Errc::SearchExhausted, "no candidate b passed the stabilizability tests");
}

double certificate_eigenvalue(const Matrix& f, std::span<const double> b, const Matrix& p) {
  const Matrix lhs = f * p + p * f.transpose() - 2.0 * outer(b, b);
  return sym_eigenvalues(symmetrize(lhs)).back();
}

DesignResult design_rank1(const Matrix& f, std::span<const double> b_in, double q_scale) {
  require_square(f);
  require_b(f, b_in);
  if (!(q_scale > 0.0)) throw Error(Errc::InvalidArgument, "q_scale must be positive");
  const std::size_t n = f.rows();
  const std::vector<double> b(b_in.begin(), b_in.end());

  if (!pbh_stabilizable(f, b)) throw Error(Errc::NotStabilizable, "(F, b) is not stabilizable");
  const bool stable = is_hurwitz(f);
  const bool controllable = pbh_controllable(f, b);
  if (!stable && !controllable) {
    throw Error(Errc::NotControllable, "F is unstable and (F, b) is stabilizable but not controllable");
  }

  DesignResult r;
  r.b = b;
  r.k_stabilizing.assign(n, 0.0);
  if (controllable) {
    std::vector<double> poles(n);
    for (std::size_t i = 0; i < n; ++i) poles[i] = -static_cast<double>(i + 1);
    try {
      r.k_stabilizing = ackermann(f, b, poles);
    } catch (const Error&) {
      if (!stable) throw;
    }
  }
  Matrix closed = f - outer(b, r.k_stabilizing);
  if (!is_hurwitz(closed)) {
    if (!stable) throw Error(Errc::NotControllable, "pole placement did not yield a Hurwitz closed loop");
    // Numerically poor placement on an already stable F: fall back to no pre-feedback.
    std::fill(r.k_stabilizing.begin(), r.k_stabilizing.end(), 0.0);
    closed = f;
  }

  const Matrix q = Matrix::identity(n) * q_scale + 2.0 * outer(b, b);
  const auto scale_and_solve = [&] {
    const Matrix p0 = solve_lyapunov(closed, q);
    if (!(sym_eigenvalues(p0).front() > 0.0)) {
      throw Error(Errc::SingularSystem, "Lyapunov solution is not positive definite");
    }
    // y = k₀P₀; Young's inequality with weight β + 2 bounds by + yᵀbᵀ.
    const Matrix y = Matrix::row(r.k_stabilizing) * p0;
    const double y_norm_sq = dot(y.data(), y.data());
    r.beta = std::max(2.0, y_norm_sq / q_scale + 1.0);
    r.P = p0 * (2.0 / r.beta);
    const Matrix k_col = solve(r.P, Matrix::column(b));
    r.k.assign(k_col.data().begin(), k_col.data().end());
  };
  try {
    scale_and_solve();
  } catch (const Error& e) {
    const bool prefeedback = std::any_of(r.k_stabilizing.begin(), r.k_stabilizing.end(),
                                         [](double x) { return x != 0.0; });
    if (!stable || !prefeedback || e.code() != Errc::SingularSystem) throw;
    // Huge placement gains on a stable F: the plain Lyapunov design is enough.
    std::fill(r.k_stabilizing.begin(), r.k_stabilizing.end(), 0.0);
    closed = f;
    scale_and_solve();
  }
  r.H = outer(b, r.k);
  r.certificate_eig = certificate_eigenvalue(f, b, r.P);
  return r;
}

VerifyReport verify_design(const Matrix& f, const Matrix& h, std::span<const double> sigma_samples,
                           const std::optional<CertificateInput>& certificate) {
  if (!f.square() || h.rows() != f.rows() || h.cols() != f.cols()) {
    throw Error(Errc::DimensionMismatch, "verify_design: H must match F");
  }
  VerifyReport rep;
  rep.all_hurwitz = true;
  for (double sigma : sigma_samples) {
    const Matrix m = f - sigma * h;
    VerifySample s{sigma, is_hurwitz(m), std::numeric_limits<double>::quiet_NaN()};
    try {
      s.abscissa = spectral_abscissa(m);
    } catch (const Error&) {
    }
    rep.all_hurwitz = rep.all_hurwitz && s.hurwitz;
    rep.samples.push_back(s);
  }
  if (certificate) {
    require_b(f, certificate->b);
    rep.certificate_eig = certificate_eigenvalue(f, certificate->b, certificate->P);
  }
  rep.passed = rep.all_hurwitz && (!rep.certificate_eig || *rep.certificate_eig < 0.0);
  return rep;
}

}  // namespace syncnet
