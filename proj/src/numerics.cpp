#include "syncnet/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "syncnet/error.hpp"

namespace syncnet {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_square(const Matrix& m, const char* what) {
  if (!m.square()) throw Error(Errc::DimensionMismatch, std::string(what) + " needs a square matrix");
}

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

struct Lu {
  Matrix lu;
  std::vector<std::size_t> perm;
};

// Partial pivoting; pivots at or below threshold mean singular.
Lu lu_decompose(Matrix a, double threshold) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (std::abs(a(p, k)) <= threshold) throw Error(Errc::SingularSystem, "matrix is singular to working precision");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(perm[k], perm[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      a(i, k) = f;
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return {std::move(a), std::move(perm)};
}

Matrix lu_solve(const Lu& f, const Matrix& b) {
  const std::size_t n = f.lu.rows();
  Matrix x(n, b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = b(f.perm[i], c);
      for (std::size_t j = 0; j < i; ++j) s -= f.lu(i, j) * y[j];
      y[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
      double s = y[i];
      for (std::size_t j = i + 1; j < n; ++j) s -= f.lu(i, j) * x(j, c);
      x(i, c) = s / f.lu(i, i);
    }
  }
  return x;
}

Complex poly_derivative_eval(std::span<const double> p, Complex z) {
  const std::size_t deg = p.size() - 1;
  Complex acc = 0.0;
  for (std::size_t i = 0; i < deg; ++i) acc = acc * z + p[i] * static_cast<double>(deg - i);
  return acc;
}

double poly_abs_eval(std::span<const double> p, double r) {
  double acc = 0.0;
  for (double c : p) acc = acc * r + std::abs(c);
  return acc;
}

double backward_error(std::span<const double> p, Complex z) {
  const double denom = poly_abs_eval(p, std::abs(z));
  return denom > 0.0 ? std::abs(poly_eval(p, z)) / denom : 0.0;
}

void pair_conjugates(std::vector<Complex>& roots) {
  const double scale = std::max(1.0, std::accumulate(roots.begin(), roots.end(), 0.0,
                                                     [](double m, Complex z) { return std::max(m, std::abs(z)); }));
  const double real_tol = 1e-10 * scale;
  std::vector<bool> done(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (done[i] || roots[i].imag() <= real_tol) continue;
    std::size_t best = roots.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (done[j] || j == i || roots[j].imag() >= -real_tol) continue;
      const double d = std::abs(roots[j] - std::conj(roots[i]));
      if (d < best_dist) {
        best_dist = d;
        best = j;
      }
    }
    if (best == roots.size()) continue;
    const Complex avg = 0.5 * (roots[i] + std::conj(roots[best]));
    roots[i] = avg;
    roots[best] = std::conj(avg);
    done[i] = done[best] = true;
  }
  // Whatever is left unpaired is real up to rounding.
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (!done[i]) roots[i] = {roots[i].real(), 0.0};
}

}  // namespace

SymmetricEigen sym_eigen(const Matrix& m, bool with_vectors) {
  require_square(m, "sym_eigen");
  if (!is_symmetric(m, 1e-12)) throw Error(Errc::NotSymmetric, "sym_eigen needs a symmetric matrix");
  const std::size_t n = m.rows();
  Matrix a = symmetrize(m);
  Matrix v = with_vectors ? Matrix::identity(n) : Matrix();
  const double threshold = 1e-12 * std::max(a.frobenius_norm(), std::numeric_limits<double>::min());

  int sweep = 0;
  while (off_diagonal_norm(a) > threshold) {
    if (++sweep > 100) throw Error(Errc::NoConvergence, "Jacobi sweeps exceeded 100");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        if (with_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            const double vkp = v(k, p), vkq = v(k, q);
            v(k, p) = c * vkp - s * vkq;
            v(k, q) = s * vkp + c * vkq;
          }
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  SymmetricEigen out;
  out.values.reserve(n);
  for (std::size_t i : order) out.values.push_back(a(i, i));
  if (with_vectors) {
    out.vectors = Matrix(n, n);
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
  }
  return out;
}

std::vector<double> sym_eigenvalues(const Matrix& m) { return sym_eigen(m, false).values; }

namespace {

// Diagonal similarity by powers of two so row and column norms match.
void balance(Matrix& a) {
  const std::size_t n = a.rows();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      while (c < r / 2.0) { c *= 2.0; r /= 2.0; f *= 2.0; }
      while (c >= r * 2.0) { c /= 2.0; r *= 2.0; f /= 2.0; }
      if (c + r >= 0.95 * s) continue;
      changed = true;
      for (std::size_t j = 0; j < n; ++j) a(i, j) /= f;
      for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
    }
  }
}

// Householder reduction to upper Hessenberg form, in place.
void hessenberg(Matrix& a) {
  const std::size_t n = a.rows();
  if (n < 3) return;
  std::vector<double> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double alpha = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) alpha += a(i, k) * a(i, k);
    alpha = std::sqrt(alpha);
    if (alpha == 0.0) continue;
    if (a(k + 1, k) > 0) alpha = -alpha;
    double vnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i] = a(i, k) - (i == k + 1 ? alpha : 0.0);
      vnorm += v[i] * v[i];
    }
    if (vnorm == 0.0) continue;
    // A <- (I - 2vv'/v'v) A (I - 2vv'/v'v)
    for (std::size_t j = 0; j < n; ++j) {
      double d = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) d += v[i] * a(i, j);
      d *= 2.0 / vnorm;
      for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= d * v[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      double d = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) d += a(i, j) * v[j];
      d *= 2.0 / vnorm;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= d * v[j];
    }
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
  }
}

}  // namespace

// Balance, reduce to Hessenberg form, then expand the leading principal
// minors by La Budde's recurrence. Much better conditioned than the
// trace recursion for badly scaled matrices.
Polynomial char_poly(const Matrix& m) {
  require_square(m, "char_poly");
  const std::size_t n = m.rows();
  Matrix h = m;
  balance(h);
  hessenberg(h);
  // minors[i] holds the characteristic polynomial of the leading i x i block,
  // highest degree first.
  std::vector<Polynomial> minors(n + 1);
  minors[0] = {1.0};
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t r = i - 1;
    Polynomial p(i + 1, 0.0);
    const Polynomial& prev = minors[i - 1];
    for (std::size_t k = 0; k < prev.size(); ++k) {
      p[k] += prev[k];
      p[k + 1] -= h(r, r) * prev[k];
    }
    double sub = 1.0;
    for (std::size_t j = 1; j <= r; ++j) {
      sub *= h(r - j + 1, r - j);
      const double coef = h(r - j, r) * sub;
      if (coef == 0.0) continue;
      const Polynomial& q = minors[r - j];
      const std::size_t offset = p.size() - q.size();
      for (std::size_t k = 0; k < q.size(); ++k) p[offset + k] -= coef * q[k];
    }
    minors[i] = std::move(p);
  }
  return minors[n];
}

Complex poly_eval(std::span<const double> p, Complex z) {
  Complex acc = 0.0;
  for (double c : p) acc = acc * z + c;
  return acc;
}

std::vector<Complex> poly_roots(std::span<const double> p_in) {
  if (p_in.size() < 2) throw Error(Errc::InvalidArgument, "poly_roots needs degree >= 1");
  if (p_in[0] == 0.0) throw Error(Errc::InvalidArgument, "leading coefficient must be nonzero");
  Polynomial p(p_in.begin(), p_in.end());
  for (double& c : p) c /= p_in[0];

  // Exact zero roots are peeled off so the iteration never divides by them.
  std::vector<Complex> roots;
  while (p.size() > 1 && p.back() == 0.0) {
    roots.emplace_back(0.0, 0.0);
    p.pop_back();
  }
  const std::size_t deg = p.size() - 1;
  if (deg == 0) return roots;
  if (deg == 1) {
    roots.emplace_back(-p[1], 0.0);
    return roots;
  }

  // Initial guesses on a circle of the Cauchy-bound radius, rotated off the real axis.
  double radius = 0.0;
  for (std::size_t i = 1; i <= deg; ++i) radius = std::max(radius, std::pow(std::abs(p[i]), 1.0 / static_cast<double>(i)));
  radius = std::max(radius, 1e-3);
  std::vector<Complex> z(deg);
  for (std::size_t k = 0; k < deg; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(deg) + 0.4;
    z[k] = std::polar(radius, angle);
  }

  constexpr int kMaxIter = 1000;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    double max_step = 0.0;
    for (std::size_t k = 0; k < deg; ++k) {
      const Complex pk = poly_eval(p, z[k]);
      if (pk == 0.0) continue;
      const Complex ratio = pk / poly_derivative_eval(p, z[k]);
      Complex repulsion = 0.0;
      for (std::size_t j = 0; j < deg; ++j)
        if (j != k) repulsion += 1.0 / (z[k] - z[j]);
      const Complex step = ratio / (1.0 - ratio * repulsion);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      z[k] -= step;
      max_step = std::max(max_step, std::abs(step) / std::max(1.0, std::abs(z[k])));
    }
    if (max_step < 4.0 * kEps) break;
  }

  for (const Complex& r : z) {
    if (backward_error(p, r) > 1e-8) throw Error(Errc::NoConvergence, "Aberth iteration did not converge");
  }
  roots.insert(roots.end(), z.begin(), z.end());
  pair_conjugates(roots);
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

std::vector<Complex> eigenvalues(const Matrix& m) {
  require_square(m, "eigenvalues");
  if (m.rows() == 0) return {};
  return poly_roots(char_poly(m));
}

bool routh_hurwitz(std::span<const double> p) {
  if (p.empty() || p[0] == 0.0) return false;
  const std::size_t deg = p.size() - 1;
  if (deg == 0) return true;
  const double sign = p[0] > 0 ? 1.0 : -1.0;
  // Necessary condition: every coefficient strictly shares the leading sign.
  for (double c : p)
    if (sign * c <= 0.0) return false;

  std::vector<double> upper, lower;
  for (std::size_t i = 0; i <= deg; i += 2) upper.push_back(sign * p[i]);
  for (std::size_t i = 1; i <= deg; i += 2) lower.push_back(sign * p[i]);
  for (std::size_t row = 1; row <= deg; ++row) {
    if (lower.empty()) return false;
    const double scale = std::max(std::abs(upper.front()),
                                  std::accumulate(lower.begin(), lower.end(), 0.0,
                                                  [](double m, double x) { return std::max(m, std::abs(x)); }));
    if (lower.front() <= 16.0 * kEps * scale) return false;
    std::vector<double> next;
    for (std::size_t i = 0; i + 1 < upper.size(); ++i) {
      const double b = i + 1 < lower.size() ? lower[i + 1] : 0.0;
      next.push_back((lower.front() * upper[i + 1] - upper.front() * b) / lower.front());
    }
    upper = std::move(lower);
    lower = std::move(next);
  }
  return true;
}

bool is_hurwitz(const Matrix& m, double tol) {
  require_square(m, "is_hurwitz");
  if (m.rows() == 0) return true;
  Matrix shifted = m;
  for (std::size_t i = 0; i < m.rows(); ++i) shifted(i, i) += tol;
  return routh_hurwitz(char_poly(shifted));
}

double spectral_abscissa(const Matrix& m) {
  const auto roots = eigenvalues(m);
  double best = -std::numeric_limits<double>::infinity();
  for (const Complex& r : roots) best = std::max(best, r.real());
  return best;
}

double spectral_abscissa_bisection(const Matrix& m, double tol) {
  require_square(m, "spectral_abscissa_bisection");
  auto shifted = [&](double mu) {
    Matrix s = m;
    for (std::size_t i = 0; i < m.rows(); ++i) s(i, i) -= mu;
    return s;
  };
  // Gershgorin-style bound: every eigenvalue has |Re λ| <= max row sum.
  double bound = 1.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) row += std::abs(m(i, j));
    bound = std::max(bound, row);
  }
  double lo = -bound - 1.0;  // m - lo·I is not Hurwitz
  double hi = bound + 1.0;   // m - hi·I is Hurwitz
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (is_hurwitz(shifted(mid))) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

Matrix solve(const Matrix& a, const Matrix& b) {
  require_square(a, "solve");
  if (b.rows() != a.rows()) throw Error(Errc::DimensionMismatch, "solve: right-hand side rows");
  const double threshold = 1e-14 * std::max(a.max_abs(), std::numeric_limits<double>::min()) *
                           static_cast<double>(std::max<std::size_t>(a.rows(), 1));
  return lu_solve(lu_decompose(a, threshold), b);
}

Matrix inverse(const Matrix& a) { return solve(a, Matrix::identity(a.rows())); }

Matrix solve_lyapunov(const Matrix& a, const Matrix& q) {
  require_square(a, "solve_lyapunov");
  if (q.rows() != a.rows() || q.cols() != a.cols()) throw Error(Errc::DimensionMismatch, "solve_lyapunov: q shape");
  const std::size_t n = a.rows();
  // Row i*n+j of the Kronecker system is entry (i,j) of a·P + P·aᵀ.
  Matrix k(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t r = i * n + j;
      for (std::size_t m = 0; m < n; ++m) {
        k(r, m * n + j) += a(i, m);
        k(r, i * n + m) += a(j, m);
      }
    }
  Matrix rhs(n * n, 1);
  for (std::size_t i = 0; i < n * n; ++i) rhs(i, 0) = -q.data()[i];

  // Non-normal a gives small pivots long before the operator is singular, so
  // only exact breakdown is rejected here and the residual check decides.
  const double threshold = kEps * std::max(k.max_abs(), std::numeric_limits<double>::min());
  const Lu f = lu_decompose(k, threshold);
  Matrix x = lu_solve(f, rhs);
  // One step of iterative refinement.
  x += lu_solve(f, rhs - k * x);

  Matrix p = symmetrize(Matrix(n, n, std::vector<double>(x.data().begin(), x.data().end())));
  const Matrix residual = a * p + p * a.transpose() + q;
  const double bound = 1e-8 * (a.frobenius_norm() * p.frobenius_norm() + q.frobenius_norm());
  if (residual.frobenius_norm() > bound) {
    throw Error(Errc::SingularSystem, "Lyapunov equation is ill-conditioned (residual above bound)");
  }
  return p;
}

int rank_abs(const Matrix& m_in, double threshold) {
  Matrix m = m_in;
  const std::size_t rows = m.rows(), cols = m.cols();
  int rank = 0;
  std::vector<bool> row_used(rows, false), col_used(cols, false);
  for (std::size_t step = 0; step < std::min(rows, cols); ++step) {
    std::size_t pr = rows, pc = cols;
    double best = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
      if (row_used[i]) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        if (col_used[j]) continue;
        if (std::abs(m(i, j)) > best) {
          best = std::abs(m(i, j));
          pr = i;
          pc = j;
        }
      }
    }
    if (pr == rows || best <= threshold) break;
    ++rank;
    row_used[pr] = col_used[pc] = true;
    for (std::size_t i = 0; i < rows; ++i) {
      if (row_used[i]) continue;
      const double f = m(i, pc) / m(pr, pc);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j)
        if (!col_used[j]) m(i, j) -= f * m(pr, j);
      m(i, pc) = 0.0;
    }
  }
  return rank;
}

int rank_tol(const Matrix& m, double tol) { return rank_abs(m, tol * m.frobenius_norm()); }

std::vector<EigenCluster> cluster_values(std::span<const double> sorted_values, double tol) {
  std::vector<EigenCluster> out;
  double sum = 0.0;
  double prev = 0.0;
  for (double v : sorted_values) {
    if (!out.empty() && v - prev <= tol) {
      ++out.back().multiplicity;
      sum += v;
      out.back().value = sum / out.back().multiplicity;
    } else {
      out.push_back({v, 1});
      sum = v;
    }
    prev = v;
  }
  return out;
}

}  // namespace syncnet
