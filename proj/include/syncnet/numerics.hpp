#pragma once

#include <complex>
#include <span>
#include <vector>

#include "syncnet/matrix.hpp"

namespace syncnet {

/// Coefficients, highest degree first: {1, a1, ..., an} is λⁿ + a1 λⁿ⁻¹ + ... + an.
using Polynomial = std::vector<double>;
using Complex = std::complex<double>;

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // columns pair with values; empty unless requested
};

/// Cyclic Jacobi rotations. Throws Errc::NotSymmetric when m is not symmetric to
/// 1e-12 relative, Errc::NoConvergence after 100 sweeps.
SymmetricEigen sym_eigen(const Matrix& m, bool with_vectors = false);
std::vector<double> sym_eigenvalues(const Matrix& m);

/// Faddeev-LeVerrier recursion; returns the monic characteristic polynomial.
Polynomial char_poly(const Matrix& m);

Complex poly_eval(std::span<const double> p, Complex z);

/// All complex roots by Aberth-Ehrlich simultaneous iteration. Conjugate pairs
/// are made exact. Throws Errc::NoConvergence when some root's backward error
/// |p(z)| / Σ|cᵢ||z|ⁱ stays above 1e-8 after the iteration cap.
std::vector<Complex> poly_roots(std::span<const double> p);

/// Eigenvalues of a general square matrix via char_poly + poly_roots. Intended
/// for node dimensions up to about 12; accuracy degrades beyond that.
std::vector<Complex> eigenvalues(const Matrix& m);

/// Routh array on the characteristic polynomial of m + tol·I, i.e. true iff every
/// eigenvalue has real part < -tol. A zero leading entry in any row (within a
/// few ulps of the row scale) counts as not Hurwitz.
bool is_hurwitz(const Matrix& m, double tol = 0.0);
bool routh_hurwitz(std::span<const double> p);

/// max Re λ(m) from the roots of the characteristic polynomial.
double spectral_abscissa(const Matrix& m);
/// Independent route: bisection on μ ↦ is_hurwitz(m - μI).
double spectral_abscissa_bisection(const Matrix& m, double tol = 1e-8);

/// Solves a·P + P·aᵀ = -q by Kronecker vectorization, returns symmetrized P.
/// Throws Errc::SingularSystem when a has eigenvalues summing to ~0.
Matrix solve_lyapunov(const Matrix& a, const Matrix& q);

/// Solves a·x = b (b may have several columns) by LU with partial pivoting.
Matrix solve(const Matrix& a, const Matrix& b);
Matrix inverse(const Matrix& a);

/// Numerical rank by fully pivoted elimination, pivots below tol·‖m‖_F are zero.
int rank_tol(const Matrix& m, double tol = 1e-9);
/// Same elimination with an absolute pivot threshold.
int rank_abs(const Matrix& m, double threshold);

struct EigenCluster {
  double value = 0.0;
  int multiplicity = 0;
};
/// Groups sorted values whose neighbours differ by at most tol.
std::vector<EigenCluster> cluster_values(std::span<const double> sorted_values, double tol);

}  // namespace syncnet
