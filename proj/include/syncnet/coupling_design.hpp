#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "syncnet/matrix.hpp"

namespace syncnet {

/// Rank-1 inner coupling H = b·k with a quadratic Lyapunov certificate:
/// FP + PFᵀ - 2bbᵀ ≺ 0 and kP = bᵀ, so that F - σH is Hurwitz for every σ ≥ 1.
struct DesignResult {
  std::vector<double> b;
  std::vector<double> k;
  Matrix P;
  double beta = 2.0;
  Matrix H;
  double certificate_eig = 0.0;  // λ_max of sym(FP + PFᵀ - 2bbᵀ)
  std::vector<double> k_stabilizing;  // pre-feedback k₀ with F - b·k₀ Hurwitz
};

/// Every eigenvalue with Re λ ≥ -tol has geometric multiplicity one.
/// Throws Errc::NoConvergence if the eigenvalues cannot be found.
bool jordan_condition(const Matrix& f, double tol = 1e-9);

/// PBH: rank [λI - F | b] = n for every eigenvalue with Re λ ≥ -tol.
bool pbh_stabilizable(const Matrix& f, std::span<const double> b, double tol = 1e-9);
/// PBH over all eigenvalues.
bool pbh_controllable(const Matrix& f, std::span<const double> b);

/// State feedback k with char poly of F - b·k having the given real roots.
/// Throws Errc::NotControllable.
std::vector<double> ackermann(const Matrix& f, std::span<const double> b, std::span<const double> poles);

/// Tries e_n, e_{n-1}, ..., e_1, then up to 100 seeded random unit vectors; the first
/// candidate that is stabilizable (and controllable when F is not Hurwitz) wins.
/// Throws Errc::NotStabilizable when the Jordan condition fails, Errc::SearchExhausted otherwise.
std::vector<double> choose_b(const Matrix& f, std::uint64_t seed = 0);

/// Candidate list used by choose_b, in trial order.
std::vector<std::vector<double>> candidate_bs(std::size_t n, std::uint64_t seed = 0);

/// Constructive design for a given b. Controllable pairs get Ackermann pre-feedback
/// k₀ placing poles at -1..-n; a Hurwitz F with uncontrollable b uses k₀ = 0. P₀ solves
/// (F - bk₀)P₀ + P₀(F - bk₀)ᵀ = -(q·I + 2bbᵀ); with y = k₀P₀ and β = max(2, ‖y‖²/q + 1)
/// the rescaled P = (2/β)P₀ satisfies FP + PFᵀ - 2bbᵀ ≺ 0 and k = bᵀP⁻¹.
/// Throws Errc::NotStabilizable, Errc::NotControllable or Errc::SingularSystem.
DesignResult design_rank1(const Matrix& f, std::span<const double> b, double q_scale = 1.0);

struct CertificateInput {
  std::vector<double> b;
  Matrix P;
};

struct VerifySample {
  double sigma = 0.0;
  bool hurwitz = false;
  double abscissa = 0.0;
};

struct VerifyReport {
  std::vector<VerifySample> samples;
  std::optional<double> certificate_eig;
  bool all_hurwitz = false;
  bool passed = false;  // all_hurwitz and, if present, certificate_eig < 0
};

VerifyReport verify_design(const Matrix& f, const Matrix& h, std::span<const double> sigma_samples,
                           const std::optional<CertificateInput>& certificate = std::nullopt);

double certificate_eigenvalue(const Matrix& f, std::span<const double> b, const Matrix& p);

}  // namespace syncnet
