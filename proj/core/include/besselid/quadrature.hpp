#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace besselid {

struct QuadratureResult {
  double value = 0.0;
  /// Absolute; the larger of the last inter-level difference and the
  /// rounding floor of the node sum.
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Algebraic endpoint behavior r^left (1-r)^right of an integrand on [0, 1].
struct EndpointProfile {
  double left_exponent = 0.0;
  double right_exponent = 0.0;
};

/// Default absolute tolerance used by the identity checks.
inline constexpr double kDefaultQuadratureTolerance = 1e-12;
inline constexpr int kMaxTanhSinhLevel = 12;

using Integrand = std::function<double(double)>;
/// Integrand on [a, b] receiving the node together with its distances to both
/// endpoints, each accurate to full relative precision. Lets a caller form
/// (1 - r)^b near r = 1 without the cancellation of computing 1 - r.
using GapIntegrand = std::function<double(double x, double left_gap, double right_gap)>;
/// Integrand on [0, 1] as a function of (r, 1 - r).
using KernelIntegrand = std::function<double(double r, double one_minus_r)>;

/// Double-exponential (tanh-sinh) rule on [a, b]. The step is halved until two
/// successive levels differ by at most max(tol, rel_tol |value|, rounding floor)
/// (from level 4 on) or level 12 is reached. f is never evaluated at a or b.
QuadratureResult tanh_sinh(const Integrand& f, double a, double b, double tol,
                           double rel_tol = 0.0);
QuadratureResult tanh_sinh(const GapIntegrand& f, double a, double b, double tol,
                           double rel_tol = 0.0);

/// n-point Gauss-Legendre nodes and weights on [-1, 1]; cached per n.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendreRule& gauss_legendre_rule(std::size_t n);

/// Fixed n-point Gauss-Legendre on [a, b].
double gauss_legendre(const Integrand& f, double a, double b, std::size_t n);

/// Integrates a full integrand f(r, 1-r) on [0, 1] whose endpoint behavior is
/// described by profile. Profiles with both exponents >= 0 try 64- against
/// 128-point Gauss-Legendre first; everything else goes to tanh_sinh.
/// Throws std::domain_error when an exponent is <= -1.
QuadratureResult integrate_identity_kernel(const EndpointProfile& profile, const KernelIntegrand& f,
                                           double tol);

/// Integrates r^left (1-r)^right h(r, 1-r) on [0, 1] for h regular (finite)
/// at both endpoints. Negative exponents are handled by subtracting h's
/// endpoint value on each half-interval and integrating the weight exactly,
/// which keeps exponents arbitrarily close to -1 accurate.
QuadratureResult integrate_weighted(const EndpointProfile& profile, const KernelIntegrand& h,
                                    double tol, double rel_tol = 0.0);

}  // namespace besselid
