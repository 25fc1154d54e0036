#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "besselid/order.hpp"
#include "besselid/quadrature.hpp"

namespace besselid {

enum class IdentityId {
  sonine_second,
  sonine_generalized,
  ij,
  ij_generalized,
  pi,
  order_sum,
  fractional_integral,
};

inline constexpr std::array<IdentityId, 7> kAllIdentities = {
    IdentityId::sonine_second, IdentityId::sonine_generalized, IdentityId::ij,
    IdentityId::ij_generalized, IdentityId::pi,               IdentityId::order_sum,
    IdentityId::fractional_integral};

/// Stable external name, e.g. "sonine-generalized".
std::string_view to_string(IdentityId id);
std::optional<IdentityId> parse_identity_id(std::string_view name);
/// One-line human description used by `besselid list-identities`.
std::string_view describe(IdentityId id);

struct IdentityParams {
  Order alpha;
  std::optional<Order> beta;
  double x = 1.0;
  std::optional<double> y;
  std::optional<Order> nu;
};

enum class CheckStatus { pass, fail, conjecture_pass, error };
std::string_view to_string(CheckStatus status);
std::optional<CheckStatus> parse_check_status(std::string_view name);

struct Tolerances {
  double abs = 1e-9;
  double rel = 1e-9;
  double quadrature = kDefaultQuadratureTolerance;
};

struct IdentityReport {
  IdentityId id = IdentityId::sonine_second;
  IdentityParams params;
  double lhs = 0.0;
  double rhs = 0.0;
  /// Total of the anomalous sums (sonine-generalized) or derivative terms
  /// (ij-generalized), as they appear in the identity; 0 when none.
  double anomalous = 0.0;
  double abs_residual = 0.0;
  /// abs_residual / max(|lhs|, |rhs|, 1e-30).
  double rel_residual = 0.0;
  /// Error estimate of the numerically integrated (or summed) side.
  double quadrature_error = 0.0;
  /// ij-generalized with beta in {-1,-2,-3}: largest pairwise gap between the
  /// jet-based lhs, the closed-form lhs and the rhs.
  std::optional<double> cross_check_discrepancy;
  CheckStatus status = CheckStatus::error;
  std::string message;
};

// Each identity throws std::domain_error when params violate its
// preconditions; evaluate_identity() turns that into an error report.

/// x^{-a} y^{-b} int_0^1 r^{a/2} (1-r)^{b/2} J_a(sqrt(r) x) J_b(sqrt(1-r) y) dr
///   = 2 (x^2+y^2)^{-(a+b+1)/2} J_{a+b+1}(sqrt(x^2+y^2)),   a, b > -1.
IdentityReport sonine_second(const IdentityParams& params, const Tolerances& tol = {});

/// The Sonine integral against twice the closed form minus twice the
/// anomalous sums that appear when a or b is a negative integer.
IdentityReport sonine_generalized(const IdentityParams& params, const Tolerances& tol = {});

/// I-J integral identity for a > b >= 0.
IdentityReport ij_identity(const IdentityParams& params, const Tolerances& tol = {});

/// I-J identity for negative integer b, with the r-derivative anomalous terms
/// computed by jet arithmetic.
IdentityReport ij_generalized(const IdentityParams& params, const Tolerances& tol = {});

/// int_0^1 [r(1-r)]^{-1/2} J_{2nu}(2 sqrt(r) x) dr = pi J_nu(x)^2. Proven for
/// integer nu >= 0; non-integer nu reports conjecture-pass.
IdentityReport pi_identity(const IdentityParams& params, const Tolerances& tol = {});

/// x^{-a} sum_m (-1)^m/m! (y^2/2x)^m J_{a+m}(x) = (x^2+y^2)^{-a/2} J_a(sqrt(x^2+y^2)).
IdentityReport order_sum_identity(const IdentityParams& params, const Tolerances& tol = {});

/// int_0^x y^{a+1} (x^2-y^2)^{b-1} J_a(y) dy = 2^{b-1} Gamma(b) x^{a+b} J_{a+b}(x).
IdentityReport fractional_integral_identity(const IdentityParams& params,
                                            const Tolerances& tol = {});

/// Dispatches on id; never throws for invalid params (status = error).
IdentityReport evaluate_identity(IdentityId id, const IdentityParams& params,
                                 const Tolerances& tol = {});

/// Anomalous part of ij_generalized for beta = -n:
///   sum_{p=0}^{n-1} (1/p!) (-x^2/4)^p d^{n-1-p}/dr^{n-1-p} [r^{n/2-1} I_a(sqrt(r) x)] at r = 1.
double ij_anomalous_jet(Order alpha, int n, double x);
/// The same quantity from the explicit closed forms, n in {1, 2, 3}.
double ij_anomalous_closed_form(Order alpha, int n, double x);

/// x^{-a} r^{a/2} J_a(sqrt(r) x) written without negative powers of r:
/// r^a * (sqrt(r) x)^{-a} J_a, or (-1)^n x^{2n} (sqrt(r) x)^{-n} J_n for a = -n.
double weighted_bessel_j(Order alpha, double r, double x);

/// Bessel-side Sonine integral x^{-a} y^{-b} int_0^1 r^{a/2} (1-r)^{b/2} J_a J_b dr
/// (no factor 1/2), shared by both Sonine identities and the limit studies.
QuadratureResult sonine_integral(Order alpha, Order beta, double x, double y, double tol);

}  // namespace besselid
