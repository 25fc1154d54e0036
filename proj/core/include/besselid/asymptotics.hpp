#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "besselid/order.hpp"
#include "besselid/taylor_jets.hpp"

namespace besselid {

/// x, y and the scaled Laguerre arguments X = x^2/4N, Y = y^2/4N. N = 0 is
/// scaled as N = 1 so that degree-0 checks stay well defined.
class ScaledArguments {
 public:
  ScaledArguments(double x, double y, long n);
  double x() const { return x_; }
  double y() const { return y_; }
  long n() const { return n_; }
  double big_x() const { return scaled(x_); }
  double big_y() const { return scaled(y_); }

 private:
  double scaled(double v) const { return v * v / (4.0 * static_cast<double>(n_ > 0 ? n_ : 1)); }
  double x_;
  double y_;
  long n_;
};

struct LimitPair {
  double finite = 0.0;
  double limit = 0.0;
};

/// N^{-a} L_m^a(x^2/4N) against 2^a r'^{a/2} x^{-a} J_a(sqrt(r') x), with
/// m = floor(rN + 1/2) and r' = m/N. Requires 0 < r <= 1, x > 0 and m >= 1.
LimitPair laguerre_limit_pair(Order alpha, double x, double r, long n);
double laguerre_limit_residual(Order alpha, double x, double r, long n);

/// Forward difference D^k f_m = sum_i (-1)^{k-i} C(k,i) f_{m+i}. Works for any
/// sequence whose values support addition and scaling by double.
template <class Sequence>
auto finite_difference(Sequence&& f, long m, unsigned k) {
  using Value = decltype(f(m));
  Value sum = Value(0.0);
  double binomial = 1.0;
  for (unsigned i = 0; i <= k; ++i) {
    if (i > 0) {
      binomial = binomial * static_cast<double>(k - i + 1) / static_cast<double>(i);
    }
    const double sign = (k - i) % 2 == 0 ? 1.0 : -1.0;
    sum += f(m + static_cast<long>(i)) * (sign * binomial);
  }
  return sum;
}

/// Outcome of a finite-N identity that holds exactly in exact arithmetic.
struct ExactCheckResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_residual = 0.0;
  /// Conditioning scale: max(|lhs|, |rhs|, sum of |summed terms|).
  double scale = 0.0;
  /// abs_residual / scale (0 when scale is 0).
  double rel_residual = 0.0;
  /// Quadrature error estimate for the integral checks, 0 otherwise.
  double error_estimate = 0.0;
};

inline constexpr long kLaguerreSumMaxN = 64;
inline constexpr long kHansenMaxN = 48;
inline constexpr long kFractionalCheckMaxN = 32;
inline constexpr unsigned kProductIntegralMaxDegree = 24;

/// D^k L_m^a(x) against L_{m+k}^{a-k}(x).
ExactCheckResult laguerre_findiff_check(unsigned m, unsigned k, Order alpha, double x);

/// sum_{m=0}^N L_m^a(X) L_{N-m}^b(Y) against L_N^{a+b+1}(X+Y); N <= 64.
ExactCheckResult laguerre_sum_check(Order alpha, Order beta, double x, double y, long n);

/// sum_m [((a-b)/2)_m/(a+1)_m] L_m^a(-X) L_{N-m}^b(X) against
/// [((a+b)/2+1)_N/(a+1)_N] L_N^a(X); N <= 48, a not a negative integer.
ExactCheckResult hansen_ratio_sum_check(Order alpha, Order beta, double x, long n);

/// sum_m [(-N)_m (nu+1/2)_m / (m! (1/2-N)_m)] L_{2m+2nu}^{-2nu}(2X) against
/// [(N+nu)! / ((1/2)_N (1/2)_nu)] [L_{N+nu}^{-nu}(X)]^2; integer nu >= 0, N <= 48.
ExactCheckResult squared_laguerre_sum_check(int nu, double x, long n);

/// int_0^X Y^a (X-Y)^{b-1} L_N^a(Y) dY against
/// Gamma(b) Gamma(N+a+1)/Gamma(N+a+b+1) X^{a+b} L_N^{a+b}(X); a > -1, b > 0, N <= 32.
ExactCheckResult laguerre_fractional_integral_check(Order alpha, double beta, double x, long n);

/// int_0^1 r^a (1-r)^b L_m^a(r/4N) L_n^b((1-r)/4N) dr against
/// C(m+n, m) B(a+m+1, b+n+1) L_{m+n}^{a+b+1}(1/4N); a, b > -1, m, n <= 24.
ExactCheckResult laguerre_product_integral_check(Order alpha, Order beta, unsigned m, unsigned n,
                                                 long big_n);

/// First -a terms of the Sonine Laguerre convolution for a = -n, scaled by
/// N^{-a-b-1}, against 2^{a+b+1} y^{-a-b-1} sum_j (1/j!) (-x^2/2y)^j J_{a+b+j+1}(y).
LimitPair anomalous_block_limit(Order alpha, Order beta, double x, double y, long n);

/// A family of maps f_N(w) with f_N(z/N) -> F(z). limit_jet(z, k) is the
/// order-k jet in r at r = 1 of F(rz).
struct AsymptoticFamily {
  std::string name;
  std::function<double(long, double)> evaluate;
  std::function<Jet(double, std::size_t)> limit_jet;

  double limit(double z) const { return limit_jet(z, 0)[0]; }
};

/// f_N(w) = (1 + w)^N, F = exp.
AsymptoticFamily exp_family();

/// The I-J bracket w^s [(c)_N/(a+1)_N] L_N^a(-w) Gamma(c)/Gamma(a+1) with
/// c = (a-b)/2 and s = c - 1, whose limit is F(z) = z^{-b/2-1} I_a(2 sqrt(z)).
/// Requires a - b > 0 and a not a negative integer.
AsymptoticFamily ij_bracket_family(Order alpha, Order beta);

inline constexpr unsigned kMaxAppendixOrder = 4;

/// finite = N^p D^p_l f_{N+l}(z/N) at l = 0; limit = d^p/dr^p F(rz) at r = 1.
LimitPair appendix_findiff_limit(const AsymptoticFamily& family, unsigned p, double z, long n);

struct ConvergenceEntry {
  long n = 0;
  double finite_value = 0.0;
  double limit_value = 0.0;
  double abs_error = 0.0;
};

enum class FitStatus {
  fitted,
  /// Every error is at the rounding level of its scale.
  exact,
  /// Some but not all errors vanish; rate is -infinity.
  degenerate,
  /// Fewer than three nonzero errors to fit.
  unavailable,
};
std::string_view to_string(FitStatus status);
std::optional<FitStatus> parse_fit_status(std::string_view name);

struct ConvergenceTable {
  std::vector<ConvergenceEntry> entries;
  /// Least-squares slope of log(abs_error) against log(N). -infinity for
  /// exact or degenerate tables, NaN when unavailable.
  double fitted_rate = std::nan("");
  FitStatus fit_status = FitStatus::unavailable;

  /// CSV with columns N,finite_value,limit_value,abs_error and a trailing
  /// fitted_rate row.
  std::string to_csv() const;
};

/// Builds a table from entries and their rounding scales. Errors at or below
/// 64 eps * scale count as zero for the fit.
ConvergenceTable fit_convergence(std::vector<ConvergenceEntry> entries,
                                 const std::vector<double>& scales);

enum class ConvergenceTarget {
  laguerre_limit,
  anomalous_block,
  laguerre_sum,
  sonine_limit,
  ij_limit,
  pi_limit,
  fractional_limit,
  derivative_exp,
  derivative_ij,
};
std::string_view to_string(ConvergenceTarget target);
std::optional<ConvergenceTarget> parse_convergence_target(std::string_view name);

/// Parameters of a convergence target; which fields are read depends on it.
struct ConvergenceParams {
  Order alpha;
  std::optional<Order> beta;
  double x = 1.0;
  std::optional<double> y;
  double r = 1.0;
  std::optional<Order> nu;
  unsigned p = 0;
  /// derivative-exp: the point z; derivative-ij uses z = x^2/4.
  double z = 1.0;
};

/// One (finite, limit) pair for target at N, with its rounding scale.
struct TargetSample {
  LimitPair pair;
  double scale = 0.0;
};
TargetSample sample_target(ConvergenceTarget target, const ConvergenceParams& params, long n);

/// Evaluates target at each N (strictly increasing, at least 3 entries).
ConvergenceTable convergence_study(ConvergenceTarget target, const std::vector<long>& n_list,
                                   const ConvergenceParams& params);

/// Jump of the Sonine integral across a = -1 (b > -1): the limit a -> -1+,
/// extrapolated from a = -1 + eps, minus the value at a = -1, next to the
/// anomalous-sum prediction 2 y^{-b} J_b(y).
struct SonineJump {
  double extrapolated = 0.0;
  double predicted = 0.0;
};
SonineJump sonine_jump_at_minus_one(Order beta, double x, double y);

}  // namespace besselid
