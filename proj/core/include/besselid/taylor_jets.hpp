#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "besselid/order.hpp"

namespace besselid {

/// Deepest truncation order supported; the identities need |beta| - 1 <= 5.
inline constexpr std::size_t kMaxJetOrder = 12;

/// Truncated Taylor expansion sum_k c_k t^k of a function of r around
/// r = base_point, with t = r - base_point.
class Jet {
 public:
  /// Throws std::invalid_argument for an empty coefficient vector.
  Jet(std::vector<double> coefficients, double base_point);

  static Jet constant(double value, std::size_t order, double base_point);
  /// The jet of r itself: [base_point, 1, 0, ...].
  static Jet variable(std::size_t order, double base_point);

  std::size_t order() const { return coefficients_.size() - 1; }
  double base_point() const { return base_point_; }
  std::span<const double> coefficients() const { return coefficients_; }
  double operator[](std::size_t k) const { return coefficients_[k]; }

  /// Truncated polynomial evaluated at r = base_point + t.
  double evaluate(double t) const;

  Jet& operator+=(const Jet& other);
  Jet& operator-=(const Jet& other);
  Jet& operator*=(double scale);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);

 private:
  std::vector<double> coefficients_;
  double base_point_;
};

enum class JetOp { add, sub, mul, div };

/// Pointwise combination of two jets with equal order and base point.
/// Throws std::invalid_argument on mismatch and std::domain_error when dividing
/// by a jet with zero constant term.
Jet jet_arith(const Jet& a, const Jet& b, JetOp op);

/// a(t)^p for a real exponent; requires a.c_0 > 0 (std::domain_error otherwise).
Jet jet_power(const Jet& a, double p);

/// exp(a(t)).
Jet jet_exp(const Jet& a);

/// Jet at r = 1 of g(r) = I_alpha(sqrt(r) x), summed term by term from the
/// ascending series. Requires x > 0 and order <= kMaxJetOrder.
Jet bessel_i_of_sqrt_jet(Order alpha, double x, std::size_t order);

/// j-th derivative at the base point, j! c_j. Throws std::out_of_range when j
/// exceeds the truncation order.
double derivative_at_base(const Jet& a, std::size_t j);

}  // namespace besselid
