#pragma once

#include <cmath>

namespace besselid {

namespace detail {

// Error-free transformations. All of them assume round-to-nearest and no
// extended-precision intermediates (true on every x86-64/aarch64 target).

inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

// Requires |a| >= |b| (or a == 0).
inline void fast_two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  e = b - (s - a);
}

inline void two_prod(double a, double b, double& p, double& e) {
  p = a * b;
  e = std::fma(a, b, -p);
}

}  // namespace detail

/// Double-double number: the unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
///
/// Used wherever an alternating series loses more digits to cancellation than
/// a double can spare (the J Bessel series at x ~ 30 cancels about 13 of them).
class CompensatedReal {
 public:
  constexpr CompensatedReal() = default;
  constexpr CompensatedReal(double value) : hi_(value) {}  // NOLINT(implicit)

  /// Builds hi + lo and renormalizes so that |lo| <= ulp(hi)/2.
  static CompensatedReal from_parts(double hi, double lo) {
    CompensatedReal r;
    detail::two_sum(hi, lo, r.hi_, r.lo_);
    return r;
  }

  constexpr double hi() const { return hi_; }
  constexpr double lo() const { return lo_; }
  /// Nearest double to hi + lo.
  constexpr double value() const { return hi_ + lo_; }
  explicit constexpr operator double() const { return value(); }

  CompensatedReal operator-() const { return raw(-hi_, -lo_); }

  CompensatedReal& operator+=(const CompensatedReal& b) {
    double s, e, t, f;
    detail::two_sum(hi_, b.hi_, s, e);
    detail::two_sum(lo_, b.lo_, t, f);
    e += t;
    detail::fast_two_sum(s, e, s, e);
    e += f;
    detail::fast_two_sum(s, e, hi_, lo_);
    return *this;
  }

  CompensatedReal& operator+=(double b) {
    double s, e;
    detail::two_sum(hi_, b, s, e);
    e += lo_;
    detail::fast_two_sum(s, e, hi_, lo_);
    return *this;
  }

  CompensatedReal& operator-=(const CompensatedReal& b) { return *this += -b; }
  CompensatedReal& operator-=(double b) { return *this += -b; }

  CompensatedReal& operator*=(const CompensatedReal& b) {
    double p, e;
    detail::two_prod(hi_, b.hi_, p, e);
    e += hi_ * b.lo_ + lo_ * b.hi_;
    detail::fast_two_sum(p, e, hi_, lo_);
    return *this;
  }

  CompensatedReal& operator*=(double b) {
    double p, e;
    detail::two_prod(hi_, b, p, e);
    e += lo_ * b;
    detail::fast_two_sum(p, e, hi_, lo_);
    return *this;
  }

  CompensatedReal& operator/=(const CompensatedReal& b) {
    const double q1 = hi_ / b.hi_;
    CompensatedReal r = *this - b * q1;
    const double q2 = r.hi_ / b.hi_;
    r -= b * q2;
    const double q3 = r.hi_ / b.hi_;
    CompensatedReal q;
    detail::fast_two_sum(q1, q2, q.hi_, q.lo_);
    q += q3;
    return *this = q;
  }

  CompensatedReal& operator/=(double b) {
    const double q1 = hi_ / b;
    double p, e;
    detail::two_prod(q1, b, p, e);
    double s, t;
    detail::two_sum(hi_, -p, s, t);
    t -= e;
    t += lo_;
    const double q2 = (s + t) / b;
    detail::fast_two_sum(q1, q2, hi_, lo_);
    return *this;
  }

  friend CompensatedReal operator+(CompensatedReal a, const CompensatedReal& b) { return a += b; }
  friend CompensatedReal operator+(CompensatedReal a, double b) { return a += b; }
  friend CompensatedReal operator+(double a, CompensatedReal b) { return b += a; }
  friend CompensatedReal operator-(CompensatedReal a, const CompensatedReal& b) { return a -= b; }
  friend CompensatedReal operator-(CompensatedReal a, double b) { return a -= b; }
  friend CompensatedReal operator-(double a, const CompensatedReal& b) { return -b + a; }
  friend CompensatedReal operator*(CompensatedReal a, const CompensatedReal& b) { return a *= b; }
  friend CompensatedReal operator*(CompensatedReal a, double b) { return a *= b; }
  friend CompensatedReal operator*(double a, CompensatedReal b) { return b *= a; }
  friend CompensatedReal operator/(CompensatedReal a, const CompensatedReal& b) { return a /= b; }
  friend CompensatedReal operator/(CompensatedReal a, double b) { return a /= b; }

  friend CompensatedReal abs(const CompensatedReal& a) { return a.hi_ < 0.0 ? -a : a; }

 private:
  static constexpr CompensatedReal raw(double hi, double lo) {
    CompensatedReal r;
    r.hi_ = hi;
    r.lo_ = lo;
    return r;
  }

  double hi_ = 0.0;
  double lo_ = 0.0;
};

}  // namespace besselid
