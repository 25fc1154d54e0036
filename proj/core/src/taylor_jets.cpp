#include "besselid/taylor_jets.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "besselid/compensated.hpp"
#include "besselid/special_functions.hpp"

namespace besselid {

namespace {

void require_compatible(const Jet& a, const Jet& b) {
  if (a.order() != b.order() || a.base_point() != b.base_point()) {
    throw std::invalid_argument("jet arithmetic needs equal order and base point");
  }
}

}  // namespace

Jet::Jet(std::vector<double> coefficients, double base_point)
    : coefficients_(std::move(coefficients)), base_point_(base_point) {
  if (coefficients_.empty()) {
    throw std::invalid_argument("a jet needs at least one coefficient");
  }
}

Jet Jet::constant(double value, std::size_t order, double base_point) {
  std::vector<double> c(order + 1, 0.0);
  c[0] = value;
  return Jet(std::move(c), base_point);
}

Jet Jet::variable(std::size_t order, double base_point) {
  std::vector<double> c(order + 1, 0.0);
  c[0] = base_point;
  if (order >= 1) {
    c[1] = 1.0;
  }
  return Jet(std::move(c), base_point);
}

double Jet::evaluate(double t) const {
  double result = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
    result = result * t + *it;
  }
  return result;
}

Jet& Jet::operator+=(const Jet& other) {
  require_compatible(*this, other);
  for (std::size_t k = 0; k < coefficients_.size(); ++k) {
    coefficients_[k] += other.coefficients_[k];
  }
  return *this;
}

Jet& Jet::operator-=(const Jet& other) {
  require_compatible(*this, other);
  for (std::size_t k = 0; k < coefficients_.size(); ++k) {
    coefficients_[k] -= other.coefficients_[k];
  }
  return *this;
}

Jet& Jet::operator*=(double scale) {
  for (double& c : coefficients_) {
    c *= scale;
  }
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  require_compatible(a, b);
  const std::size_t n = a.coefficients_.size();
  std::vector<double> c(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i <= k; ++i) {
      c[k] += a.coefficients_[i] * b.coefficients_[k - i];
    }
  }
  return Jet(std::move(c), a.base_point_);
}

Jet operator/(const Jet& a, const Jet& b) {
  require_compatible(a, b);
  const double b0 = b.coefficients_[0];
  if (b0 == 0.0) {
    throw std::domain_error("jet division by a series with zero constant term");
  }
  const std::size_t n = a.coefficients_.size();
  std::vector<double> c(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double s = a.coefficients_[k];
    for (std::size_t i = 1; i <= k; ++i) {
      s -= b.coefficients_[i] * c[k - i];
    }
    c[k] = s / b0;
  }
  return Jet(std::move(c), a.base_point_);
}

Jet jet_arith(const Jet& a, const Jet& b, JetOp op) {
  switch (op) {
    case JetOp::add:
      return a + b;
    case JetOp::sub:
      return a - b;
    case JetOp::mul:
      return a * b;
    case JetOp::div:
      return a / b;
  }
  throw std::invalid_argument("unknown jet operation");
}

Jet jet_power(const Jet& a, double p) {
  const auto coeff = a.coefficients();
  const double a0 = coeff[0];
  if (!(a0 > 0.0)) {
    throw std::domain_error("jet_power needs a positive constant term");
  }
  const std::size_t n = coeff.size();
  std::vector<double> b(n, 0.0);
  b[0] = std::pow(a0, p);
  // b_k = 1/(k a0) sum_{i=1}^k ((p+1) i - k) a_i b_{k-i}
  for (std::size_t k = 1; k < n; ++k) {
    double s = 0.0;
    for (std::size_t i = 1; i <= k; ++i) {
      s += ((p + 1.0) * static_cast<double>(i) - static_cast<double>(k)) * coeff[i] * b[k - i];
    }
    b[k] = s / (static_cast<double>(k) * a0);
  }
  return Jet(std::move(b), a.base_point());
}

Jet jet_exp(const Jet& a) {
  const auto coeff = a.coefficients();
  const std::size_t n = coeff.size();
  std::vector<double> b(n, 0.0);
  b[0] = std::exp(coeff[0]);
  // b' = a' b  =>  k b_k = sum_{i=1}^k i a_i b_{k-i}
  for (std::size_t k = 1; k < n; ++k) {
    double s = 0.0;
    for (std::size_t i = 1; i <= k; ++i) {
      s += static_cast<double>(i) * coeff[i] * b[k - i];
    }
    b[k] = s / static_cast<double>(k);
  }
  return Jet(std::move(b), a.base_point());
}

Jet bessel_i_of_sqrt_jet(Order alpha, double x, std::size_t order) {
  if (!(x > 0.0)) {
    throw std::domain_error("bessel_i_of_sqrt_jet needs x > 0");
  }
  if (order > kMaxJetOrder) {
    throw std::out_of_range("jet order exceeds " + std::to_string(kMaxJetOrder));
  }
  // I_{-n} = I_n, so the reflected order gives the same function of r.
  const double a = alpha.is_negative_integer() ? -alpha.value() : alpha.value();

  // g(r) = sum_k c_k r^{k + a/2},  c_k = (x/2)^{2k+a} / (k! Gamma(k+a+1)).
  const Jet r = Jet::variable(order, 1.0);
  const double q = 0.25 * x * x;
  std::vector<CompensatedReal> sum(order + 1);
  double c = std::pow(0.5 * x, a) * reciprocal_gamma(a + 1.0);
  int small = 0;
  for (int k = 0; k < 2000; ++k) {
    if (k > 0) {
      c *= q / (k * (k + a));
    }
    const Jet term = jet_power(r, k + 0.5 * a);
    double term_size = 0.0;
    double sum_size = 0.0;
    for (std::size_t j = 0; j <= order; ++j) {
      sum[j] += c * term[j];
      term_size = std::max(term_size, std::abs(c * term[j]));
      sum_size = std::max(sum_size, std::abs(sum[j].value()));
    }
    const bool decreasing = q < std::abs(k * (k + a));
    if (k > 0 && decreasing && term_size < 1e-17 * sum_size) {
      if (++small == 3) {
        std::vector<double> coefficients(order + 1);
        for (std::size_t j = 0; j <= order; ++j) {
          coefficients[j] = sum[j].value();
        }
        return Jet(std::move(coefficients), 1.0);
      }
    } else {
      small = 0;
    }
  }
  throw std::runtime_error("bessel_i_of_sqrt_jet: series did not converge");
}

double derivative_at_base(const Jet& a, std::size_t j) {
  if (j > a.order()) {
    throw std::out_of_range("derivative order exceeds jet truncation order");
  }
  double factorial = 1.0;
  for (std::size_t i = 2; i <= j; ++i) {
    factorial *= static_cast<double>(i);
  }
  return factorial * a[j];
}

}  // namespace besselid
