#include "besselid/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace besselid {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
// Nodes closer than this to an endpoint are not generated.
constexpr double kMinGap = 1e-290;
// A side of the node sum is cut once two consecutive contributions fall below
// this fraction of the accumulated absolute sum.
constexpr double kTailRatio = 1e-18;
constexpr int kMinTanhSinhLevel = 4;

struct Node {
  double x;
  double left_gap;
  double right_gap;
  double weight;
};

// x = c + d tanh(pi/2 sinh t), with both endpoint gaps formed from e^{-2|u|}
// so that neither is computed as a difference of nearby numbers.
bool make_node(double t, double a, double b, Node& node) {
  const double half = 0.5 * (b - a);
  const double u = 0.5 * kPi * std::sinh(t);
  const double e = std::exp(-2.0 * std::abs(u));
  const double small_gap = half * 2.0 * e / (1.0 + e);
  if (!(small_gap > kMinGap)) {
    return false;
  }
  const double large_gap = half * 2.0 / (1.0 + e);
  node.left_gap = u >= 0.0 ? large_gap : small_gap;
  node.right_gap = u >= 0.0 ? small_gap : large_gap;
  node.x = node.left_gap <= node.right_gap ? a + node.left_gap : b - node.right_gap;
  node.weight = half * 0.5 * kPi * std::cosh(t) * 4.0 * e / ((1.0 + e) * (1.0 + e));
  return true;
}

void check_profile(const EndpointProfile& profile) {
  if (!(profile.left_exponent > -1.0) || !(profile.right_exponent > -1.0) ||
      !std::isfinite(profile.left_exponent) || !std::isfinite(profile.right_exponent)) {
    throw std::domain_error("endpoint exponents must be finite and > -1 for integrability");
  }
}

QuadratureResult combine(const QuadratureResult& a, const QuadratureResult& b) {
  return {a.value + b.value, a.error_estimate + b.error_estimate, a.evaluations + b.evaluations,
          a.converged && b.converged};
}

GaussLegendreRule compute_gauss_legendre(std::size_t n) {
  GaussLegendreRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const double dn = static_cast<double>(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
    double derivative = 1.0;
    for (int iteration = 0; iteration < 100; ++iteration) {
      double p0 = 1.0;
      double p1 = z;
      for (std::size_t k = 2; k <= n; ++k) {
        const double dk = static_cast<double>(k);
        const double p2 = ((2.0 * dk - 1.0) * z * p1 - (dk - 1.0) * p0) / dk;
        p0 = p1;
        p1 = p2;
      }
      derivative = dn * (z * p1 - p0) / (z * z - 1.0);
      const double step = p1 / derivative;
      z -= step;
      if (std::abs(step) < 1e-16) {
        break;
      }
    }
    const double w = 2.0 / ((1.0 - z * z) * derivative * derivative);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace

QuadratureResult tanh_sinh(const GapIntegrand& f, double a, double b, double tol,
                           double rel_tol) {
  if (!(a < b)) {
    throw std::invalid_argument("tanh_sinh needs a < b");
  }
  QuadratureResult result;
  double sum = 0.0;
  double abs_sum = 0.0;

  auto add = [&](double t) {
    Node node;
    if (!make_node(t, a, b, node)) {
      return false;
    }
    const double c = node.weight * f(node.x, node.left_gap, node.right_gap);
    ++result.evaluations;
    sum += c;
    abs_sum += std::abs(c);
    return true;
  };
  // Walks t = first, first + stride, ... outwards until the tail is negligible.
  auto sweep = [&](double first, double stride) {
    int small = 0;
    for (double t = first;; t += stride) {
      Node node;
      if (!make_node(t, a, b, node)) {
        return;
      }
      const double c = node.weight * f(node.x, node.left_gap, node.right_gap);
      ++result.evaluations;
      sum += c;
      abs_sum += std::abs(c);
      if (!std::isfinite(c)) {
        return;
      }
      if (std::abs(c) <= kTailRatio * abs_sum) {
        if (++small == 2) {
          return;
        }
      } else {
        small = 0;
      }
    }
  };

  double h = 1.0;
  add(0.0);
  sweep(h, h);
  sweep(-h, -h);
  double previous = h * sum;
  for (int level = 1; level <= kMaxTanhSinhLevel; ++level) {
    h *= 0.5;
    sweep(h, 2.0 * h);
    sweep(-h, -2.0 * h);
    const double current = h * sum;
    const double rounding = 4.0 * kEps * h * abs_sum;
    result.value = current;
    result.error_estimate = std::max(std::abs(current - previous), rounding);
    if (!std::isfinite(current)) {
      result.converged = false;
      return result;
    }
    // Differences at the rounding floor are as converged as double allows.
    if (level >= kMinTanhSinhLevel &&
        result.error_estimate <= std::max({tol, rel_tol * std::abs(current), rounding})) {
      result.converged = true;
      return result;
    }
    previous = current;
  }
  result.converged = false;
  return result;
}

QuadratureResult tanh_sinh(const Integrand& f, double a, double b, double tol, double rel_tol) {
  return tanh_sinh(
      GapIntegrand([&f, a, b](double x, double, double) {
        if (x == a || x == b) {
          return 0.0;
        }
        return f(x);
      }),
      a, b, tol, rel_tol);
}

const GaussLegendreRule& gauss_legendre_rule(std::size_t n) {
  if (n == 0) {
    throw std::invalid_argument("Gauss-Legendre rule needs at least one node");
  }
  static std::mutex mutex;
  static std::map<std::size_t, GaussLegendreRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, compute_gauss_legendre(n)).first;
  }
  return it->second;
}

double gauss_legendre(const Integrand& f, double a, double b, std::size_t n) {
  const GaussLegendreRule& rule = gauss_legendre_rule(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * sum;
}

QuadratureResult integrate_identity_kernel(const EndpointProfile& profile, const KernelIntegrand& f,
                                           double tol) {
  check_profile(profile);
  if (profile.left_exponent >= 0.0 && profile.right_exponent >= 0.0) {
    auto rule_sum = [&f](std::size_t n, double& abs_sum) {
      const GaussLegendreRule& rule = gauss_legendre_rule(n);
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double z = rule.nodes[i];
        const double c = rule.weights[i] * f(0.5 * (1.0 + z), 0.5 * (1.0 - z));
        sum += c;
        abs_sum += std::abs(c);
      }
      return 0.5 * sum;
    };
    double abs64 = 0.0;
    double abs128 = 0.0;
    const double g64 = rule_sum(64, abs64);
    const double g128 = rule_sum(128, abs128);
    const double error = std::max(std::abs(g128 - g64), 4.0 * kEps * 0.5 * abs128);
    if (std::isfinite(g128) && error <= tol) {
      return {g128, error, 192, true};
    }
  }
  return tanh_sinh(
      GapIntegrand([&f](double x, double left_gap, double right_gap) {
        return left_gap <= right_gap ? f(x, 1.0 - left_gap) : f(1.0 - right_gap, right_gap);
      }),
      0.0, 1.0, tol);
}

QuadratureResult integrate_weighted(const EndpointProfile& profile, const KernelIntegrand& h,
                                    double tol, double rel_tol) {
  check_profile(profile);
  const double a = profile.left_exponent;
  const double b = profile.right_exponent;

  // [0, 1/2]: r is the left gap itself.
  QuadratureResult left;
  if (a < 0.0) {
    const double h0 = h(0.0, 1.0);
    left = tanh_sinh(
        GapIntegrand([&](double r, double, double) {
          const double omr = 1.0 - r;
          return std::pow(r, a) * (std::pow(omr, b) * h(r, omr) - h0);
        }),
        0.0, 0.5, 0.5 * tol, rel_tol);
    const double exact = h0 * std::pow(0.5, a + 1.0) / (a + 1.0);
    left.value += exact;
    left.error_estimate += 4.0 * kEps * std::abs(exact);
  } else {
    left = tanh_sinh(
        GapIntegrand([&](double r, double, double) {
          const double omr = 1.0 - r;
          return std::pow(r, a) * std::pow(omr, b) * h(r, omr);
        }),
        0.0, 0.5, 0.5 * tol, rel_tol);
  }

  // [1/2, 1]: 1 - r is the right gap.
  QuadratureResult right;
  if (b < 0.0) {
    const double h1 = h(1.0, 0.0);
    right = tanh_sinh(
        GapIntegrand([&](double, double, double omr) {
          const double r = 1.0 - omr;
          return std::pow(omr, b) * (std::pow(r, a) * h(r, omr) - h1);
        }),
        0.5, 1.0, 0.5 * tol, rel_tol);
    const double exact = h1 * std::pow(0.5, b + 1.0) / (b + 1.0);
    right.value += exact;
    right.error_estimate += 4.0 * kEps * std::abs(exact);
  } else {
    right = tanh_sinh(
        GapIntegrand([&](double, double, double omr) {
          const double r = 1.0 - omr;
          return std::pow(r, a) * std::pow(omr, b) * h(r, omr);
        }),
        0.5, 1.0, 0.5 * tol, rel_tol);
  }
  return combine(left, right);
}

}  // namespace besselid
