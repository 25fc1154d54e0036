#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "besselid/asymptotics.hpp"
#include "besselid/special_functions.hpp"
#include "oracles.hpp"

using namespace besselid;

namespace {

ConvergenceParams study_params(double alpha, std::optional<double> beta, double x,
                               std::optional<double> y = {}) {
  ConvergenceParams p;
  p.alpha = alpha;
  if (beta) {
    p.beta = Order(*beta);
  }
  p.x = x;
  p.y = y;
  return p;
}

std::vector<long> doublings(long first, long last) {
  std::vector<long> n;
  for (long v = first; v <= last; v *= 2) {
    n.push_back(v);
  }
  return n;
}

}  // namespace

TEST_CASE("scaled arguments") {
  const ScaledArguments s(2.0, 4.0, 8);
  CHECK(s.big_x() == doctest::Approx(0.125));
  CHECK(s.big_y() == doctest::Approx(0.5));
  CHECK(ScaledArguments(2.0, 2.0, 0).big_x() == doctest::Approx(1.0));
}

TEST_CASE("laguerre limit residual") {
  const double r512 = laguerre_limit_residual(0.0, 2.0, 1.0, 512);
  const double r1024 = laguerre_limit_residual(0.0, 2.0, 1.0, 1024);
  CHECK(r512 <= 5e-3);
  CHECK(r1024 < r512);
  CHECK(r1024 / r512 == doctest::Approx(0.5).epsilon(0.1));

  const LimitPair small = laguerre_limit_pair(0.0, 1e-9, 1.0, 64);
  CHECK(small.finite == doctest::Approx(1.0));
  CHECK(small.limit == doctest::Approx(1.0));

  const double m512 = laguerre_limit_residual(-1.0, 2.0, 1.0, 512);
  const double m1024 = laguerre_limit_residual(-1.0, 2.0, 1.0, 1024);
  CHECK(std::isfinite(m512));
  CHECK(m1024 < m512);

  // The limit side is the Bessel function, computed independently here.
  const LimitPair pair = laguerre_limit_pair(1.5, 3.0, 1.0, 256);
  CHECK(pair.limit == doctest::Approx(std::pow(2.0, 1.5) * std::pow(3.0, -1.5) * oracle::bessel_j(1.5, 3.0)).epsilon(1e-13));
}

TEST_CASE("finite_difference") {
  const auto square = [](long m) { return static_cast<double>(m * m); };
  CHECK(finite_difference(square, 3, 0) == 9.0);
  CHECK(finite_difference(square, 3, 1) == 7.0);
  CHECK(finite_difference(square, 3, 2) == 2.0);
  CHECK(finite_difference(square, 3, 3) == 0.0);
  const double alpha = 0.7;
  const double x = 1.9;
  const auto lag = [&](long m) { return laguerre(static_cast<unsigned>(m), alpha, x); };
  CHECK(finite_difference(lag, 0, 1) == doctest::Approx(alpha - x).epsilon(1e-15));
}

TEST_CASE("finite_difference is linear") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> f(20), g(20);
    for (std::size_t i = 0; i < f.size(); ++i) {
      f[i] = dist(rng);
      g[i] = dist(rng);
    }
    const double a = dist(rng);
    const double b = dist(rng);
    const auto fs = [&](long m) { return f[static_cast<std::size_t>(m)]; };
    const auto gs = [&](long m) { return g[static_cast<std::size_t>(m)]; };
    const auto hs = [&](long m) { return a * fs(m) + b * gs(m); };
    for (unsigned k = 0; k <= 8; ++k) {
      const double lhs = finite_difference(hs, 3, k);
      const double rhs = a * finite_difference(fs, 3, k) + b * finite_difference(gs, 3, k);
      CHECK(std::abs(lhs - rhs) <= 1e-13 * std::max(1.0, std::abs(rhs)) * std::pow(2.0, k));
    }
  }
}

TEST_CASE("laguerre_findiff_check") {
  CHECK(laguerre_findiff_check(0, 1, 2.0, 1.5).abs_residual <= 1e-15);
  CHECK(laguerre_findiff_check(10, 0, 0.3, 4.0).abs_residual == 0.0);
  const auto r = laguerre_findiff_check(5, 3, -1.0, 2.2);
  CHECK(r.rel_residual <= 1e-11);
  CHECK(oracle::relative_error(r.rhs, oracle::laguerre(8, -4.0, 2.2)) <= 1e-13);
}

TEST_CASE("laguerre_sum_check") {
  CHECK(laguerre_sum_check(0.3, -0.2, 3.0, 4.0, 5).rel_residual <= 1e-13);
  CHECK(laguerre_sum_check(-1.0, -1.0, 2.0, 5.0, 12).rel_residual <= 1e-12);
  CHECK(laguerre_sum_check(0.4, 1.1, 2.0, 5.0, 0).abs_residual == 0.0);
  CHECK_THROWS(laguerre_sum_check(0.0, 0.0, 1.0, 1.0, kLaguerreSumMaxN + 1));
}

TEST_CASE("hansen and squared sums") {
  CHECK(hansen_ratio_sum_check(0.5, 0.2, 3.0, 0).abs_residual == 0.0);
  CHECK(hansen_ratio_sum_check(1.5, 0.5, 3.0, 10).rel_residual <= 1e-11);
  CHECK(hansen_ratio_sum_check(2.0, -1.0, 2.0, 16).rel_residual <= 1e-11);
  CHECK_THROWS(hansen_ratio_sum_check(-2.0, 0.0, 1.0, 4));
  CHECK(squared_laguerre_sum_check(0, 1.3, 0).abs_residual == 0.0);
  CHECK(squared_laguerre_sum_check(1, 2.0, 8).rel_residual <= 1e-10);
  CHECK(squared_laguerre_sum_check(2, 5.0, 20).rel_residual <= 1e-10);
}

TEST_CASE("integral checks") {
  const auto a = laguerre_fractional_integral_check(0.0, 1.0, 2.0, 0);
  CHECK(a.lhs == doctest::Approx(1.0).epsilon(1e-13));  // X = x^2/4
  CHECK(a.rhs == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(laguerre_fractional_integral_check(0.5, 1.5, 3.0, 6).abs_residual <= 1e-9);
  CHECK(laguerre_fractional_integral_check(0.0, 0.5, 4.0, 10).abs_residual <= 1e-9);

  const auto b = laguerre_product_integral_check(0.2, 0.4, 0, 0, 10);
  const double beta = std::tgamma(1.2) * std::tgamma(1.4) / std::tgamma(2.6);
  CHECK(b.lhs == doctest::Approx(beta).epsilon(1e-12));
  CHECK(b.rhs == doctest::Approx(beta).epsilon(1e-12));
  CHECK(laguerre_product_integral_check(0.2, 0.4, 3, 2, 10).abs_residual <= 1e-9);
  CHECK(laguerre_product_integral_check(0.0, 0.0, 5, 5, 4).abs_residual <= 1e-9);
}

TEST_CASE("anomalous block") {
  // a = -1: the block is the single term N^{-b} L_N^b(Y).
  const double y = 3.0;
  const double b = 0.5;
  const long n = 512;
  const auto pair = anomalous_block_limit(-1.0, b, 2.0, y, n);
  const double big_y = y * y / (4.0 * n);
  CHECK(pair.finite == doctest::Approx(std::pow(n, -b) * oracle::laguerre(n, b, big_y)).epsilon(1e-10));
  CHECK(pair.limit == doctest::Approx(std::pow(2.0, b) * std::pow(y, -b) * oracle::bessel_j(b, y)).epsilon(1e-13));

  const auto table = convergence_study(ConvergenceTarget::anomalous_block, {64, 128, 256, 512},
                                       study_params(-2.0, 0.0, 2.0, 3.0));
  CHECK(table.fit_status == FitStatus::fitted);
  CHECK(table.fitted_rate == doctest::Approx(-1.0).epsilon(0.3));
}

TEST_CASE("finite-difference derivative limit") {
  const auto family = exp_family();
  const auto p1 = appendix_findiff_limit(family, 1, 1.0, 4096);
  CHECK(p1.limit == doctest::Approx(std::numbers::e).epsilon(1e-14));
  CHECK(std::abs(p1.finite - p1.limit) <= 10.0 / 4096 * p1.limit);
  const auto p0 = appendix_findiff_limit(family, 0, 0.5, 100);
  CHECK(p0.finite == doctest::Approx(std::pow(1.005, 100)).epsilon(1e-14));
  CHECK(p0.limit == doctest::Approx(std::exp(0.5)).epsilon(1e-15));
  CHECK_THROWS(appendix_findiff_limit(family, kMaxAppendixOrder + 1, 1.0, 64));

  // F(z) = z^{-b/2-1} I_a(2 sqrt z); d/dr F(rz) at r = 1 by 50-digit differences.
  const double a = 2.0;
  const double b = 0.5;
  const double z = 2.25;
  const auto bracket = ij_bracket_family(a, b);
  const auto f = [&](oracle::Real r) {
    const oracle::Real w = r * z;
    return pow(w, -b / 2 - 1) * oracle::bessel_series(a, 2 * sqrt(w), 1);
  };
  const double want = static_cast<double>(oracle::central_derivative(f, oracle::Real(1), 1));
  const auto pair = appendix_findiff_limit(bracket, 1, z, 4096);
  CHECK(pair.limit == doctest::Approx(want).epsilon(1e-10));
  CHECK(std::abs(pair.finite - pair.limit) <= 1e-3 * std::abs(want));
}

TEST_CASE("convergence fits") {
  const auto table = convergence_study(ConvergenceTarget::laguerre_limit, doublings(64, 4096), study_params(0.0, {}, 2.0));
  CHECK(table.entries.size() == 7);
  CHECK(table.fit_status == FitStatus::fitted);
  CHECK(table.fitted_rate >= -1.5);
  CHECK(table.fitted_rate <= -0.6);
  CHECK(table.entries.back().abs_error <= 1e-2);

  const ConvergenceParams exact = study_params(0.3, -0.2, 3.0, 4.0);
  const auto sum = convergence_study(ConvergenceTarget::laguerre_sum, {4, 8, 16, 32, 64}, exact);
  CHECK(sum.fit_status == FitStatus::exact);
  CHECK(std::isinf(sum.fitted_rate));
  for (const auto& e : sum.entries) {
    CHECK(e.abs_error <= 1e-12);
  }

  CHECK_THROWS(convergence_study(ConvergenceTarget::laguerre_limit, {64, 128}, study_params(0.0, {}, 1.0)));
  CHECK_THROWS(convergence_study(ConvergenceTarget::laguerre_limit, {64, 32, 128}, study_params(0.0, {}, 1.0)));

  const auto csv = table.to_csv();
  CHECK(csv.rfind("N,finite_value,limit_value,abs_error\n", 0) == 0);
  CHECK(csv.find("fitted_rate,") != std::string::npos);
}

TEST_CASE("fit_convergence statuses") {
  std::vector<ConvergenceEntry> entries = {{10, 1.0, 1.0, 0.0}, {20, 1.0, 1.0, 0.0}, {40, 1.0, 1.0, 0.0}};
  const std::vector<double> scales = {1.0, 1.0, 1.0};
  CHECK(fit_convergence(entries, scales).fit_status == FitStatus::exact);
  entries[0].abs_error = 0.1;
  CHECK(fit_convergence(entries, scales).fit_status == FitStatus::unavailable);
  std::vector<ConvergenceEntry> one_zero = {{10, 0, 0, 0.4}, {20, 0, 0, 0.2}, {40, 0, 0, 0.1}, {80, 0, 0, 0.0}};
  const auto d = fit_convergence(one_zero, {1.0, 1.0, 1.0, 1.0});
  CHECK(d.fit_status == FitStatus::degenerate);
  CHECK(std::isinf(d.fitted_rate));
  entries = {{10, 0, 0, 0.1}, {20, 0, 0, 0.05}, {40, 0, 0, 0.025}};
  const auto t = fit_convergence(entries, scales);
  CHECK(t.fit_status == FitStatus::fitted);
  CHECK(t.fitted_rate == doctest::Approx(-1.0).epsilon(1e-12));
  for (FitStatus s : {FitStatus::fitted, FitStatus::exact, FitStatus::degenerate, FitStatus::unavailable}) {
    CHECK(parse_fit_status(to_string(s)) == s);
  }
}

TEST_CASE("sonine jump at -1") {
  const auto jump = sonine_jump_at_minus_one(0.0, 2.0, 3.0);
  CHECK(jump.predicted == doctest::Approx(2.0 * oracle::bessel_j(0.0, 3.0)).epsilon(1e-13));
  CHECK(std::abs(jump.extrapolated - jump.predicted) <= 1e-5);
}
