#pragma once

#include <optional>

namespace besselid {

/// Distance below which an order is treated as exactly a negative integer.
inline constexpr double kIntegerTolerance = 1e-12;

/// Real order of a Laguerre polynomial or Bessel function.
///
/// Identities change discontinuously at the negative integers, so the
/// classification is made once, here, and every consumer branches on
/// negative_integer() instead of testing the raw value. When the order is
/// classified as -n, value() returns exactly -n.
class Order {
 public:
  constexpr Order() = default;
  /// Throws std::invalid_argument for NaN or infinite values.
  Order(double value);  // NOLINT(implicit): orders are written as plain numbers

  constexpr double value() const { return value_; }
  /// n >= 1 such that value() == -n, if any.
  constexpr std::optional<int> negative_integer() const { return negative_integer_; }
  constexpr bool is_negative_integer() const { return negative_integer_.has_value(); }
  /// True for any integer order (within kIntegerTolerance), including 0.
  bool is_integer() const;

 private:
  double value_ = 0.0;
  std::optional<int> negative_integer_;
};

}  // namespace besselid
