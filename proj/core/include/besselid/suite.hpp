#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "besselid/asymptotics.hpp"
#include "besselid/identities.hpp"

namespace besselid {

/// Invalid suite configuration. line/column are 1-based and 0 when the
/// problem is structural rather than syntactic; field is a JSON pointer.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, std::string field, std::size_t line = 0,
              std::size_t column = 0);
  const std::string& field() const { return field_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string field_;
  std::size_t line_;
  std::size_t column_;
};

/// Parameter names a grid may vary, in the order reports list them.
inline constexpr std::string_view kParameterNames[] = {"alpha", "beta", "nu", "x", "y", "m",
                                                       "k",     "n",    "N",  "r", "p", "z"};

using ParameterPoint = std::vector<std::pair<std::string, double>>;

/// Cartesian product of named axes, optionally subsampled.
struct ParameterGrid {
  std::vector<std::pair<std::string, std::vector<double>>> axes;
  /// When > 0 and smaller than the grid, that many points are drawn without
  /// replacement (seeded), keeping grid order.
  std::size_t sample = 0;
};

struct IdentitySpec {
  IdentityId id = IdentityId::sonine_second;
  ParameterGrid grid;
  bool expect_error = false;
};

enum class ExactCheckId {
  laguerre_sum,
  hansen_ratio_sum,
  squared_laguerre_sum,
  laguerre_findiff,
  laguerre_fractional_integral,
  laguerre_product_integral,
};
std::string_view to_string(ExactCheckId id);
std::optional<ExactCheckId> parse_exact_check_id(std::string_view name);
/// 1e-10 for the algebraic sums, 1e-11 for finite differences, 1e-9 for the
/// integral checks.
double default_threshold(ExactCheckId id);

struct ExactSpec {
  ExactCheckId id = ExactCheckId::laguerre_sum;
  ParameterGrid grid;
  double threshold = 0.0;
  bool expect_error = false;
};

struct ConvergenceSpec {
  ConvergenceTarget target = ConvergenceTarget::laguerre_limit;
  std::vector<long> n_list;
  ParameterPoint params;
  double rate_min = -1.5;
  double rate_max = -0.6;
  double max_final_error = 1e-2;
  /// Divide the final error by |limit| before comparing with max_final_error.
  bool relative_final_error = false;
  /// Require every error to sit at the rounding level instead of a rate.
  bool exact = false;
  /// Require errors to shrink with N, allowing one increase.
  bool monotone = false;
};

enum class ReportFormat { json, csv };
std::optional<ReportFormat> parse_report_format(std::string_view name);

struct SuiteConfig {
  Tolerances tolerances;
  std::uint64_t seed = 0;
  std::vector<IdentitySpec> identities;
  std::vector<ExactSpec> exact;
  std::vector<ConvergenceSpec> convergence;
  std::optional<std::string> output_path;
  ReportFormat output_format = ReportFormat::json;
  /// The configuration as parsed, re-serialized canonically.
  std::string echo = "{}";
};

/// Throws ConfigError with line/column for syntax errors and a field pointer
/// for schema errors.
SuiteConfig parse_suite_config(std::string_view text);
SuiteConfig load_suite_config(const std::string& path);

/// Grid points in order, after sampling.
std::vector<ParameterPoint> expand_grid(const ParameterGrid& grid, std::uint64_t seed);

enum class CheckKind { identity, exact, convergence };
std::string_view to_string(CheckKind kind);

struct CheckRecord {
  CheckKind kind = CheckKind::identity;
  std::string id;
  ParameterPoint params;
  double lhs = 0.0;
  double rhs = 0.0;
  double anomalous = 0.0;
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  double error_estimate = 0.0;
  CheckStatus status = CheckStatus::error;
  std::string message;
  std::optional<double> cross_check;
  std::optional<ConvergenceTable> table;
};

struct Summary {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t conjecture_passed = 0;
  std::size_t errored = 0;
};

struct SuiteReport {
  std::vector<CheckRecord> checks;
  Summary summary;
  std::string config_echo = "{}";
  std::string tool_version;
};

std::string_view tool_version();

/// Runs every check of the config in config order. jobs = 0 uses the
/// hardware concurrency; results do not depend on jobs.
SuiteReport run_suite(const SuiteConfig& config, unsigned jobs = 1);

/// 0 when nothing failed or errored, 1 otherwise.
int exit_status(const SuiteReport& report);

std::string emit_report(const SuiteReport& report, ReportFormat format);
/// Inverse of emit_report(report, ReportFormat::json).
SuiteReport parse_report_json(std::string_view text);

}  // namespace besselid
