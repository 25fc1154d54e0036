#include "besselid/suite.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

#ifndef BESSELID_VERSION
#define BESSELID_VERSION "0.0.0"
#endif

namespace besselid {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::size_t kMaxAxisLength = 100000;
constexpr std::size_t kMaxGridSize = 1000000;

constexpr std::array<std::pair<ExactCheckId, std::string_view>, 6> kExactNames = {{
    {ExactCheckId::laguerre_sum, "laguerre-sum"},
    {ExactCheckId::hansen_ratio_sum, "hansen-ratio-sum"},
    {ExactCheckId::squared_laguerre_sum, "squared-laguerre-sum"},
    {ExactCheckId::laguerre_findiff, "laguerre-findiff"},
    {ExactCheckId::laguerre_fractional_integral, "laguerre-fractional-integral"},
    {ExactCheckId::laguerre_product_integral, "laguerre-product-integral"},
}};

using NameSet = std::set<std::string, std::less<>>;

NameSet identity_axes(IdentityId id) {
  switch (id) {
    case IdentityId::sonine_second:
    case IdentityId::sonine_generalized:
      return {"alpha", "beta", "x", "y"};
    case IdentityId::ij:
    case IdentityId::ij_generalized:
    case IdentityId::fractional_integral:
      return {"alpha", "beta", "x"};
    case IdentityId::pi:
      return {"nu", "x"};
    case IdentityId::order_sum:
      return {"alpha", "x", "y"};
  }
  return {};
}

NameSet exact_axes(ExactCheckId id) {
  switch (id) {
    case ExactCheckId::laguerre_sum:
      return {"alpha", "beta", "x", "y", "N"};
    case ExactCheckId::hansen_ratio_sum:
    case ExactCheckId::laguerre_fractional_integral:
      return {"alpha", "beta", "x", "N"};
    case ExactCheckId::squared_laguerre_sum:
      return {"nu", "x", "N"};
    case ExactCheckId::laguerre_findiff:
      return {"alpha", "x", "m", "k"};
    case ExactCheckId::laguerre_product_integral:
      return {"alpha", "beta", "m", "n", "N"};
  }
  return {};
}

const NameSet kConvergenceParams = {"alpha", "beta", "x", "y", "r", "nu", "p", "z"};

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

[[noreturn]] void fail(const std::string& field, const std::string& message) {
  throw ConfigError(field + ": " + message, field);
}

void check_keys(const Json& object, const std::string& field, const NameSet& allowed) {
  if (!object.is_object()) {
    fail(field.empty() ? "/" : field, "expected an object");
  }
  for (const auto& item : object.items()) {
    if (!allowed.contains(item.key())) {
      fail(field + "/" + item.key(), "unknown field");
    }
  }
}

double number_at(const Json& value, const std::string& field) {
  if (!value.is_number()) {
    fail(field, "expected a number");
  }
  const double result = value.get<double>();
  if (!std::isfinite(result)) {
    fail(field, "expected a finite number");
  }
  return result;
}

bool bool_at(const Json& value, const std::string& field) {
  if (!value.is_boolean()) {
    fail(field, "expected true or false");
  }
  return value.get<bool>();
}

std::size_t count_at(const Json& value, const std::string& field) {
  if (!value.is_number_integer() || value.get<long long>() < 0) {
    fail(field, "expected a non-negative integer");
  }
  return static_cast<std::size_t>(value.get<long long>());
}

std::vector<double> parse_axis(const Json& value, const std::string& field) {
  std::vector<double> points;
  if (value.is_number()) {
    points.push_back(number_at(value, field));
  } else if (value.is_array()) {
    if (value.empty()) {
      fail(field, "axis lists must not be empty");
    }
    for (std::size_t i = 0; i < value.size(); ++i) {
      points.push_back(number_at(value[i], field + "/" + std::to_string(i)));
    }
  } else if (value.is_object()) {
    check_keys(value, field, {"from", "to", "step"});
    for (const char* key : {"from", "to", "step"}) {
      if (!value.contains(key)) {
        fail(field + "/" + key, "missing");
      }
    }
    const double from = number_at(value["from"], field + "/from");
    const double to = number_at(value["to"], field + "/to");
    const double step = number_at(value["step"], field + "/step");
    if (!(step > 0.0) || to < from) {
      fail(field, "ranges need step > 0 and from <= to");
    }
    const double count = std::floor((to - from) / step + 1e-9) + 1.0;
    if (count > static_cast<double>(kMaxAxisLength)) {
      fail(field, "range has too many points");
    }
    for (std::size_t i = 0; i < static_cast<std::size_t>(count); ++i) {
      points.push_back(from + static_cast<double>(i) * step);
    }
  } else {
    fail(field, "expected a number, a list, or {from, to, step}");
  }
  return points;
}

ParameterGrid parse_grid(const Json& value, const std::string& field, const NameSet& allowed) {
  ParameterGrid grid;
  check_keys(value, field, allowed);
  std::size_t size = 1;
  for (const std::string_view name : kParameterNames) {
    const std::string key(name);
    if (value.contains(key)) {
      grid.axes.emplace_back(key, parse_axis(value[key], field + "/" + key));
      size *= grid.axes.back().second.size();
      if (size > kMaxGridSize) {
        fail(field, "grid has too many points");
      }
    }
  }
  return grid;
}

std::vector<long> parse_n_list(const Json& value, const std::string& field) {
  std::vector<long> result;
  for (const double v : parse_axis(value, field)) {
    if (v != std::floor(v) || v < 0.0 || v > 1e7) {
      fail(field, "N values must be non-negative integers");
    }
    result.push_back(static_cast<long>(v));
  }
  for (std::size_t i = 1; i < result.size(); ++i) {
    if (result[i] <= result[i - 1]) {
      fail(field, "N values must be strictly increasing");
    }
  }
  if (result.size() < 3) {
    fail(field, "a convergence study needs at least 3 values of N");
  }
  return result;
}

std::optional<double> lookup(const ParameterPoint& point, std::string_view name) {
  for (const auto& [key, value] : point) {
    if (key == name) {
      return value;
    }
  }
  return std::nullopt;
}

double require_param(const ParameterPoint& point, std::string_view name) {
  const auto value = lookup(point, name);
  if (!value) {
    throw std::domain_error(std::string(name) + " is required");
  }
  return *value;
}

long require_count(const ParameterPoint& point, std::string_view name) {
  const double value = require_param(point, name);
  if (value != std::floor(value) || value < 0.0 || value > 1e7) {
    throw std::domain_error(std::string(name) + " must be a non-negative integer");
  }
  return static_cast<long>(value);
}

CheckRecord identity_check(const IdentitySpec& spec, const ParameterPoint& point,
                           const Tolerances& tol) {
  CheckRecord record;
  record.kind = CheckKind::identity;
  record.id = std::string(to_string(spec.id));
  record.params = point;
  IdentityParams params;
  params.alpha = lookup(point, "alpha").value_or(0.0);
  if (const auto beta = lookup(point, "beta")) {
    params.beta = *beta;
  }
  if (const auto nu = lookup(point, "nu")) {
    params.nu = *nu;
  }
  params.y = lookup(point, "y");
  IdentityReport report;
  if (const auto x = lookup(point, "x")) {
    params.x = *x;
    report = evaluate_identity(spec.id, params, tol);
  } else {
    report.status = CheckStatus::error;
    report.message = "x is required";
    report.lhs = report.rhs = report.abs_residual = report.rel_residual = std::nan("");
  }
  record.lhs = report.lhs;
  record.rhs = report.rhs;
  record.anomalous = report.anomalous;
  record.abs_residual = report.abs_residual;
  record.rel_residual = report.rel_residual;
  record.error_estimate = report.quadrature_error;
  record.status = report.status;
  record.message = report.message;
  record.cross_check = report.cross_check_discrepancy;
  return record;
}

ExactCheckResult run_exact(ExactCheckId id, const ParameterPoint& point) {
  const Order alpha = lookup(point, "alpha").value_or(0.0);
  const Order beta = lookup(point, "beta").value_or(0.0);
  switch (id) {
    case ExactCheckId::laguerre_sum:
      return laguerre_sum_check(alpha, beta, require_param(point, "x"),
                                require_param(point, "y"), require_count(point, "N"));
    case ExactCheckId::hansen_ratio_sum:
      return hansen_ratio_sum_check(alpha, beta, require_param(point, "x"),
                                    require_count(point, "N"));
    case ExactCheckId::squared_laguerre_sum:
      return squared_laguerre_sum_check(static_cast<int>(require_count(point, "nu")),
                                        require_param(point, "x"), require_count(point, "N"));
    case ExactCheckId::laguerre_findiff:
      return laguerre_findiff_check(static_cast<unsigned>(require_count(point, "m")),
                                    static_cast<unsigned>(require_count(point, "k")), alpha,
                                    require_param(point, "x"));
    case ExactCheckId::laguerre_fractional_integral:
      return laguerre_fractional_integral_check(alpha, require_param(point, "beta"),
                                                require_param(point, "x"),
                                                require_count(point, "N"));
    case ExactCheckId::laguerre_product_integral:
      return laguerre_product_integral_check(
          alpha, beta, static_cast<unsigned>(require_count(point, "m")),
          static_cast<unsigned>(require_count(point, "n")), require_count(point, "N"));
  }
  throw std::invalid_argument("unknown exact check");
}

CheckRecord exact_check(const ExactSpec& spec, const ParameterPoint& point) {
  CheckRecord record;
  record.kind = CheckKind::exact;
  record.id = std::string(to_string(spec.id));
  record.params = point;
  const ExactCheckResult result = run_exact(spec.id, point);
  record.lhs = result.lhs;
  record.rhs = result.rhs;
  record.abs_residual = result.abs_residual;
  record.rel_residual = result.rel_residual;
  record.error_estimate = result.error_estimate;
  if (result.rel_residual <= spec.threshold) {
    record.status = CheckStatus::pass;
  } else {
    record.status = CheckStatus::fail;
    char text[128];
    std::snprintf(text, sizeof text, "relative residual %.3g exceeds %.3g", result.rel_residual,
                  spec.threshold);
    record.message = text;
  }
  return record;
}

ConvergenceParams convergence_params(const ParameterPoint& point) {
  ConvergenceParams params;
  params.alpha = lookup(point, "alpha").value_or(0.0);
  if (const auto beta = lookup(point, "beta")) {
    params.beta = *beta;
  }
  params.x = lookup(point, "x").value_or(1.0);
  params.y = lookup(point, "y");
  params.r = lookup(point, "r").value_or(1.0);
  if (const auto nu = lookup(point, "nu")) {
    params.nu = *nu;
  }
  const double p = lookup(point, "p").value_or(0.0);
  if (p != std::floor(p) || p < 0.0) {
    throw std::domain_error("p must be a non-negative integer");
  }
  params.p = static_cast<unsigned>(p);
  params.z = lookup(point, "z").value_or(1.0);
  return params;
}

CheckRecord convergence_check(const ConvergenceSpec& spec) {
  CheckRecord record;
  record.kind = CheckKind::convergence;
  record.id = std::string(to_string(spec.target));
  record.params = spec.params;
  const ConvergenceTable table =
      convergence_study(spec.target, spec.n_list, convergence_params(spec.params));
  const ConvergenceEntry& last = table.entries.back();
  record.lhs = last.finite_value;
  record.rhs = last.limit_value;
  record.abs_residual = last.abs_error;
  record.rel_residual =
      last.abs_error / std::max({std::abs(last.finite_value), std::abs(last.limit_value), 1e-30});
  record.table = table;

  std::vector<std::string> problems;
  char text[160];
  if (spec.exact) {
    if (table.fit_status != FitStatus::exact) {
      problems.emplace_back("errors are not at the rounding level");
    }
  } else {
    if (table.fit_status != FitStatus::fitted) {
      problems.emplace_back("rate fit " + std::string(to_string(table.fit_status)));
    } else if (!(table.fitted_rate >= spec.rate_min && table.fitted_rate <= spec.rate_max)) {
      std::snprintf(text, sizeof text, "fitted rate %.3f outside [%g, %g]", table.fitted_rate,
                    spec.rate_min, spec.rate_max);
      problems.emplace_back(text);
    }
    const double final_error = spec.relative_final_error
                                   ? last.abs_error / std::max(std::abs(last.limit_value), 1e-300)
                                   : last.abs_error;
    if (!(final_error <= spec.max_final_error)) {
      std::snprintf(text, sizeof text, "final error %.3g exceeds %g", final_error,
                    spec.max_final_error);
      problems.emplace_back(text);
    }
    if (spec.monotone) {
      int increases = 0;
      for (std::size_t i = 1; i < table.entries.size(); ++i) {
        increases += table.entries[i].abs_error > table.entries[i - 1].abs_error ? 1 : 0;
      }
      if (increases > 1) {
        problems.emplace_back("error does not shrink monotonically with N");
      }
    }
  }
  record.status = problems.empty() ? CheckStatus::pass : CheckStatus::fail;
  for (const auto& problem : problems) {
    record.message += (record.message.empty() ? "" : "; ") + problem;
  }
  return record;
}

CheckRecord error_record(CheckKind kind, std::string id, ParameterPoint params,
                         const std::string& message) {
  CheckRecord record;
  record.kind = kind;
  record.id = std::move(id);
  record.params = std::move(params);
  record.lhs = record.rhs = record.abs_residual = record.rel_residual = std::nan("");
  record.status = CheckStatus::error;
  record.message = message;
  return record;
}

// Expected-error points pass exactly when they error.
CheckRecord apply_expectation(CheckRecord record, bool expect_error) {
  if (!expect_error) {
    return record;
  }
  if (record.status == CheckStatus::error) {
    record.status = CheckStatus::pass;
    record.message = "expected error: " + record.message;
  } else {
    record.status = CheckStatus::fail;
    record.message = "expected an error but the check completed";
  }
  return record;
}

std::uint64_t entry_seed(std::uint64_t seed, std::size_t section, std::size_t index) {
  std::seed_seq sequence{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(section), static_cast<std::uint32_t>(index)};
  std::array<std::uint32_t, 2> words{};
  sequence.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

Json number_json(double value) {
  if (std::isnan(value)) {
    return "nan";
  }
  if (std::isinf(value)) {
    return value > 0 ? "inf" : "-inf";
  }
  return value;
}

double number_from_json(const Json& value) {
  if (value.is_number()) {
    return value.get<double>();
  }
  if (value.is_string()) {
    const auto text = value.get<std::string>();
    if (text == "inf") {
      return std::numeric_limits<double>::infinity();
    }
    if (text == "-inf") {
      return -std::numeric_limits<double>::infinity();
    }
    return std::nan("");
  }
  return std::nan("");
}

std::string format_number(double value) {
  char text[40];
  std::snprintf(text, sizeof text, "%.17g", value);
  return text;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) {
    return text;
  }
  std::string quoted = "\"";
  for (const char c : text) {
    if (c == '"') {
      quoted += '"';
    }
    quoted += c;
  }
  return quoted + "\"";
}

Json summary_json(const Summary& summary) {
  return Json{{"total", summary.total},
              {"passed", summary.passed},
              {"failed", summary.failed},
              {"conjecture_passed", summary.conjecture_passed},
              {"errored", summary.errored}};
}

}  // namespace

ConfigError::ConfigError(const std::string& message, std::string field, std::size_t line,
                         std::size_t column)
    : std::runtime_error(message), field_(std::move(field)), line_(line), column_(column) {}

std::string_view to_string(ExactCheckId id) {
  for (const auto& [value, name] : kExactNames) {
    if (value == id) {
      return name;
    }
  }
  return "unknown";
}

std::optional<ExactCheckId> parse_exact_check_id(std::string_view name) {
  for (const auto& [value, entry] : kExactNames) {
    if (entry == name) {
      return value;
    }
  }
  return std::nullopt;
}

double default_threshold(ExactCheckId id) {
  switch (id) {
    case ExactCheckId::laguerre_findiff:
      return 1e-11;
    case ExactCheckId::laguerre_fractional_integral:
    case ExactCheckId::laguerre_product_integral:
      return 1e-9;
    default:
      return 1e-10;
  }
}

std::optional<ReportFormat> parse_report_format(std::string_view name) {
  if (name == "json") {
    return ReportFormat::json;
  }
  if (name == "csv") {
    return ReportFormat::csv;
  }
  return std::nullopt;
}

std::string_view to_string(CheckKind kind) {
  switch (kind) {
    case CheckKind::identity:
      return "identity";
    case CheckKind::exact:
      return "exact";
    case CheckKind::convergence:
      return "convergence";
  }
  return "identity";
}

SuiteConfig parse_suite_config(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const auto [line, column] = line_and_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ConfigError("invalid JSON at line " + std::to_string(line) + ", column " +
                          std::to_string(column) + ": " + e.what(),
                      "", line, column);
  }
  check_keys(root, "", {"tolerances", "seed", "identities", "exact", "convergence", "output",
                        "note"});
  SuiteConfig config;
  if (root.contains("tolerances")) {
    const Json& tol = root["tolerances"];
    check_keys(tol, "/tolerances", {"abs", "rel", "quadrature"});
    if (tol.contains("abs")) {
      config.tolerances.abs = number_at(tol["abs"], "/tolerances/abs");
    }
    if (tol.contains("rel")) {
      config.tolerances.rel = number_at(tol["rel"], "/tolerances/rel");
    }
    if (tol.contains("quadrature")) {
      config.tolerances.quadrature = number_at(tol["quadrature"], "/tolerances/quadrature");
    }
    if (!(config.tolerances.abs >= 0.0) || !(config.tolerances.rel >= 0.0) ||
        !(config.tolerances.quadrature > 0.0)) {
      fail("/tolerances", "tolerances must be non-negative (quadrature positive)");
    }
  }
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned()) {
      fail("/seed", "expected a non-negative integer");
    }
    config.seed = root["seed"].get<std::uint64_t>();
  }
  auto list_at = [&](const char* key) -> const Json& {
    static const Json empty = Json::array();
    if (!root.contains(key)) {
      return empty;
    }
    if (!root[key].is_array()) {
      fail(std::string("/") + key, "expected a list");
    }
    return root[key];
  };

  const Json& identities = list_at("identities");
  for (std::size_t i = 0; i < identities.size(); ++i) {
    const std::string field = "/identities/" + std::to_string(i);
    const Json& entry = identities[i];
    check_keys(entry, field, {"id", "grid", "expect_error", "sample", "note"});
    if (!entry.contains("id") || !entry["id"].is_string()) {
      fail(field + "/id", "expected an identity id");
    }
    const auto id = parse_identity_id(entry["id"].get<std::string>());
    if (!id) {
      fail(field + "/id", "unknown identity '" + entry["id"].get<std::string>() + "'");
    }
    IdentitySpec spec;
    spec.id = *id;
    if (!entry.contains("grid")) {
      fail(field + "/grid", "missing");
    }
    spec.grid = parse_grid(entry["grid"], field + "/grid", identity_axes(*id));
    if (entry.contains("sample")) {
      spec.grid.sample = count_at(entry["sample"], field + "/sample");
    }
    if (entry.contains("expect_error")) {
      spec.expect_error = bool_at(entry["expect_error"], field + "/expect_error");
    }
    config.identities.push_back(std::move(spec));
  }

  const Json& exact = list_at("exact");
  for (std::size_t i = 0; i < exact.size(); ++i) {
    const std::string field = "/exact/" + std::to_string(i);
    const Json& entry = exact[i];
    check_keys(entry, field, {"id", "grid", "threshold", "expect_error", "sample", "note"});
    if (!entry.contains("id") || !entry["id"].is_string()) {
      fail(field + "/id", "expected an exact check id");
    }
    const auto id = parse_exact_check_id(entry["id"].get<std::string>());
    if (!id) {
      fail(field + "/id", "unknown exact check '" + entry["id"].get<std::string>() + "'");
    }
    ExactSpec spec;
    spec.id = *id;
    spec.threshold = default_threshold(*id);
    if (!entry.contains("grid")) {
      fail(field + "/grid", "missing");
    }
    spec.grid = parse_grid(entry["grid"], field + "/grid", exact_axes(*id));
    if (entry.contains("sample")) {
      spec.grid.sample = count_at(entry["sample"], field + "/sample");
    }
    if (entry.contains("threshold")) {
      spec.threshold = number_at(entry["threshold"], field + "/threshold");
    }
    if (entry.contains("expect_error")) {
      spec.expect_error = bool_at(entry["expect_error"], field + "/expect_error");
    }
    config.exact.push_back(std::move(spec));
  }

  const Json& convergence = list_at("convergence");
  for (std::size_t i = 0; i < convergence.size(); ++i) {
    const std::string field = "/convergence/" + std::to_string(i);
    const Json& entry = convergence[i];
    check_keys(entry, field,
               {"target", "N", "params", "rate_min", "rate_max", "max_final_error",
                "relative_final_error", "exact", "monotone", "note"});
    if (!entry.contains("target") || !entry["target"].is_string()) {
      fail(field + "/target", "expected a convergence target");
    }
    const auto target = parse_convergence_target(entry["target"].get<std::string>());
    if (!target) {
      fail(field + "/target", "unknown target '" + entry["target"].get<std::string>() + "'");
    }
    ConvergenceSpec spec;
    spec.target = *target;
    if (!entry.contains("N")) {
      fail(field + "/N", "missing");
    }
    spec.n_list = parse_n_list(entry["N"], field + "/N");
    if (entry.contains("params")) {
      const Json& params = entry["params"];
      check_keys(params, field + "/params", kConvergenceParams);
      for (const std::string_view name : kParameterNames) {
        const std::string key(name);
        if (params.contains(key)) {
          spec.params.emplace_back(key, number_at(params[key], field + "/params/" + key));
        }
      }
    }
    if (entry.contains("rate_min")) {
      spec.rate_min = number_at(entry["rate_min"], field + "/rate_min");
    }
    if (entry.contains("rate_max")) {
      spec.rate_max = number_at(entry["rate_max"], field + "/rate_max");
    }
    if (entry.contains("max_final_error")) {
      spec.max_final_error = number_at(entry["max_final_error"], field + "/max_final_error");
    }
    if (entry.contains("relative_final_error")) {
      spec.relative_final_error =
          bool_at(entry["relative_final_error"], field + "/relative_final_error");
    }
    if (entry.contains("exact")) {
      spec.exact = bool_at(entry["exact"], field + "/exact");
    }
    if (entry.contains("monotone")) {
      spec.monotone = bool_at(entry["monotone"], field + "/monotone");
    }
    config.convergence.push_back(std::move(spec));
  }

  if (root.contains("output")) {
    const Json& output = root["output"];
    check_keys(output, "/output", {"path", "format"});
    if (output.contains("path")) {
      if (!output["path"].is_string()) {
        fail("/output/path", "expected a string");
      }
      config.output_path = output["path"].get<std::string>();
    }
    if (output.contains("format")) {
      const auto format =
          output["format"].is_string() ? parse_report_format(output["format"].get<std::string>())
                                       : std::nullopt;
      if (!format) {
        fail("/output/format", "expected \"json\" or \"csv\"");
      }
      config.output_format = *format;
    }
  }
  config.echo = root.dump();
  return config;
}

SuiteConfig load_suite_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot read config file '" + path + "'", "");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_suite_config(text.str());
}

std::vector<ParameterPoint> expand_grid(const ParameterGrid& grid, std::uint64_t seed) {
  std::vector<ParameterPoint> points;
  if (grid.axes.empty()) {
    points.emplace_back();
  } else {
    std::vector<std::size_t> index(grid.axes.size(), 0);
    while (true) {
      ParameterPoint point;
      for (std::size_t a = 0; a < grid.axes.size(); ++a) {
        point.emplace_back(grid.axes[a].first, grid.axes[a].second[index[a]]);
      }
      points.push_back(std::move(point));
      bool carry = true;
      for (std::size_t a = grid.axes.size(); carry && a > 0;) {
        --a;
        carry = ++index[a] == grid.axes[a].second.size();
        if (carry) {
          index[a] = 0;
        }
      }
      if (carry) {
        break;
      }
    }
  }
  if (grid.sample > 0 && grid.sample < points.size()) {
    std::vector<std::size_t> order(points.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      order[i] = i;
    }
    // Partial Fisher-Yates with explicit draws so the selection does not
    // depend on the standard library's shuffle.
    std::mt19937_64 engine(seed);
    for (std::size_t i = 0; i < grid.sample; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(engine() % (order.size() - i));
      std::swap(order[i], order[j]);
    }
    order.resize(grid.sample);
    std::sort(order.begin(), order.end());
    std::vector<ParameterPoint> chosen;
    for (const std::size_t i : order) {
      chosen.push_back(std::move(points[i]));
    }
    points = std::move(chosen);
  }
  return points;
}

std::string_view tool_version() { return BESSELID_VERSION; }

SuiteReport run_suite(const SuiteConfig& config, unsigned jobs) {
  std::vector<std::function<CheckRecord()>> tasks;
  for (std::size_t i = 0; i < config.identities.size(); ++i) {
    const IdentitySpec& spec = config.identities[i];
    for (ParameterPoint& point : expand_grid(spec.grid, entry_seed(config.seed, 0, i))) {
      tasks.emplace_back([&spec, &config, point = std::move(point)] {
        return apply_expectation(identity_check(spec, point, config.tolerances), spec.expect_error);
      });
    }
  }
  for (std::size_t i = 0; i < config.exact.size(); ++i) {
    const ExactSpec& spec = config.exact[i];
    for (ParameterPoint& point : expand_grid(spec.grid, entry_seed(config.seed, 1, i))) {
      tasks.emplace_back([&spec, point = std::move(point)] {
        CheckRecord record;
        try {
          record = exact_check(spec, point);
        } catch (const std::exception& e) {
          record = error_record(CheckKind::exact, std::string(to_string(spec.id)), point, e.what());
        }
        return apply_expectation(std::move(record), spec.expect_error);
      });
    }
  }
  for (const ConvergenceSpec& spec : config.convergence) {
    tasks.emplace_back([&spec] {
      try {
        return convergence_check(spec);
      } catch (const std::exception& e) {
        return error_record(CheckKind::convergence, std::string(to_string(spec.target)),
                            spec.params, e.what());
      }
    });
  }

  SuiteReport report;
  report.checks.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        report.checks[i] = tasks[i]();
      } catch (const std::exception& e) {
        report.checks[i] = error_record(CheckKind::identity, "unknown", {}, e.what());
      }
    }
  };
  unsigned threads = jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : jobs;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(tasks.size(), 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
    for (auto& thread : pool) {
      thread.join();
    }
  }

  for (const CheckRecord& check : report.checks) {
    ++report.summary.total;
    switch (check.status) {
      case CheckStatus::pass:
        ++report.summary.passed;
        break;
      case CheckStatus::fail:
        ++report.summary.failed;
        break;
      case CheckStatus::conjecture_pass:
        ++report.summary.conjecture_passed;
        break;
      case CheckStatus::error:
        ++report.summary.errored;
        break;
    }
  }
  report.config_echo = config.echo;
  report.tool_version = std::string(tool_version());
  return report;
}

int exit_status(const SuiteReport& report) {
  return report.summary.failed == 0 && report.summary.errored == 0 ? 0 : 1;
}

std::string emit_report(const SuiteReport& report, ReportFormat format) {
  if (format == ReportFormat::json) {
    Json root;
    root["tool_version"] = report.tool_version;
    root["summary"] = summary_json(report.summary);
    root["config"] = Json::parse(report.config_echo);
    Json checks = Json::array();
    for (const CheckRecord& check : report.checks) {
      Json item;
      item["kind"] = std::string(to_string(check.kind));
      item["id"] = check.id;
      Json params = Json::object();
      for (const auto& [name, value] : check.params) {
        params[name] = number_json(value);
      }
      item["params"] = params;
      item["lhs"] = number_json(check.lhs);
      item["rhs"] = number_json(check.rhs);
      item["anomalous"] = number_json(check.anomalous);
      item["abs_residual"] = number_json(check.abs_residual);
      item["rel_residual"] = number_json(check.rel_residual);
      item["error_estimate"] = number_json(check.error_estimate);
      item["status"] = std::string(to_string(check.status));
      item["message"] = check.message;
      if (check.cross_check) {
        item["cross_check"] = number_json(*check.cross_check);
      }
      if (check.table) {
        Json entries = Json::array();
        for (const auto& entry : check.table->entries) {
          entries.push_back({{"N", entry.n},
                             {"finite_value", number_json(entry.finite_value)},
                             {"limit_value", number_json(entry.limit_value)},
                             {"abs_error", number_json(entry.abs_error)}});
        }
        item["table"] = {{"entries", entries},
                         {"fitted_rate", number_json(check.table->fitted_rate)},
                         {"fit_status", std::string(to_string(check.table->fit_status))}};
      }
      checks.push_back(std::move(item));
    }
    root["checks"] = std::move(checks);
    return root.dump(2) + "\n";
  }

  std::string out = "id";
  for (const std::string_view name : kParameterNames) {
    out += ",";
    out += name;
  }
  out += ",lhs,rhs,anomalous,abs_residual,rel_residual,status,kind,error_estimate,cross_check,"
         "fitted_rate,message\n";
  for (const CheckRecord& check : report.checks) {
    out += csv_field(check.id);
    for (const std::string_view name : kParameterNames) {
      out += ",";
      if (const auto value = lookup(check.params, name)) {
        out += format_number(*value);
      } else if (name == "N" && check.table) {
        out += std::to_string(check.table->entries.back().n);
      }
    }
    for (const double value :
         {check.lhs, check.rhs, check.anomalous, check.abs_residual, check.rel_residual}) {
      out += "," + format_number(value);
    }
    out += "," + std::string(to_string(check.status));
    out += "," + std::string(to_string(check.kind));
    out += "," + format_number(check.error_estimate);
    out += "," + (check.cross_check ? format_number(*check.cross_check) : std::string());
    out += "," + (check.table ? format_number(check.table->fitted_rate) : std::string());
    out += "," + csv_field(check.message) + "\n";
  }
  return out;
}

SuiteReport parse_report_json(std::string_view text) {
  const Json root = Json::parse(text.begin(), text.end());
  SuiteReport report;
  report.tool_version = root.at("tool_version").get<std::string>();
  const Json& summary = root.at("summary");
  report.summary.total = summary.at("total").get<std::size_t>();
  report.summary.passed = summary.at("passed").get<std::size_t>();
  report.summary.failed = summary.at("failed").get<std::size_t>();
  report.summary.conjecture_passed = summary.at("conjecture_passed").get<std::size_t>();
  report.summary.errored = summary.at("errored").get<std::size_t>();
  report.config_echo = root.at("config").dump();
  for (const Json& item : root.at("checks")) {
    CheckRecord check;
    const std::string kind = item.at("kind").get<std::string>();
    check.kind = kind == "exact"         ? CheckKind::exact
                 : kind == "convergence" ? CheckKind::convergence
                                         : CheckKind::identity;
    check.id = item.at("id").get<std::string>();
    for (const auto& param : item.at("params").items()) {
      check.params.emplace_back(param.key(), number_from_json(param.value()));
    }
    check.lhs = number_from_json(item.at("lhs"));
    check.rhs = number_from_json(item.at("rhs"));
    check.anomalous = number_from_json(item.at("anomalous"));
    check.abs_residual = number_from_json(item.at("abs_residual"));
    check.rel_residual = number_from_json(item.at("rel_residual"));
    check.error_estimate = number_from_json(item.at("error_estimate"));
    check.status = parse_check_status(item.at("status").get<std::string>()).value_or(CheckStatus::error);
    check.message = item.at("message").get<std::string>();
    if (item.contains("cross_check")) {
      check.cross_check = number_from_json(item["cross_check"]);
    }
    if (item.contains("table")) {
      ConvergenceTable table;
      for (const Json& entry : item["table"].at("entries")) {
        table.entries.push_back({entry.at("N").get<long>(),
                                 number_from_json(entry.at("finite_value")),
                                 number_from_json(entry.at("limit_value")),
                                 number_from_json(entry.at("abs_error"))});
      }
      table.fitted_rate = number_from_json(item["table"].at("fitted_rate"));
      table.fit_status =
          parse_fit_status(item["table"].at("fit_status").get<std::string>()).value_or(FitStatus::unavailable);
      check.table = std::move(table);
    }
    report.checks.push_back(std::move(check));
  }
  return report;
}

}  // namespace besselid
