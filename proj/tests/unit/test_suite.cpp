#include <doctest.h>

#include <cmath>
#include <cstring>
#include <sstream>
#include <string>

#include "besselid/suite.hpp"

using namespace besselid;

namespace {

std::size_t count_lines(const std::string& text) {
  std::size_t n = 0;
  for (char c : text) {
    n += c == '\n' ? 1 : 0;
  }
  return n;
}

bool same_bits(double a, double b) {
  if (std::isnan(a) && std::isnan(b)) {
    return true;
  }
  return std::memcmp(&a, &b, sizeof a) == 0;
}

constexpr const char* kMixedConfig = R"({
  "seed": 5,
  "identities": [
    {"id": "pi", "grid": {"nu": [0, 0.75], "x": {"from": 1, "to": 3, "step": 1}}},
    {"id": "ij", "grid": {"alpha": 2, "beta": 0.5, "x": 3}}
  ],
  "exact": [
    {"id": "laguerre-sum", "grid": {"alpha": -1, "beta": 0.5, "x": 2, "y": 3, "N": [0, 7]}}
  ],
  "convergence": [
    {"target": "laguerre-limit", "N": [64, 128, 256, 512], "params": {"alpha": 0, "x": 2}}
  ]
})";

}  // namespace

TEST_CASE("empty config") {
  const auto config = parse_suite_config("{}");
  const auto report = run_suite(config);
  CHECK(report.summary.total == 0);
  CHECK(report.summary.passed == 0);
  CHECK(report.summary.failed == 0);
  CHECK(report.summary.conjecture_passed == 0);
  CHECK(report.summary.errored == 0);
  CHECK(exit_status(report) == 0);
  const auto json = emit_report(report, ReportFormat::json);
  CHECK(json.find("\"total\": 0") != std::string::npos);
}

TEST_CASE("syntax errors carry a line and column") {
  try {
    parse_suite_config("{\n  \"seed\": 1,\n  \"identities\": [,]\n}");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() > 0);
  }
}

TEST_CASE("schema errors carry a field") {
  const auto field_of = [](const char* text) {
    try {
      parse_suite_config(text);
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  CHECK(field_of(R"({"identities": [{"id": "nope", "grid": {}}]})") == "/identities/0/id");
  CHECK(field_of(R"({"identities": [{"id": "pi", "grid": {"nu": 0, "x": 1, "q": 2}}]})") ==
        "/identities/0/grid/q");
  CHECK(field_of(R"({"tolerances": {"abs": "small"}})") == "/tolerances/abs");
  CHECK(field_of(R"({"seed": -1})") == "/seed");
  CHECK(field_of(R"({"bogus": 1})") == "/bogus");
  CHECK(field_of(R"({"convergence": [{"target": "laguerre-limit", "N": [64, 32, 128]}]})") ==
        "/convergence/0/N");
  CHECK(field_of(R"({"output": {"format": "xml"}})") == "/output/format");
  CHECK_THROWS_AS(load_suite_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("grid expansion and sampling") {
  ParameterGrid grid;
  grid.axes = {{"alpha", {0.0, 1.0}}, {"x", {1.0, 2.0, 3.0}}};
  const auto all = expand_grid(grid, 1);
  REQUIRE(all.size() == 6);
  CHECK(all[0] == ParameterPoint{{"alpha", 0.0}, {"x", 1.0}});
  CHECK(all[1] == ParameterPoint{{"alpha", 0.0}, {"x", 2.0}});
  CHECK(all[5] == ParameterPoint{{"alpha", 1.0}, {"x", 3.0}});
  grid.sample = 4;
  const auto a = expand_grid(grid, 9);
  const auto b = expand_grid(grid, 9);
  CHECK(a.size() == 4);
  CHECK(a == b);
  const auto config = parse_suite_config(R"({"identities": [{"id": "pi", "grid": {"nu": 0, "x": {"from": 0.5, "to": 2, "step": 0.5}}}]})");
  CHECK(expand_grid(config.identities[0].grid, 0).size() == 4);
}

TEST_CASE("ij at alpha = beta is an error and fails the suite") {
  const auto report =
      run_suite(parse_suite_config(R"({"identities": [{"id": "ij", "grid": {"alpha": 2, "beta": 2, "x": 3}}]})"));
  REQUIRE(report.checks.size() == 1);
  CHECK(report.checks[0].status == CheckStatus::error);
  CHECK(report.summary.errored == 1);
  CHECK(exit_status(report) != 0);

  const auto expected = run_suite(parse_suite_config(
      R"({"identities": [{"id": "ij", "grid": {"alpha": 2, "beta": 2, "x": 3}, "expect_error": true}]})"));
  CHECK(expected.checks[0].status == CheckStatus::pass);
  CHECK(exit_status(expected) == 0);
}

TEST_CASE("mixed suite in config order") {
  const auto report = run_suite(parse_suite_config(kMixedConfig));
  REQUIRE(report.checks.size() == 10);
  CHECK(report.checks[0].id == "pi");
  CHECK(report.checks[3].status == CheckStatus::conjecture_pass);
  CHECK(report.checks[6].id == "ij");
  CHECK(report.checks[7].kind == CheckKind::exact);
  CHECK(report.checks[9].kind == CheckKind::convergence);
  REQUIRE(report.checks[9].table.has_value());
  CHECK(report.checks[9].table->entries.size() == 4);
  const auto& s = report.summary;
  CHECK(s.passed + s.failed + s.conjecture_passed + s.errored == s.total);
  CHECK(s.conjecture_passed == 3);
  CHECK(exit_status(report) == 0);
}

TEST_CASE("json round trip is exact and output is deterministic") {
  const auto config = parse_suite_config(kMixedConfig);
  const auto report = run_suite(config, 1);
  const auto json = emit_report(report, ReportFormat::json);
  CHECK(emit_report(run_suite(config, 3), ReportFormat::json) == json);

  const auto parsed = parse_report_json(json);
  REQUIRE(parsed.checks.size() == report.checks.size());
  for (std::size_t i = 0; i < report.checks.size(); ++i) {
    const auto& a = report.checks[i];
    const auto& b = parsed.checks[i];
    CHECK(a.id == b.id);
    CHECK(a.kind == b.kind);
    CHECK(a.status == b.status);
    CHECK(a.params == b.params);
    CHECK(same_bits(a.lhs, b.lhs));
    CHECK(same_bits(a.rhs, b.rhs));
    CHECK(same_bits(a.abs_residual, b.abs_residual));
    CHECK(same_bits(a.rel_residual, b.rel_residual));
    CHECK(same_bits(a.anomalous, b.anomalous));
    CHECK(same_bits(a.error_estimate, b.error_estimate));
    CHECK(a.table.has_value() == b.table.has_value());
    if (a.table && b.table) {
      CHECK(same_bits(a.table->fitted_rate, b.table->fitted_rate));
      REQUIRE(a.table->entries.size() == b.table->entries.size());
      for (std::size_t j = 0; j < a.table->entries.size(); ++j) {
        CHECK(same_bits(a.table->entries[j].abs_error, b.table->entries[j].abs_error));
        CHECK(same_bits(a.table->entries[j].finite_value, b.table->entries[j].finite_value));
      }
    }
  }
  CHECK(parsed.summary.total == report.summary.total);
  CHECK(parsed.tool_version == report.tool_version);
  CHECK(emit_report(parsed, ReportFormat::json) == json);
}

TEST_CASE("non-finite values survive the round trip") {
  const auto report =
      run_suite(parse_suite_config(R"({"identities": [{"id": "ij", "grid": {"alpha": 2, "beta": 2, "x": 3}}]})"));
  const auto parsed = parse_report_json(emit_report(report, ReportFormat::json));
  CHECK(std::isnan(parsed.checks[0].lhs));
  CHECK(parsed.checks[0].status == CheckStatus::error);
}

TEST_CASE("csv has a header and one row per check") {
  const auto single = run_suite(parse_suite_config(R"({"identities": [{"id": "pi", "grid": {"nu": 1, "x": 2}}]})"));
  const auto csv = emit_report(single, ReportFormat::csv);
  CHECK(count_lines(csv) == 2);
  CHECK(csv.rfind("id,alpha,beta,nu,x,y,m,k,n,N,r,p,z,lhs,rhs,anomalous,abs_residual,rel_residual,status", 0) == 0);
  std::istringstream rows(csv);
  std::string header, row;
  std::getline(rows, header);
  std::getline(rows, row);
  CHECK(row.rfind("pi,", 0) == 0);
  CHECK(row.find(",pass,") != std::string::npos);

  const auto mixed = run_suite(parse_suite_config(kMixedConfig));
  CHECK(count_lines(emit_report(mixed, ReportFormat::csv)) == mixed.checks.size() + 1);
}

TEST_CASE("format names") {
  CHECK(parse_report_format("json") == ReportFormat::json);
  CHECK(parse_report_format("csv") == ReportFormat::csv);
  CHECK_FALSE(parse_report_format("yaml").has_value());
  CHECK_FALSE(tool_version().empty());
}
