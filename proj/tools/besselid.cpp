// besselid: run identity and Laguerre asymptotics suites from a JSON config.
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "besselid/identities.hpp"
#include "besselid/suite.hpp"

namespace {

constexpr int kExitConfigInvalid = 2;

int verify(const std::string& config_path, const std::optional<std::string>& out_path,
           const std::optional<std::string>& format_name, const std::optional<double>& tol_abs,
           const std::optional<double>& tol_rel, unsigned jobs) {
  besselid::SuiteConfig config;
  try {
    config = besselid::load_suite_config(config_path);
  } catch (const besselid::ConfigError& e) {
    std::cerr << "besselid: invalid config: " << e.what() << "\n";
    return kExitConfigInvalid;
  }
  if (tol_abs) {
    config.tolerances.abs = *tol_abs;
  }
  if (tol_rel) {
    config.tolerances.rel = *tol_rel;
  }
  if (format_name) {
    config.output_format = *besselid::parse_report_format(*format_name);
  }
  if (out_path) {
    config.output_path = *out_path;
  }

  const besselid::SuiteReport report = besselid::run_suite(config, jobs);
  const std::string text = besselid::emit_report(report, config.output_format);
  if (config.output_path && *config.output_path != "-") {
    std::ofstream out(*config.output_path, std::ios::binary);
    if (!out) {
      std::cerr << "besselid: cannot write " << *config.output_path << "\n";
      return 1;
    }
    out << text;
  } else {
    std::cout << text;
  }

  const auto& s = report.summary;
  std::cerr << "total " << s.total << ", passed " << s.passed << ", conjecture-passed "
            << s.conjecture_passed << ", failed " << s.failed << ", errored " << s.errored << "\n";
  for (const auto& check : report.checks) {
    if (check.status == besselid::CheckStatus::fail ||
        check.status == besselid::CheckStatus::error) {
      std::cerr << "  " << besselid::to_string(check.status) << " " << check.id << ":";
      for (const auto& [name, value] : check.params) {
        std::cerr << " " << name << "=" << value;
      }
      std::cerr << (check.message.empty() ? "" : " (" + check.message + ")") << "\n";
    }
  }
  return besselid::exit_status(report);
}

void list_identities() {
  for (const auto id : besselid::kAllIdentities) {
    std::cout << besselid::to_string(id) << "\t" << besselid::describe(id) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of Bessel function identities"};
  app.set_version_flag("--version", std::string(besselid::tool_version()));
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out_path;
  std::optional<std::string> format;
  std::optional<double> tol_abs;
  std::optional<double> tol_rel;
  unsigned jobs = 1;

  auto* verify_cmd = app.add_subcommand("verify", "Run the checks of a suite config");
  verify_cmd->add_option("--config", config_path, "Suite config (JSON)")->required();
  verify_cmd->add_option("--out", out_path, "Report path; '-' or absent writes to stdout");
  verify_cmd->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));
  verify_cmd->add_option("--tol-abs", tol_abs, "Absolute residual tolerance")
      ->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--tol-rel", tol_rel, "Relative residual tolerance")
      ->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--jobs", jobs, "Worker threads (0 = hardware concurrency)");

  auto* list_cmd = app.add_subcommand("list-identities", "Print the identity ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigInvalid;
  }

  if (*list_cmd) {
    list_identities();
    return 0;
  }
  if (*verify_cmd) {
    return verify(config_path, out_path, format, tol_abs, tol_rel, jobs);
  }
  return kExitConfigInvalid;
}
