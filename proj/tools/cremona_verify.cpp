#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "cremona/errors.hpp"
#include "cremona/report/report.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw cremona::PreconditionViolation("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verifier for the equivariant link search between the torus model and P2"};
  app.require_subcommand(1);

  std::string format = "json";
  std::uint64_t seed = 42;
  std::string verbosity = "summary";
  std::string formulas;
  std::string golden = CREMONA_DEFAULT_GOLDEN;
  std::string output;
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "md", "markdown"}));
  app.add_option("--seed", seed, "Seed for the sampled exact checks");
  app.add_option("--verbosity", verbosity, "Detail of the case tree")->check(CLI::IsMember({"summary", "full-tree"}));
  app.add_option("--formulas", formulas, "JSON file replacing tabulated link formulas");
  app.add_option("--golden", golden, "Expected shape of the case tree");
  app.add_option("-o,--output", output, "Write the report to a file instead of stdout");

  auto* verify = app.add_subcommand("verify", "Run one registered check");
  std::string check_id;
  verify->add_option("id", check_id, "Check id or alias (see `list`)")->required();
  verify->fallthrough();
  auto* prove = app.add_subcommand("prove", "Search all links from X and run the S3 contrast");
  prove->fallthrough();
  auto* list = app.add_subcommand("list", "List the registered checks");
  list->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  cremona::ReportConfig config;
  config.format = format == "json" ? cremona::ReportFormat::Json : cremona::ReportFormat::Markdown;
  config.seed = seed;
  config.verbosity = verbosity == "full-tree" ? cremona::Verbosity::FullTree : cremona::Verbosity::Summary;
  const bool json = config.format == cremona::ReportFormat::Json;

  if (list->parsed()) {
    for (const auto& v : cremona::verifications())
      std::cout << v.id << (v.alias != v.id ? " (" + v.alias + ")" : "") << "  " << v.title << "\n";
    return kExitPass;
  }

  cremona::LinkTable table = cremona::default_link_table();
  if (!formulas.empty()) {
    std::ifstream in(formulas);
    if (!in) {
      std::cerr << "error: cannot open formula file " << formulas << "\n";
      return kExitUsage;
    }
    try {
      table.apply_overrides(nlohmann::json::parse(in));
    } catch (const std::exception& e) {
      std::cerr << "error: bad formula file " << formulas << ": " << e.what() << "\n";
      return kExitUsage;
    }
  }

  try {
    if (verify->parsed()) {
      if (!cremona::resolve_verification(check_id)) {
        std::cerr << "error: unknown check '" << check_id << "'; run `list` for the registered ids\n";
        return kExitUsage;
      }
      const auto report = cremona::run_verification(check_id, table, config);
      emit(json ? cremona::report_json(report, config).dump(2) + "\n" : cremona::render_markdown(report, config), output);
      if (!report.pass()) {
        std::cerr << "FAIL " << report.id << ": " << report.first_failure() << "\n";
        return kExitFailure;
      }
      return kExitPass;
    }

    nlohmann::json golden_tree;
    try {
      golden_tree = cremona::load_golden_tree(golden);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitUsage;
    }
    const auto report = cremona::run_prove(table, config, golden_tree);
    emit(json ? cremona::report_json(report, config).dump(2) + "\n" : cremona::render_markdown(report, config), output);
    for (const auto& f : report.failures) std::cerr << "FAIL prove: " << f << "\n";
    return report.pass() ? kExitPass : kExitFailure;
  } catch (const cremona::Error& e) {
    std::cerr << "FAIL: " << e.what() << "\n";
    return kExitFailure;
  }
}
