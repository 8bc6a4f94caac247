#include <cstdio>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "qgroup/campaigns.hpp"

using namespace qgroup;

namespace {

void print_summary(const Report& report) {
  for (const auto& c : report.checks) {
    std::printf("%-4s %-48s ", c.pass ? "ok" : "FAIL", c.name.c_str());
    if (c.exact && c.residual == 0) std::printf("exact-zero\n");
    else std::printf("%.3e (%s %.1e)\n", c.residual, c.exact ? "terms" : "tol", c.tolerance);
  }
  std::printf("%zu checks, %d failed\n", report.checks.size(), report.failed());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification campaigns for the quantum group built from G = (p, q, r) and the Heisenberg group"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run verification campaigns and write report.json");
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir, campaigns;
  run->add_option("--config", config_path, "configuration JSON (defaults: standard J, every campaign)");
  run->add_option("--seed", seed, "override the configured seed");
  run->add_option("--out", out_dir, "override the output directory");
  run->add_option("--campaigns", campaigns, "comma-separated subset, e.g. lie,pentagon");

  auto* desc = app.add_subcommand("describe", "explain what a campaign checks");
  std::string name;
  desc->add_option("name", name, "campaign name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*desc) {
      std::cout << describe(name);
      return 0;
    }
    CampaignConfig config;
    if (!config_path.empty()) config = CampaignConfig::load(config_path);
    else config = CampaignConfig::from_json(nlohmann::json::object(), ".");
    if (seed) config.seed = *seed;
    if (out_dir) config.output_dir = *out_dir;
    if (campaigns) config.campaigns = CampaignConfig::parse_campaign_list(*campaigns);
    const Report report = run_campaigns(config);
    report.write(config.output_dir);
    print_summary(report);
    return report.failed() == 0 ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
