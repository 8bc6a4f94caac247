// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>

#include "qgroup/campaigns.hpp"

using namespace qgroup;

namespace {

struct Tally {
  int failed = 0;
  void line(int id, const std::string& what, bool ok, const std::string& detail) {
    std::printf("%s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
    std::fflush(stdout);
    failed += !ok;
  }
};

CampaignConfig config(const std::vector<std::string>& campaigns, const nlohmann::json& J = nullptr) {
  nlohmann::json j{{"campaigns", campaigns},
                   {"output_dir", (std::filesystem::temp_directory_path() / "qgroup_acceptance").string()}};
  if (!J.is_null()) j["J"] = J;
  return CampaignConfig::from_json(j, ".");
}

// every selected check passes; exact ones must be exactly zero; returns a short summary
bool all_pass(const Report& r, const std::function<bool(const CheckRecord&)>& select, std::string& detail,
              double max_seconds = 0) {
  int count = 0, bad = 0;
  double slowest = 0;
  for (const auto& c : r.checks) {
    if (!select(c)) continue;
    ++count;
    slowest = std::max(slowest, c.seconds);
    if (!c.pass || (c.comparison == Comparison::exact_zero && c.residual != 0)) {
      ++bad;
      detail += c.name + " failed; ";
    }
    if (max_seconds > 0 && c.seconds > max_seconds) {
      ++bad;
      detail += c.name + " too slow; ";
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d checks, %d bad, slowest %.2fs", count, bad, slowest);
  detail += buf;
  return count > 0 && bad == 0;
}

bool in(const CheckRecord& c, std::initializer_list<const char*> campaigns) {
  for (const char* name : campaigns)
    if (c.campaign == name) return true;
  return false;
}

bool named(const CheckRecord& c, const std::string& prefix) { return c.name.rfind(prefix, 0) == 0; }

}  // namespace

int main() {
  Tally tally;
  const nlohmann::json J3{{"n", 3}, {"J", {{"0", "1/2", "-2"}, {"-1/2", "0", "3/4"}, {"2", "-3/4", "0"}}}};

  // 1: exact-zero suite at n = 2 (standard J) and n = 3
  {
    std::string detail;
    bool ok = true;
    for (const auto& Jj : {nlohmann::json(nullptr), J3}) {
      const auto r = run_campaigns(config({"lie", "poisson", "cocycles"}, Jj));
      std::string d;
      ok &= all_pass(r, [](const CheckRecord&) { return true; }, d, 1.0);
      detail += "n=" + std::to_string(r.J.n()) + ": " + d + "; ";
    }
    tally.line(1, "exact-zero algebraic suite", ok, detail);
  }

  // the full default run, reused by criteria 2-8
  const auto t0 = std::chrono::steady_clock::now();
  const auto full = run_campaigns(config(campaign_names()));
  const double full_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  {
    std::string detail;
    const bool ok = all_pass(full, [](const CheckRecord& c) {
      return named(c, "pentagon.pentagon_V") || named(c, "pentagon.mutation_");
    }, detail);
    tally.line(2, "pentagon for V and V_Theta, perturbed Theta fails", ok, detail);
  }
  {
    std::string detail;
    const bool ok = all_pass(full, [](const CheckRecord& c) { return named(c, "duality.duality_"); }, detail);
    tally.line(3, "duality V_hat = reordered V_Theta, 20 random J at n = 2 and 3", ok, detail);
  }
  {
    std::string detail;
    const bool ok = all_pass(full, [](const CheckRecord& c) { return in(c, {"comultiplication"}); }, detail);
    tally.line(4, "comultiplication: 50 operator triples, 100 function points", ok, detail);
  }
  {
    std::string detail;
    const bool ok = all_pass(full, [](const CheckRecord& c) { return in(c, {"quantize"}); }, detail);
    tally.line(5, "deformation quantization: hbar = 0 limits, oracle, associativity, involution", ok, detail);
  }
  {
    std::string detail;
    const double secs = full.campaign_seconds.count("limit") ? full.campaign_seconds.at("limit") : 0;
    bool ok = all_pass(full, [](const CheckRecord& c) { return named(c, "limit.pair"); }, detail);
    int studies = 0;
    for (const auto& [name, text] : full.tables) studies += name.rfind("limit_", 0) == 0;
    ok &= studies == 5 && secs <= 180;
    detail += "; " + std::to_string(studies) + " pairs in " + std::to_string(secs) + "s";
    tally.line(6, "semiclassical slope >= 0.9 in sup and L1 surrogate", ok, detail);
  }
  {
    std::string detail;
    const bool ok = all_pass(full, [](const CheckRecord& c) {
      return in(c, {"antipode"}) || c.name == "haar.left_invariance";
    }, detail);
    tally.line(7, "kappa involution, slice identity, K conjugation, left invariance", ok, detail);
  }

  // 8: rerun everything with the same seed
  {
    const auto again = run_campaigns(config(campaign_names()));
    const bool ok = again.to_json().dump(2) == full.to_json().dump(2) && again.tables == full.tables;
    tally.line(8, "byte-identical rerun with a fixed seed", ok,
               std::to_string(full.checks.size()) + " checks, " + std::to_string(full.tables.size()) + " tables");
  }

  std::printf("full default run: %.1fs\n", full_seconds);
  return tally.failed == 0 ? 0 : 1;
}
