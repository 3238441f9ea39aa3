#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "covacap/config.hpp"
#include "covacap/errors.hpp"

namespace {

struct CliOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> restarts;
  std::optional<int> samples;
  std::optional<std::string> base;
};

// Precedence for the seed: --seed flag, then COVACAP_SEED, then the config
// file, then the built-in default.
void apply_overrides(covacap::ChannelConfig& cfg, const CliOverrides& ov) {
  if (ov.seed) {
    cfg.options.seed = *ov.seed;
  } else if (const char* env = std::getenv("COVACAP_SEED")) {
    try {
      cfg.options.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw covacap::ParseError(std::string("COVACAP_SEED is not an integer: ") +
                                env);
    }
  }
  if (ov.restarts) {
    if (*ov.restarts < 1)
      throw covacap::ValidationError("restarts must be positive");
    cfg.options.restarts = *ov.restarts;
  }
  if (ov.samples) {
    if (*ov.samples < 0)
      throw covacap::ValidationError("samples must be nonnegative");
    cfg.options.samples = *ov.samples;
  }
  if (ov.base) {
    if (*ov.base == "2")
      cfg.options.log_base = 2.0;
    else if (*ov.base == "e")
      cfg.options.log_base = std::exp(1.0);
    else
      throw covacap::ValidationError("--base must be 2 or e");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "covacap: capacities of mixed unitary channels from group "
      "representations"};
  app.require_subcommand(1);

  std::string config_path;
  std::string format = "json";
  int level = 1;
  CliOverrides ov;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("config", config_path, "path to a channel config (JSON)")
        ->required();
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    cmd->add_option("--seed", ov.seed, "override the random seed");
    cmd->add_option("--restarts", ov.restarts, "override optimizer restarts");
    cmd->add_option("--samples", ov.samples, "override oracle sample count");
    cmd->add_option("--base", ov.base, "logarithm base")
        ->check(CLI::IsMember({"2", "e"}));
  };

  CLI::App* describe =
      app.add_subcommand("describe", "group, representation and subgroup facts");
  add_common(describe);
  CLI::App* capacity =
      app.add_subcommand("capacity", "closed-form capacity with cross-check");
  add_common(capacity);
  CLI::App* verify =
      app.add_subcommand("verify", "sampling oracles for the majorization claims");
  add_common(verify);
  verify->add_option("--level", level, "verification depth")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    const auto t0 = std::chrono::steady_clock::now();
    covacap::ChannelConfig cfg = covacap::parse_config(config_path);
    apply_overrides(cfg, ov);

    covacap::RunResult result = [&] {
      if (describe->parsed()) return covacap::run_describe(cfg);
      if (capacity->parsed()) return covacap::run_capacity(cfg);
      return covacap::run_verify(cfg, level);
    }();

    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (format == "text")
      std::cout << covacap::render_text(result.report, seconds);
    else
      std::cout << result.report.dump(2) << "\n";
    return result.exit_code;
  } catch (const covacap::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
}
