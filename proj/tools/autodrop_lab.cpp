// autodrop-lab: configure and run the experiments, emit CSV curves plus a
// plotting helper. Exit codes: 0 ok, 2 invalid config, 3 numeric failure.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "adlab/harness.hpp"

namespace {

int run_kind(const std::string& kind, const std::string& config_path,
             std::uint64_t seed, const std::string& out_dir,
             const std::vector<std::string>& overrides, bool plot) {
  try {
    adlab::KvConfig cfg;
    if (!config_path.empty()) cfg = adlab::KvConfig::load(config_path);
    for (const std::string& ov : overrides) {
      auto eq = ov.find('=');
      if (eq == std::string::npos || eq == 0) {
        std::cerr << "autodrop-lab: override must be key=value: " << ov << "\n";
        return 2;
      }
      cfg.set(ov.substr(0, eq), ov.substr(eq + 1));
    }
    adlab::ExperimentOutput out = adlab::run_experiment(kind, cfg, seed);
    auto manifest = adlab::write_output(kind, cfg, seed, out, out_dir);
    if (plot) adlab::emit_plot_script(manifest);
    std::cout << "wrote " << manifest.parent_path().string() << "\n";
    return 0;
  } catch (const adlab::NumericFailure& e) {
    std::cerr << "autodrop-lab: numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "autodrop-lab: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AutoDrop laboratory: NQM experiments, oracle checks, "
               "schedule validation and desk-scale training runs"};
  app.require_subcommand(1);

  for (const std::string& kind : adlab::kExperimentKinds) {
    auto* sub = app.add_subcommand(kind, "run the " + kind + " experiment");
    auto config_path = std::make_shared<std::string>();
    auto seed = std::make_shared<std::uint64_t>(0);
    auto out_dir = std::make_shared<std::string>("out/" + kind);
    auto overrides = std::make_shared<std::vector<std::string>>();
    auto plot = std::make_shared<bool>(true);
    sub->add_option("--config", *config_path, "key = value config file");
    sub->add_option("--seed", *seed, "random seed");
    sub->add_option("--out", *out_dir, "output directory");
    sub->add_flag("!--no-plot", *plot, "skip plot.py generation");
    sub->add_option("overrides", *overrides, "key=value config overrides");
    sub->callback([kind, config_path, seed, out_dir, overrides, plot] {
      std::exit(
          run_kind(kind, *config_path, *seed, *out_dir, *overrides, *plot));
    });
  }

  auto* plot_cmd =
      app.add_subcommand("plot-script", "regenerate plot.py for a run");
  auto manifest = std::make_shared<std::string>();
  plot_cmd->add_option("manifest", *manifest, "path to manifest.txt")
      ->required();
  plot_cmd->callback([manifest] {
    try {
      auto script = adlab::emit_plot_script(*manifest);
      std::cout << "wrote " << script.string() << "\n";
      std::exit(0);
    } catch (const std::exception& e) {
      std::cerr << "autodrop-lab: " << e.what() << "\n";
      std::exit(2);
    }
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}
