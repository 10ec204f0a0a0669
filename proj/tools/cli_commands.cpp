#include "cli_commands.hpp"

#include "logimap/attractor.hpp"
#include "logimap/config_io.hpp"
#include "logimap/errors.hpp"
#include "logimap/figures.hpp"
#include "logimap/network.hpp"
#include "logimap/sampling.hpp"
#include "logimap/trajectory_stats.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fmt/core.h>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace logimap::cli {

namespace fs = std::filesystem;

namespace {

struct DetectorOptions {
  std::uint64_t transient = DetectorConfig{}.transient;
  std::uint64_t window = DetectorConfig{}.window;
  double epsilon = DetectorConfig{}.epsilon;
  std::uint64_t max_period = DetectorConfig{}.max_period;

  void add_to(CLI::App* app) {
    app->add_option("--transient", transient, "Steps discarded before attractor tests")
        ->capture_default_str();
    app->add_option("--window", window, "Values compared by the period test")
        ->capture_default_str();
    app->add_option("--epsilon", epsilon, "Period match tolerance")->capture_default_str();
    app->add_option("--max-period", max_period, "Largest period searched")
        ->capture_default_str();
  }

  DetectorConfig config() const {
    DetectorConfig cfg;
    cfg.transient = transient;
    cfg.window = window;
    cfg.epsilon = epsilon;
    cfg.max_period = max_period;
    cfg.validate();
    return cfg;
  }
};

void emit_json(const Json& j, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << j.dump(2) << '\n';
  } else {
    write_text(out_path, j.dump(2) + "\n");
  }
}

std::string summary_line(const StabilityReport& r) {
  return fmt::format("r={} capacity={} mean={} std={}",
                     r.r ? std::to_string(*r.r) : std::string("none"),
                     r.capacity ? fmt::format("{}", *r.capacity) : std::string("none"),
                     r.grand_mean, r.grand_std);
}

MapPoint parse_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw ConfigError(fmt::format("zoom center '{}' must be 'a,b'", text));
  }
  try {
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw ConfigError(fmt::format("zoom center '{}' must be 'a,b'", text));
  }
}

// ---- simulate ----

struct SimulateOptions {
  std::string config;
  std::uint64_t steps = 1000;
  std::uint64_t stride = 1;
  std::uint64_t start = 0;
  std::string out = ".";
};

int simulate(const SimulateOptions& o, std::ostream& out) {
  const auto config = parse_run_config(load_json(o.config));
  const RecordWindow window{o.start, o.stride};
  if (window.stride == 0) throw ConfigError("--stride must be at least 1");
  const bool binary = std::holds_alternative<BinaryConfig>(config);
  const auto traj = std::visit([&](const auto& c) { return iterate(c, o.steps, window); }, config);

  std::error_code ec;
  fs::create_directories(o.out, ec);
  if (ec) throw IoError(fmt::format("cannot create '{}': {}", o.out, ec.message()));
  const auto csv_path = fs::path(o.out) / "trajectory.csv";
  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) throw IoError(fmt::format("cannot write '{}'", csv_path.string()));
  write_trajectory_csv(csv, traj, binary);
  csv.close();
  if (!csv) throw IoError(fmt::format("write to '{}' failed", csv_path.string()));

  const Json params = {{"config", to_json(config)},
                       {"steps", o.steps},
                       {"start", o.start},
                       {"stride", o.stride}};
  write_text(fs::path(o.out) / "manifest.json", make_manifest("simulate", params, {}).dump(2) + "\n");
  out << fmt::format("wrote {} rows to {}\n", traj.size(), csv_path.string());
  return kOk;
}

// ---- classify ----

struct ClassifyOptions {
  std::string config;
  std::string trajectory;
  std::uint64_t steps = 0;
  std::size_t max_lag = 16;
  std::string out;
  DetectorOptions detector;
};

int classify_cmd(const ClassifyOptions& o, std::ostream& out) {
  if (o.config.empty() == o.trajectory.empty()) {
    throw ConfigError("classify needs exactly one of --config or --trajectory");
  }
  const auto cfg = o.detector.config();

  Json params = {{"detector", to_json(cfg)}, {"max_lag", o.max_lag}};
  std::optional<Trajectory> traj;
  bool binary = false;
  if (!o.config.empty()) {
    const auto config = parse_run_config(load_json(o.config));
    const std::uint64_t steps = std::max(o.steps, cfg.run_length());
    binary = std::holds_alternative<BinaryConfig>(config);
    traj = std::visit([&](const auto& c) { return iterate(c, steps); }, config);
    params["config"] = to_json(config);
    params["steps"] = steps;
  } else {
    traj = read_trajectory_csv(fs::path(o.trajectory));
    binary = traj->systems() == 2;
    params["trajectory"] = o.trajectory;
  }

  const auto classes = classify(*traj, cfg);
  Json report;
  if (binary) {
    const auto x = traj->channel(0);
    const auto y = traj->channel(1);
    report["x"] = to_json(classes[0]);
    report["y"] = to_json(classes[1]);
    const auto w = static_cast<std::size_t>(std::min<std::uint64_t>(cfg.window, x.size()));
    report["pair_stats"] = to_json(pair_stats(x.last(w), y.last(w), std::min(o.max_lag, w / 4)));
    TheoremCheck check;
    check.x_extinct = classes[0].attractor.kind() == AttractorClass::Kind::Extinct;
    check.y_extinct = classes[1].attractor.kind() == AttractorClass::Kind::Extinct;
    check.x_period = classes[0].period.period;
    check.y_period = classes[1].period.period;
    report["theorem"] = to_json(check);
    report["theorem_consistent"] = check.holds();
  } else {
    Json systems = Json::array();
    for (const auto& c : classes) systems.push_back(to_json(c));
    report["systems"] = std::move(systems);
  }
  report["manifest"] = make_manifest("classify", params, {});
  emit_json(report, o.out, out);
  return kOk;
}

// ---- figures ----

struct FiguresOptions {
  int id = 0;
  bool all = false;
  std::string out;
  std::uint64_t steps = FigureOptions{}.steps;
  std::optional<double> zoom;
  std::string zoom_center;
  int pixels = 800;
};

int figures_cmd(const FiguresOptions& o, std::ostream& out) {
  FigureOptions fo;
  fo.steps = o.steps;
  fo.zoom = o.zoom;
  fo.pixels = o.pixels;
  if (!o.zoom_center.empty()) fo.zoom_center = parse_point(o.zoom_center);

  std::vector<int> ids;
  if (o.all) {
    for (const auto& f : figure_catalog()) ids.push_back(f.id);
  } else {
    figure_spec(o.id);
    ids.push_back(o.id);
  }
  for (int id : ids) {
    fs::path path;
    if (o.all) {
      const fs::path dir = o.out.empty() ? fs::path(".") : fs::path(o.out);
      std::error_code ec;
      fs::create_directories(dir, ec);
      if (ec) throw IoError(fmt::format("cannot create '{}': {}", dir.string(), ec.message()));
      path = dir / fmt::format("figure{}.svg", id);
    } else {
      path = o.out.empty() ? fs::path(fmt::format("figure{}.svg", id)) : fs::path(o.out);
    }
    const auto result = render_figure(figure_spec(id), fo);
    write_text(path, result.svg);
    out << fmt::format("figure {}: x={} y={} -> {}\n", id, result.x.attractor.name(),
                       result.y.attractor.name(), path.string());
  }
  return kOk;
}

// ---- network / sweep ----

struct StabilityOptions {
  std::optional<std::uint64_t> max_iter;
  std::optional<std::uint64_t> window;
  std::optional<double> epsilon;
  std::optional<std::uint64_t> max_stable_period;

  void add_to(CLI::App* app) {
    app->add_option("--max-iter", max_iter, "Iteration budget (default 1000)");
    app->add_option("--window", window, "Trailing window of the stability test (default 32)");
    app->add_option("--epsilon", epsilon, "Stability tolerance (default 1e-6)");
    app->add_option("--max-stable-period", max_stable_period,
                    "Largest period counted as stable (default 2)");
  }

  std::pair<StabilityCriterion, std::uint64_t> resolve(const Json& doc) const {
    StabilityCriterion crit =
        doc.contains("criterion") ? parse_stability_criterion(doc.at("criterion")) : StabilityCriterion{};
    if (window) crit.window = *window;
    if (epsilon) crit.epsilon = *epsilon;
    if (max_stable_period) crit.max_stable_period = *max_stable_period;
    crit.validate();
    std::uint64_t iters = 1000;
    if (doc.contains("max_iter")) {
      if (!doc.at("max_iter").is_number_unsigned()) throw ConfigError("'max_iter' must be a non-negative integer");
      iters = doc.at("max_iter").get<std::uint64_t>();
    }
    if (max_iter) iters = *max_iter;
    return {crit, iters};
  }
};

struct NetworkOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string means_csv;
  StabilityOptions stability;
};

int network_cmd(const NetworkOptions& o, std::ostream& out) {
  const Json doc = load_json(o.config);
  NetworkSpec spec = parse_network_spec(doc);
  if (o.seed) spec.rng_seed = *o.seed;
  const auto [crit, max_iter] = o.stability.resolve(doc);

  const auto report = run_stability(build_network(spec), crit, max_iter);
  const Json params = {{"spec", to_json(spec)}, {"criterion", to_json(crit)}, {"max_iter", max_iter}};
  Json j = to_json(report);
  j["manifest"] = make_manifest("network", params, {spec.rng_seed});
  emit_json(j, o.out, out);

  if (!o.means_csv.empty()) {
    std::string csv = "system,mean\n";
    for (std::size_t i = 0; i < report.mean_values.size(); ++i) {
      csv += fmt::format("{},{}\n", i, format_value(report.mean_values[i]));
    }
    write_text(o.means_csv, csv);
  }
  out << summary_line(report) << '\n';
  return kOk;
}

struct SweepOptions {
  std::string config;
  std::optional<std::size_t> replicates;
  std::string out;
  StabilityOptions stability;
};

int sweep_cmd(const SweepOptions& o, std::ostream& out) {
  const Json doc = load_json(o.config);
  if (!doc.contains("specs") || !doc.at("specs").is_array()) {
    throw ConfigError("sweep config needs a 'specs' array");
  }
  std::vector<NetworkSpec> specs;
  for (const auto& s : doc.at("specs")) specs.push_back(parse_network_spec(s));
  std::size_t replicates = 1;
  if (doc.contains("replicates")) {
    if (!doc.at("replicates").is_number_unsigned()) throw ConfigError("'replicates' must be a positive integer");
    replicates = doc.at("replicates").get<std::size_t>();
  }
  if (o.replicates) replicates = *o.replicates;
  const auto [crit, max_iter] = o.stability.resolve(doc);

  const auto results = sweep_stability(specs, crit, max_iter, replicates);
  Json arr = Json::array();
  Json spec_json = Json::array();
  std::vector<std::uint64_t> seeds;
  for (const auto& s : specs) spec_json.push_back(to_json(s));
  for (const auto& r : results) {
    Json entry = {{"spec_index", r.spec_index}, {"replicate", r.replicate}, {"rng_seed", r.rng_seed}};
    if (r.report) {
      entry["report"] = to_json(*r.report);
    } else {
      entry["error"] = r.error;
    }
    arr.push_back(std::move(entry));
    seeds.push_back(r.rng_seed);
  }
  const Json params = {{"specs", spec_json},
                       {"replicates", replicates},
                       {"criterion", to_json(crit)},
                       {"max_iter", max_iter}};
  emit_json({{"results", arr}, {"manifest", make_manifest("sweep", params, seeds)}}, o.out, out);
  for (const auto& r : results) {
    out << fmt::format("spec={} replicate={} ", r.spec_index, r.replicate)
        << (r.report ? summary_line(*r.report) : "error=" + r.error) << '\n';
  }
  return kOk;
}

// ---- theorem-check ----

struct TheoremOptions {
  std::string config;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::string out;
  DetectorOptions detector;
};

int theorem_cmd(const TheoremOptions& o, std::ostream& out) {
  const auto cfg = o.detector.config();
  if (!o.config.empty()) {
    const auto config = parse_run_config(load_json(o.config));
    const auto* binary = std::get_if<BinaryConfig>(&config);
    if (binary == nullptr) {
      throw ConfigError("the attractors theorem applies only to binary interactions");
    }
    Json j = to_json(check_attractors_theorem(*binary, cfg));
    j["config"] = to_json(*binary);
    emit_json(j, o.out, out);
    return kOk;
  }
  if (o.samples == 0) throw ConfigError("theorem-check needs --config or --samples N");

  std::vector<TheoremCheck> checks(o.samples);
  const auto n = static_cast<std::ptrdiff_t>(o.samples);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    checks[i] = check_attractors_theorem(rotating_binary_config(o.seed, i), cfg);
  }
  std::size_t applicable = 0;
  Json violations = Json::array();
  for (std::uint64_t i = 0; i < o.samples; ++i) {
    if (checks[i].applicable()) ++applicable;
    if (!checks[i].holds()) {
      Json v = to_json(checks[i]);
      v["config"] = to_json(rotating_binary_config(o.seed, i));
      violations.push_back(std::move(v));
    }
  }
  emit_json({{"samples", o.samples},
             {"seed", o.seed},
             {"applicable", applicable},
             {"excluded_extinct", o.samples - applicable},
             {"violations", violations},
             {"holds", violations.empty()}},
            o.out, out);
  return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coupled logistic interaction simulator and attractor analysis", "logimap"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Iterate a configuration and write trajectory.csv");
  sim_cmd->add_option("--config", sim.config, "Binary or network configuration (JSON)")->required();
  sim_cmd->add_option("--steps", sim.steps, "Iterations to run")->capture_default_str();
  sim_cmd->add_option("--stride", sim.stride, "Record every stride-th iteration")->capture_default_str();
  sim_cmd->add_option("--start", sim.start, "First recorded iteration")->capture_default_str();
  sim_cmd->add_option("--out", sim.out, "Output directory")->capture_default_str();

  ClassifyOptions cls;
  auto* cls_cmd = app.add_subcommand(
      "classify",
      "Classify attractors and pair statistics. best_lag > 0 means y follows x by that many steps");
  cls_cmd->add_option("--config", cls.config, "Configuration to run (JSON)");
  cls_cmd->add_option("--trajectory", cls.trajectory, "Recorded trajectory.csv to analyse");
  cls_cmd->add_option("--steps", cls.steps, "Iterations (at least transient + window - 1)");
  cls_cmd->add_option("--max-lag", cls.max_lag, "Largest lag in the synchrony search")->capture_default_str();
  cls_cmd->add_option("--out", cls.out, "Write the JSON report here instead of stdout");
  cls.detector.add_to(cls_cmd);

  FiguresOptions fig;
  auto* fig_cmd = app.add_subcommand("figures", "Render a reference return-map figure (1..11) as SVG");
  fig_cmd->add_option("id", fig.id, "Figure id")->check(CLI::Range(1, 11));
  fig_cmd->add_flag("--all", fig.all, "Render every figure into --out (a directory)");
  fig_cmd->add_option("--out", fig.out, "Output SVG path (directory with --all)");
  fig_cmd->add_option("--steps", fig.steps, "Iterations to plot")->capture_default_str();
  fig_cmd->add_option("--zoom", fig.zoom, "Override the figure zoom factor");
  fig_cmd->add_option("--zoom-center", fig.zoom_center, "View center 'a,b' (default: point centroid)");
  fig_cmd->add_option("--pixels", fig.pixels, "Plot side in pixels")->capture_default_str();

  NetworkOptions net;
  auto* net_cmd = app.add_subcommand("network", "Build a random network and measure time to stability");
  net_cmd->add_option("--config", net.config, "Network spec (JSON)")->required();
  net_cmd->add_option("--seed", net.seed, "Override the spec's rng_seed");
  net_cmd->add_option("--out", net.out, "Write the JSON report here instead of stdout");
  net_cmd->add_option("--means-csv", net.means_csv, "Write per-system means as CSV");
  net.stability.add_to(net_cmd);

  SweepOptions swp;
  auto* swp_cmd = app.add_subcommand("sweep", "Run network specs x replicates in parallel");
  swp_cmd->add_option("--config", swp.config, "Sweep file with a 'specs' array (JSON)")->required();
  swp_cmd->add_option("--replicates", swp.replicates, "Override the replicate count");
  swp_cmd->add_option("--out", swp.out, "Write the JSON results here instead of stdout");
  swp.stability.add_to(swp_cmd);

  TheoremOptions thm;
  auto* thm_cmd = app.add_subcommand("theorem-check", "Check that X and Y share their period");
  thm_cmd->add_option("--config", thm.config, "Binary configuration (JSON)");
  thm_cmd->add_option("--samples", thm.samples, "Check N seeded random NN/PN/PP configs instead");
  thm_cmd->add_option("--seed", thm.seed, "Seed of the random configs")->capture_default_str();
  thm_cmd->add_option("--out", thm.out, "Write the JSON result here instead of stdout");
  thm.detector.add_to(thm_cmd);

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    for (const auto* sub : app.get_subcommands()) target = sub;
    out << target->help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return kOk;
  } catch (const CLI::Success&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    if (sim_cmd->parsed()) return simulate(sim, out);
    if (cls_cmd->parsed()) return classify_cmd(cls, out);
    if (fig_cmd->parsed()) {
      if (!fig.all && fig.id == 0) throw ConfigError("figures needs an id (1..11) or --all");
      return figures_cmd(fig, out);
    }
    if (net_cmd->parsed()) return network_cmd(net, out);
    if (swp_cmd->parsed()) return sweep_cmd(swp, out);
    if (thm_cmd->parsed()) return theorem_cmd(thm, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const InsufficientDataError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kConfigError;
}

} // namespace logimap::cli
