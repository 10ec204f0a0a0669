#include "logimap/config_io.hpp"

#include "logimap/errors.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fmt/core.h>
#include <fstream>
#include <openssl/evp.h>
#include <sstream>

namespace logimap {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(fmt::format("missing field '{}'", key));
  }
  return j.at(key);
}

double number(const Json& j, const char* key) {
  const auto& v = require(j, key);
  if (!v.is_number()) {
    throw ConfigError(fmt::format("field '{}' must be a number (decimal point, not comma)", key));
  }
  return v.get<double>();
}

std::uint64_t count(const Json& j, const char* key) {
  const auto& v = require(j, key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw ConfigError(fmt::format("field '{}' must be a non-negative integer", key));
  }
  return v.get<std::uint64_t>();
}

std::string text(const Json& j, const char* key) {
  const auto& v = require(j, key);
  if (!v.is_string()) throw ConfigError(fmt::format("field '{}' must be a string", key));
  return v.get<std::string>();
}

// Library errors raised while building a config are config errors here.
template <class F>
auto as_config_error(F&& f) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

BinaryConfig parse_binary(const Json& j) {
  InteractionKind kx;
  InteractionKind ky;
  if (j.contains("interaction")) {
    const auto label = text(j, "interaction");
    if (label.size() != 2) throw ConfigError(fmt::format("unknown interaction '{}'", label));
    kx = parse_interaction_kind(label.substr(0, 1));
    ky = parse_interaction_kind(label.substr(1, 1));
  } else {
    kx = parse_interaction_kind(text(j, "kind_x"));
    ky = parse_interaction_kind(text(j, "kind_y"));
  }
  return as_config_error([&] {
    return BinaryConfig(kx, ky, Sensitivity(number(j, "s_x")), Sensitivity(number(j, "s_y")),
                        number(j, "x0"), number(j, "y0"));
  });
}

NetworkConfig parse_network(const Json& j) {
  const auto& seeds_j = require(j, "seeds");
  if (!seeds_j.is_array()) throw ConfigError("'seeds' must be an array");
  std::vector<double> seeds;
  for (const auto& s : seeds_j) {
    if (!s.is_number()) throw ConfigError("seeds must be numbers");
    seeds.push_back(s.get<double>());
  }
  const auto& edges_j = require(j, "edges");
  if (!edges_j.is_array()) throw ConfigError("'edges' must be an array");
  std::vector<NetworkEdge> edges;
  for (const auto& e : edges_j) {
    edges.push_back(as_config_error([&] {
      return NetworkEdge{count(e, "target"), count(e, "source"),
                         parse_interaction_kind(text(e, "kind")), Sensitivity(number(e, "s"))};
    }));
  }
  return NetworkConfig(std::move(seeds), std::move(edges));
}

DrawLaw parse_law(const Json& j, const char* key) {
  const auto& law = require(j, key);
  if (law.is_object() && law.contains("fixed")) return FixedLaw{number(law, "fixed")};
  if (law.is_object() && law.contains("uniform")) {
    const auto& u = law.at("uniform");
    if (!u.is_array() || u.size() != 2 || !u[0].is_number() || !u[1].is_number()) {
      throw ConfigError(fmt::format("'{}.uniform' must be [lo, hi]", key));
    }
    return UniformLaw{u[0].get<double>(), u[1].get<double>()};
  }
  throw ConfigError(fmt::format("'{}' must be {{\"fixed\": v}} or {{\"uniform\": [lo, hi]}}", key));
}

Json law_json(const DrawLaw& law) {
  if (const auto* f = std::get_if<FixedLaw>(&law)) return {{"fixed", f->value}};
  const auto& u = std::get<UniformLaw>(law);
  return {{"uniform", {u.lo, u.hi}}};
}

Json optional_number(const std::optional<std::uint64_t>& v) {
  return v ? Json(*v) : Json(nullptr);
}

} // namespace

RunConfig parse_run_config(const Json& j) {
  if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
  std::string type = j.contains("type") ? text(j, "type")
                     : j.contains("edges") ? "network"
                                           : "binary";
  if (type == "binary") return parse_binary(j);
  if (type == "network") return parse_network(j);
  throw ConfigError(fmt::format("unknown configuration type '{}'", type));
}

Json to_json(const BinaryConfig& c) {
  return {{"type", "binary"},
          {"kind_x", to_string(c.kind_x)},
          {"kind_y", to_string(c.kind_y)},
          {"s_x", c.s_x.value()},
          {"s_y", c.s_y.value()},
          {"x0", c.x0},
          {"y0", c.y0}};
}

Json to_json(const NetworkConfig& c) {
  Json edges = Json::array();
  for (const auto& e : c.edges()) {
    edges.push_back(
        {{"target", e.target}, {"source", e.source}, {"kind", to_string(e.kind)}, {"s", e.s.value()}});
  }
  return {{"type", "network"},
          {"seeds", std::vector<double>(c.seeds().begin(), c.seeds().end())},
          {"edges", std::move(edges)}};
}

Json to_json(const RunConfig& config) {
  return std::visit([](const auto& c) { return to_json(c); }, config);
}

NetworkSpec parse_network_spec(const Json& j) {
  NetworkSpec spec;
  spec.n_systems = count(j, "n_systems");
  spec.pos_per_system = count(j, "pos_per_system");
  spec.neg_per_system = count(j, "neg_per_system");
  if (j.contains("sensitivity_law")) spec.sensitivity_law = parse_law(j, "sensitivity_law");
  if (j.contains("seed_law")) spec.seed_law = parse_law(j, "seed_law");
  if (j.contains("rng_seed")) spec.rng_seed = count(j, "rng_seed");
  spec.validate();
  return spec;
}

Json to_json(const NetworkSpec& spec) {
  return {{"n_systems", spec.n_systems},
          {"pos_per_system", spec.pos_per_system},
          {"neg_per_system", spec.neg_per_system},
          {"sensitivity_law", law_json(spec.sensitivity_law)},
          {"seed_law", law_json(spec.seed_law)},
          {"rng_seed", spec.rng_seed}};
}

StabilityCriterion parse_stability_criterion(const Json& j) {
  StabilityCriterion crit;
  if (j.contains("max_stable_period")) crit.max_stable_period = count(j, "max_stable_period");
  if (j.contains("window")) crit.window = count(j, "window");
  if (j.contains("epsilon")) crit.epsilon = number(j, "epsilon");
  crit.validate();
  return crit;
}

Json to_json(const StabilityCriterion& crit) {
  return {{"max_stable_period", crit.max_stable_period},
          {"window", crit.window},
          {"epsilon", crit.epsilon}};
}

Json to_json(const DetectorConfig& cfg) {
  return {{"transient", cfg.transient},
          {"window", cfg.window},
          {"epsilon", cfg.epsilon},
          {"max_period", cfg.max_period},
          {"extinction_threshold", cfg.extinction_threshold},
          {"extinction_hold", cfg.hold()},
          {"approach_tolerance", cfg.approach_tolerance},
          {"approach_min_drop", cfg.approach_min_drop},
          {"occupancy_grids", cfg.occupancy_grids},
          {"orbital_max_dimension", cfg.orbital_max_dimension},
          {"chaotic_min_dimension", cfg.chaotic_min_dimension}};
}

Json to_json(const StabilityReport& r) {
  Json first = Json::array();
  for (const auto& f : r.first_stable_iter) first.push_back(optional_number(f));
  return {{"r", optional_number(r.r)},
          {"capacity", r.capacity ? Json(*r.capacity) : Json(nullptr)},
          {"detected_at", optional_number(r.detected_at)},
          {"iterations", r.iterations},
          {"grand_mean", r.grand_mean},
          {"grand_std", r.grand_std},
          {"first_stable_iter", std::move(first)},
          {"mean_values", r.mean_values}};
}

Json to_json(const PeriodResult& p) {
  return {{"period", optional_number(p.period)},
          {"cycle_values", p.cycle_values},
          {"residual", p.residual},
          {"best_candidate", p.best_candidate}};
}

Json to_json(const Classification& c) {
  Json j = {{"class", c.attractor.name()}};
  if (c.attractor.kind() == AttractorClass::Kind::Periodic) j["k"] = c.attractor.period();
  if (!c.attractor.note().empty()) j["note"] = c.attractor.note();
  j["period"] = to_json(c.period);
  j["occupancy_dimension"] =
      c.occupancy_dimension ? Json(*c.occupancy_dimension) : Json(nullptr);
  if (c.extinct_since) j["extinct_since"] = *c.extinct_since;
  return j;
}

Json to_json(const PairStats& s) {
  return {{"pearson", s.pearson},
          {"ahead_fraction", s.ahead_fraction},
          {"best_lag", s.best_lag},
          {"lag_correlation", s.lag_correlation}};
}

Json to_json(const TheoremCheck& t) {
  return {{"x_period", optional_number(t.x_period)},
          {"y_period", optional_number(t.y_period)},
          {"x_extinct", t.x_extinct},
          {"y_extinct", t.y_extinct},
          {"applicable", t.applicable()},
          {"consistent", t.consistent()},
          {"holds", t.holds()}};
}

Json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(fmt::format("'{}' is not valid JSON: {}", path.string(), e.what()));
  }
}

void write_text(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError(fmt::format("write to '{}' failed", path.string()));
}

std::string format_value(double v) { return fmt::format("{:.17g}", v); }

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, bool binary) {
  out << 'n';
  if (binary) {
    out << ",x,y";
  } else {
    for (std::size_t i = 0; i < traj.systems(); ++i) out << ",x_" << i;
  }
  out << '\n';
  std::string line;
  for (std::size_t row = 0; row < traj.size(); ++row) {
    line = std::to_string(traj.steps()[row]);
    for (std::size_t i = 0; i < traj.systems(); ++i) {
      line += ',';
      line += format_value(traj.channel(i)[row]);
    }
    line += '\n';
    out << line;
  }
}

Trajectory read_trajectory_csv(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw ConfigError("empty trajectory CSV");
  std::size_t columns = 1;
  for (char ch : header) columns += ch == ',' ? 1 : 0;
  if (header.rfind("n,", 0) != 0 || columns < 2) {
    throw ConfigError(fmt::format("unexpected trajectory CSV header '{}'", header));
  }
  const std::size_t systems = columns - 1;

  std::vector<std::uint64_t> steps;
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> values;
    values.reserve(systems);
    const char* p = line.data();
    const char* end = line.data() + line.size();
    std::uint64_t n = 0;
    auto [q, ec] = std::from_chars(p, end, n);
    if (ec != std::errc{}) throw ConfigError(fmt::format("bad step index in '{}'", line));
    p = q;
    while (p != end) {
      if (*p != ',') throw ConfigError(fmt::format("malformed CSV row '{}'", line));
      ++p;
      double v = 0.0;
      auto [r, ec2] = std::from_chars(p, end, v);
      if (ec2 != std::errc{}) throw ConfigError(fmt::format("bad value in '{}'", line));
      values.push_back(v);
      p = r;
    }
    if (values.size() != systems) {
      throw ConfigError(fmt::format("row '{}' has {} values, expected {}", line, values.size(),
                                    systems));
    }
    steps.push_back(n);
    rows.push_back(std::move(values));
  }

  RecordWindow window;
  if (!steps.empty()) window.start = steps.front();
  if (steps.size() >= 2 && steps[1] > steps[0]) window.stride = steps[1] - steps[0];
  Trajectory traj(systems, window);
  traj.reserve(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) traj.append(steps[k], rows[k]);
  return traj;
}

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  return read_trajectory_csv(in);
}

std::string config_digest(const Json& effective) {
  const std::string canonical = effective.dump();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(canonical.data(), canonical.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

Json make_manifest(std::string_view command, const Json& parameters,
                   const std::vector<std::uint64_t>& rng_seeds) {
  const Json effective = {{"command", command}, {"parameters", parameters}};
  const auto now = std::chrono::system_clock::now();
  const auto secs =
      std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
  return {{"command", command},
          {"parameters", parameters},
          {"config_digest", config_digest(effective)},
          {"tool_version", kToolVersion},
          {"rng_seeds", rng_seeds},
          {"created_unix", secs}};
}

} // namespace logimap
