#pragma once

// JSON configuration, CSV trajectories and run manifests.

#include "logimap/attractor.hpp"
#include "logimap/dynamics.hpp"
#include "logimap/network.hpp"
#include "logimap/trajectory_stats.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>

#include "json.hpp"

namespace logimap {

using Json = nlohmann::json;
using RunConfig = std::variant<BinaryConfig, NetworkConfig>;

inline constexpr std::string_view kToolVersion = "1.0.0";

/// Binary: {"type":"binary","kind_x":"negative","kind_y":"negative","s_x":..,"s_y":..,
/// "x0":..,"y0":..}; "interaction":"NN"|"PN"|"PP" may replace the two kinds.
/// Network: {"type":"network","seeds":[..],"edges":[{"target":i,"source":j,
/// "kind":"negative","s":..}, ..]}. Throws ConfigError on anything malformed.
RunConfig parse_run_config(const Json& j);
Json to_json(const BinaryConfig& config);
Json to_json(const NetworkConfig& config);
Json to_json(const RunConfig& config);

/// {"n_systems","pos_per_system","neg_per_system","sensitivity_law","seed_law",
/// "rng_seed"}; laws are {"fixed": v} or {"uniform": [lo, hi]}.
NetworkSpec parse_network_spec(const Json& j);
Json to_json(const NetworkSpec& spec);

StabilityCriterion parse_stability_criterion(const Json& j);
Json to_json(const StabilityCriterion& crit);
Json to_json(const DetectorConfig& cfg);

Json to_json(const StabilityReport& report);
Json to_json(const Classification& c);
Json to_json(const PeriodResult& p);
Json to_json(const PairStats& s);
Json to_json(const TheoremCheck& t);

/// Reads a JSON document; IoError when unreadable, ConfigError when not JSON.
Json load_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

/// 17 significant digits: parses back to the identical double.
std::string format_value(double v);

/// Header `n,x,y` for binary runs, `n,x_0,…,x_{m−1}` otherwise; LF endings.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj, bool binary);
Trajectory read_trajectory_csv(std::istream& in);
Trajectory read_trajectory_csv(const std::filesystem::path& path);

/// SHA-256 hex digest of the canonical (sorted-key, compact) dump.
std::string config_digest(const Json& effective);

/// {"command","parameters","config_digest","tool_version","rng_seeds","created_unix"}.
/// The digest covers command and parameters only.
Json make_manifest(std::string_view command, const Json& parameters,
                   const std::vector<std::uint64_t>& rng_seeds);

} // namespace logimap
