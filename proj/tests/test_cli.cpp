#include "doctest.h"

#include "../tools/cli_commands.hpp"
#include "logimap/attractor.hpp"
#include "logimap/config_io.hpp"
#include "logimap/trajectory_stats.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace logimap;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("logimap_cli_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)) + "_" +
            std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

// Output without the wall-clock manifest field.
std::string stable_part(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string kept;
  while (std::getline(in, line)) {
    if (line.find("created_unix") == std::string::npos) kept += line + "\n";
  }
  return kept;
}

const char* kFig2 =
    R"({"interaction":"NN","s_x":0.9998,"s_y":0.999,"x0":0.001,"y0":0.9})";

} // namespace

TEST_CASE("exit codes") {
  TempDir dir;
  CHECK(run({}).code == cli::kConfigError);
  CHECK(run({"simulate"}).code == cli::kConfigError);
  CHECK(run({"simulate", "--config", (dir.path / "missing.json").string()}).code ==
        cli::kIoError);
  const auto bad = dir.write("bad.json", R"({"interaction":"NN","s_x":"0,5"})");
  CHECK(run({"simulate", "--config", bad}).code == cli::kConfigError);
  const auto broken = dir.write("broken.json", "{not json");
  CHECK(run({"classify", "--config", broken}).code == cli::kConfigError);
  CHECK(run({"figures", "12"}).code == cli::kConfigError);
  CHECK(run({"--version"}).code == cli::kOk);
  const auto cfg = dir.write("c.json", kFig2);
  CHECK(run({"simulate", "--config", cfg, "--out", "/proc/no_such_dir/x"}).code ==
        cli::kIoError);
}

TEST_CASE("simulate writes the CSV and manifest") {
  TempDir dir;
  const auto sym = dir.write("sym.json", R"({"interaction":"PP","s_x":1,"s_y":1,"x0":0.5,"y0":0.5})");
  REQUIRE(run({"simulate", "--config", sym, "--steps", "100", "--out", dir.path.string()}).code ==
          cli::kOk);
  std::ifstream csv(dir.path / "trajectory.csv");
  std::string line;
  std::getline(csv, line);
  CHECK(line == "n,x,y");
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    CHECK(line.substr(line.find(',')) == ",0.5,0.5");
  }
  CHECK(rows == 101);
  const auto manifest = load_json(dir.path / "manifest.json");
  CHECK(manifest["command"] == "simulate");
  CHECK(manifest["config_digest"].get<std::string>().size() == 64);

  REQUIRE(run({"simulate", "--config", sym, "--steps", "0", "--out", dir.path.string()}).code ==
          cli::kOk);
  CHECK(read_trajectory_csv(dir.path / "trajectory.csv").size() == 1);
}

TEST_CASE("simulate strides a long run") {
  TempDir dir;
  const auto cfg = dir.write("fig2.json", kFig2);
  REQUIRE(run({"simulate", "--config", cfg, "--steps", "1000000", "--stride", "100", "--out",
               dir.path.string()})
              .code == cli::kOk);
  const auto t = read_trajectory_csv(dir.path / "trajectory.csv");
  CHECK(t.size() == 10'001);
  // Stride 100 is even, so the sampled 2-cycle shows as a constant tail.
  const auto x = t.channel(0);
  CHECK(std::abs(x[x.size() - 1] - x[x.size() - 2]) < 1e-12);
}

TEST_CASE("manifest digest follows the parameters") {
  TempDir dir;
  const auto cfg = dir.write("fig2.json", kFig2);
  auto digest = [&](std::vector<std::string> extra) {
    std::vector<std::string> args = {"simulate", "--config", cfg, "--out", dir.path.string()};
    args.insert(args.end(), extra.begin(), extra.end());
    REQUIRE(run(args).code == cli::kOk);
    return load_json(dir.path / "manifest.json")["config_digest"].get<std::string>();
  };
  const auto base = digest({"--steps", "50"});
  CHECK(digest({"--steps", "50"}) == base);
  CHECK(digest({"--steps", "51"}) != base);
  CHECK(digest({"--steps", "50", "--stride", "2"}) != base);
}

TEST_CASE("classify reports attractors and theorem consistency") {
  TempDir dir;
  const auto fig8 = dir.write(
      "fig8.json", R"({"interaction":"NN","s_x":0.99988,"s_y":0.9976,"x0":0.765,"y0":0.234})");
  const auto r = run({"classify", "--config", fig8});
  REQUIRE(r.code == cli::kOk);
  const auto j = Json::parse(r.out);
  CHECK(j["x"]["class"] == "periodic");
  CHECK(j["x"]["k"] == 16);
  CHECK(j["y"]["class"] == "periodic");
  CHECK(j["y"]["k"] == 16);
  CHECK(j["theorem_consistent"] == true);

  const auto pp = dir.write("pp.json", R"({"interaction":"PP","s_x":0.9,"s_y":0.8,"x0":0.3,"y0":0.7})");
  const auto jp = Json::parse(run({"classify", "--config", pp}).out);
  CHECK(jp["x"]["class"] == "extinct");
  CHECK(jp["y"]["class"] == "extinct");

  const auto dead = dir.write("dead.json", R"({"interaction":"NN","s_x":0.5,"s_y":0.5,"x0":0,"y0":0.4})");
  const auto jd = Json::parse(run({"classify", "--config", dead}).out);
  CHECK(jd["x"]["class"] == "extinct");
  CHECK(jd["x"]["extinct_since"] == 0);
}

TEST_CASE("classify on a simulated CSV matches in-process analysis") {
  TempDir dir;
  const auto cfg = dir.write("pn.json", R"({"interaction":"PN","s_x":0.988,"s_y":0.3,"x0":0.9,"y0":0.9})");
  REQUIRE(run({"simulate", "--config", cfg, "--steps", "30000", "--out", dir.path.string()}).code ==
          cli::kOk);
  const auto r = run({"classify", "--trajectory", (dir.path / "trajectory.csv").string(),
                      "--transient", "5000", "--window", "20000"});
  REQUIRE(r.code == cli::kOk);
  const auto j = Json::parse(r.out);

  DetectorConfig det;
  det.transient = 5000;
  det.window = 20'000;
  const auto t = iterate(BinaryConfig::pn(0.988, 0.3, 0.9, 0.9), 30'000);
  const auto classes = classify(t, det);
  CHECK(j["x"] == to_json(classes[0]));
  CHECK(j["y"] == to_json(classes[1]));
  const auto stats = pair_stats(t.channel(0).last(20'000), t.channel(1).last(20'000), 16);
  CHECK(j["pair_stats"] == to_json(stats));
}

TEST_CASE("figures writes SVG") {
  TempDir dir;
  const auto out = (dir.path / "fig3.svg").string();
  const auto r = run({"figures", "3", "--out", out, "--steps", "20000"});
  REQUIRE(r.code == cli::kOk);
  std::ifstream in(out);
  std::string head;
  std::getline(in, head);
  CHECK(head.rfind("<svg", 0) == 0);
  CHECK(run({"figures", "3", "--out", out, "--zoom-center", "nope"}).code == cli::kConfigError);
}

TEST_CASE("network prints a report and a summary line") {
  TempDir dir;
  const auto spec = dir.write(
      "net.json", R"({"n_systems":60,"pos_per_system":6,"neg_per_system":24,"rng_seed":3})");
  const auto a = run({"network", "--config", spec, "--max-iter", "3000"});
  REQUIRE(a.code == cli::kOk);
  CHECK(a.out.find("\nr=") != std::string::npos);
  CHECK(stable_part(run({"network", "--config", spec, "--max-iter", "3000"}).out) ==
        stable_part(a.out));
  const auto b = run({"network", "--config", spec, "--max-iter", "3000", "--seed", "4"});
  CHECK(stable_part(b.out) != stable_part(a.out));

  const auto infeasible =
      dir.write("bad.json", R"({"n_systems":3,"pos_per_system":2,"neg_per_system":2})");
  CHECK(run({"network", "--config", infeasible}).code == cli::kConfigError);
}

TEST_CASE("sweep runs every replicate") {
  TempDir dir;
  const auto sweep = dir.write(
      "sweep.json",
      R"({"specs":[{"n_systems":40,"pos_per_system":4,"neg_per_system":16,"rng_seed":1}],"replicates":3,"max_iter":2000})");
  const auto r = run({"sweep", "--config", sweep});
  REQUIRE(r.code == cli::kOk);
  for (int i = 0; i < 3; ++i) {
    CHECK(r.out.find("spec=0 replicate=" + std::to_string(i)) != std::string::npos);
  }
  CHECK(stable_part(run({"sweep", "--config", sweep}).out) == stable_part(r.out));
}

TEST_CASE("theorem-check on a config and on samples") {
  TempDir dir;
  const auto cfg = dir.write("fig2.json", kFig2);
  const auto single = Json::parse(run({"theorem-check", "--config", cfg}).out);
  CHECK(single["holds"] == true);
  CHECK(single["x_period"] == 2);

  const auto sampled = run({"theorem-check", "--samples", "12", "--seed", "5", "--max-period", "64"});
  REQUIRE(sampled.code == cli::kOk);
  const auto j = Json::parse(sampled.out);
  CHECK(j["samples"] == 12);
  CHECK(j["applicable"].get<int>() + j["excluded_extinct"].get<int>() == 12);
  CHECK(run({"theorem-check"}).code == cli::kConfigError);
}
