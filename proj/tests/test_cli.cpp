#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "avbench/cli.hpp"
#include "avbench/report.hpp"

using namespace avbench;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string fixture(const std::string& name) { return std::string(AVBENCH_FIXTURES) + "/" + name; }

fs::path temp_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("avbench_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, std::string_view text) { std::ofstream(p, std::ios::binary) << text; }

// Synthesizes a fixture scenario into `dir` and returns the log path.
std::string synth(const fs::path& dir, const std::string& scenario, const std::string& stem) {
  const auto prefix = (dir / stem).string();
  const auto r = run({"synth", fixture(scenario), "--out", prefix});
  REQUIRE(r.code == cli::kExitOk);
  return prefix + ".log";
}

}  // namespace

TEST_CASE("synth then metrics reproduces the ground truth") {
  const auto dir = temp_dir("truth");
  const auto log = synth(dir, "two_interventions.scenario", "two");
  const auto truth = Json::parse(slurp(dir / "two.truth.json"));
  const auto r = run({"metrics", log});
  REQUIRE(r.code == cli::kExitOk);
  const auto doc = Json::parse(r.out);
  const auto& overall = doc.at("overall");
  CHECK(overall.at("n_interventions") == 2);
  CHECK(overall.at("auto_distance").get<double>() ==
        doctest::Approx(truth.at("auto_distance").get<double>()).epsilon(1e-6));
  CHECK(overall.at("manual_uptime").get<double>() == doctest::Approx(10.0).epsilon(1e-6));
  CHECK(overall.at("mdbi_a").get<double>() == doctest::Approx(40.0).epsilon(1e-6));
  CHECK(doc.at("config").at("distance_method") == "path");
}

TEST_CASE("all-autonomous logs report null ratios") {
  const auto dir = temp_dir("auto");
  write(dir / "a.log", "engage,0,1\npose,0,0,0,0,1,0,0,0\npose,1,1,0,0,1,0,0,0\nengage,1,1\n");
  const auto r = run({"metrics", (dir / "a.log").string()});
  REQUIRE(r.code == cli::kExitOk);
  const auto overall = Json::parse(r.out).at("overall");
  CHECK(overall.at("no_interventions") == true);
  CHECK(overall.at("mdbi").is_null());
  CHECK(overall.at("mdbi_m") == 0.0);
  CHECK(r.out.find("\"mdbi_m\": 0.000000") != std::string::npos);
}

TEST_CASE("validate reports every issue and exits 1") {
  const auto dir = temp_dir("validate");
  write(dir / "good.log", "engage,0,1\n");
  write(dir / "bad.log", "pose,0,0,0,0,2,0,0,0\nspeed,0,-1\n");
  const auto good = run({"validate", (dir / "good.log").string()});
  CHECK(good.code == cli::kExitOk);
  CHECK(good.out.find(": ok") != std::string::npos);
  // Parse-time rules reject the negative speed first.
  const auto bad = run({"validate", (dir / "bad.log").string()});
  CHECK(bad.code == cli::kExitError);
  CHECK(bad.err.find("line 2") != std::string::npos);

  write(dir / "quat.log", "pose,0,0,0,0,2,0,0,0\npose,1,0,0,0,1,0,0,0\n");
  const auto quat = run({"validate", (dir / "quat.log").string()});
  CHECK(quat.code == cli::kExitInvalid);
  CHECK(quat.out.find("poses[0]: unit-quaternion") != std::string::npos);

  const auto metrics = run({"metrics", (dir / "quat.log").string()});
  CHECK(metrics.code == cli::kExitInvalid);
}

TEST_CASE("usage and input errors exit 2") {
  CHECK(run({}).code == cli::kExitError);
  CHECK(run({"frobnicate"}).code == cli::kExitError);
  CHECK(run({"metrics", "/nonexistent/x.log"}).code == cli::kExitError);
  const auto dir = temp_dir("errors");
  write(dir / "x.log", "engage,0,1\nwarp,1,0\n");
  const auto r = run({"metrics", (dir / "x.log").string()});
  CHECK(r.code == cli::kExitError);
  CHECK(r.err.find("x.log: line 2") != std::string::npos);
  CHECK(run({"metrics", (dir / "x.log").string(), "--cell-size", "0"}).code == cli::kExitError);
  CHECK(run({"metrics", (dir / "x.log").string(), "--window", "hamming"}).code ==
        cli::kExitError);
  CHECK(run({"map", (dir / "x.log").string()}).code == cli::kExitError);  // needs --out
  CHECK(run({"--help"}).code == cli::kExitOk);
}

TEST_CASE("map writes csv and pgm") {
  const auto dir = temp_dir("map");
  const auto log = synth(dir, "two_interventions.scenario", "two");
  const auto prefix = (dir / "grid").string();
  const auto r = run({"map", log, "--out", prefix, "--cell-size", "5", "--region",
                      fixture("quad.region")});
  REQUIRE(r.code == cli::kExitOk);
  const auto doc = Json::parse(r.out);
  CHECK(doc.at("region").at("n_interventions") == 2);
  CHECK(slurp(prefix + ".csv").rfind("x_index,y_index,count,normalized\n", 0) == 0);
  CHECK(slurp(prefix + ".pgm").rfind("P2\n", 0) == 0);
}

TEST_CASE("roads and spectrum") {
  const auto dir = temp_dir("roads");
  const auto log = synth(dir, "mixed.scenario", "mixed");
  const auto roads = run({"roads", log, "--network", fixture("mixed.network")});
  REQUIRE(roads.code == cli::kExitOk);
  const auto entry = Json::parse(roads.out).at("logs").at(0);
  CHECK(entry.at("composition").at("types").at("freeway").at("fraction").get<double>() ==
        doctest::Approx(0.586).epsilon(1e-3));

  const auto prefix = (dir / "spec").string();
  const auto spec = run({"spectrum", log, "--out", prefix});
  REQUIRE(spec.code == cli::kExitOk);
  CHECK(fs::exists(prefix + "_auto.csv"));
  CHECK(fs::exists(prefix + "_manual.csv"));
  CHECK(Json::parse(spec.out).contains("manual"));
}

TEST_CASE("report is deterministic across job counts") {
  const auto dir = temp_dir("report");
  const auto a = synth(dir, "two_interventions.scenario", "a");
  const auto b = synth(dir, "mixed.scenario", "b");
  const auto c = synth(dir, "warren.scenario", "c");
  const std::vector<std::string> base = {"report", c, a, b, "--network", fixture("mixed.network")};
  auto one = base, four = base;
  one.insert(one.end(), {"--jobs", "1"});
  four.insert(four.end(), {"--jobs", "4"});
  const auto r1 = run(one), r4 = run(four), again = run(one);
  REQUIRE(r1.code == cli::kExitOk);
  CHECK(r1.out == r4.out);
  CHECK(r1.out == again.out);
  const auto doc = Json::parse(r1.out);
  for (const auto& key : {"config", "metrics", "map", "roads", "spectrum"}) {
    CHECK(doc.contains(key));
  }
  // Sorted by name regardless of argument order.
  const auto& logs = doc.at("metrics").at("logs");
  REQUIRE(logs.size() == 3);
  CHECK(logs.at(0).at("group_key") <= logs.at(1).at("group_key"));
  CHECK(logs.at(1).at("group_key") <= logs.at(2).at("group_key"));

  auto scalar = one;
  scalar.insert(scalar.end(), {"--kernels", "scalar"});
  CHECK(run(scalar).out == r1.out);
}

TEST_CASE("options may come from a config file") {
  const auto dir = temp_dir("config");
  const auto log = synth(dir, "two_interventions.scenario", "two");
  write(dir / "run.toml", "distance-method = \"speed\"\nmin-dwell = 0.25\n");
  const auto r = run({"metrics", log, "--config", (dir / "run.toml").string()});
  REQUIRE(r.code == cli::kExitOk);
  const auto config = Json::parse(r.out).at("config");
  CHECK(config.at("distance_method") == "speed");
  CHECK(config.at("min_dwell").get<double>() == 0.25);
}

TEST_CASE("metrics output file") {
  const auto dir = temp_dir("outfile");
  const auto log = synth(dir, "two_interventions.scenario", "two");
  const auto path = (dir / "m.json").string();
  const auto r = run({"metrics", log, "--out", path, "--group-by", "log"});
  REQUIRE(r.code == cli::kExitOk);
  const auto doc = Json::parse(slurp(path));
  CHECK(doc.at("groups").size() == 1);
  CHECK(doc.at("groups").at(0).at("group_key") == "synth-7");
  CHECK_FALSE(fs::exists(path + ".tmp"));
}

TEST_CASE("a directory input is read as a csv bundle") {
  const auto dir = temp_dir("bundle");
  const auto bundle = dir / "trip";
  fs::create_directories(bundle);
  write(bundle / "engage.csv", "t,enabled\n0,1\n2,0\n4,1\n6,1\n");
  write(bundle / "pose.csv", "t,x,y,z,q0,q1,q2,q3\n0,0,0,0,1,0,0,0\n2,2,0,0,1,0,0,0\n"
                             "4,4,0,0,1,0,0,0\n6,6,0,0,1,0,0,0\n");
  const auto r = run({"metrics", bundle.string()});
  REQUIRE(r.code == cli::kExitOk);
  const auto doc = Json::parse(r.out);
  CHECK(doc.at("logs").at(0).at("group_key") == "trip");
  CHECK(doc.at("overall").at("n_interventions") == 1);
  CHECK(doc.at("overall").at("manual_distance").get<double>() == 2.0);

  fs::create_directories(dir / "empty");
  CHECK(run({"metrics", (dir / "empty").string()}).code == cli::kExitError);
}
