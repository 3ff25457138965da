#include "avbench/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "avbench/errors.hpp"
#include "avbench/geometry.hpp"
#include "avbench/log_io.hpp"
#include "avbench/parallel.hpp"
#include "avbench/report.hpp"
#include "avbench/simd/kernels.hpp"
#include "avbench/synth.hpp"

namespace avbench::cli {

namespace fs = std::filesystem;

namespace {

/// A log that parsed but broke a structural rule.
class ValidationFailed : public Error {
 public:
  using Error::Error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) { throw Error("cannot read " + path.string()); }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// A directory holds a CSV bundle of `<kind>.csv` files; anything else is a
// line-format log.
DriveLog read_log(const std::string& path) {
  if (!fs::is_directory(path)) { return parse_log(std::string_view(read_file(path))); }
  std::map<RecordKind, fs::path> files;
  for (const auto kind : kAllRecordKinds) {
    const auto file = fs::path(path) / (std::string(to_string(kind)) + ".csv");
    if (fs::exists(file)) { files.emplace(kind, file); }
  }
  if (files.empty()) { throw Error(path + ": no <kind>.csv files in directory"); }
  return parse_csv_bundle(files);
}

std::string issues_text(const std::string& file, const std::vector<ValidationIssue>& issues) {
  std::string text;
  for (const auto& issue : issues) {
    text += file + ": " + issue.channel + "[" + std::to_string(issue.index) + "]: " +
            issue.rule + "\n";
  }
  return text;
}

// Parse, validate and name every input. Errors carry the file name.
std::vector<NamedLog> load_logs(const std::vector<std::string>& paths, unsigned jobs) {
  std::vector<NamedLog> logs(paths.size());
  parallel_for(paths.size(), jobs, [&](std::size_t i) {
    const auto& path = paths[i];
    try {
      logs[i].log = read_log(path);
    } catch (const ParseError& e) {
      throw Error(path + ": " + e.what());
    }
    const auto issues = validate_log(logs[i].log);
    if (!issues.empty()) { throw ValidationFailed(issues_text(path, issues)); }
    const auto id = logs[i].log.log_id();
    auto stem = fs::path(path).stem().string();
    if (stem.empty()) { stem = fs::path(path).parent_path().filename().string(); }
    logs[i].name = id.empty() ? stem : id;
  });
  sort_by_name(logs);
  return logs;
}

template <typename T, typename F>
T load_with_context(const std::string& path, F loader) {
  try {
    return loader(std::string_view(read_file(path)));
  } catch (const ParseError& e) {
    throw Error(path + ": " + e.what());
  }
}

void emit(const Json& doc, const std::string& out_path, std::ostream& out) {
  const auto text = dump_json(doc);
  if (out_path.empty()) {
    out << text;
  } else {
    write_file_atomic(out_path, text);
  }
}

Json with_config(const RunConfig& config, const Json& body) {
  Json doc;
  doc["config"] = config_json(config);
  for (auto it = body.begin(); it != body.end(); ++it) { doc[it.key()] = it.value(); }
  return doc;
}

void require(const std::string& value, const char* flag, const char* command) {
  if (value.empty()) { throw InvalidArgument(std::string(command) + " needs " + flag); }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Drive-log benchmarking: intervention metrics, maps, road mix and control spectra"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Read options from a TOML/INI file; flags override it");

  RunConfig config;
  std::string grouping = config.grouping;
  std::string network_path, region_path, out_path, kernels_name = "auto";
  unsigned jobs = 1;

  std::string method_name = "path", count_name = "sample", window_name = "hann",
              channel_name = "speed";
  app.add_option("--distance-method", method_name, "path or speed")
      ->check(CLI::IsMember({"path", "speed"}));
  app.add_option("--min-dwell", config.min_dwell, "Debounce window in seconds")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--cell-size", config.cell_size, "Map cell size in metres");
  app.add_option("--count-mode", count_name, "sample or edge")
      ->check(CLI::IsMember({"sample", "edge"}));
  app.add_option("--match-tolerance", config.match_tolerance, "Map-matching radius in metres");
  app.add_option("--rate", config.resample_rate, "Spectrum resample rate in Hz");
  app.add_option("--window", window_name, "rect or hann")->check(CLI::IsMember({"rect", "hann"}));
  app.add_option("--channel", channel_name, "speed, acceleration, brake or steering")
      ->check(CLI::IsMember({"speed", "acceleration", "brake", "steering"}));
  app.add_option("--group-by", grouping, "none, log, route, or period:<name>=A..B,...");
  app.add_option("--network", network_path, "Road network file");
  app.add_option("--region", region_path, "Polygon file for region metrics");
  app.add_option("--out", out_path, "Output file or prefix");
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--kernels", kernels_name, "auto, scalar or avx2");

  std::vector<std::string> inputs;
  std::string scenario_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check logs and list every issue");
  validate_cmd->add_option("logs", inputs, "Log files or CSV bundle directories")->required();
  auto* metrics_cmd = app.add_subcommand("metrics", "MDBI/MTBI per log, per group and overall");
  metrics_cmd->add_option("logs", inputs, "Log files or CSV bundle directories")->required();
  auto* map_cmd = app.add_subcommand("map", "Intervention occupancy grid (CSV and PGM)");
  map_cmd->add_option("logs", inputs, "Log files or CSV bundle directories")->required();
  auto* roads_cmd = app.add_subcommand("roads", "Road-type composition and per-type metrics");
  roads_cmd->add_option("logs", inputs, "Log files or CSV bundle directories")->required();
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Autonomous vs manual control spectra");
  spectrum_cmd->add_option("log", inputs, "Log file or CSV bundle directory")->required()->expected(1);
  auto* synth_cmd = app.add_subcommand("synth", "Generate a log and its ground truth");
  synth_cmd->add_option("scenario", scenario_path, "Scenario file")->required();
  auto* report_cmd = app.add_subcommand("report", "Every section in one JSON document");
  report_cmd->add_option("logs", inputs, "Log files or CSV bundle directories")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    config.distance_method = *parse_distance_method(method_name);
    config.count_mode = *parse_count_mode(count_name);
    config.window = *parse_window(window_name);
    config.channel = *parse_control_channel(channel_name);
    config.grouping = grouping;
    check_config(config);
    if (kernels_name != "auto") {
      const auto isa = simd::parse_isa(kernels_name);
      if (!isa) { throw InvalidArgument("unknown kernel set '" + kernels_name + "'"); }
      simd::set_active_isa(*isa);
    } else {
      simd::set_active_isa(simd::best_supported_isa());
    }

    if (*validate_cmd) {
      bool all_valid = true;
      for (const auto& path : inputs) {
        DriveLog log;
        try {
          log = read_log(path);
        } catch (const ParseError& e) {
          throw Error(path + ": " + e.what());
        }
        const auto issues = validate_log(log);
        if (issues.empty()) {
          out << path << ": ok\n";
        } else {
          all_valid = false;
          out << issues_text(path, issues);
        }
      }
      return all_valid ? kExitOk : kExitInvalid;
    }

    if (*synth_cmd) {
      require(out_path, "--out", "synth");
      const auto scenario = load_with_context<SynthScenario>(
          scenario_path, [](std::string_view t) { return load_scenario(t); });
      const auto result = synth_log(scenario);
      write_file_atomic(out_path + ".log", serialize_log(result.log));
      write_file_atomic(out_path + ".truth.json", dump_json(ground_truth_json(result.truth)));
      out << out_path << ".log\n" << out_path << ".truth.json\n";
      return kExitOk;
    }

    const auto logs = load_logs(inputs, jobs);

    if (*metrics_cmd) {
      emit(with_config(config, metrics_section(logs, config, jobs)), out_path, out);
      return kExitOk;
    }

    if (*map_cmd) {
      require(out_path, "--out", "map");
      std::optional<Region> region;
      if (!region_path.empty()) {
        region = load_with_context<Region>(region_path,
                                           [](std::string_view t) { return load_region(t); });
      }
      OccupancyGrid grid;
      const auto section = map_section(logs, config, region ? &*region : nullptr, jobs, &grid);
      write_file_atomic(out_path + ".csv", export_grid(grid, GridFormat::csv));
      write_file_atomic(out_path + ".pgm", export_grid(grid, GridFormat::pgm));
      out << dump_json(with_config(config, section));
      return kExitOk;
    }

    if (*roads_cmd) {
      require(network_path, "--network", "roads");
      const auto network = load_with_context<RoadNetwork>(
          network_path, [](std::string_view t) { return load_network(t); });
      Json body;
      body["logs"] = roads_section(logs, network, config, jobs);
      emit(with_config(config, body), out_path, out);
      return kExitOk;
    }

    if (*spectrum_cmd) {
      require(out_path, "--out", "spectrum");
      const auto& named = logs.front();
      const auto segments = build_segments(named.log.engagement, config.min_dwell);
      const auto spectra = compare_modes(named.log, segments, config.channel,
                                         config.resample_rate, config.window);
      write_file_atomic(out_path + "_auto.csv", export_spectrum_csv(spectra.autonomous));
      write_file_atomic(out_path + "_manual.csv", export_spectrum_csv(spectra.manual));
      Json body;
      body["log_id"] = named.name;
      body["channel"] = std::string(to_string(config.channel));
      for (const auto& [key, spec] : {std::pair{"autonomous", &spectra.autonomous},
                                      std::pair{"manual", &spectra.manual}}) {
        Json s;
        s["resolution_hz"] = spec->resolution;
        s["transform_length"] = static_cast<std::uint64_t>(spec->transform_length);
        s["peak_hz"] = spec->frequency(spec->peak_bin());
        body[key] = s;
      }
      out << dump_json(with_config(config, body));
      return kExitOk;
    }

    // report
    std::optional<Region> region;
    if (!region_path.empty()) {
      region = load_with_context<Region>(region_path,
                                         [](std::string_view t) { return load_region(t); });
    }
    Json doc;
    doc["config"] = config_json(config);
    doc["metrics"] = metrics_section(logs, config, jobs);
    doc["map"] = map_section(logs, config, region ? &*region : nullptr, jobs);
    if (network_path.empty()) {
      doc["roads"] = nullptr;
    } else {
      const auto network = load_with_context<RoadNetwork>(
          network_path, [](std::string_view t) { return load_network(t); });
      doc["roads"] = roads_section(logs, network, config, jobs);
    }
    doc["spectrum"] = spectrum_section(logs, config, jobs);
    emit(doc, out_path, out);
    return kExitOk;
  } catch (const ValidationFailed& e) {
    err << e.what();
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace avbench::cli
