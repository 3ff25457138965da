#include <doctest.h>

#include <cmath>
#include <sstream>

#include "avbench/errors.hpp"
#include "avbench/intervention_map.hpp"
#include "avbench/synth.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace avbench;

namespace {

Pose at(double t, double x, double y) { return {t, x, y, 0, 1, 0, 0, 0}; }

// Poses at t = 0, 1, ...; engagement sampled at the same times.
DriveLog walk(const std::vector<std::pair<double, double>>& xy, const std::vector<int>& enabled) {
  DriveLog log;
  for (std::size_t i = 0; i < xy.size(); ++i) {
    log.poses.push_back(at(double(i), xy[i].first, xy[i].second));
    log.engagement.push_back({double(i), enabled[i] == 1});
  }
  return log;
}

// Random walk with a random engagement signal on a different clock.
DriveLog random_walk(gen::Rng& rng, std::size_t n) {
  DriveLog log;
  double x = rng.uniform(-50, 50), y = rng.uniform(-50, 50);
  for (const double t : rng.times(n)) {
    x += rng.uniform(-3, 3);
    y += rng.uniform(-3, 3);
    log.poses.push_back(at(t, x, y));
  }
  bool enabled = true;
  for (const double t : rng.times(n)) {
    if (rng.coin(0.25)) { enabled = !enabled; }
    log.engagement.push_back({t, enabled});
  }
  return log;
}

void check_against_oracle(const DriveLog& log, const GridSpec& spec) {
  const auto grid = build_grid(log, spec);
  const auto expected = oracle::grid_counts(log, spec.cell_size,
                                            spec.count_mode == CountMode::edge,
                                            spec.origin.x, spec.origin.y);
  std::uint64_t total = 0;
  for (const auto& [cell, count] : expected) {
    CHECK(grid.count_at(cell.first, cell.second) == count);
    total += count;
  }
  CHECK(grid.total() == total);
}

}  // namespace

TEST_CASE("poses take the nearest engagement sample") {
  DriveLog log;
  log.poses = {at(1.15, 0, 0), at(1.16, 0, 0), at(5.0, 0, 0)};
  log.engagement = {{1.1, true}, {1.2, false}};
  const auto pairs = associate_dbw_pose(log);
  REQUIRE(pairs.size() == 3);
  CHECK(pairs[0].enabled);  // equidistant: the earlier sample wins
  CHECK_FALSE(pairs[1].enabled);
  CHECK_FALSE(pairs[2].enabled);
  CHECK_THROWS_AS(associate_dbw_pose(DriveLog{}), EmptyChannel);
}

TEST_CASE("hand-counted grid") {
  const auto log = walk({{2.3, 5.7}, {2.9, 5.1}, {7.4, 1.2}}, {0, 0, 0});
  const auto grid = build_grid(log);
  CHECK(grid.count_at(2, 5) == 2);
  CHECK(grid.count_at(7, 1) == 1);
  CHECK(grid.normalized_at(2, 5) == 1.0);
  CHECK(grid.normalized_at(7, 1) == 0.5);
  CHECK(grid.total() == 3);
  CHECK(grid.x_index0 == 2);
  CHECK(grid.y_index0 == 1);
  CHECK(grid.width == 6);
  CHECK(grid.height == 5);
  CHECK(export_grid(grid, GridFormat::csv) ==
        "x_index,y_index,count,normalized\n2,5,2,1.000000\n7,1,1,0.500000\n");
}

TEST_CASE("pgm rows run from the top") {
  const auto log = walk({{0.5, 0.5}, {1.5, 1.5}, {1.6, 1.6}}, {0, 0, 0});
  const auto pgm = export_grid(build_grid(log), GridFormat::pgm);
  CHECK(pgm == "P2\n2 2\n255\n0 255\n128 0\n");
}

TEST_CASE("negative coordinates and a shifted origin") {
  const auto log = walk({{-0.5, -2.5}, {3, 3}}, {0, 1});
  const auto grid = build_grid(log, {.origin = {1, 1}, .cell_size = 2});
  CHECK(grid.count_at(-1, -2) == 1);
  CHECK(grid.total() == 1);
}

TEST_CASE("count modes") {
  const auto log = walk({{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}}, {1, 0, 0, 1, 0, 0});
  CHECK(build_grid(log, {.cell_size = 10}).total() == 4);
  const auto edges = build_grid(log, {.cell_size = 10, .count_mode = CountMode::edge});
  CHECK(edges.total() == 2);
  CHECK(edges.count_at(0, 0) == 2);
}

TEST_CASE("an all-autonomous log maps to zeros") {
  const auto log = walk({{0, 0}, {5, 5}, {9, 2}}, {1, 1, 1});
  const auto grid = build_grid(log);
  CHECK(grid.total() == 0);
  for (const double v : grid.normalized) { CHECK(v == 0.0); }
  const auto pgm = export_grid(grid, GridFormat::pgm);
  CHECK(pgm.find("255\n") != std::string::npos);
  CHECK(export_grid(grid, GridFormat::csv) == "x_index,y_index,count,normalized\n");
}

TEST_CASE("grid errors") {
  const auto log = walk({{0, 0}}, {0});
  CHECK_THROWS_AS(build_grid(log, {.cell_size = 0}), NonPositiveCellSize);
  CHECK_THROWS_AS(build_grid(log, {.cell_size = -1}), NonPositiveCellSize);
  const auto wide = walk({{0, 0}, {1e9, 1e9}}, {0, 0});
  CHECK_THROWS_AS(build_grid(wide, {.cell_size = 0.01}), GridTooLarge);
}

TEST_CASE("grid agrees with a direct count") {
  gen::Rng rng(51);
  for (int i = 0; i < 40; ++i) {
    const auto log = random_walk(rng, 120);
    const GridSpec spec{.origin = {rng.uniform(-5, 5), rng.uniform(-5, 5)},
                        .cell_size = rng.uniform(0.5, 6),
                        .count_mode = rng.coin() ? CountMode::edge : CountMode::sample};
    check_against_oracle(log, spec);
  }
}

TEST_CASE("grid properties") {
  gen::Rng rng(52);
  for (int i = 0; i < 30; ++i) {
    const auto log = random_walk(rng, 100);
    const double cell = rng.uniform(0.5, 4);
    const auto coarse = build_grid(log, {.cell_size = 2 * cell});
    const auto fine = build_grid(log, {.cell_size = cell});

    // Refinement: each coarse cell is the sum of its four children.
    for (std::size_t c = 0; c < coarse.width; ++c) {
      for (std::size_t r = 0; r < coarse.height; ++r) {
        const auto ix = coarse.x_index0 + std::int64_t(c), iy = coarse.y_index0 + std::int64_t(r);
        const auto children = fine.count_at(2 * ix, 2 * iy) + fine.count_at(2 * ix + 1, 2 * iy) +
                              fine.count_at(2 * ix, 2 * iy + 1) +
                              fine.count_at(2 * ix + 1, 2 * iy + 1);
        CHECK(coarse.count_at(ix, iy) == children);
      }
    }

    // Translating poses by whole cells shifts the counts by the same amount.
    auto moved = log;
    const int dx = rng.integer(-5, 5), dy = rng.integer(-5, 5);
    for (auto& p : moved.poses) {
      p.x += dx * 4.0;
      p.y += dy * 4.0;
    }
    const auto a = build_grid(log, {.cell_size = 4});
    const auto b = build_grid(moved, {.cell_size = 4});
    CHECK(b.x_index0 == a.x_index0 + dx);
    CHECK(b.y_index0 == a.y_index0 + dy);
    CHECK(a.counts == b.counts);

    // Normalization.
    if (fine.max_count() > 0) {
      CHECK(*std::max_element(fine.normalized.begin(), fine.normalized.end()) == 1.0);
    }
    for (const double v : fine.normalized) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("multi-log grids merge by addition and ignore the job count") {
  gen::Rng rng(53);
  std::vector<DriveLog> logs;
  for (int i = 0; i < 8; ++i) { logs.push_back(random_walk(rng, 80)); }
  const GridSpec spec{.cell_size = 3};
  const auto one = build_grid(logs, spec, 1);
  const auto many = build_grid(logs, spec, 4);
  CHECK(one.counts == many.counts);
  CHECK(one.normalized == many.normalized);
  std::uint64_t total = 0;
  for (const auto& log : logs) { total += build_grid(log, spec).total(); }
  CHECK(one.total() == total);
}

TEST_CASE("a region covering everything reproduces whole-log metrics") {
  SynthScenario sc;
  sc.waypoints = {{0, 0}, {100, 0}, {100, 80}};
  sc.speeds = {2, 4};
  sc.interventions = {{30, 5}, {140, 3}};
  const auto log = synth_log(sc).log;
  auto segs = build_segments(log.engagement);
  const auto whole = compute_metrics(segment_totals(log, segs, DistanceMethod::path), "region");
  const Region everything({{-1000, -1000}, {1000, -1000}, {1000, 1000}, {-1000, 1000}});
  const auto r = region_metrics(log, segs, everything, DistanceMethod::path);
  CHECK(r.totals.n_interventions == whole.totals.n_interventions);
  CHECK(r.totals.auto_distance == doctest::Approx(whole.totals.auto_distance).epsilon(1e-12));
  CHECK(r.totals.manual_distance == doctest::Approx(whole.totals.manual_distance).epsilon(1e-12));
  CHECK(r.totals.auto_uptime == doctest::Approx(whole.totals.auto_uptime).epsilon(1e-12));
  CHECK(r.totals.manual_uptime == doctest::Approx(whole.totals.manual_uptime).epsilon(1e-12));

  // The first leg only: the second intervention happens outside.
  const Region first_leg({{-10, -10}, {99, -10}, {99, 10}, {-10, 10}});
  const auto part = region_metrics(log, segs, first_leg, DistanceMethod::path);
  CHECK(part.totals.n_interventions == 1);
  CHECK(part.totals.manual_distance == doctest::Approx(10.0).epsilon(1e-9));
  // Chords are attributed by their starting pose: the last inside one is at x = 99.
  CHECK(part.totals.auto_distance + part.totals.manual_distance ==
        doctest::Approx(99.2).epsilon(1e-9));
}

TEST_CASE("disjoint regions partition the totals") {
  SynthScenario sc;
  sc.waypoints = {{0, 0}, {200, 0}};
  sc.speeds = {3};
  sc.interventions = {{50, 4}, {150, 2}};
  const auto log = synth_log(sc).log;
  auto segs = build_segments(log.engagement);
  const auto whole = segment_totals(log, segs, DistanceMethod::path);
  const Region west({{-10, -10}, {100, -10}, {100, 10}, {-10, 10}});
  const Region east({{100.0001, -10}, {300, -10}, {300, 10}, {100.0001, 10}});
  const auto a = region_metrics(log, segs, west, DistanceMethod::speed).totals;
  const auto b = region_metrics(log, segs, east, DistanceMethod::speed).totals;
  CHECK(a.n_interventions + b.n_interventions == whole.n_interventions);
  CHECK(a.auto_uptime + b.auto_uptime == doctest::Approx(whole.auto_uptime).epsilon(1e-12));
  CHECK(a.manual_uptime + b.manual_uptime == doctest::Approx(whole.manual_uptime).epsilon(1e-12));
}
