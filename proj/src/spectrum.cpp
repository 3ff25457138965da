#include "avbench/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "avbench/errors.hpp"
#include "avbench/simd/kernels.hpp"
#include "avbench/text_format.hpp"

namespace avbench {

namespace {

constexpr std::size_t kMinSpectrumSamples = 4;

// Guards the sample count against t * rate landing a hair below an integer.
constexpr double kGridSlack = 1e-9;

std::vector<double> prepared(const UniformSeries& series, Window window) {
  const auto n = series.values.size();
  double mean = 0.0;
  for (const double v : series.values) { mean += v; }
  mean /= static_cast<double>(n);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = (series.values[i] - mean) * window_weight(window, i, n);
  }
  return x;
}

void check_rate(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw InvalidArgument("resample rate must be positive");
  }
}

}  // namespace

UniformSeries resample_uniform(std::span<const TimedValue> samples, double rate) {
  if (samples.size() < 2) { throw TooFewSamples("resampling needs at least 2 samples"); }
  check_rate(rate);
  const double t0 = samples.front().t;
  const double span = samples.back().t - t0;
  const auto count = static_cast<std::size_t>(std::floor(span * rate + kGridSlack)) + 1;

  UniformSeries out{t0, rate, {}};
  out.values.reserve(count);
  std::size_t j = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const double t = std::min(t0 + static_cast<double>(k) / rate, samples.back().t);
    while (j + 2 < samples.size() && samples[j + 1].t <= t) { ++j; }
    const auto& a = samples[j];
    const auto& b = samples[j + 1];
    if (t <= a.t) {
      out.values.push_back(a.value);
    } else if (t >= b.t) {
      out.values.push_back(b.value);
    } else {
      const double u = (t - a.t) / (b.t - a.t);
      out.values.push_back(a.value + u * (b.value - a.value));
    }
  }
  return out;
}

std::string_view to_string(Window window) {
  return window == Window::rect ? "rect" : "hann";
}

std::optional<Window> parse_window(std::string_view text) {
  if (text == "rect") { return Window::rect; }
  if (text == "hann") { return Window::hann; }
  return std::nullopt;
}

double window_weight(Window window, std::size_t n, std::size_t len) {
  if (window == Window::rect) { return 1.0; }
  const double phase = 2.0 * std::numbers::pi * static_cast<double>(n) / static_cast<double>(len);
  return 0.5 * (1.0 - std::cos(phase));
}

std::size_t Spectrum::peak_bin() const {
  if (magnitudes.empty()) { return 0; }
  return static_cast<std::size_t>(std::max_element(magnitudes.begin(), magnitudes.end()) -
                                  magnitudes.begin());
}

Spectrum spectrum(const UniformSeries& series, Window window) {
  return spectrum(series, window, series.values.size());
}

Spectrum spectrum(const UniformSeries& series, Window window, std::size_t transform_length) {
  if (series.values.size() < kMinSpectrumSamples) {
    throw TooFewSamples("spectrum needs at least 4 samples");
  }
  check_rate(series.rate);
  if (transform_length < series.values.size()) {
    throw InvalidArgument("transform length shorter than the series");
  }
  const auto x = prepared(series, window);
  const auto big_n = transform_length;
  std::vector<double> cos_table(big_n), sin_table(big_n);
  for (std::size_t m = 0; m < big_n; ++m) {
    const double phase = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(big_n);
    cos_table[m] = std::cos(phase);
    sin_table[m] = std::sin(phase);
  }
  Spectrum out;
  out.transform_length = big_n;
  out.resolution = series.rate / static_cast<double>(big_n);
  out.magnitudes.resize(big_n / 2 + 1);
  simd::dft_magnitudes(x, cos_table, sin_table, out.magnitudes);
  return out;
}

double windowed_energy(const UniformSeries& series, Window window) {
  if (series.values.empty()) { return 0.0; }
  double e = 0.0;
  for (const double v : prepared(series, window)) { e += v * v; }
  return e;
}

double spectral_energy(const Spectrum& spec) {
  const auto n = spec.transform_length;
  if (n == 0) { return 0.0; }
  double e = 0.0;
  for (std::size_t k = 0; k < spec.magnitudes.size(); ++k) {
    const double m2 = spec.magnitudes[k] * spec.magnitudes[k];
    // DC and, for even N, Nyquist appear once in the two-sided spectrum.
    const bool single = k == 0 || (n % 2 == 0 && k == n / 2);
    e += single ? m2 : 2.0 * m2;
  }
  return e / static_cast<double>(n);
}

std::string_view to_string(ControlChannel channel) {
  switch (channel) {
    case ControlChannel::speed: return "speed";
    case ControlChannel::acceleration: return "acceleration";
    case ControlChannel::brake: return "brake";
    case ControlChannel::steering: return "steering";
  }
  return "speed";
}

std::optional<ControlChannel> parse_control_channel(std::string_view text) {
  for (const auto c : {ControlChannel::speed, ControlChannel::acceleration,
                       ControlChannel::brake, ControlChannel::steering}) {
    if (to_string(c) == text) { return c; }
  }
  return std::nullopt;
}

std::vector<TimedValue> channel_samples(const DriveLog& log, ControlChannel channel) {
  std::vector<TimedValue> out;
  if (channel == ControlChannel::speed) {
    out.reserve(log.speeds.size());
    for (const auto& s : log.speeds) { out.push_back({s.t, s.v}); }
    return out;
  }
  const auto& source = channel == ControlChannel::acceleration ? log.accel
                       : channel == ControlChannel::brake      ? log.brake
                                                               : log.steering;
  out.reserve(source.size());
  for (const auto& s : source) { out.push_back({s.t, s.value}); }
  return out;
}

ModeSpectra compare_modes(const DriveLog& log, std::span<const Segment> segments,
                          ControlChannel channel, double rate, Window window) {
  check_rate(rate);
  const auto samples = channel_samples(log, channel);

  struct Piece {
    DriveMode mode;
    UniformSeries series;
  };
  std::vector<Piece> pieces;
  double usable[2] = {0.0, 0.0};
  std::size_t transform_length = 0;
  for (const auto& seg : segments) {
    const auto lo = std::lower_bound(samples.begin(), samples.end(), seg.t_start,
                                     [](const TimedValue& s, double t) { return s.t < t; });
    const auto hi = std::lower_bound(lo, samples.end(), seg.t_end,
                                     [](const TimedValue& s, double t) { return s.t < t; });
    if (hi - lo < 2) { continue; }
    auto series = resample_uniform(std::span<const TimedValue>(&*lo, static_cast<std::size_t>(hi - lo)), rate);
    if (series.values.size() < kMinSpectrumSamples) { continue; }
    usable[static_cast<int>(seg.mode)] += series.duration();
    transform_length = std::max(transform_length, series.values.size());
    pieces.push_back({seg.mode, std::move(series)});
  }
  if (usable[0] < kMinModeSeconds) { throw InsufficientModeData("autonomous"); }
  if (usable[1] < kMinModeSeconds) { throw InsufficientModeData("manual"); }

  ModeSpectra out;
  for (auto* s : {&out.autonomous, &out.manual}) {
    s->transform_length = transform_length;
    s->resolution = rate / static_cast<double>(transform_length);
    s->magnitudes.assign(transform_length / 2 + 1, 0.0);
  }
  for (const auto& piece : pieces) {
    const auto part = spectrum(piece.series, window, transform_length);
    const double weight = piece.series.duration() / usable[static_cast<int>(piece.mode)];
    const double scale = weight / static_cast<double>(piece.series.values.size());
    auto& target = piece.mode == DriveMode::autonomous ? out.autonomous : out.manual;
    for (std::size_t k = 0; k < target.magnitudes.size(); ++k) {
      target.magnitudes[k] += scale * part.magnitudes[k];
    }
  }
  return out;
}

double trip_uptime(const DriveLog& log) {
  if (log.engagement.empty()) { throw EmptyChannel("engagement"); }
  return log.engagement.back().t - log.engagement.front().t;
}

std::string export_spectrum_csv(const Spectrum& spec) {
  std::ostringstream out;
  out << "freq_hz,magnitude\n";
  for (std::size_t k = 0; k < spec.magnitudes.size(); ++k) {
    out << text::format_fixed(spec.frequency(k)) << ',' << text::format_fixed(spec.magnitudes[k])
        << '\n';
  }
  return out.str();
}

}  // namespace avbench
