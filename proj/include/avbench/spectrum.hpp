#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "avbench/segmentation.hpp"
#include "avbench/telemetry.hpp"

namespace avbench {

struct TimedValue {
  Timestamp t = 0.0;
  double value = 0.0;
};

struct UniformSeries {
  Timestamp t0 = 0.0;
  double rate = 1.0;  // Hz
  std::vector<double> values;

  double duration() const { return values.empty() ? 0.0 : (values.size() - 1) / rate; }
};

/// Linear interpolation onto t0 + k / rate for every k that stays within
/// [first.t, last.t]. Samples must be sorted by time. Throws TooFewSamples
/// for fewer than 2 samples and InvalidArgument for a non-positive rate.
UniformSeries resample_uniform(std::span<const TimedValue> samples, double rate);

enum class Window { rect, hann };

std::string_view to_string(Window window);
std::optional<Window> parse_window(std::string_view text);

/// Window coefficient n of length `len`; hann is the periodic form.
double window_weight(Window window, std::size_t n, std::size_t len);

struct Spectrum {
  double resolution = 0.0;         // Hz per bin
  std::size_t transform_length = 0;
  std::vector<double> magnitudes;  // bins 0 .. transform_length / 2

  double frequency(std::size_t bin) const { return resolution * static_cast<double>(bin); }
  std::size_t peak_bin() const;
};

/// |DFT| of the mean-removed, windowed series, bins 0..N/2 for N samples.
/// Throws TooFewSamples below 4 samples.
Spectrum spectrum(const UniformSeries& series, Window window = Window::hann);

/// Same, zero-padded to `transform_length` >= series length.
Spectrum spectrum(const UniformSeries& series, Window window, std::size_t transform_length);

/// Sum of |x|^2 of the mean-removed, windowed series.
double windowed_energy(const UniformSeries& series, Window window);

/// Two-sided energy implied by a one-sided spectrum, divided by N; equals
/// windowed_energy for an unpadded transform.
double spectral_energy(const Spectrum& spec);

enum class ControlChannel { speed, acceleration, brake, steering };

std::string_view to_string(ControlChannel channel);
std::optional<ControlChannel> parse_control_channel(std::string_view text);

std::vector<TimedValue> channel_samples(const DriveLog& log, ControlChannel channel);

inline constexpr double kDefaultResampleRate = 10.0;
inline constexpr double kMinModeSeconds = 4.0;

struct ModeSpectra {
  Spectrum autonomous;
  Spectrum manual;
};

/// Each segment's samples are resampled on their own, mean-removed,
/// windowed and zero-padded to the longest resampled segment among both
/// modes, so every spectrum shares one bin grid. Magnitudes are divided by
/// the segment's sample count and averaged weighted by segment duration.
/// Segments with fewer than 4 resampled samples are skipped. Throws
/// InsufficientModeData when a mode has under 4 s of usable data.
ModeSpectra compare_modes(const DriveLog& log, std::span<const Segment> segments,
                          ControlChannel channel, double rate = kDefaultResampleRate,
                          Window window = Window::hann);

/// Last engagement timestamp minus the first. Throws EmptyChannel.
double trip_uptime(const DriveLog& log);

/// `freq_hz,magnitude` rows with 6 decimals.
std::string export_spectrum_csv(const Spectrum& spec);

}  // namespace avbench
