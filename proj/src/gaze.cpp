#include "etea/gaze.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "etea/error.hpp"

namespace etea {

void validate(const GazeSample& s) {
  if (!(s.x >= 0.0 && s.x <= 1.0 && s.y >= 0.0 && s.y <= 1.0)) {
    throw Error(ErrorCode::OutOfBounds, "gaze position outside [0,1]^2");
  }
  if (s.pupil_mm && !(*s.pupil_mm > 0.0 && std::isfinite(*s.pupil_mm))) {
    throw Error(ErrorCode::InvalidArgument, "pupil_mm must be positive");
  }
}

ZoneLayout::ZoneLayout(std::array<Rect, kZoneCount> zones, Rect center_exclusion)
    : zones_(zones), center_(center_exclusion) {
  for (std::size_t i = 0; i < zones_.size(); ++i) {
    const Rect& a = zones_[i];
    if (!(a.x0 < a.x1 && a.y0 < a.y1) || a.x0 < 0.0 || a.y0 < 0.0 ||
        a.x1 > 1.0 || a.y1 > 1.0) {
      throw Error(ErrorCode::Configuration,
                  "zone " + std::to_string(i + 1) + " is not a proper rectangle in [0,1]^2");
    }
    if (a.intersects(center_)) {
      throw Error(ErrorCode::Configuration,
                  "zone " + std::to_string(i + 1) + " overlaps the center exclusion");
    }
    for (std::size_t j = i + 1; j < zones_.size(); ++j) {
      if (a.intersects(zones_[j])) {
        throw Error(ErrorCode::Configuration,
                    "zones " + std::to_string(i + 1) + " and " +
                        std::to_string(j + 1) + " overlap");
      }
    }
  }
}

ZoneLayout default_layout(double gap_margin) {
  if (!(gap_margin >= 0.0 && gap_margin < 0.5)) {
    throw Error(ErrorCode::Configuration, "gap margin must lie in [0, 0.5)");
  }
  constexpr double cell = 1.0 / 3.0;
  const double inset = gap_margin * cell;
  std::array<Rect, kZoneCount> zones{};
  std::size_t next = 0;
  for (int row = 0; row < 3; ++row) {
    for (int col = 0; col < 3; ++col) {
      if (row == 1 && col == 1) continue;
      zones[next++] = Rect{col * cell + inset, row * cell + inset,
                           (col + 1) * cell - inset, (row + 1) * cell - inset};
    }
  }
  return ZoneLayout(zones, Rect{cell, cell, 2.0 * cell, 2.0 * cell});
}

std::optional<ZoneId> zone_at(const ZoneLayout& layout, double x, double y) {
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0)) {
    throw Error(ErrorCode::OutOfBounds, "zone_at: point outside [0,1]^2");
  }
  const Rect& c = layout.center_exclusion();
  if (x >= c.x0 && x <= c.x1 && y >= c.y0 && y <= c.y1) return std::nullopt;
  const auto& zones = layout.zones();
  for (std::size_t i = 0; i < zones.size(); ++i) {
    if (zones[i].contains(x, y)) return static_cast<ZoneId>(i + 1);
  }
  return std::nullopt;
}

double ZoneStats::total_dwell() const {
  return std::accumulate(zones.begin(), zones.end(), 0.0,
                         [](double acc, const ZoneStat& z) { return acc + z.dwell_ms; });
}

std::int64_t ZoneStats::total_transitions() const {
  return std::accumulate(
      zones.begin(), zones.end(), std::int64_t{0},
      [](std::int64_t acc, const ZoneStat& z) { return acc + z.transitions; });
}

void GazeAccumulator::add(const GazeSample& sample) {
  validate(sample);
  if (count_ > 0 && sample.t_ms < last_t_) {
    throw Error(ErrorCode::Ordering, "gaze samples must be sorted by t_ms");
  }
  const std::optional<ZoneId> zone = zone_at(*layout_, sample.x, sample.y);
  if (count_ > 0 && last_zone_) {
    // Sample-and-hold: the closing interval belongs to the previous sample.
    const auto j = static_cast<std::size_t>(*last_zone_ - 1);
    const double span = static_cast<double>(sample.t_ms - last_t_);
    dwell_[j] += span;
    if (last_pupil_) {
      pupil_weighted_[j] += span * *last_pupil_;
      pupil_time_[j] += span;
    }
  }
  // Any change of label, including the very first sample, is an entry.
  if (zone && (count_ == 0 || zone != last_zone_)) {
    ++transitions_[static_cast<std::size_t>(*zone - 1)];
  }
  last_zone_ = zone;
  last_t_ = sample.t_ms;
  last_pupil_ = sample.pupil_mm;
  ++count_;
}

ZoneStats GazeAccumulator::stats() const {
  ZoneStats out;
  for (std::size_t j = 0; j < out.zones.size(); ++j) {
    ZoneStat& z = out.zones[j];
    z.dwell_ms = dwell_[j];
    z.transitions = transitions_[j];
    if (pupil_time_[j] > 0.0) z.pupil_mm = pupil_weighted_[j] / pupil_time_[j];
  }
  return out;
}

void GazeAccumulator::reset() { *this = GazeAccumulator(*layout_); }

ZoneStats aggregate(const ZoneLayout& layout, std::span<const GazeSample> samples) {
  GazeAccumulator acc(layout);
  for (const GazeSample& s : samples) acc.add(s);
  return acc.stats();
}

FatigueSignal fatigue_check(std::span<const AttentionTotals> history,
                            AttentionTotals current, double threshold) {
  if (history.empty()) {
    throw Error(ErrorCode::InvalidArgument, "fatigue_check needs a non-empty history");
  }
  const std::size_t window = std::min(kFatigueWindow, history.size());
  double mean_t = 0.0;
  double mean_d = 0.0;
  for (const AttentionTotals& h : history.last(window)) {
    mean_t += static_cast<double>(h.transitions);
    mean_d += h.dwell_ms;
  }
  mean_t /= static_cast<double>(window);
  mean_d /= static_cast<double>(window);

  FatigueSignal s;
  s.transition_ratio =
      mean_t > 0.0 ? static_cast<double>(current.transitions) / mean_t : 1.0;
  s.dwell_ratio = mean_d > 0.0 ? current.dwell_ms / mean_d : 1.0;
  s.fatigued = s.transition_ratio < threshold || s.dwell_ratio < threshold;
  return s;
}

}  // namespace etea
