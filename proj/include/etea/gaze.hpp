#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace etea {

inline constexpr int kZoneCount = 8;

/// 1-based zone identifier as used on the wire; 0 is never a valid zone.
using ZoneId = int;

struct GazeSample {
  std::int64_t t_ms = 0;
  double x = 0.0;
  double y = 0.0;
  std::optional<double> pupil_mm;
};

/// Throws Error(OutOfBounds) for coordinates outside [0,1]^2 and
/// Error(InvalidArgument) for a non-positive pupil diameter.
void validate(const GazeSample& sample);

/// Half-open axis-aligned rectangle [x0, x1) x [y0, y1) in normalized screen
/// coordinates, y growing downwards.
struct Rect {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  bool contains(double x, double y) const {
    return x >= x0 && x < x1 && y >= y0 && y < y1;
  }
  bool intersects(const Rect& o) const {
    return x0 < o.x1 && o.x0 < x1 && y0 < o.y1 && o.y0 < y1;
  }
  double center_x() const { return 0.5 * (x0 + x1); }
  double center_y() const { return 0.5 * (y0 + y1); }
};

class ZoneLayout {
 public:
  /// Validates the disjointness invariants; throws Error(Configuration).
  ZoneLayout(std::array<Rect, kZoneCount> zones, Rect center_exclusion);

  const std::array<Rect, kZoneCount>& zones() const { return zones_; }
  const Rect& zone(ZoneId id) const { return zones_.at(id - 1); }
  const Rect& center_exclusion() const { return center_; }

 private:
  std::array<Rect, kZoneCount> zones_;
  Rect center_;
};

inline constexpr double kDefaultGapMargin = 0.05;

/// 3x3 grid minus the center cell. Each surrounding cell is shrunk by
/// `gap_margin` of its side on every edge; zones are numbered row-major.
ZoneLayout default_layout(double gap_margin = kDefaultGapMargin);

/// Zone containing (x, y), or nullopt for the center and the gaps.
/// Throws Error(OutOfBounds) outside [0,1]^2.
std::optional<ZoneId> zone_at(const ZoneLayout& layout, double x, double y);

struct ZoneStat {
  double dwell_ms = 0.0;
  std::int64_t transitions = 0;
  std::optional<double> pupil_mm;

  friend bool operator==(const ZoneStat&, const ZoneStat&) = default;
};

struct ZoneStats {
  std::array<ZoneStat, kZoneCount> zones{};

  ZoneStat& operator[](ZoneId id) { return zones.at(id - 1); }
  const ZoneStat& operator[](ZoneId id) const { return zones.at(id - 1); }

  double total_dwell() const;
  std::int64_t total_transitions() const;

  friend bool operator==(const ZoneStats&, const ZoneStats&) = default;
};

/// Sample-and-hold dwell, entry-counted transitions and dwell-weighted pupil.
/// Throws Error(Ordering) when timestamps decrease.
ZoneStats aggregate(const ZoneLayout& layout, std::span<const GazeSample> samples);

/// Incremental form of aggregate(); feeding the same samples one by one gives
/// the identical result. Single writer.
class GazeAccumulator {
 public:
  explicit GazeAccumulator(const ZoneLayout& layout) : layout_(&layout) {}

  void add(const GazeSample& sample);
  ZoneStats stats() const;
  std::size_t size() const { return count_; }
  void reset();

 private:
  const ZoneLayout* layout_;
  std::size_t count_ = 0;
  std::int64_t last_t_ = 0;
  std::optional<ZoneId> last_zone_;
  std::optional<double> last_pupil_;
  std::array<double, kZoneCount> dwell_{};
  std::array<std::int64_t, kZoneCount> transitions_{};
  std::array<double, kZoneCount> pupil_weighted_{};
  std::array<double, kZoneCount> pupil_time_{};
};

struct AttentionTotals {
  std::int64_t transitions = 0;
  double dwell_ms = 0.0;
};

inline AttentionTotals totals(const ZoneStats& stats) {
  return {stats.total_transitions(), stats.total_dwell()};
}

struct FatigueSignal {
  bool fatigued = false;
  double transition_ratio = 1.0;
  double dwell_ratio = 1.0;
};

inline constexpr double kDefaultFatigueThreshold = 0.5;
inline constexpr std::size_t kFatigueWindow = 3;

/// Compares `current` with the mean of the last three entries of `history`.
/// A zero baseline component yields a ratio of 1. Throws
/// Error(InvalidArgument) on an empty history.
FatigueSignal fatigue_check(std::span<const AttentionTotals> history,
                            AttentionTotals current,
                            double threshold = kDefaultFatigueThreshold);

}  // namespace etea
