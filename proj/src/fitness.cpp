#include "etea/fitness.hpp"

#include <cmath>
#include <string>

#include "etea/error.hpp"

namespace etea {

std::array<double, kZoneCount> weighted_fitness(const ZoneStats& stats,
                                                const FitnessWeights& w) {
  if (!std::isfinite(w.alpha) || !std::isfinite(w.beta) || !std::isfinite(w.gamma)) {
    throw Error(ErrorCode::InvalidArgument, "fitness weights must be finite");
  }
  std::array<double, kZoneCount> out{};
  for (std::size_t j = 0; j < out.size(); ++j) {
    const ZoneStat& z = stats.zones[j];
    out[j] = w.alpha * z.dwell_ms + w.beta * static_cast<double>(z.transitions) +
             w.gamma * z.pupil_mm.value_or(0.0);
  }
  return out;
}

std::array<double, kZoneCount> normalized_base(const ZoneStats& stats) {
  const double sum_t = static_cast<double>(stats.total_transitions());
  const double sum_d = stats.total_dwell();
  constexpr double uniform_half = 1.0 / (2.0 * kZoneCount);
  std::array<double, kZoneCount> base{};
  for (std::size_t j = 0; j < base.size(); ++j) {
    const ZoneStat& z = stats.zones[j];
    const double t_term =
        sum_t > 0.0 ? static_cast<double>(z.transitions) / (2.0 * sum_t) : uniform_half;
    const double d_term = sum_d > 0.0 ? z.dwell_ms / (2.0 * sum_d) : uniform_half;
    base[j] = t_term + d_term;
  }
  return base;
}

EstimatedFitness normalized_fitness(const ZoneStats& stats,
                                    std::optional<ZoneId> chosen) {
  if (chosen && (*chosen < 1 || *chosen > kZoneCount)) {
    throw Error(ErrorCode::InvalidArgument,
                "chosen zone " + std::to_string(*chosen) + " outside 1..8");
  }
  EstimatedFitness out;
  out.values = normalized_base(stats);
  out.chosen = chosen;
  if (chosen) {
    double& v = out.values[static_cast<std::size_t>(*chosen - 1)];
    v = std::cbrt(v);
  }
  return out;
}

}  // namespace etea
