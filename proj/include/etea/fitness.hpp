#pragma once

#include <array>
#include <optional>

#include "etea/gaze.hpp"

namespace etea {

struct FitnessWeights {
  double alpha = 1.0;  // dwell
  double beta = 1.0;   // transitions
  double gamma = 0.0;  // pupil
};

struct EstimatedFitness {
  std::array<double, kZoneCount> values{};
  std::optional<ZoneId> chosen;

  double operator[](ZoneId id) const { return values.at(id - 1); }
};

/// alpha*d + beta*t + gamma*p per zone, an absent pupil counting as 0.
/// Throws Error(InvalidArgument) for non-finite weights.
std::array<double, kZoneCount> weighted_fitness(const ZoneStats& stats,
                                                const FitnessWeights& w);

/// Half the mass split by transitions, half by dwell; a zero total in either
/// term spreads that half uniformly. The chosen zone gets the cube root of
/// its share, the other zones are left as is.
std::array<double, kZoneCount> normalized_base(const ZoneStats& stats);

EstimatedFitness normalized_fitness(const ZoneStats& stats,
                                    std::optional<ZoneId> chosen);

}  // namespace etea
