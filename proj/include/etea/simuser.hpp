#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "etea/evolution.hpp"
#include "etea/gaze.hpp"

namespace etea {

enum class UserKind { Brightness, Random };

struct UserModel {
  UserKind kind = UserKind::Brightness;
  /// Softmax temperature over M1; only used by the brightness kind.
  double temperature = 50.0;
  int samples_per_generation = 120;
  double sample_hz = 60.0;
  double choice_prob = 0.8;
  /// Per-sample probability of looking at a uniformly random zone instead.
  double noise = 0.0;
};

/// Throws Error(Configuration) when a parameter is out of range.
void validate(const UserModel& m);

/// Probability of each zone under softmax(M1 / temperature), numerically
/// stable for temperatures close to zero.
std::vector<double> gaze_distribution(const Population& pop,
                                      const UserModel& m);

/// Exactly samples_per_generation samples at the model's cadence starting at
/// `start_ms`, each placed at the center of its zone, without pupil data.
std::vector<GazeSample> simulate_gaze(const Population& pop,
                                      const ZoneLayout& layout,
                                      const UserModel& m, Rng& rng,
                                      std::int64_t start_ms = 0);

/// Zone with the highest M1, lowest zone on ties.
ZoneId brightest_zone(const Population& pop);

std::optional<ZoneId> simulate_choice(const Population& pop, const UserModel& m,
                                      Rng& rng);

}  // namespace etea
