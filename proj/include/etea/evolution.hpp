#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "etea/fitness.hpp"
#include "etea/genome.hpp"
#include "etea/rng.hpp"

namespace etea {

enum class SelectionScheme { Roulette, Tournament };

struct GaConfig {
  int population_size = kZoneCount;
  double crossover_prob = 0.9;
  double mutation_rate = 1.0 / kGenomeBits;
  int elite_count = 1;
  SelectionScheme selection = SelectionScheme::Roulette;
  int tournament_size = 2;
  std::optional<int> max_generations;
};

/// Throws Error(Configuration) on out-of-range fields, including a
/// population size that differs from the zone count.
void validate(const GaConfig& cfg);

struct Population {
  int generation = 0;
  /// Index i is shown in zone i + 1.
  std::vector<Genome> members;
};

Population init_population(const GaConfig& cfg, Rng& rng);

/// Roulette: index drawn in proportion to the (non-negative part of the)
/// values, uniform when no value is positive. Returns a 0-based index.
std::size_t select_roulette(std::span<const double> values, Rng& rng);

/// Best of `k` uniform draws with replacement, ties to the lower index.
std::size_t select_tournament(std::span<const double> values, int k, Rng& rng);

std::size_t select_parent(std::span<const double> values, const GaConfig& cfg,
                          Rng& rng);

/// One-point crossover: children take a's prefix [0, cut) with b's suffix and
/// vice versa. `cut` must lie in 1..23.
std::pair<Genome, Genome> crossover_at(const Genome& a, const Genome& b, int cut);

/// With probability crossover_prob cut at a uniform point in 1..23,
/// otherwise return clones.
std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b,
                                    double crossover_prob, Rng& rng);

Genome mutate(const Genome& g, double mutation_rate, Rng& rng);

/// Indices of the `count` highest values, ties to the lower index.
std::vector<std::size_t> elite_indices(std::span<const double> values,
                                       int count);

/// Elites are copied unchanged, the rest is bred by select, crossover and
/// mutate, then all members are shuffled into zone slots.
/// Throws Error(Structural) when the fitness size differs from the population.
Population evolve_step(const Population& pop, std::span<const double> fitness,
                       const GaConfig& cfg, Rng& rng);

}  // namespace etea
