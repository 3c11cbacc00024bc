#include "etea/evolution.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "etea/error.hpp"

namespace etea {

void validate(const GaConfig& cfg) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::Configuration, what);
  };
  if (cfg.population_size != kZoneCount) {
    fail("population_size must equal the zone count (" +
         std::to_string(kZoneCount) + "), got " +
         std::to_string(cfg.population_size));
  }
  if (!(cfg.crossover_prob >= 0.0 && cfg.crossover_prob <= 1.0)) {
    fail("crossover_prob must lie in [0,1]");
  }
  if (!(cfg.mutation_rate >= 0.0 && cfg.mutation_rate <= 1.0)) {
    fail("mutation_rate must lie in [0,1]");
  }
  if (cfg.elite_count < 0 || cfg.elite_count >= cfg.population_size) {
    fail("elite_count must lie in [0, population_size)");
  }
  if (cfg.selection == SelectionScheme::Tournament && cfg.tournament_size < 1) {
    fail("tournament_size must be at least 1");
  }
  if (cfg.max_generations && *cfg.max_generations < 1) {
    fail("max_generations must be positive");
  }
}

Population init_population(const GaConfig& cfg, Rng& rng) {
  Population pop;
  pop.generation = 0;
  pop.members.reserve(static_cast<std::size_t>(cfg.population_size));
  for (int i = 0; i < cfg.population_size; ++i) {
    pop.members.push_back(random_genome(rng));
  }
  return pop;
}

std::size_t select_roulette(std::span<const double> values, Rng& rng) {
  double total = 0.0;
  for (double v : values) total += std::max(v, 0.0);
  if (!(total > 0.0)) return rng.below(values.size());
  const double target = rng.uniform() * total;
  double running = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] <= 0.0) continue;
    running += values[i];
    last_positive = i;
    if (target < running) return i;
  }
  // Rounding can leave target just above the final partial sum.
  return last_positive;
}

std::size_t select_tournament(std::span<const double> values, int k, Rng& rng) {
  std::size_t best = rng.below(values.size());
  for (int i = 1; i < k; ++i) {
    const std::size_t c = rng.below(values.size());
    if (values[c] > values[best] || (values[c] == values[best] && c < best)) best = c;
  }
  return best;
}

std::size_t select_parent(std::span<const double> values, const GaConfig& cfg,
                          Rng& rng) {
  if (cfg.selection == SelectionScheme::Tournament) {
    return select_tournament(values, cfg.tournament_size, rng);
  }
  return select_roulette(values, rng);
}

std::pair<Genome, Genome> crossover_at(const Genome& a, const Genome& b, int cut) {
  if (cut < 1 || cut >= kGenomeBits) {
    throw Error(ErrorCode::InvalidArgument, "crossover cut must lie in 1..23");
  }
  const std::uint32_t suffix = (1u << (kGenomeBits - cut)) - 1;
  const std::uint32_t prefix = ((1u << kGenomeBits) - 1) & ~suffix;
  return {Genome::from_packed((a.packed() & prefix) | (b.packed() & suffix)),
          Genome::from_packed((b.packed() & prefix) | (a.packed() & suffix))};
}

std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b,
                                    double crossover_prob, Rng& rng) {
  if (!rng.bernoulli(crossover_prob)) return {a, b};
  const int cut = static_cast<int>(rng.between(1, kGenomeBits - 1));
  return crossover_at(a, b, cut);
}

Genome mutate(const Genome& g, double mutation_rate, Rng& rng) {
  Genome out = g;
  for (int i = 0; i < kGenomeBits; ++i) {
    if (rng.bernoulli(mutation_rate)) out = out.with_flipped(i);
  }
  return out;
}

std::vector<std::size_t> elite_indices(std::span<const double> values, int count) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] > values[b];
  });
  order.resize(std::min(order.size(), static_cast<std::size_t>(std::max(count, 0))));
  return order;
}

Population evolve_step(const Population& pop, std::span<const double> fitness,
                       const GaConfig& cfg, Rng& rng) {
  if (fitness.size() != pop.members.size() ||
      pop.members.size() != static_cast<std::size_t>(cfg.population_size)) {
    throw Error(ErrorCode::Structural,
                "fitness has " + std::to_string(fitness.size()) +
                    " values for a population of " +
                    std::to_string(pop.members.size()));
  }
  const auto size = static_cast<std::size_t>(cfg.population_size);
  std::vector<Genome> next;
  next.reserve(size);
  for (std::size_t i : elite_indices(fitness, cfg.elite_count)) {
    next.push_back(pop.members[i]);
  }
  while (next.size() < size) {
    const Genome& a = pop.members[select_parent(fitness, cfg, rng)];
    const Genome& b = pop.members[select_parent(fitness, cfg, rng)];
    auto [c1, c2] = crossover(a, b, cfg.crossover_prob, rng);
    next.push_back(mutate(c1, cfg.mutation_rate, rng));
    if (next.size() < size) next.push_back(mutate(c2, cfg.mutation_rate, rng));
  }
  // Fisher-Yates; new zone slots every generation.
  for (std::size_t i = size - 1; i > 0; --i) {
    std::swap(next[i], next[rng.below(i + 1)]);
  }
  return Population{pop.generation + 1, std::move(next)};
}

}  // namespace etea
