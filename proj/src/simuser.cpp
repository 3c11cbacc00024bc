#include "etea/simuser.hpp"

#include <algorithm>
#include <cmath>

#include "etea/error.hpp"

namespace etea {

void validate(const UserModel& m) {
  auto fail = [](const char* what) { throw Error(ErrorCode::Configuration, what); };
  if (!(m.temperature > 0.0) || !std::isfinite(m.temperature)) {
    fail("user temperature must be a positive finite number");
  }
  if (m.samples_per_generation < 0) fail("samples_per_generation must be >= 0");
  if (!(m.sample_hz > 0.0 && m.sample_hz <= 1000.0)) {
    fail("sample_hz must lie in (0, 1000]");
  }
  if (!(m.choice_prob >= 0.0 && m.choice_prob <= 1.0)) {
    fail("choice_prob must lie in [0,1]");
  }
  if (!(m.noise >= 0.0 && m.noise <= 1.0)) fail("noise must lie in [0,1]");
}

std::vector<double> gaze_distribution(const Population& pop, const UserModel& m) {
  const std::size_t n = pop.members.size();
  std::vector<double> p(n, n ? 1.0 / static_cast<double>(n) : 0.0);
  if (m.kind == UserKind::Random || n == 0) return p;

  std::vector<double> score(n);
  for (std::size_t i = 0; i < n; ++i) {
    score[i] = metric_m1(decode_color(pop.members[i])) / m.temperature;
  }
  const double top = *std::max_element(score.begin(), score.end());
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = std::exp(score[i] - top);
    total += p[i];
  }
  for (double& v : p) v /= total;
  return p;
}

namespace {

std::size_t draw(const std::vector<double>& p, Rng& rng) {
  const double u = rng.uniform();
  double running = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    running += p[i];
    last = i;
    if (u < running) return i;
  }
  return last;
}

}  // namespace

std::vector<GazeSample> simulate_gaze(const Population& pop,
                                      const ZoneLayout& layout,
                                      const UserModel& m, Rng& rng,
                                      std::int64_t start_ms) {
  const std::vector<double> p = gaze_distribution(pop, m);
  const double period_ms = 1000.0 / m.sample_hz;
  std::vector<GazeSample> out;
  out.reserve(static_cast<std::size_t>(m.samples_per_generation));
  for (int k = 0; k < m.samples_per_generation; ++k) {
    std::size_t zone = draw(p, rng);
    if (m.noise > 0.0 && rng.bernoulli(m.noise)) zone = rng.below(p.size());
    const Rect& r = layout.zone(static_cast<ZoneId>(zone + 1));
    GazeSample s;
    s.t_ms = start_ms + static_cast<std::int64_t>(std::floor(k * period_ms));
    s.x = r.center_x();
    s.y = r.center_y();
    out.push_back(s);
  }
  return out;
}

ZoneId brightest_zone(const Population& pop) {
  std::size_t best = 0;
  double best_m1 = -1.0;
  for (std::size_t i = 0; i < pop.members.size(); ++i) {
    const double v = metric_m1(decode_color(pop.members[i]));
    if (v > best_m1) {
      best_m1 = v;
      best = i;
    }
  }
  return static_cast<ZoneId>(best + 1);
}

std::optional<ZoneId> simulate_choice(const Population& pop, const UserModel& m,
                                      Rng& rng) {
  if (pop.members.empty() || !rng.bernoulli(m.choice_prob)) return std::nullopt;
  if (m.kind == UserKind::Random) {
    return static_cast<ZoneId>(rng.below(pop.members.size()) + 1);
  }
  return brightest_zone(pop);
}

}  // namespace etea
