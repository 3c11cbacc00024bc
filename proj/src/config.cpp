#include <cmath>
#include <string>

#include "etea/error.hpp"
#include "etea/session.hpp"

namespace etea {

namespace {

[[noreturn]] void config_error(const std::string& what) {
  throw Error(ErrorCode::Configuration, what);
}

template <typename T>
void read(const Json& j, const char* key, T& out) {
  if (!j.contains(key) || j.at(key).is_null()) return;
  try {
    out = j.at(key).get<T>();
  } catch (const Json::exception& e) {
    config_error(std::string("config key '") + key + "': " + e.what());
  }
}

const Json& section(const Json& j, const char* key) {
  static const Json empty = Json::object();
  if (!j.contains(key)) return empty;
  if (!j.at(key).is_object()) config_error(std::string("'") + key + "' must be an object");
  return j.at(key);
}

}  // namespace

void validate(const SessionConfig& cfg) {
  validate(cfg.ga);
  validate(cfg.user);
  if (!(cfg.fatigue_threshold >= 0.0) || !std::isfinite(cfg.fatigue_threshold)) {
    config_error("fatigue_threshold must be a non-negative number");
  }
  const FitnessWeights& w = cfg.weights;
  if (!std::isfinite(w.alpha) || !std::isfinite(w.beta) || !std::isfinite(w.gamma)) {
    config_error("fitness weights must be finite");
  }
}

SessionConfig config_from_json(const Json& j) {
  if (!j.is_object()) config_error("config must be a JSON object");
  SessionConfig cfg;

  const Json& ga = section(j, "ga");
  read(ga, "population_size", cfg.ga.population_size);
  read(ga, "crossover_prob", cfg.ga.crossover_prob);
  read(ga, "mutation_rate", cfg.ga.mutation_rate);
  read(ga, "elite_count", cfg.ga.elite_count);
  read(ga, "tournament_size", cfg.ga.tournament_size);
  if (ga.contains("max_generations") && !ga.at("max_generations").is_null()) {
    int n = 0;
    read(ga, "max_generations", n);
    cfg.ga.max_generations = n;
  }
  std::string selection = "roulette";
  read(ga, "selection", selection);
  if (selection == "roulette") {
    cfg.ga.selection = SelectionScheme::Roulette;
  } else if (selection == "tournament") {
    cfg.ga.selection = SelectionScheme::Tournament;
  } else {
    config_error("unknown selection '" + selection + "'");
  }

  const Json& weights = section(j, "weights");
  read(weights, "alpha", cfg.weights.alpha);
  read(weights, "beta", cfg.weights.beta);
  read(weights, "gamma", cfg.weights.gamma);

  std::string mode = "normalized";
  read(j, "fitness_mode", mode);
  if (mode == "normalized") {
    cfg.fitness_mode = FitnessMode::Normalized;
  } else if (mode == "weighted") {
    cfg.fitness_mode = FitnessMode::Weighted;
  } else {
    config_error("unknown fitness_mode '" + mode + "'");
  }
  read(j, "fatigue_threshold", cfg.fatigue_threshold);
  read(j, "auto_ack", cfg.auto_ack);

  const Json& user = section(j, "user");
  std::string kind = "brightness";
  read(user, "kind", kind);
  if (kind == "brightness") {
    cfg.user.kind = UserKind::Brightness;
  } else if (kind == "random") {
    cfg.user.kind = UserKind::Random;
  } else {
    config_error("unknown user kind '" + kind + "'");
  }
  read(user, "temperature", cfg.user.temperature);
  read(user, "samples_per_generation", cfg.user.samples_per_generation);
  read(user, "sample_hz", cfg.user.sample_hz);
  read(user, "choice_prob", cfg.user.choice_prob);
  read(user, "noise", cfg.user.noise);

  validate(cfg);
  return cfg;
}

Json to_json(const SessionConfig& cfg) {
  Json ga = {
      {"population_size", cfg.ga.population_size},
      {"crossover_prob", cfg.ga.crossover_prob},
      {"mutation_rate", cfg.ga.mutation_rate},
      {"elite_count", cfg.ga.elite_count},
      {"selection",
       cfg.ga.selection == SelectionScheme::Roulette ? "roulette" : "tournament"},
      {"tournament_size", cfg.ga.tournament_size},
      {"max_generations", nullptr},
  };
  if (cfg.ga.max_generations) ga["max_generations"] = *cfg.ga.max_generations;
  return {
      {"ga", ga},
      {"weights",
       {{"alpha", cfg.weights.alpha},
        {"beta", cfg.weights.beta},
        {"gamma", cfg.weights.gamma}}},
      {"fitness_mode",
       cfg.fitness_mode == FitnessMode::Normalized ? "normalized" : "weighted"},
      {"fatigue_threshold", cfg.fatigue_threshold},
      {"auto_ack", cfg.auto_ack},
      {"user",
       {{"kind", cfg.user.kind == UserKind::Brightness ? "brightness" : "random"},
        {"temperature", cfg.user.temperature},
        {"samples_per_generation", cfg.user.samples_per_generation},
        {"sample_hz", cfg.user.sample_hz},
        {"choice_prob", cfg.user.choice_prob},
        {"noise", cfg.user.noise}}},
  };
}

namespace {

Json rect_json(const Rect& r) { return Json::array({r.x0, r.y0, r.x1, r.y1}); }

Rect rect_from(const Json& j) {
  if (!j.is_array() || j.size() != 4) config_error("rectangle must be [x0,y0,x1,y1]");
  try {
    return Rect{j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
                j[3].get<double>()};
  } catch (const Json::exception& e) {
    config_error(std::string("rectangle: ") + e.what());
  }
}

}  // namespace

Json to_json(const ZoneLayout& layout) {
  Json zones = Json::array();
  for (const Rect& r : layout.zones()) zones.push_back(rect_json(r));
  return {{"zones", zones}, {"center_exclusion", rect_json(layout.center_exclusion())}};
}

ZoneLayout layout_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("zones") || !j.contains("center_exclusion")) {
    config_error("layout needs 'zones' and 'center_exclusion'");
  }
  const Json& zones = j.at("zones");
  if (!zones.is_array() || zones.size() != kZoneCount) {
    config_error("layout must have exactly 8 zones");
  }
  std::array<Rect, kZoneCount> rects{};
  for (std::size_t i = 0; i < rects.size(); ++i) rects[i] = rect_from(zones[i]);
  return ZoneLayout(rects, rect_from(j.at("center_exclusion")));
}

}  // namespace etea
