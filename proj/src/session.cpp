#include "etea/session.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "etea/error.hpp"

namespace etea {

const char* to_string(Phase phase) {
  switch (phase) {
    case Phase::Presenting: return "Presenting";
    case Phase::Collecting: return "Collecting";
    case Phase::Evolved: return "Evolved";
    case Phase::Ended: return "Ended";
  }
  return "?";
}

namespace {

const SessionConfig& checked(const SessionConfig& cfg) {
  validate(cfg);
  return cfg;
}

Json optional_zone(const std::optional<ZoneId>& z) {
  return z ? Json(*z) : Json(nullptr);
}

Json stats_record(int generation, const ZoneStats& stats) {
  Json dwell = Json::array();
  Json transitions = Json::array();
  Json pupil = Json::array();
  for (const ZoneStat& z : stats.zones) {
    dwell.push_back(z.dwell_ms);
    transitions.push_back(z.transitions);
    pupil.push_back(z.pupil_mm ? Json(*z.pupil_mm) : Json(nullptr));
  }
  return {{"type", "stats"},         {"generation", generation},
          {"dwell_ms", dwell},       {"transitions", transitions},
          {"pupil_mm", pupil}};
}

Json fitness_message(int generation, const EstimatedFitness& f) {
  return {{"type", "fitness"},
          {"generation", generation},
          {"values", f.values},
          {"chosen", optional_zone(f.chosen)}};
}

Json fatigue_record(int generation, const FatigueSignal& s) {
  return {{"type", "fatigue"},
          {"generation", generation},
          {"fatigued", s.fatigued},
          {"transition_ratio", s.transition_ratio},
          {"dwell_ratio", s.dwell_ratio}};
}

Json protocol_error(const std::string& detail) {
  return error_message("protocol", detail);
}

}  // namespace

Session::Session(SessionConfig cfg, ZoneLayout layout, std::uint64_t seed,
                 LogSink sink)
    : cfg_(checked(cfg)),
      layout_(layout),
      seed_(seed),
      sink_(std::move(sink)),
      rng_(seed),
      accumulator_(layout_) {
  log({{"type", "config"},
       {"seed", seed_},
       {"config", to_json(cfg_)},
       {"layout", to_json(layout_)}});
  population_ = init_population(cfg_.ga, rng_);
  presented_.push_back(population_);
  log(presentation());
  phase_ = Phase::Collecting;
}

void Session::log(const Json& record) const {
  if (sink_) sink_(record);
}

Json Session::presentation() const {
  Json individuals = Json::array();
  for (std::size_t i = 0; i < population_.members.size(); ++i) {
    const Genome& g = population_.members[i];
    const RgbColor c = decode_color(g);
    individuals.push_back({{"zone", static_cast<int>(i + 1)},
                           {"rgb", {c.r, c.g, c.b}},
                           {"genome", g.to_string()}});
  }
  return {{"type", "present"},
          {"generation", population_.generation},
          {"individuals", individuals}};
}

std::vector<Json> Session::handle_text(std::string_view text) {
  try {
    return handle(parse_inbound(text));
  } catch (const Error& e) {
    return {error_message(to_string(e.code()), e.what())};
  }
}

std::vector<Json> Session::handle(const InboundMessage& msg) {
  if (phase_ == Phase::Ended) return {protocol_error("session has ended")};
  const std::string expected_phase =
      std::holds_alternative<ReadyMessage>(msg) ? "Evolved" : "Collecting";
  const bool allowed = std::holds_alternative<EndMessage>(msg) ||
                       expected_phase == to_string(phase_);
  if (!allowed) {
    return {protocol_error(to_json(msg)["type"].get<std::string>() +
                           " not accepted in phase " + to_string(phase_))};
  }

  try {
    if (const auto* gaze = std::get_if<GazeMessage>(&msg)) {
      if (last_t_ms_ && gaze->sample.t_ms < *last_t_ms_) {
        return {error_message("order", "gaze t_ms " +
                                           std::to_string(gaze->sample.t_ms) +
                                           " precedes " +
                                           std::to_string(*last_t_ms_))};
      }
      accumulator_.add(gaze->sample);
      last_t_ms_ = gaze->sample.t_ms;
      log(to_json(msg));
      return {};
    }
    if (const auto* choose = std::get_if<ChooseMessage>(&msg)) {
      if (choose->zone < 1 || choose->zone > kZoneCount) {
        return {error_message("parse", "choose zone outside 1..8")};
      }
      chosen_ = choose->zone;
      log(to_json(msg));
      return {};
    }
  } catch (const Error& e) {
    return {error_message(to_string(e.code()), e.what())};
  }

  if (std::holds_alternative<DoneMessage>(msg)) {
    log(to_json(msg));
    return on_done();
  }
  if (std::holds_alternative<ReadyMessage>(msg)) {
    log(to_json(msg));
    phase_ = Phase::Collecting;
    return {};
  }
  log(to_json(msg));
  phase_ = Phase::Ended;
  return {};
}

std::vector<Json> Session::on_done() {
  phase_ = Phase::Evolved;
  const int generation = population_.generation;

  GenerationRecord record;
  record.generation = generation;
  record.stats = accumulator_.stats();
  if (cfg_.fitness_mode == FitnessMode::Normalized) {
    record.fitness = normalized_fitness(record.stats, chosen_);
  } else {
    record.fitness.values = weighted_fitness(record.stats, cfg_.weights);
    record.fitness.chosen = chosen_;
  }
  if (!history_.empty()) {
    std::vector<AttentionTotals> past;
    past.reserve(history_.size());
    for (const GenerationRecord& h : history_) past.push_back(totals(h.stats));
    record.fatigue =
        fatigue_check(past, totals(record.stats), cfg_.fatigue_threshold);
  }

  std::vector<Json> out;
  log(stats_record(generation, record.stats));
  Json fitness = fitness_message(generation, record.fitness);
  log(fitness);
  out.push_back(std::move(fitness));
  if (record.fatigue) {
    log(fatigue_record(generation, *record.fatigue));
    if (record.fatigue->fatigued) {
      out.push_back({{"type", "fatigue_warning"},
                     {"transition_ratio", record.fatigue->transition_ratio},
                     {"dwell_ratio", record.fatigue->dwell_ratio}});
    }
  }

  population_ = evolve_step(population_, record.fitness.values, cfg_.ga, rng_);
  presented_.push_back(population_);
  history_.push_back(std::move(record));
  accumulator_.reset();
  chosen_.reset();

  Json present = presentation();
  log(present);
  out.push_back(std::move(present));

  if (cfg_.ga.max_generations && population_.generation >= *cfg_.ga.max_generations) {
    phase_ = Phase::Ended;
  } else if (cfg_.auto_ack) {
    phase_ = Phase::Collecting;
  }
  return out;
}

void SessionLogWriter::operator()(const Json& record) const {
  *out_ << record.dump() << '\n';
  out_->flush();
}

RunReport summarize(const Session& session) {
  RunReport report;
  report.seed = session.seed();
  const auto& history = session.history();
  for (const Population& pop : session.presented()) {
    GenerationSummary s;
    s.generation = pop.generation;
    double total = 0.0;
    for (const Genome& g : pop.members) {
      const double m1 = metric_m1(decode_color(g));
      s.best_m1 = std::max(s.best_m1, m1);
      total += m1;
    }
    s.mean_m1 = pop.members.empty() ? 0.0 : total / static_cast<double>(pop.members.size());
    const auto g = static_cast<std::size_t>(pop.generation);
    if (g < history.size()) {
      const GenerationRecord& r = history[g];
      const std::size_t elite = elite_indices(r.fitness.values, 1).front();
      s.elite_m1 = metric_m1(decode_color(pop.members[elite]));
      s.totals = totals(r.stats);
      s.chosen = r.fitness.chosen;
      s.fatigued = r.fatigue && r.fatigue->fatigued;
    }
    report.generations.push_back(s);
  }
  return report;
}

Json to_json(const RunReport& report) {
  Json gens = Json::array();
  for (const GenerationSummary& s : report.generations) {
    Json g = {{"generation", s.generation},
              {"best_m1", s.best_m1},
              {"mean_m1", s.mean_m1},
              {"elite_m1", nullptr},
              {"transitions", nullptr},
              {"dwell_ms", nullptr},
              {"chosen", optional_zone(s.chosen)},
              {"fatigued", s.fatigued}};
    if (s.elite_m1) g["elite_m1"] = *s.elite_m1;
    if (s.totals) {
      g["transitions"] = s.totals->transitions;
      g["dwell_ms"] = s.totals->dwell_ms;
    }
    gens.push_back(std::move(g));
  }
  Json divergences = Json::array();
  for (const Divergence& d : report.divergences) {
    divergences.push_back({{"line", d.line},
                           {"generation", d.generation},
                           {"record_type", d.record_type},
                           {"detail", d.detail}});
  }
  return {{"seed", report.seed},
          {"generations", gens},
          {"divergences", divergences}};
}

RunReport run_headless(const SessionConfig& cfg, int generations,
                       std::uint64_t seed, LogSink sink) {
  if (generations < 1) {
    throw Error(ErrorCode::InvalidArgument, "generations must be at least 1");
  }
  const ZoneLayout layout = default_layout();
  Session session(cfg, layout, seed, std::move(sink));
  Rng user_rng(derive_seed(seed, 1));
  const auto period = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil(1000.0 / cfg.user.sample_hz)));
  std::int64_t clock = 0;

  for (int g = 0; g < generations && session.phase() != Phase::Ended; ++g) {
    const Population& pop = session.population();
    for (const GazeSample& s : simulate_gaze(pop, layout, cfg.user, user_rng, clock)) {
      session.handle(GazeMessage{s});
      clock = s.t_ms + period;
    }
    if (auto choice = simulate_choice(pop, cfg.user, user_rng)) {
      session.handle(ChooseMessage{*choice});
    }
    session.handle(DoneMessage{});
    if (session.phase() == Phase::Evolved) session.handle(ReadyMessage{});
  }
  if (session.phase() != Phase::Ended) session.handle(EndMessage{});
  return summarize(session);
}

void write_csv(const RunReport& report, std::ostream& out) {
  out << "generation,best_m1,mean_m1,elite_m1,transitions,dwell_ms,chosen,fatigued\n";
  for (const GenerationSummary& s : report.generations) {
    out << s.generation << ',' << s.best_m1 << ',' << s.mean_m1 << ',';
    if (s.elite_m1) out << *s.elite_m1;
    out << ',';
    if (s.totals) out << s.totals->transitions << ',' << s.totals->dwell_ms;
    else out << ',';
    out << ',';
    if (s.chosen) out << *s.chosen;
    out << ',' << (s.fatigued ? 1 : 0) << '\n';
  }
}

}  // namespace etea
