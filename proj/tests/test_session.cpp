#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "etea/error.hpp"
#include "etea/session.hpp"

using namespace etea;

namespace {

Json gaze_json(std::int64_t t, const ZoneLayout& layout, ZoneId zone) {
  const Rect& r = layout.zone(zone);
  return {{"type", "gaze"}, {"t_ms", t}, {"x", r.center_x()}, {"y", r.center_y()},
          {"pupil_mm", nullptr}};
}

std::vector<Json> send(Session& s, const Json& msg) { return s.handle_text(msg.dump()); }

const Json* find_type(const std::vector<Json>& out, const std::string& type) {
  for (const Json& m : out) {
    if (m.at("type") == type) return &m;
  }
  return nullptr;
}

std::string error_code(const std::vector<Json>& out) {
  REQUIRE(out.size() == 1);
  REQUIRE(out[0].at("type") == "error");
  return out[0].at("code").get<std::string>();
}

}  // namespace

TEST_CASE("create_session presents generation 0") {
  Session s(SessionConfig{}, default_layout(), 10);
  CHECK(s.phase() == Phase::Collecting);
  const Json p = s.presentation();
  CHECK(p.at("type") == "present");
  CHECK(p.at("generation") == 0);
  REQUIRE(p.at("individuals").size() == 8);
  for (int i = 0; i < 8; ++i) {
    const Json& ind = p.at("individuals")[i];
    CHECK(ind.at("zone") == i + 1);
    const Genome g = Genome::from_string(ind.at("genome").get<std::string>());
    CHECK(g == s.population().members[static_cast<std::size_t>(i)]);
    const RgbColor c = decode_color(g);
    CHECK(ind.at("rgb") == Json::array({c.r, c.g, c.b}));
  }
  Session again(SessionConfig{}, default_layout(), 10);
  CHECK(again.presentation() == p);
}

TEST_CASE("invalid configuration is rejected") {
  SessionConfig cfg;
  cfg.ga.population_size = 9;
  try {
    Session s(cfg, default_layout(), 1);
    FAIL("expected configuration error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Configuration);
  }
}

TEST_CASE("done without gaze evolves with uniform fitness") {
  Session s(SessionConfig{}, default_layout(), 2);
  const auto out = send(s, {{"type", "done"}});
  const Json* f = find_type(out, "fitness");
  REQUIRE(f);
  for (const Json& v : f->at("values")) CHECK(v.get<double>() == doctest::Approx(0.125));
  CHECK(f->at("chosen").is_null());
  const Json* p = find_type(out, "present");
  REQUIRE(p);
  CHECK(p->at("generation") == 1);
  CHECK(s.history().size() == 1);
  CHECK(s.phase() == Phase::Collecting);
}

TEST_CASE("choose then done cube-roots the chosen zone") {
  const ZoneLayout layout = default_layout();
  Session s(SessionConfig{}, layout, 3);
  std::vector<GazeSample> samples;
  const ZoneId path[] = {1, 1, 2, 3, 3, 3, 7, 1};
  for (int i = 0; i < 8; ++i) {
    const Json g = gaze_json(20 * i, layout, path[i]);
    CHECK(send(s, g).empty());
    samples.push_back(std::get<GazeMessage>(parse_inbound(g)).sample);
  }
  CHECK(send(s, {{"type", "choose"}, {"zone", 2}}).empty());
  CHECK(send(s, {{"type", "choose"}, {"zone", 3}}).empty());  // latest wins
  const auto out = send(s, {{"type", "done"}});
  const Json* f = find_type(out, "fitness");
  REQUIRE(f);
  CHECK(f->at("chosen") == 3);
  const EstimatedFitness expected = normalized_fitness(aggregate(layout, samples), 3);
  for (std::size_t j = 0; j < 8; ++j) CHECK(f->at("values")[j].get<double>() == expected.values[j]);
  CHECK(s.history().front().fitness.values == expected.values);
}

TEST_CASE("phase guards") {
  const ZoneLayout layout = default_layout();
  SessionConfig cfg;
  cfg.auto_ack = false;
  Session s(cfg, layout, 4);
  CHECK(error_code(send(s, {{"type", "ready"}})) == "protocol");
  send(s, {{"type", "done"}});
  CHECK(s.phase() == Phase::Evolved);
  const Json before = s.presentation();
  CHECK(error_code(send(s, gaze_json(0, layout, 1))) == "protocol");
  CHECK(error_code(send(s, {{"type", "choose"}, {"zone", 1}})) == "protocol");
  CHECK(error_code(send(s, {{"type", "done"}})) == "protocol");
  CHECK(s.pending_samples() == 0);
  CHECK(s.presentation() == before);
  CHECK(send(s, {{"type", "ready"}}).empty());
  CHECK(s.phase() == Phase::Collecting);
  CHECK(send(s, gaze_json(0, layout, 1)).empty());
  CHECK(send(s, {{"type", "end"}}).empty());
  CHECK(s.phase() == Phase::Ended);
  CHECK(error_code(send(s, {{"type", "done"}})) == "protocol");
  CHECK(error_code(send(s, {{"type", "end"}})) == "protocol");
}

TEST_CASE("malformed messages leave the session unchanged") {
  const ZoneLayout layout = default_layout();
  Session s(SessionConfig{}, layout, 5);
  CHECK(error_code(s.handle_text("not json")) == "parse");
  CHECK(error_code(s.handle_text(R"({"zone":1})")) == "parse");
  CHECK(error_code(s.handle_text(R"({"type":"wave"})")) == "parse");
  CHECK(error_code(s.handle_text(R"({"type":"choose","zone":9})")) == "parse");
  CHECK(error_code(s.handle_text(R"({"type":"choose","zone":"2"})")) == "parse");
  CHECK(error_code(s.handle_text(R"({"type":"gaze","t_ms":1,"x":1.5,"y":0.2})")) == "parse");
  CHECK(error_code(s.handle_text(R"({"type":"gaze","t_ms":1.5,"x":0.5,"y":0.2})")) == "parse");
  CHECK(error_code(s.handle_text(R"({"type":"gaze","t_ms":1,"x":0.5,"y":0.2,"pupil_mm":-2})")) == "parse");
  CHECK(s.pending_samples() == 0);

  CHECK(send(s, gaze_json(100, layout, 1)).empty());
  CHECK(error_code(send(s, gaze_json(99, layout, 1))) == "order");
  CHECK(s.pending_samples() == 1);
  // pupil_mm may be omitted.
  CHECK(s.handle_text(R"({"type":"gaze","t_ms":120,"x":0.1,"y":0.1})").empty());
}

TEST_CASE("fatigue warning follows a collapse in attention") {
  const ZoneLayout layout = default_layout();
  Session s(SessionConfig{}, layout, 6);
  std::int64_t t = 0;
  auto look = [&](int entries) {
    for (int i = 0; i < entries; ++i) {
      send(s, gaze_json(t, layout, 1 + i % 8));
      t += 50;
    }
  };
  look(20);
  auto out = send(s, {{"type", "done"}});
  CHECK_FALSE(find_type(out, "fatigue_warning"));
  CHECK_FALSE(s.history()[0].fatigue.has_value());

  look(20);
  out = send(s, {{"type", "done"}});
  CHECK_FALSE(find_type(out, "fatigue_warning"));
  REQUIRE(s.history()[1].fatigue.has_value());
  CHECK_FALSE(s.history()[1].fatigue->fatigued);

  look(4);
  out = send(s, {{"type", "done"}});
  const Json* w = find_type(out, "fatigue_warning");
  REQUIRE(w);
  CHECK(w->at("transition_ratio").get<double>() == doctest::Approx(0.2));
  CHECK(s.history()[2].fatigue->fatigued);
  // Fitness is reported before the new presentation.
  CHECK(out.front().at("type") == "fitness");
  CHECK(out.back().at("type") == "present");
  CHECK(s.history().size() == static_cast<std::size_t>(s.population().generation));
}

TEST_CASE("max_generations ends the session") {
  SessionConfig cfg;
  cfg.ga.max_generations = 2;
  Session s(cfg, default_layout(), 7);
  send(s, {{"type", "done"}});
  CHECK(s.phase() == Phase::Collecting);
  send(s, {{"type", "done"}});
  CHECK(s.phase() == Phase::Ended);
  CHECK(s.population().generation == 2);
}

TEST_CASE("weighted fitness mode") {
  const ZoneLayout layout = default_layout();
  SessionConfig cfg;
  cfg.fitness_mode = FitnessMode::Weighted;
  cfg.weights = {1.0, 10.0, 0.0};
  Session s(cfg, layout, 8);
  send(s, gaze_json(0, layout, 2));
  send(s, gaze_json(40, layout, 2));
  send(s, gaze_json(60, layout, 4));
  const auto out = send(s, {{"type", "done"}});
  const Json* f = find_type(out, "fitness");
  REQUIRE(f);
  CHECK(f->at("values")[1].get<double>() == 70.0);  // 60 ms + 10 * 1 entry
  CHECK(f->at("values")[3].get<double>() == 10.0);
}

TEST_CASE("config JSON") {
  SessionConfig cfg;
  cfg.ga.selection = SelectionScheme::Tournament;
  cfg.ga.max_generations = 12;
  cfg.user.kind = UserKind::Random;
  cfg.fatigue_threshold = 0.4;
  cfg.auto_ack = false;
  const Json j = to_json(cfg);
  CHECK(to_json(config_from_json(j)) == j);

  const SessionConfig partial = config_from_json(Json::parse(R"({"user":{"temperature":5}})"));
  CHECK(partial.user.temperature == 5.0);
  CHECK(partial.ga.population_size == 8);

  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"ga":{"selection":"rank"}})")), Error);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"ga":{"population_size":10}})")), Error);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"user":{"temperature":"hot"}})")), Error);
  CHECK_THROWS_AS(config_from_json(Json::parse("[]")), Error);

  const ZoneLayout layout = default_layout();
  CHECK(to_json(layout_from_json(to_json(layout))) == to_json(layout));
}

TEST_CASE("identical message sequences give identical outbound messages") {
  const ZoneLayout layout = default_layout();
  auto run = [&] {
    Session s(SessionConfig{}, layout, 11);
    std::vector<Json> all;
    std::int64_t t = 0;
    for (int g = 0; g < 5; ++g) {
      for (int i = 0; i < 30; ++i) {
        for (auto& m : send(s, gaze_json(t, layout, 1 + (i * 7 + g) % 8))) all.push_back(m);
        t += 16;
      }
      for (auto& m : send(s, {{"type", "choose"}, {"zone", 1 + g}})) all.push_back(m);
      for (auto& m : send(s, {{"type", "done"}})) all.push_back(m);
    }
    return Json(all).dump();
  };
  CHECK(run() == run());
}
