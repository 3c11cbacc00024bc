#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "etea/error.hpp"
#include "etea/session.hpp"

using namespace etea;

namespace {

std::vector<std::string> headless_log(std::uint64_t seed, int generations = 6,
                                      SessionConfig cfg = {}) {
  std::ostringstream out;
  run_headless(cfg, generations, seed, SessionLogWriter(out));
  std::vector<std::string> lines;
  std::istringstream in(out.str());
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::string join(const std::vector<std::string>& lines) {
  std::string s;
  for (const auto& l : lines) s += l + '\n';
  return s;
}

RunReport replay_text(const std::string& text) {
  std::istringstream in(text);
  return replay(in);
}

void expect_integrity_error(const std::string& text, const std::string& needle) {
  try {
    replay_text(text);
    FAIL("expected integrity error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Integrity);
    CHECK(std::string(e.what()).find(needle) != std::string::npos);
  }
}

}  // namespace

TEST_CASE("headless runs are deterministic") {
  SessionConfig cfg;
  CHECK(to_json(run_headless(cfg, 9, 5)) == to_json(run_headless(cfg, 9, 5)));
  CHECK(headless_log(5) == headless_log(5));
  CHECK(headless_log(5) != headless_log(6));

  const RunReport r = run_headless(cfg, 9, 5);
  REQUIRE(r.generations.size() == 10);
  for (std::size_t g = 0; g < 9; ++g) {
    CHECK(r.generations[g].totals.has_value());
    CHECK(r.generations[g].elite_m1.has_value());
    CHECK(r.generations[g].best_m1 >= r.generations[g].mean_m1);
  }
  CHECK_FALSE(r.generations.back().totals.has_value());
  CHECK_THROWS_AS(run_headless(cfg, 0, 5), Error);
}

TEST_CASE("replay of a headless log reports no divergence") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto lines = headless_log(seed);
    const RunReport r = replay_text(join(lines));
    CHECK(r.divergences.empty());
    CHECK(r.seed == seed);
    CHECK(to_json(r).at("generations") == to_json(run_headless({}, 6, seed)).at("generations"));
  }
  SessionConfig manual;
  manual.auto_ack = false;
  manual.user.kind = UserKind::Random;
  CHECK(replay_text(join(headless_log(4, 4, manual))).divergences.empty());
}

TEST_CASE("a tampered fitness value is detected at its generation") {
  auto lines = headless_log(7);
  std::size_t target = 0;
  int seen = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    Json j = Json::parse(lines[i]);
    if (j.at("type") == "fitness" && seen++ == 2) {
      j["values"][4] = j["values"][4].get<double>() + 1e-6;
      lines[i] = j.dump();
      target = i;
    }
  }
  REQUIRE(target > 0);
  const RunReport r = replay_text(join(lines));
  REQUIRE(r.divergences.size() == 1);
  CHECK(r.divergences[0].line == target + 1);
  CHECK(r.divergences[0].generation == 2);
  CHECK(r.divergences[0].record_type == "fitness");
}

TEST_CASE("a tampered gaze record diverges downstream") {
  auto lines = headless_log(8);
  for (auto& line : lines) {
    Json j = Json::parse(line);
    if (j.at("type") == "gaze") {
      j["x"] = 0.9;
      j["y"] = 0.9;
      line = j.dump();
      break;
    }
  }
  CHECK_FALSE(replay_text(join(lines)).divergences.empty());
}

TEST_CASE("corrupt logs raise integrity errors") {
  expect_integrity_error("", "line 1");
  const auto lines = headless_log(9);

  std::vector<std::string> no_config(lines.begin() + 1, lines.end());
  expect_integrity_error(join(no_config), "line 1");

  auto truncated = lines;
  truncated[20] = truncated[20].substr(0, truncated[20].size() / 2);
  expect_integrity_error(join(truncated), "line 21");

  auto unknown = lines;
  unknown[3] = R"({"type":"mystery"})";
  expect_integrity_error(join(unknown), "line 4");

  auto bad_gaze = lines;
  for (auto& l : bad_gaze) {
    Json j = Json::parse(l);
    if (j.at("type") == "gaze") {
      j.erase("x");
      l = j.dump();
      break;
    }
  }
  expect_integrity_error(join(bad_gaze), "line");

  // Cut right after a done record: its fitness and presentation are missing.
  std::size_t done = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (Json::parse(lines[i]).at("type") == "done") {
      done = i;
      break;
    }
  }
  std::vector<std::string> cut(lines.begin(), lines.begin() + static_cast<long>(done) + 1);
  expect_integrity_error(join(cut), "truncated");

  auto seedless = lines;
  Json head = Json::parse(seedless[0]);
  head.erase("seed");
  seedless[0] = head.dump();
  expect_integrity_error(join(seedless), "seed");
}

TEST_CASE("csv report") {
  const RunReport r = run_headless({}, 3, 1);
  std::ostringstream out;
  write_csv(r, out);
  std::istringstream in(out.str());
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("generation,best_m1,mean_m1", 0) == 0);
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 4);
}

TEST_CASE("brightness user raises population mean M1") {
  SessionConfig cfg;
  cfg.user.temperature = 50.0;
  cfg.user.choice_prob = 0.8;
  int improved = 0;
  double slope_sum = 0.0;
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    const RunReport r = run_headless(cfg, 20, seed);
    improved += r.generations[20].mean_m1 > r.generations[0].mean_m1;
    // Nine generations: least-squares slope of mean M1.
    double sxy = 0.0, sxx = 0.0, my = 0.0;
    for (int g = 0; g <= 9; ++g) my += r.generations[g].mean_m1 / 10.0;
    for (int g = 0; g <= 9; ++g) {
      sxy += (g - 4.5) * (r.generations[g].mean_m1 - my);
      sxx += (g - 4.5) * (g - 4.5);
    }
    slope_sum += sxy / sxx;
  }
  CHECK(improved >= 27);
  CHECK(slope_sum / 30.0 > 0.0);
}
