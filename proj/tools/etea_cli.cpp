// Command-line front end. Everything goes through the C API in etea.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "httplib.h"
#include "json.hpp"

#include "etea/etea.h"

namespace {

using nlohmann::json;

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { etea_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

int report_failure(etea_status status) {
  std::cerr << "error: " << etea_status_string(status) << ": " << etea_last_error()
            << '\n';
  return 2;
}

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  return json::parse(in);
}

int run_fdc(const std::string& metric, std::uint64_t samples, std::uint64_t seed) {
  OwnedString out;
  const etea_status st = etea_fdc(metric.c_str(), samples, seed, &out.p);
  if (st != ETEA_OK) return report_failure(st);
  std::cout << out.str() << '\n';
  return 0;
}

int run_simulate(json cfg, int generations, std::uint64_t seed,
                 const std::string& out_path) {
  const std::string text = cfg.dump();
  OwnedString report;
  const etea_status st = etea_simulate(text.c_str(), generations, seed,
                                       out_path.c_str(), &report.p);
  if (st != ETEA_OK) return report_failure(st);
  const json r = json::parse(report.str());
  const auto& gens = r.at("generations");
  std::cout << "generation,best_m1,mean_m1\n";
  for (const auto& g : gens) {
    std::cout << g.at("generation").get<int>() << ',' << g.at("best_m1").get<double>()
              << ',' << g.at("mean_m1").get<double>() << '\n';
  }
  std::cerr << "log written to " << out_path << '\n';
  return 0;
}

int run_replay(const std::string& path) {
  OwnedString report;
  const etea_status st = etea_replay(path.c_str(), &report.p);
  if (st != ETEA_OK) return report_failure(st);
  const json r = json::parse(report.str());
  const auto& div = r.at("divergences");
  std::cout << json{{"generations", r.at("generations").size()},
                    {"divergence_count", div.size()},
                    {"divergences", div}}
                   .dump(2)
            << '\n';
  return div.empty() ? 0 : 1;
}

int run_report(const std::string& path, const std::string& csv) {
  const etea_status st = etea_report_csv(path.c_str(), csv.c_str());
  if (st != ETEA_OK) return report_failure(st);
  std::cerr << "wrote " << csv << '\n';
  return 0;
}

int run_serve(const std::string& host, int port, std::uint64_t seed,
              const json& cfg, const std::string& log_path) {
  const std::string text = cfg.dump();
  etea_session* raw = nullptr;
  const etea_status st = etea_session_create(
      text.c_str(), seed, log_path.empty() ? nullptr : log_path.c_str(), &raw);
  if (st != ETEA_OK) return report_failure(st);
  std::unique_ptr<etea_session, decltype(&etea_session_destroy)> session(
      raw, &etea_session_destroy);

  // httplib serves requests on a thread pool; the session is one queue.
  std::mutex queue;
  httplib::Server server;
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
  server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });
  server.Post("/message", [&](const httplib::Request& req, httplib::Response& res) {
    std::lock_guard lock(queue);
    OwnedString out;
    const etea_status s = etea_session_handle(session.get(), req.body.c_str(), &out.p);
    if (s != ETEA_OK) {
      res.status = 500;
      res.set_content(json{{{"type", "error"}, {"code", "internal"},
                            {"detail", etea_last_error()}}}.dump(),
                      "application/json");
      return;
    }
    res.set_content(out.str(), "application/json");
  });
  server.Get("/present", [&](const httplib::Request&, httplib::Response& res) {
    std::lock_guard lock(queue);
    OwnedString out;
    etea_session_presentation(session.get(), &out.p);
    res.set_content(out.str(), "application/json");
  });
  server.Get("/status", [&](const httplib::Request&, httplib::Response& res) {
    std::lock_guard lock(queue);
    res.set_content(json{{"phase", etea_session_phase(session.get())},
                         {"generation", etea_session_generation(session.get())}}
                        .dump(),
                    "application/json");
  });
  server.Get("/report", [&](const httplib::Request&, httplib::Response& res) {
    std::lock_guard lock(queue);
    OwnedString out;
    etea_session_report(session.get(), &out.p);
    res.set_content(out.str(), "application/json");
  });
  std::cerr << "serving on http://" << host << ':' << port << '\n';
  if (!server.listen(host, port)) {
    std::cerr << "error: cannot listen on " << host << ':' << port << '\n';
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaze-driven interactive evolution of colors"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  std::string config_path;

  auto* serve = app.add_subcommand("serve", "Run a live session over HTTP");
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string serve_log;
  serve->add_option("--port", port, "TCP port")->required();
  serve->add_option("--seed", seed, "RNG seed")->required();
  serve->add_option("--config", config_path, "JSON config file");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--log", serve_log, "Write the session log (JSONL) here");

  auto* simulate = app.add_subcommand("simulate", "Headless run with a simulated user");
  int generations = 20;
  std::optional<std::string> user;
  std::optional<double> temperature;
  std::optional<double> choice_prob;
  std::string out_path;
  simulate->add_option("--generations", generations)->required()->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed)->required();
  simulate->add_option("--user", user)->check(CLI::IsMember({"brightness", "random"}));
  simulate->add_option("--temperature", temperature);
  simulate->add_option("--choice-prob", choice_prob);
  simulate->add_option("--config", config_path);
  simulate->add_option("--out", out_path, "Session log (JSONL)")->required();

  auto* fdc = app.add_subcommand("fdc", "Fitness-distance correlation of a color metric");
  std::string metric = "m1";
  std::uint64_t samples = 4000;
  fdc->add_option("--metric", metric)->check(CLI::IsMember({"m1", "m2", "ms"}));
  fdc->add_option("--samples", samples);
  fdc->add_option("--seed", seed)->required();

  auto* replay = app.add_subcommand("replay", "Re-execute a log and check it");
  std::string log_path;
  replay->add_option("log", log_path)->required();

  auto* report = app.add_subcommand("report", "Per-generation M1 table from a log");
  std::string csv;
  report->add_option("log", log_path)->required();
  report->add_option("--csv", csv)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*fdc) return run_fdc(metric, samples, seed);
    if (*replay) return run_replay(log_path);
    if (*report) return run_report(log_path, csv);
    json cfg = load_config(config_path);
    if (*simulate) {
      if (user) cfg["user"]["kind"] = *user;
      if (temperature) cfg["user"]["temperature"] = *temperature;
      if (choice_prob) cfg["user"]["choice_prob"] = *choice_prob;
      return run_simulate(cfg, generations, seed, out_path);
    }
    return run_serve(host, port, seed, cfg, serve_log);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
