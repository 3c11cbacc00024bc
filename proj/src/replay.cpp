#include <istream>
#include <string>
#include <vector>

#include "etea/error.hpp"
#include "etea/session.hpp"

namespace etea {

namespace {

[[noreturn]] void integrity_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::Integrity, "log line " + std::to_string(line) + ": " + what);
}

bool is_inbound(const std::string& type) {
  return type == "gaze" || type == "choose" || type == "done" || type == "end" ||
         type == "ready";
}

bool is_known(const std::string& type) {
  return is_inbound(type) || type == "present" || type == "stats" ||
         type == "fitness" || type == "fatigue";
}

std::string clip(const Json& j) {
  std::string s = j.dump();
  if (s.size() > 160) s = s.substr(0, 157) + "...";
  return s;
}

}  // namespace

RunReport replay(std::istream& in) {
  std::vector<Json> records;
  std::string text;
  while (std::getline(in, text)) {
    const std::size_t line = records.size() + 1;
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) integrity_error(line, "not a complete JSON record");
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
      integrity_error(line, "record has no string 'type'");
    }
    records.push_back(std::move(j));
  }
  if (records.empty()) integrity_error(1, "log is empty");

  const Json& head = records.front();
  if (head.at("type") != "config") integrity_error(1, "first record must be config");
  if (!head.contains("seed") || !head.at("seed").is_number_unsigned()) {
    integrity_error(1, "config record has no seed");
  }
  if (!head.contains("config") || !head.contains("layout")) {
    integrity_error(1, "config record needs 'config' and 'layout'");
  }

  std::vector<Json> regenerated;
  std::optional<Session> session;
  try {
    session.emplace(config_from_json(head.at("config")),
                    layout_from_json(head.at("layout")),
                    head.at("seed").get<std::uint64_t>(),
                    [&regenerated](const Json& r) { regenerated.push_back(r); });
  } catch (const Error& e) {
    integrity_error(1, e.what());
  }

  std::vector<Divergence> divergences;
  auto diverge = [&](std::size_t index, const std::string& detail) {
    const Json& r = records[index];
    Divergence d;
    d.line = index + 1;
    d.generation = r.contains("generation") && r.at("generation").is_number_integer()
                       ? r.at("generation").get<int>()
                       : session->population().generation;
    d.record_type = r.at("type").get<std::string>();
    d.detail = detail;
    divergences.push_back(std::move(d));
  };

  for (std::size_t i = 0; i < records.size(); ++i) {
    const Json& r = records[i];
    const std::string type = r.at("type").get<std::string>();
    if (i > 0 && !is_known(type)) integrity_error(i + 1, "unknown record type '" + type + "'");
    if (i > 0 && is_inbound(type)) {
      InboundMessage msg;
      try {
        msg = parse_inbound(r);
      } catch (const Error& e) {
        integrity_error(i + 1, e.what());
      }
      for (const Json& out : session->handle(msg)) {
        if (out.at("type") == "error") diverge(i, "engine rejected message: " + clip(out));
      }
    }
    if (i >= regenerated.size()) {
      diverge(i, "engine produced no record here");
    } else if (regenerated[i] != r) {
      diverge(i, "expected " + clip(regenerated[i]));
    }
  }
  if (regenerated.size() > records.size()) {
    integrity_error(records.size() + 1,
                    "log truncated; missing " + clip(regenerated[records.size()]));
  }

  RunReport report = summarize(*session);
  report.divergences = std::move(divergences);
  return report;
}

}  // namespace etea
