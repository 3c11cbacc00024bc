#include <string>

#include "etea/error.hpp"
#include "etea/session.hpp"

namespace etea {

namespace {

[[noreturn]] void parse_error(const std::string& what) {
  throw Error(ErrorCode::Parse, what);
}

double unit_coordinate(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    parse_error(std::string("gaze message needs numeric '") + key + "'");
  }
  const double v = j.at(key).get<double>();
  if (!(v >= 0.0 && v <= 1.0)) {
    parse_error(std::string("gaze '") + key + "' outside [0,1]");
  }
  return v;
}

}  // namespace

InboundMessage parse_inbound(const Json& j) {
  if (!j.is_object()) parse_error("message must be a JSON object");
  if (!j.contains("type") || !j.at("type").is_string()) {
    parse_error("message needs a string 'type'");
  }
  const std::string type = j.at("type").get<std::string>();
  if (type == "gaze") {
    if (!j.contains("t_ms") || !j.at("t_ms").is_number_integer()) {
      parse_error("gaze message needs integer 't_ms'");
    }
    GazeSample s;
    s.t_ms = j.at("t_ms").get<std::int64_t>();
    s.x = unit_coordinate(j, "x");
    s.y = unit_coordinate(j, "y");
    if (j.contains("pupil_mm") && !j.at("pupil_mm").is_null()) {
      if (!j.at("pupil_mm").is_number()) parse_error("pupil_mm must be a number or null");
      const double p = j.at("pupil_mm").get<double>();
      if (!(p > 0.0)) parse_error("pupil_mm must be positive");
      s.pupil_mm = p;
    }
    return GazeMessage{s};
  }
  if (type == "choose") {
    if (!j.contains("zone") || !j.at("zone").is_number_integer()) {
      parse_error("choose message needs integer 'zone'");
    }
    const auto zone = j.at("zone").get<std::int64_t>();
    if (zone < 1 || zone > kZoneCount) parse_error("choose zone outside 1..8");
    return ChooseMessage{static_cast<ZoneId>(zone)};
  }
  if (type == "done") return DoneMessage{};
  if (type == "end") return EndMessage{};
  if (type == "ready") return ReadyMessage{};
  parse_error("unknown message type '" + type + "'");
}

InboundMessage parse_inbound(std::string_view text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) parse_error("message is not valid JSON");
  return parse_inbound(j);
}

namespace {

struct InboundToJson {
  Json operator()(const GazeMessage& m) const {
    Json j = {{"type", "gaze"}, {"t_ms", m.sample.t_ms}, {"x", m.sample.x},
              {"y", m.sample.y}, {"pupil_mm", nullptr}};
    if (m.sample.pupil_mm) j["pupil_mm"] = *m.sample.pupil_mm;
    return j;
  }
  Json operator()(const ChooseMessage& m) const {
    return {{"type", "choose"}, {"zone", m.zone}};
  }
  Json operator()(const DoneMessage&) const { return {{"type", "done"}}; }
  Json operator()(const EndMessage&) const { return {{"type", "end"}}; }
  Json operator()(const ReadyMessage&) const { return {{"type", "ready"}}; }
};

}  // namespace

Json to_json(const InboundMessage& msg) { return std::visit(InboundToJson{}, msg); }

Json error_message(std::string_view code, std::string_view detail) {
  return {{"type", "error"}, {"code", code}, {"detail", detail}};
}

}  // namespace etea
