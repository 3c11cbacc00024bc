#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "etea/evolution.hpp"
#include "etea/fitness.hpp"
#include "etea/gaze.hpp"
#include "etea/simuser.hpp"

namespace etea {

using Json = nlohmann::json;

enum class Phase { Presenting, Collecting, Evolved, Ended };
const char* to_string(Phase phase);

enum class FitnessMode { Normalized, Weighted };

struct SessionConfig {
  GaConfig ga;
  FitnessWeights weights;
  FitnessMode fitness_mode = FitnessMode::Normalized;
  double fatigue_threshold = kDefaultFatigueThreshold;
  /// When false the client must send {"type":"ready"} after each new
  /// presentation before gaze is accepted again.
  bool auto_ack = true;
  /// Only read by headless runs.
  UserModel user;
};

/// Reads the config file schema; missing keys keep their defaults.
/// Throws Error(Configuration) on unknown enum values or invalid ranges.
SessionConfig config_from_json(const Json& j);
Json to_json(const SessionConfig& cfg);
void validate(const SessionConfig& cfg);

Json to_json(const ZoneLayout& layout);
ZoneLayout layout_from_json(const Json& j);

// ---- wire protocol -------------------------------------------------------

struct GazeMessage { GazeSample sample; };
struct ChooseMessage { ZoneId zone = 1; };
struct DoneMessage {};
struct EndMessage {};
struct ReadyMessage {};

using InboundMessage = std::variant<GazeMessage, ChooseMessage, DoneMessage,
                                    EndMessage, ReadyMessage>;

/// Throws Error(Parse) for malformed JSON, unknown types, missing fields and
/// out-of-range values.
InboundMessage parse_inbound(const Json& j);
InboundMessage parse_inbound(std::string_view text);
Json to_json(const InboundMessage& msg);

Json error_message(std::string_view code, std::string_view detail);

// ---- session -------------------------------------------------------------

struct GenerationRecord {
  int generation = 0;
  ZoneStats stats;
  EstimatedFitness fitness;
  std::optional<FatigueSignal> fatigue;
};

/// Receives every log record in order; see SessionLogWriter for JSONL.
using LogSink = std::function<void(const Json&)>;

/// One E-TEA run driven by inbound messages. Not thread-safe; a session is
/// a single serialized message queue.
class Session {
 public:
  /// Throws Error(Configuration) for an invalid config.
  Session(SessionConfig cfg, ZoneLayout layout, std::uint64_t seed,
          LogSink sink = {});
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  Phase phase() const { return phase_; }
  const Population& population() const { return population_; }
  const std::vector<Population>& presented() const { return presented_; }
  const std::vector<GenerationRecord>& history() const { return history_; }
  const SessionConfig& config() const { return cfg_; }
  const ZoneLayout& layout() const { return layout_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t pending_samples() const { return accumulator_.size(); }

  Json presentation() const;

  /// Applies one message. Wrong-phase and invalid messages yield a single
  /// error message and leave the session untouched.
  std::vector<Json> handle(const InboundMessage& msg);
  /// Same as handle() but parses first; parse failures become error
  /// messages with code "parse".
  std::vector<Json> handle_text(std::string_view text);

 private:
  std::vector<Json> on_done();
  void log(const Json& record) const;

  SessionConfig cfg_;
  ZoneLayout layout_;
  std::uint64_t seed_;
  LogSink sink_;
  Rng rng_;
  Phase phase_ = Phase::Presenting;
  Population population_;
  std::vector<Population> presented_;
  GazeAccumulator accumulator_;
  std::optional<std::int64_t> last_t_ms_;
  std::optional<ZoneId> chosen_;
  std::vector<GenerationRecord> history_;
};

/// Writes one JSON record per line and flushes, so a crash loses at most the
/// record being written.
class SessionLogWriter {
 public:
  explicit SessionLogWriter(std::ostream& out) : out_(&out) {}
  void operator()(const Json& record) const;

 private:
  std::ostream* out_;
};

// ---- headless runs and replay ---------------------------------------------

struct GenerationSummary {
  int generation = 0;
  double best_m1 = 0.0;
  double mean_m1 = 0.0;
  /// M1 of the member with the highest estimated fitness, i.e. the elite.
  std::optional<double> elite_m1;
  std::optional<AttentionTotals> totals;
  std::optional<ZoneId> chosen;
  bool fatigued = false;
};

struct Divergence {
  std::size_t line = 0;
  int generation = 0;
  std::string record_type;
  std::string detail;
};

struct RunReport {
  std::uint64_t seed = 0;
  std::vector<GenerationSummary> generations;
  std::vector<Divergence> divergences;
};

RunReport summarize(const Session& session);
Json to_json(const RunReport& report);

/// Drives `generations` evaluations with the simulated user from
/// cfg.user. The session uses `seed`; the simulated user draws from an
/// independent stream so the log alone determines the replay.
RunReport run_headless(const SessionConfig& cfg, int generations,
                       std::uint64_t seed, LogSink sink = {});

/// Re-executes a JSONL log and reports every record that the engine does not
/// reproduce exactly. Throws Error(Integrity) naming the first bad line for
/// empty, truncated or malformed logs.
RunReport replay(std::istream& log);

/// best/mean M1 table, one row per presented generation.
void write_csv(const RunReport& report, std::ostream& out);

}  // namespace etea
