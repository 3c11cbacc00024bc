#include "etea/etea.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>

#include "etea/error.hpp"
#include "etea/genome.hpp"
#include "etea/session.hpp"

struct etea_session {
  std::unique_ptr<std::ofstream> log;
  std::unique_ptr<etea::Session> session;
};

namespace {

thread_local std::string last_error;

etea_status status_for(etea::ErrorCode code) {
  using etea::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::OutOfBounds:
    case ErrorCode::Ordering:
    case ErrorCode::Structural: return ETEA_ERR_INVALID_ARGUMENT;
    case ErrorCode::Configuration: return ETEA_ERR_CONFIG;
    case ErrorCode::Parse: return ETEA_ERR_PARSE;
    case ErrorCode::Protocol: return ETEA_ERR_PROTOCOL;
    case ErrorCode::UndefinedCorrelation: return ETEA_ERR_UNDEFINED;
    case ErrorCode::Integrity: return ETEA_ERR_INTEGRITY;
    case ErrorCode::Io: return ETEA_ERR_IO;
  }
  return ETEA_ERR_INTERNAL;
}

etea_status fail(etea_status status, std::string detail) {
  last_error = std::move(detail);
  return status;
}

// Runs `body`, translating every exception into a status code.
template <typename F>
etea_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const etea::Error& e) {
    return fail(status_for(e.code()), e.what());
  } catch (const etea::Json::exception& e) {
    return fail(ETEA_ERR_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ETEA_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ETEA_ERR_INTERNAL, e.what());
  }
}

char* duplicate(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

etea::SessionConfig parse_config(const char* config_json) {
  if (!config_json || !*config_json) return etea::SessionConfig{};
  etea::Json j = etea::Json::parse(config_json, nullptr, false);
  if (j.is_discarded()) {
    throw etea::Error(etea::ErrorCode::Configuration, "config is not valid JSON");
  }
  return etea::config_from_json(j);
}

std::unique_ptr<std::ofstream> open_log(const char* path) {
  if (!path) return nullptr;
  auto out = std::make_unique<std::ofstream>(path, std::ios::trunc);
  if (!*out) {
    throw etea::Error(etea::ErrorCode::Io, std::string("cannot open ") + path);
  }
  return out;
}

etea::RunReport replay_file(const char* log_path) {
  if (!log_path) throw etea::Error(etea::ErrorCode::InvalidArgument, "null log path");
  std::ifstream in(log_path);
  if (!in) throw etea::Error(etea::ErrorCode::Io, std::string("cannot open ") + log_path);
  return etea::replay(in);
}

}  // namespace

extern "C" {

const char* etea_version(void) { return "1.0.0"; }

const char* etea_status_string(etea_status status) {
  switch (status) {
    case ETEA_OK: return "ok";
    case ETEA_ERR_INVALID_ARGUMENT: return "invalid argument";
    case ETEA_ERR_CONFIG: return "configuration error";
    case ETEA_ERR_PARSE: return "parse error";
    case ETEA_ERR_PROTOCOL: return "protocol error";
    case ETEA_ERR_INTEGRITY: return "integrity error";
    case ETEA_ERR_IO: return "i/o error";
    case ETEA_ERR_UNDEFINED: return "undefined result";
    case ETEA_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* etea_last_error(void) { return last_error.c_str(); }

void etea_free(void* p) { std::free(p); }

etea_status etea_session_create(const char* config_json, uint64_t seed,
                                const char* log_path, etea_session** out) {
  if (!out) return fail(ETEA_ERR_INVALID_ARGUMENT, "null out pointer");
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<etea_session>();
    const etea::SessionConfig cfg = parse_config(config_json);
    handle->log = open_log(log_path);
    etea::LogSink sink;
    if (handle->log) sink = etea::SessionLogWriter(*handle->log);
    handle->session = std::make_unique<etea::Session>(cfg, etea::default_layout(),
                                                      seed, std::move(sink));
    *out = handle.release();
    return ETEA_OK;
  });
}

void etea_session_destroy(etea_session* session) { delete session; }

etea_status etea_session_handle(etea_session* session, const char* message_json,
                                char** out_json) {
  if (!session || !message_json || !out_json) {
    return fail(ETEA_ERR_INVALID_ARGUMENT, "null argument");
  }
  *out_json = nullptr;
  return guarded([&] {
    etea::Json out = session->session->handle_text(message_json);
    *out_json = duplicate(out.dump());
    return ETEA_OK;
  });
}

etea_status etea_session_presentation(const etea_session* session, char** out_json) {
  if (!session || !out_json) return fail(ETEA_ERR_INVALID_ARGUMENT, "null argument");
  *out_json = nullptr;
  return guarded([&] {
    *out_json = duplicate(session->session->presentation().dump());
    return ETEA_OK;
  });
}

const char* etea_session_phase(const etea_session* session) {
  return session ? etea::to_string(session->session->phase()) : "";
}

int etea_session_generation(const etea_session* session) {
  return session ? session->session->population().generation : -1;
}

etea_status etea_session_report(const etea_session* session, char** out_json) {
  if (!session || !out_json) return fail(ETEA_ERR_INVALID_ARGUMENT, "null argument");
  *out_json = nullptr;
  return guarded([&] {
    *out_json = duplicate(etea::to_json(etea::summarize(*session->session)).dump());
    return ETEA_OK;
  });
}

etea_status etea_fdc(const char* metric, uint64_t samples, uint64_t seed,
                     char** out_json) {
  if (!metric || !out_json) return fail(ETEA_ERR_INVALID_ARGUMENT, "null argument");
  *out_json = nullptr;
  return guarded([&] {
    const etea::FdcReport r = etea::fdc(etea::parse_metric(metric), samples, seed);
    const etea::Json j = {{"metric_name", etea::to_string(r.metric)},
                          {"sample_count", r.sample_count},
                          {"correlation", r.correlation},
                          {"seed", r.seed}};
    *out_json = duplicate(j.dump());
    return ETEA_OK;
  });
}

etea_status etea_simulate(const char* config_json, int generations, uint64_t seed,
                          const char* log_path, char** out_report_json) {
  if (!out_report_json) return fail(ETEA_ERR_INVALID_ARGUMENT, "null argument");
  *out_report_json = nullptr;
  return guarded([&] {
    const etea::SessionConfig cfg = parse_config(config_json);
    auto log = open_log(log_path);
    etea::LogSink sink;
    if (log) sink = etea::SessionLogWriter(*log);
    const etea::RunReport report = etea::run_headless(cfg, generations, seed, sink);
    *out_report_json = duplicate(etea::to_json(report).dump());
    return ETEA_OK;
  });
}

etea_status etea_replay(const char* log_path, char** out_report_json) {
  if (!out_report_json) return fail(ETEA_ERR_INVALID_ARGUMENT, "null argument");
  *out_report_json = nullptr;
  return guarded([&] {
    *out_report_json = duplicate(etea::to_json(replay_file(log_path)).dump());
    return ETEA_OK;
  });
}

etea_status etea_report_csv(const char* log_path, const char* csv_path) {
  if (!csv_path) return fail(ETEA_ERR_INVALID_ARGUMENT, "null csv path");
  return guarded([&] {
    const etea::RunReport report = replay_file(log_path);
    std::ofstream out(csv_path, std::ios::trunc);
    if (!out) throw etea::Error(etea::ErrorCode::Io, std::string("cannot open ") + csv_path);
    etea::write_csv(report, out);
    return ETEA_OK;
  });
}

}  // extern "C"
