#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "cricrec/interface/engine.h"

namespace cricrec {

// Environment variable naming the default snapshot for the CLI and service.
inline constexpr const char* kSnapshotEnv = "CRICREC_SNAPSHOT";

struct ServiceConfig {
  std::filesystem::path snapshot;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::optional<std::filesystem::path> config_file;  // threshold overrides
  unsigned threads = 0;
};

struct HttpReply {
  int status = 200;
  std::string body;
};

// Routes one request. Every body is JSON; failures carry error_json().
//
//   GET  /health
//   GET  /players
//   GET  /players/{id}
//   GET  /players/{id}/rating?year=YYYY
//   GET  /players/{id}/embedding?level=1|2
//   GET  /matchups/{batsman}/{bowler}
//   POST /recommend
HttpReply handle_request(const Engine& engine, std::string_view method, std::string_view path,
                         const std::map<std::string, std::string>& query, std::string_view body);

// HTTP front end over a shared engine. Requests run on a worker pool and
// only read the engine, so they all observe the same snapshot.
class Service {
 public:
  explicit Service(std::shared_ptr<const Engine> engine);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Binds to `port`, or to a free port when `port` is 0. Returns the port.
  int bind(const std::string& host, int port);
  // Blocks until stop() is called.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Loads the snapshot and serves until the process is stopped.
void serve(const ServiceConfig& config, std::ostream& log);

}  // namespace cricrec
