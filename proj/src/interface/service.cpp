#include "cricrec/interface/service.h"

#include <charconv>
#include <ostream>
#include <vector>

#include <httplib.h>

#include "cricrec/corpus/snapshot.h"
#include "cricrec/error.h"

namespace cricrec {

namespace {

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> parts;
  std::size_t i = 0;
  while (i < path.size()) {
    while (i < path.size() && path[i] == '/') ++i;
    const std::size_t j = path.find('/', i);
    const std::size_t end = j == std::string_view::npos ? path.size() : j;
    if (end > i) parts.emplace_back(path.substr(i, end - i));
    i = end;
  }
  return parts;
}

std::optional<int> int_param(const std::map<std::string, std::string>& query, const std::string& key) {
  auto it = query.find(key);
  if (it == query.end() || it->second.empty()) return std::nullopt;
  int v = 0;
  const std::string& s = it->second;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size())
    throw Error(ErrorClass::usage, "query parameter '" + key + "' must be an integer");
  return v;
}

HttpReply reply(const Json& body, int status = 200) { return {status, body.dump()}; }

HttpReply route(const Engine& engine, std::string_view method, const std::vector<std::string>& p,
                const std::map<std::string, std::string>& query, std::string_view body) {
  const bool get = method == "GET", post = method == "POST";
  auto wrong_method = [] {
    return reply(error_json(Error(ErrorClass::usage, "method not allowed on this resource")), 405);
  };
  if (p.size() == 1 && p[0] == "health") return get ? reply(engine.health()) : wrong_method();
  if (p.size() == 1 && p[0] == "players") return get ? reply(engine.players()) : wrong_method();
  if (p.size() == 2 && p[0] == "players") return get ? reply(engine.player(p[1])) : wrong_method();
  if (p.size() == 3 && p[0] == "players" && p[2] == "rating")
    return get ? reply(engine.rating(p[1], int_param(query, "year"))) : wrong_method();
  if (p.size() == 3 && p[0] == "players" && p[2] == "embedding")
    return get ? reply(engine.embedding(p[1], int_param(query, "level").value_or(1))) : wrong_method();
  if (p.size() == 3 && p[0] == "matchups") return get ? reply(engine.matchup(p[1], p[2])) : wrong_method();
  if (p.size() == 1 && p[0] == "recommend") {
    if (!post) return wrong_method();
    Json doc = Json::parse(body, nullptr, false);
    if (doc.is_discarded()) throw malformed("request body is not valid JSON");
    return reply(recommendation_json(engine.recommend(parse_recommend_call(doc))));
  }
  throw not_found("no resource at this path");
}

}  // namespace

HttpReply handle_request(const Engine& engine, std::string_view method, std::string_view path,
                         const std::map<std::string, std::string>& query, std::string_view body) {
  try {
    return route(engine, method, split_path(path), query, body);
  } catch (const Error& e) {
    return reply(error_json(e), http_status(e.error_class()));
  } catch (const std::exception& e) {
    return reply(error_json(Error(ErrorClass::internal, e.what())), 500);
  }
}

struct Service::Impl {
  std::shared_ptr<const Engine> engine;
  httplib::Server server;
};

Service::Service(std::shared_ptr<const Engine> engine) : impl_(std::make_unique<Impl>()) {
  impl_->engine = std::move(engine);
  auto handler = [impl = impl_.get()](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [k, v] : req.params) query.emplace(k, v);
    const HttpReply r = handle_request(*impl->engine, req.method, req.path, query, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  impl_->server.Get(".*", handler);
  impl_->server.Post(".*", handler);
  impl_->server.Put(".*", handler);
  impl_->server.Delete(".*", handler);
  impl_->server.Patch(".*", handler);
}

Service::~Service() { stop(); }

int Service::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) throw Error(ErrorClass::internal, "cannot bind to " + host);
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port))
    throw Error(ErrorClass::internal, "cannot bind to " + host + ":" + std::to_string(port));
  return port;
}

void Service::listen() { impl_->server.listen_after_bind(); }

void Service::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

void serve(const ServiceConfig& config, std::ostream& log) {
  RecommendConfig rc = config.config_file ? load_config(*config.config_file) : RecommendConfig{};
  auto engine =
      std::make_shared<const Engine>(std::make_shared<const Corpus>(snapshot_load(config.snapshot)), rc, config.threads);
  // Build the default model before accepting requests.
  engine->model();
  Service service(engine);
  const int port = service.bind(config.host, config.port);
  log << "listening on " << config.host << ':' << port << std::endl;
  service.listen();
}

}  // namespace cricrec
