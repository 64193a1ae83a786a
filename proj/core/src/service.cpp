#include "irccs/service.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <vector>

#include "json.hpp"

#include "irccs/equiv.hpp"
#include "irccs/irlts.hpp"
#include "irccs/trace_io.hpp"

namespace irccs {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

struct ApiError {
  int status;
  std::string code;
  std::string message;
  json detail = nullptr;
};

Response json_response(int status, const json& j) { return {status, j.dump(), "application/json"}; }

Response error_response(const ApiError& e) {
  json j = {{"error", {{"code", e.code}, {"message", e.message}}}};
  if (!e.detail.is_null()) j["error"]["detail"] = e.detail;
  return json_response(e.status, j);
}

bool has_bang(const Process& p) {
  switch (p.kind()) {
    case Kind::Nil: return false;
    case Kind::Bang: return true;
    case Kind::Prefix:
    case Kind::Restrict: return has_bang(p.body());
    default: return has_bang(p.left()) || has_bang(p.right());
  }
}

std::string policy_name(ReplPolicy p) {
  switch (p) {
    case ReplPolicy::None: return "none";
    case ReplPolicy::A: return "a";
    case ReplPolicy::B: return "b";
  }
  return "a";
}

std::string fnv_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream o;
  o << std::hex << h;
  return o.str();
}

json state_json(const RProc& r) {
  return {{"state", to_string(r)},
          {"seed", to_string(r.seed)},
          {"memory", to_string(r.mem)},
          {"process", print_process(r.proc)},
          {"memory_size", r.mem.event_count()}};
}

struct Session {
  std::string id;
  Config cfg;
  bool normalize = false;
  bool persist = false;
  Trace history;
  Clock::time_point touched;
  std::mutex mu;
  // moves of history.target(), valid while fingerprint matches
  std::optional<std::vector<RTransition>> moves;

  const RProc& current() const { return history.target(); }
  std::string fingerprint() const { return fnv_hex(std::to_string(history.steps.size()) + "/" + to_string(current())); }

  const std::vector<RTransition>& list() {
    if (!moves) moves = enumerate_r(current(), cfg);
    return *moves;
  }

  json summary() const {
    json j = state_json(current());
    j["id"] = id;
    j["initial"] = is_initial(current());
    j["steps"] = history.steps.size();
    j["fingerprint"] = fingerprint();
    j["config"] = {{"policy", policy_name(cfg.policy)}, {"normalize", normalize}, {"persist", persist}};
    return j;
  }
};

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> out;
  std::string cur;
  std::string p = path.substr(0, path.find('?'));
  for (char c : p) {
    if (c == '/') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

json parse_body(const std::string& body) {
  if (body.empty()) return json::object();
  try {
    json j = json::parse(body);
    if (!j.is_object()) throw ApiError{400, "bad_request", "body must be a JSON object"};
    return j;
  } catch (const json::parse_error& e) {
    throw ApiError{400, "bad_request", std::string("malformed JSON: ") + e.what()};
  }
}

std::string get_string(const json& j, const char* key) {
  if (!j.contains(key)) return {};
  if (!j[key].is_string()) throw ApiError{400, "bad_request", std::string("'") + key + "' must be a string"};
  return j[key].get<std::string>();
}

bool get_bool(const json& j, const char* key) {
  if (!j.contains(key)) return false;
  if (!j[key].is_boolean()) throw ApiError{400, "bad_request", std::string("'") + key + "' must be a boolean"};
  return j[key].get<bool>();
}

}  // namespace

struct Service::Impl {
  ServiceOptions opts;
  mutable std::mutex mu;
  std::map<std::string, std::shared_ptr<Session>> sessions;
  std::mt19937_64 rng{std::random_device{}()};

  std::string fresh_id() {
    std::ostringstream o;
    o << std::hex << rng();
    return o.str();
  }

  std::size_t evict(Clock::time_point now) {
    std::size_t n = 0;
    for (auto it = sessions.begin(); it != sessions.end();) {
      if (now - it->second->touched > opts.ttl) {
        it = sessions.erase(it);
        ++n;
      } else {
        ++it;
      }
    }
    return n;
  }

  std::shared_ptr<Session> find(const std::string& id) {
    std::lock_guard lk(mu);
    auto now = opts.clock();
    evict(now);
    auto it = sessions.find(id);
    if (it == sessions.end()) throw ApiError{404, "unknown_session", "no session " + id};
    it->second->touched = now;
    return it->second;
  }

  void snapshot(const Session& s) {
    if (!s.persist) return;
    std::ofstream f(std::filesystem::path(opts.persist_dir) / (s.id + ".trace"));
    f << write_trace(s.history);
  }

  Response create(const json& req) {
    Config cfg;
    std::string pol = req.contains("policy") ? get_string(req, "policy") : "a";
    if (pol == "none") {
      cfg.policy = ReplPolicy::None;
    } else if (pol == "a") {
      cfg.policy = ReplPolicy::A;
    } else if (pol == "b") {
      cfg.policy = ReplPolicy::B;
    } else {
      throw ApiError{422, "flag_conflict", "unknown replication policy '" + pol + "' (none, a, b)"};
    }
    bool normalize = get_bool(req, "normalize");
    bool persist = get_bool(req, "persist");
    if (persist && opts.persist_dir.empty()) throw ApiError{422, "flag_conflict", "persistence is not configured"};

    std::string source = get_string(req, "source"), state = get_string(req, "state"), trace = get_string(req, "trace");
    int given = !source.empty() + !state.empty() + !trace.empty();
    if (given != 1) throw ApiError{422, "flag_conflict", "give exactly one of 'source', 'state', 'trace'"};
    if (normalize && source.empty()) throw ApiError{422, "flag_conflict", "'normalize' applies to 'source' only"};

    auto s = std::make_shared<Session>();
    s->cfg = cfg;
    s->normalize = normalize;
    s->persist = persist;
    try {
      if (!source.empty()) {
        Process p = parse_process(source);
        if (normalize) p = struct_normalize(p);
        if (auto why = check_well_formed(p)) throw ApiError{422, "not_well_formed", *why};
        s->history = {initial_of(p), {}};
      } else if (!state.empty()) {
        s->history = {parse_rproc(state), {}};
        if (!well_formed(s->history.source)) throw ApiError{422, "not_well_formed", "state is not well formed"};
      } else {
        s->history = read_trace(trace, cfg);
      }
    } catch (const ParseError& e) {
      throw ApiError{422, "parse_error", e.what(),
                     {{"line", e.line}, {"column", e.column}, {"expected", e.expected}}};
    } catch (const TraceFormatError& e) {
      throw ApiError{422, "trace_error", e.what(), {{"line", e.line}}};
    } catch (const std::invalid_argument& e) {
      throw ApiError{422, "invalid_input", e.what()};
    }
    if (cfg.policy == ReplPolicy::None && has_bang(s->current().proc))
      throw ApiError{422, "flag_conflict", "replication needs policy a or b"};

    std::lock_guard lk(mu);
    auto now = opts.clock();
    evict(now);
    if (sessions.size() >= opts.max_sessions) throw ApiError{503, "too_many_sessions", "session limit reached"};
    s->id = fresh_id();
    while (sessions.count(s->id)) s->id = fresh_id();
    s->touched = now;
    sessions.emplace(s->id, s);
    snapshot(*s);
    return json_response(201, s->summary());
  }

  Response moves(Session& s) {
    const auto& ms = s.list();
    json out = json::array();
    for (std::size_t k = 0; k < ms.size(); ++k) {
      json m = state_json(ms[k].target);
      json j = {{"index", k},
                {"dir", to_string(ms[k].dir)},
                {"id", to_string(ms[k].id)},
                {"label", to_string(ms[k].label)},
                {"target", m}};
      out.push_back(std::move(j));
    }
    json mat = json::array();
    for (std::size_t i = 0; i < ms.size(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < ms.size(); ++j) row.push_back(i == j ? false : concurrent_r(ms[i], ms[j]));
      mat.push_back(std::move(row));
    }
    return json_response(200, {{"fingerprint", s.fingerprint()}, {"moves", out}, {"concurrent", mat}});
  }

  Response apply_move(Session& s, const std::string& k, const json& req) {
    std::string fp = get_string(req, "fingerprint");
    if (!fp.empty() && fp != s.fingerprint())
      throw ApiError{409, "stale_index", "the session changed since the moves were listed",
                     {{"fingerprint", s.fingerprint()}}};
    std::size_t idx = 0;
    try {
      std::size_t used = 0;
      idx = std::stoul(k, &used);
      if (used != k.size()) throw std::invalid_argument(k);
    } catch (const std::logic_error&) {
      throw ApiError{400, "bad_request", "move index must be a number"};
    }
    const auto& ms = s.list();
    if (idx >= ms.size())
      throw ApiError{422, "index_out_of_range", "move " + k + " of " + std::to_string(ms.size())};
    RTransition t = ms[idx];
    std::size_t before = s.current().mem.event_count();
    s.history.steps.push_back(t);
    s.moves.reset();
    if (t.dir == Dir::Bwd && s.current().mem.event_count() >= before)
      throw ApiError{500, "internal", "backward move did not shrink the memory"};
#ifndef NDEBUG
    read_trace(write_trace(s.history), s.cfg);
#endif
    snapshot(s);
    json j = s.summary();
    j["applied"] = {{"dir", to_string(t.dir)}, {"id", to_string(t.id)}, {"label", to_string(t.label)}};
    return json_response(200, j);
  }

  Response origin_of(Session& s) {
    try {
      json j = state_json(origin(s.current(), s.cfg));
      return json_response(200, j);
    } catch (const Unreachable& e) {
      throw ApiError{409, "unreachable", e.what()};
    }
  }

  Response route(const std::string& method, const std::string& path, const std::string& body) {
    auto parts = split_path(path);
    if (parts.empty() || parts[0] != "sessions") throw ApiError{404, "not_found", "no route " + path};
    auto only = [&](const char* m) {
      if (method != m) throw ApiError{405, "method_not_allowed", method + " " + path};
    };
    if (parts.size() == 1) {
      only("POST");
      return create(parse_body(body));
    }
    auto s = find(parts[1]);
    if (parts.size() == 2) {
      if (method == "DELETE") {
        std::lock_guard lk(mu);
        sessions.erase(parts[1]);
        return {204, "", "application/json"};
      }
      only("GET");
      std::lock_guard lk(s->mu);
      return json_response(200, s->summary());
    }
    const std::string& what = parts[2];
    std::lock_guard lk(s->mu);
    if (what == "moves" && parts.size() == 3) {
      only("GET");
      return moves(*s);
    }
    if (what == "moves" && parts.size() == 4) {
      only("POST");
      return apply_move(*s, parts[3], parse_body(body));
    }
    if (what == "origin" && parts.size() == 3) {
      only("GET");
      return origin_of(*s);
    }
    if (what == "trace" && parts.size() == 3) {
      only("GET");
      return {200, write_trace(s->history), "text/plain"};
    }
    throw ApiError{404, "not_found", "no route " + path};
  }
};

Service::Service(ServiceOptions opts) : impl_(std::make_unique<Impl>()) { impl_->opts = std::move(opts); }
Service::~Service() = default;

Response Service::handle(const std::string& method, const std::string& path, const std::string& body) {
  try {
    return impl_->route(method, path, body);
  } catch (const ApiError& e) {
    return error_response(e);
  } catch (const FeatureDisabled& e) {
    return error_response({422, "feature_disabled", e.what()});
  } catch (const NotWellIdentified& e) {
    return error_response({422, "not_well_identified", e.what()});
  } catch (const std::exception& e) {
    return error_response({500, "internal", e.what()});
  }
}

std::size_t Service::session_count() const {
  std::lock_guard lk(impl_->mu);
  return impl_->sessions.size();
}

std::size_t Service::evict_expired() {
  std::lock_guard lk(impl_->mu);
  return impl_->evict(impl_->opts.clock());
}

}  // namespace irccs
