// irccs: command-line front end.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "irccs/encode.hpp"
#include "irccs/equiv.hpp"
#include "irccs/service.hpp"
#include "irccs/suites.hpp"
#include "irccs/trace_io.hpp"

using namespace irccs;
using json = nlohmann::json;

namespace {

constexpr int kUsage = 1;
constexpr int kViolation = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool color() {
  const char* c = std::getenv("IRCCS_COLOR");
  if (c && std::string(c) == "0") return false;
  return isatty(STDOUT_FILENO);
}

std::string paint(const std::string& s, const char* code) { return color() ? std::string("\033[") + code + "m" + s + "\033[0m" : s; }

std::string slurp(const std::string& file) {
  if (file == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(file);
  if (!f) throw UsageError("cannot read " + file);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> content_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == ';') continue;
    out.push_back(line.substr(b));
  }
  return out;
}

enum class InputKind { Term, State, Trace };

InputKind kind_of(const std::string& text) {
  auto ls = content_lines(text);
  if (ls.empty()) throw UsageError("empty input");
  if (ls.front().rfind("init ", 0) == 0) return InputKind::Trace;
  if (ls.front().find("|>") != std::string::npos) return InputKind::State;
  return InputKind::Term;
}

// a term file is read as its initial process
RProc load_state(const std::string& file, const Config& cfg = {}) {
  std::string text = slurp(file);
  if (kind_of(text) == InputKind::Term) {
    std::string joined;
    for (auto& l : content_lines(text)) joined += l + "\n";
    return initial_of(parse_process(joined));
  }
  return read_state(text, cfg);
}

Config config_for(const std::string& policy) {
  Config cfg;
  if (policy == "none") cfg.policy = ReplPolicy::None;
  else if (policy == "a") cfg.policy = ReplPolicy::A;
  else if (policy == "b") cfg.policy = ReplPolicy::B;
  else throw UsageError("unknown policy " + policy);
  return cfg;
}

int cmd_parse(const std::string& file, bool normalize, bool initial) {
  std::string text = slurp(file);
  switch (kind_of(text)) {
    case InputKind::Term: {
      for (auto& line : content_lines(text)) {
        Process p = parse_process(line);
        if (normalize) p = struct_normalize(p);
        std::cout << (initial ? to_string(initial_of(p)) : print_process(p)) << "\n";
      }
      return 0;
    }
    case InputKind::State: std::cout << to_string(parse_rproc(text)) << "\n"; return 0;
    case InputKind::Trace: std::cout << write_trace(read_trace(text)); return 0;
  }
  return 0;
}

// Terminal stepper: a loop over the service protocol, in process.
int cmd_step(const std::string& file, const std::string& policy) {
  Service svc;
  std::string text = slurp(file);
  json req = {{"policy", policy}};
  switch (kind_of(text)) {
    case InputKind::Term: {
      std::string joined;
      for (auto& l : content_lines(text)) joined += l + "\n";
      req["source"] = joined;
      break;
    }
    case InputKind::State: req["state"] = text; break;
    case InputKind::Trace: req["trace"] = text; break;
  }
  Response r = svc.handle("POST", "/sessions", req.dump());
  json s = json::parse(r.body);
  if (r.status != 201) {
    std::cerr << "error: " << s["error"]["message"].get<std::string>() << "\n";
    return kUsage;
  }
  const std::string base = "/sessions/" + s["id"].get<std::string>();
  bool show_bwd = false;
  for (;;) {
    json cur = json::parse(svc.handle("GET", base).body);
    json mv = json::parse(svc.handle("GET", base + "/moves").body);
    std::cout << paint(cur["state"].get<std::string>(), "1") << "\n";
    std::size_t shown = 0, hidden = 0;
    for (auto& m : mv["moves"]) {
      bool bwd = m["dir"] == "bwd";
      if (bwd && !show_bwd) {
        ++hidden;
        continue;
      }
      std::size_t k = m["index"];
      std::string conc;
      for (std::size_t j = 0; j < mv["concurrent"][k].size(); ++j)
        if (mv["concurrent"][k][j].get<bool>()) conc += (conc.empty() ? "" : ",") + std::to_string(j);
      std::cout << "  [" << k << "] " << paint(m["dir"].get<std::string>(), bwd ? "33" : "32") << " "
                << m["id"].get<std::string>() << " " << m["label"].get<std::string>() << " -> "
                << m["target"]["state"].get<std::string>() << (conc.empty() ? "" : "  (concurrent: " + conc + ")")
                << "\n";
      ++shown;
    }
    if (shown == 0 && hidden == 0) std::cout << "  no moves\n";
    if (hidden) std::cout << "  (" << hidden << " backward, 'u' to list)\n";
    std::cout << "> " << std::flush;
    std::string line;
    if (!std::getline(std::cin, line)) break;
    line.erase(0, line.find_first_not_of(" \t"));
    line.erase(line.find_last_not_of(" \t\r") + 1);
    if (line == "q") break;
    if (line == "u") {
      show_bwd = !show_bwd;
      continue;
    }
    if (line == "o") {
      json o = json::parse(svc.handle("GET", base + "/origin").body);
      std::cout << "origin: " << (o.contains("state") ? o["state"] : o["error"]["message"]).get<std::string>() << "\n";
      continue;
    }
    if (line == "t") {
      std::cout << svc.handle("GET", base + "/trace").body;
      continue;
    }
    if (line.empty() || line.find_first_not_of("0123456789") != std::string::npos) {
      std::cout << "moves by number; u toggles backward moves, o origin, t trace, q quit\n";
      continue;
    }
    Response a = svc.handle("POST", base + "/moves/" + line, json{{"fingerprint", mv["fingerprint"]}}.dump());
    if (a.status != 200) std::cout << json::parse(a.body)["error"]["message"].get<std::string>() << "\n";
  }
  return 0;
}

int cmd_trace(const std::string& file, std::size_t len, std::uint64_t seed, const std::string& policy) {
  Config cfg = config_for(policy);
  std::cout << write_trace(random_trace(load_state(file, cfg), len, seed, cfg));
  return 0;
}

int cmd_check(const std::vector<std::string>& files, const std::string& suite, int depth, std::size_t samples,
              std::uint64_t seed, const std::string& policy) {
  Config cfg = config_for(policy);
  std::vector<Process> terms;
  for (const auto& f : files) {
    std::string text = slurp(f);
    if (kind_of(text) == InputKind::Term) {
      for (auto& l : content_lines(text)) terms.push_back(parse_process(l));
    } else {
      // a state stands for the term it started from
      terms.push_back(origin(read_state(text, cfg), cfg).proc);
    }
  }
  SuiteReport rep;
  if (suite == "axioms") rep = check_axioms(terms, cfg, 20000, depth < 0 ? 6 : depth);
  else if (suite == "unicity") rep = check_unicity(terms, samples, depth < 0 ? 8 : depth, seed, cfg);
  else if (suite == "causal") rep = check_causal(terms, depth < 0 ? 4 : depth, cfg);
  else if (suite == "conservativity") rep = check_conservativity(terms, depth < 0 ? 8 : depth);
  else throw UsageError("unknown suite " + suite);
  std::cout << rep.summary() << "\n";
  for (const auto& v : rep.violations) {
    std::cout << paint("violation", "31") << " " << v.property << ": " << v.detail << "\n";
    if (v.witness) std::cout << write_trace(*v.witness);
  }
  std::cout << (rep.ok() ? paint("PASS", "32") : paint("FAIL", "31")) << "\n";
  return rep.ok() ? 0 : kViolation;
}

int cmd_bisim(const std::string& f1, const std::string& f2, const std::string& mode) {
  BisimMode m = mode == "bf" ? BisimMode::BF : mode == "sbf" ? BisimMode::SBF : throw UsageError("unknown mode " + mode);
  BisimResult r = bisimilar(load_state(f1), load_state(f2), m);
  std::cout << (r.holds ? "bisimilar" : "not bisimilar") << " (" << mode << ", " << r.explored << " pairs)\n";
  for (const auto& l : r.holds ? r.witness : r.play) std::cout << "  " << l << "\n";
  return r.holds ? 0 : 1;
}

int cmd_encode(const std::string& file, const std::string& target, const std::string& trace_file, bool unchecked) {
  RProc r = load_state(file);
  if (!trace_file.empty()) {
    Trace t = read_trace(slurp(trace_file));
    if (!(t.source == r)) throw UsageError("trace does not start at " + to_string(r));
    r = t.target();
  }
  if (target == "rccs") std::cout << to_rccs(r, !unchecked) << "\n";
  else if (target == "ccsk") std::cout << to_ccsk(r, !unchecked) << "\n";
  else if (target == "zip") std::cout << to_string(zip(prepare(r, !unchecked).mem)) << "\n";
  else throw UsageError("unknown target " + target);
  return 0;
}

int cmd_serve(const std::string& host, int port, const std::string& ui_dir, const std::string& persist_dir,
              int ttl) {
  ServiceOptions o;
  o.persist_dir = persist_dir;
  o.ttl = std::chrono::seconds(ttl);
  Service svc(o);
  std::cerr << "listening on " << host << ":" << port << "\n";
  if (!serve(svc, host, port, ui_dir)) {
    std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
    return kUsage;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"irccs: identified reversible CCS workbench"};
  app.require_subcommand(1);
  std::string file, file2, policy = "a";

  bool normalize = false, initial = false;
  auto* parse = app.add_subcommand("parse", "parse a term, state or trace and print it back");
  parse->add_option("FILE", file, "input file, - for stdin")->required();
  parse->add_flag("--normalize", normalize, "apply structural normalization");
  parse->add_flag("--initial", initial, "print the initial reversible process");

  auto* step = app.add_subcommand("step", "interactive stepper");
  step->add_option("FILE", file)->required();
  step->add_option("--policy", policy, "replication policy: none, a, b");

  std::size_t len = 10;
  std::uint64_t seed = 1;
  auto* trace = app.add_subcommand("trace", "random trace in both directions");
  trace->add_option("FILE", file)->required();
  trace->add_option("--len", len);
  trace->add_option("--seed", seed);
  trace->add_option("--policy", policy);

  std::vector<std::string> files;
  std::string suite = "axioms";
  int depth = -1;
  std::size_t samples = 200;
  auto* check = app.add_subcommand("check", "run a property suite on terms");
  check->add_option("FILE", files, "term, state or corpus files (one term per line)")->required();
  check->add_option("--suite", suite, "axioms, unicity, causal, conservativity");
  check->add_option("--depth", depth, "forward depth (axioms) or trace length (other suites)");
  check->add_option("--samples", samples, "unicity samples");
  check->add_option("--seed", seed);
  check->add_option("--policy", policy);

  std::string mode = "bf";
  auto* bisim = app.add_subcommand("bisim", "back-and-forth bisimilarity of the two origins");
  bisim->add_option("FILE1", file)->required();
  bisim->add_option("FILE2", file2)->required();
  bisim->add_option("--mode", mode, "bf or sbf");

  std::string target = "ccsk", trace_file;
  bool unchecked = false;
  auto* encode = app.add_subcommand("encode", "translate to RCCS or CCSK");
  encode->add_option("FILE", file)->required();
  encode->add_option("--target", target, "rccs, ccsk or zip");
  encode->add_option("--trace", trace_file, "replay this trace first; it must start at FILE");
  encode->add_flag("--unchecked", unchecked, "skip the reachability check");

  std::string host = "127.0.0.1", ui_dir, persist_dir;
  int port = 8080, ttl = 3600;
  auto* srv = app.add_subcommand("serve", "HTTP JSON API");
  srv->add_option("--host", host);
  srv->add_option("--port", port);
  srv->add_option("--ui-dir", ui_dir, "static files served at /");
  srv->add_option("--persist-dir", persist_dir, "where persisted sessions are snapshotted");
  srv->add_option("--ttl", ttl, "idle session lifetime in seconds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*parse) return cmd_parse(file, normalize, initial);
    if (*step) return cmd_step(file, policy);
    if (*trace) return cmd_trace(file, len, seed, policy);
    if (*check) return cmd_check(files, suite, depth, samples, seed, policy);
    if (*bisim) return cmd_bisim(file, file2, mode);
    if (*encode) return cmd_encode(file, target, trace_file, unchecked);
    if (*srv) return cmd_serve(host, port, ui_dir, persist_dir, ttl);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
