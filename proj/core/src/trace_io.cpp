#include "irccs/trace_io.hpp"

#include <sstream>
#include <vector>

namespace irccs {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::vector<std::pair<std::size_t, std::string>> lines_of(const std::string& text) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::istringstream in(text);
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    line = trim(line);
    if (!line.empty() && line[0] != ';') out.emplace_back(n, line);
  }
  return out;
}

RProc state_at(std::size_t n, const std::string& s) {
  try {
    return parse_rproc(s);
  } catch (const std::exception& e) {
    throw TraceFormatError(n, e.what());
  }
}

}  // namespace

std::string write_trace(const Trace& d) {
  std::string s = "init " + to_string(d.source) + "\n";
  for (const auto& t : d.steps)
    s += to_string(t.dir) + " " + to_string(t.id) + " " + to_string(t.label) + " | " + to_string(t.target) + "\n";
  return s;
}

Trace read_trace(const std::string& text, const Config& cfg, bool replay) {
  auto ls = lines_of(text);
  if (ls.empty() || ls.front().second.rfind("init ", 0) != 0)
    throw TraceFormatError(ls.empty() ? 1 : ls.front().first, "expected 'init STATE'");
  Trace d{state_at(ls.front().first, ls.front().second.substr(5)), {}};
  for (std::size_t k = 1; k < ls.size(); ++k) {
    auto [n, line] = ls[k];
    auto bar = line.find(" | ");
    if (bar == std::string::npos) throw TraceFormatError(n, "expected 'DIR ID LABEL | STATE'");
    std::istringstream head(line.substr(0, bar));
    std::string dir, id, label, extra;
    head >> dir >> id >> label;
    if (label.empty() || (head >> extra)) throw TraceFormatError(n, "expected 'DIR ID LABEL' before '|'");
    RTransition t;
    t.source = d.target();
    if (dir == "fwd") {
      t.dir = Dir::Fwd;
    } else if (dir == "bwd") {
      t.dir = Dir::Bwd;
    } else {
      throw TraceFormatError(n, "direction must be fwd or bwd, got '" + dir + "'");
    }
    try {
      t.id = parse_identifier(id);
      t.label = parse_label(label);
    } catch (const std::exception& e) {
      throw TraceFormatError(n, e.what());
    }
    t.target = state_at(n, line.substr(bar + 3));
    if (replay) {
      bool found = false;
      try {
        for (const auto& u : enumerate_r(t.source, cfg))
          if (same_move(u, t) && u.target == t.target) found = true;
      } catch (const std::exception& e) {
        throw TraceFormatError(n, e.what());
      }
      if (!found) throw TraceFormatError(n, "no such move from the previous state");
    }
    d.steps.push_back(std::move(t));
  }
  return d;
}

RProc read_state(const std::string& text, const Config& cfg) {
  auto ls = lines_of(text);
  if (ls.empty()) throw TraceFormatError(1, "empty state file");
  if (ls.front().second.rfind("init ", 0) == 0) return read_trace(text, cfg).target();
  std::string joined;
  for (auto& [n, l] : ls) joined += (joined.empty() ? "" : " ") + l;
  return state_at(ls.front().first, joined);
}

}  // namespace irccs
