// Line-based trace files:
//   init SEED o MEM |> PROC
//   fwd #0 a | SEED o MEM |> PROC
#pragma once

#include <string>

#include "irccs/irlts.hpp"

namespace irccs {

struct TraceFormatError : std::invalid_argument {
  TraceFormatError(std::size_t line, const std::string& msg)
      : std::invalid_argument("line " + std::to_string(line) + ": " + msg), line(line) {}
  std::size_t line;
};

std::string write_trace(const Trace& d);
// With `replay`, every step must be one the engine enumerates from the
// previous state.
Trace read_trace(const std::string& text, const Config& cfg = {}, bool replay = true);
// a bare state line, or a trace whose target is returned
RProc read_state(const std::string& text, const Config& cfg = {});

}  // namespace irccs
