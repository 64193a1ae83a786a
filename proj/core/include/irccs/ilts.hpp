// Forward-only identified LTS and the plain CCS stepper.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "irccs/ident.hpp"
#include "irccs/syntax.hpp"

namespace irccs {

struct IdentifiedProcess {
  Seed seed;
  Process proc;
  bool operator==(const IdentifiedProcess&) const = default;
};

std::string to_string(const IdentifiedProcess& ip);

struct FwdTransition {
  IdentifiedProcess source;
  Identifier id;
  Label label;
  IdentifiedProcess target;
};

std::string to_string(const FwdTransition& t);

// Terms the engine accepts: summands are prefixes or sums, and choice operands
// of \/ run as a single thread. Returns a diagnostic on rejection.
std::optional<std::string> check_well_formed(const Process& p);

bool well_identified(const Seed& s, const Process& p);
inline bool well_identified(const IdentifiedProcess& ip) { return well_identified(ip.seed, ip.proc); }

// the canonical initial identification splitter_helper((0,1), p)
IdentifiedProcess identify(const Process& p);

struct NotWellIdentified : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// throws NotWellIdentified on malformed sources
std::vector<FwdTransition> enumerate_fwd(const IdentifiedProcess& ip);
// throws std::invalid_argument unless coinitial
bool concurrent_fwd(const FwdTransition& t1, const FwdTransition& t2);

// one summand choice of a (possibly nested) sum: label, continuation, and the
// discarded branches innermost first, each with the side it stood on
struct SumChoice {
  Label label;
  Process cont;
  std::vector<std::pair<Process, bool>> discarded;  // (branch, branch_was_right)
};
std::vector<SumChoice> sum_choices(const Process& sum);

std::vector<std::pair<Label, Process>> ccs_steps(const Process& p);

}  // namespace irccs
