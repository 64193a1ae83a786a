// Exhaustive and sampled checks of the calculus's metatheory on small terms.
#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "irccs/irlts.hpp"

namespace irccs {

// nil 0, prefix 1 + body, restriction and replication 1 + body, binary
// operators 1 + operands
int term_size(const Process& p);
// no restriction below a prefix, sum, choice or replication
bool restriction_at_roots(const Process& p);
// rename names in order of first occurrence to a, b, c, ...
Process canonical_names(const Process& p);
// all well-formed terms up to the given size, deduplicated up to renaming
std::vector<Process> generate_terms(int max_size, int names, bool with_bang = false);

struct StateSpace {
  std::vector<RProc> states;
  std::vector<int> depth;  // forward distance from the root along the BFS tree
  std::vector<std::optional<RTransition>> via;  // BFS tree edge into each state
  std::unordered_map<std::string, std::size_t> index;
  bool truncated = false;
};

// breadth-first over forward and backward moves; states deeper than
// max_depth forward steps are not expanded
StateSpace explore(const RProc& root, Explorer& ex, std::size_t max_states, int max_depth = -1);
Trace path_to(const StateSpace& sp, std::size_t state);

struct Violation {
  std::string property;
  std::string detail;
  std::optional<Trace> witness;
};

struct SuiteReport {
  std::string suite;
  std::size_t terms = 0;
  std::size_t states = 0;
  std::size_t checks = 0;
  std::vector<Violation> violations;  // the first few, with witnesses
  std::size_t violation_count = 0;
  bool ok() const { return violation_count == 0; }
  std::string summary() const;
};

// Loop, Square, backward concurrency, well-foundedness, choice-independent
// origin on every reachable state.
SuiteReport check_axioms(const std::vector<Process>& terms, const Config& cfg = {}, std::size_t max_states = 20000,
                         int max_depth = -1);
// random ILTS traces never repeat identifier components; normalized IRLTS
// traces do not either and stay cofinal with their input
SuiteReport check_unicity(const std::vector<Process>& terms, std::size_t samples, std::size_t max_len, std::uint64_t seed,
                          const Config& cfg = {});
// all traces up to max_len from each initial process: cofinal iff related by
// swaps and cancellations
SuiteReport check_causal(const std::vector<Process>& terms, std::size_t max_len, const Config& cfg = {});
// identifier-erased ILTS traces equal plain CCS traces, both cut at max_len
// (replication needs a finite bound)
SuiteReport check_conservativity(const std::vector<Process>& terms,
                                 std::size_t max_len = std::numeric_limits<std::size_t>::max());

}  // namespace irccs
