// Identified reversible LTS: forward and backward rules, origins, concurrency,
// traces and causal equivalence.
#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "irccs/ident.hpp"
#include "irccs/ilts.hpp"
#include "irccs/memory.hpp"
#include "irccs/syntax.hpp"

namespace irccs {

enum class Dir : std::uint8_t { Fwd, Bwd };
enum class ReplPolicy : std::uint8_t { None, A, B };

struct Config {
  ReplPolicy policy = ReplPolicy::A;
  // test hook: with marks off, replication neither marks memories nor gets
  // its own backward rule
  bool marks = true;
};

struct FeatureDisabled : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Unreachable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RProc {
  Seed seed;
  Memory mem;
  Process proc;
  bool operator==(const RProc&) const = default;
};

std::string to_string(const RProc& r);
// "SEED o MEM |> PROC"
RProc parse_rproc(const std::string& text);
// splitter_helper((0,1), p) o dup_helper({}, p) |> p
RProc initial_of(const Process& p);
bool well_formed(const RProc& r);

struct RTransition {
  RProc source;
  Identifier id;
  Label label;
  Dir dir = Dir::Fwd;
  RProc target;
  bool operator==(const RTransition&) const = default;
};

std::string to_string(Dir d);
std::string to_string(const RTransition& t);
// same direction, identifier and label
bool same_move(const RTransition& a, const RTransition& b);
bool inverse(const RTransition& t, const RTransition& u);

// throws NotWellIdentified, FeatureDisabled
std::vector<RTransition> enumerate_fwd_r(const RProc& r, const Config& cfg = {});
std::vector<RTransition> enumerate_bwd_r(const RProc& r, const Config& cfg = {});
// forward moves first, then backward
std::vector<RTransition> enumerate_r(const RProc& r, const Config& cfg = {});
// forward moves with replication under the given policy; C/D are not offered
std::vector<RTransition> enumerate_repl_r(const RProc& r, ReplPolicy policy);

// throws std::invalid_argument when t was not enumerated from `current`
RProc apply(const RTransition& t, const RProc& current);

bool is_initial(const RProc& r);
// throws Unreachable when stuck before reaching an initial process
RProc origin(const RProc& r, const Config& cfg = {});

std::vector<IdPattern> backward_patterns(const RTransition& t);
// throws std::invalid_argument unless coinitial
bool concurrent_r(const RTransition& t1, const RTransition& t2);

struct Trace {
  RProc source;
  std::vector<RTransition> steps;
  const RProc& target() const { return steps.empty() ? source : steps.back().target; }
  bool composable() const;
};

std::string trace_key(const Trace& d);
// no identifier twice; a paired identifier's components appear nowhere else
bool unicity_holds(const Trace& d);

// Memoized move enumeration for state-space searches.
class Explorer {
 public:
  explicit Explorer(Config cfg = {}) : cfg_(cfg) {}
  const std::vector<RTransition>& moves(const RProc& r);
  const Config& config() const { return cfg_; }
  std::size_t cached() const { return cache_.size(); }

 private:
  Config cfg_;
  std::unordered_map<std::string, std::vector<RTransition>> cache_;
};

// every trace obtained from d by one square swap or one cancellation
std::vector<Trace> rewrites(const Trace& d, Explorer& ex);

// bidirectional search over swaps and cancellations, at most `bound` traces
// visited; throws std::invalid_argument unless coinitial
bool causally_equivalent(const Trace& d1, const Trace& d2, std::size_t bound, const Config& cfg = {});
// shortest-first search for an equivalent trace satisfying unicity
Trace normalize_trace(const Trace& d, const Config& cfg = {}, std::size_t bound = 50000);
Trace random_trace(const RProc& r, std::size_t len, std::uint64_t seed, const Config& cfg = {});

}  // namespace irccs
