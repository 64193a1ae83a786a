// Contexts, structural normalization, alpha-equivalence and back-and-forth
// bisimulations.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "irccs/ilts.hpp"
#include "irccs/irlts.hpp"
#include "irccs/memory.hpp"
#include "irccs/syntax.hpp"

namespace irccs {

// A term with exactly one slot. The slot is written "[]" in text.
class TermContext {
 public:
  static TermContext hole();
  // throws ParseError, std::invalid_argument when the slot count is not one
  static TermContext parse(const std::string& text);
  // wrap an existing context in one more operator layer; `other` is the
  // sibling operand and `slot_right` puts the slot on the right
  TermContext prefix(const Label& l) const;
  TermContext par(const Process& other, bool slot_right) const;
  TermContext restrict(const Name& a) const;
  TermContext ndchoice(const Process& other, bool slot_right) const;
  TermContext sum(const Process& other, bool slot_right) const;
  TermContext intchoice(const Process& other, bool slot_right) const;

  // throws std::invalid_argument when p does not fit the slot (an unguarded
  // summand)
  Process apply(const Process& p) const;
  // seed for the filled term; s stays on the slot, siblings split off it
  Seed seed_for(const Seed& s) const;
  const Process& body() const { return body_; }
  std::string str() const;

 private:
  explicit TermContext(Process body) : body_(std::move(body)) {}
  Process body_;
};

Process apply_term_context(const TermContext& c, const Process& p);
IdentifiedProcess apply_id_context(const TermContext& c, const IdentifiedProcess& ip);

class MemContext {
 public:
  enum class Op { Hole, PairL, PairR, Push, Append, Dup, Subst, Insert };

  static MemContext hole();
  // "@" is the slot; accepts "@", "dup(C)", "[C, M]" and "[M, C]"
  static MemContext parse(const std::string& text);
  MemContext pair_left(Memory right) const;   // [C, m]
  MemContext pair_right(Memory left) const;   // [m, C]
  MemContext push(MemoryEvent e) const;       // e.C
  MemContext append(MemoryEvent e) const;     // C.e
  MemContext dup() const;                     // dup(C)
  MemContext subst(Identifier from, Identifier to) const;
  MemContext insert(Identifier at, BranchRecord r) const;

  Memory apply(const Memory& m) const;
  bool memory_neutral() const;
  std::string str() const;

  struct Node;

 private:
  explicit MemContext(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

struct RevContext {
  MemContext mem = MemContext::hole();
  TermContext term = TermContext::hole();
};

RProc apply_rev_context(const RevContext& c, const RProc& r);
bool is_memory_neutral(const RevContext& c);

// order-fixed rewrite to a fixpoint: restriction pushed inward and dropped
// when vacuous, units removed, sums and choices flattened, sorted and
// deduplicated, parallel components flattened and sorted
Process struct_normalize(const Process& p);
bool struct_equiv(const Process& p, const Process& q);
bool alpha_eq(const Process& p, const Process& q);
// printing with bound names replaced by binder positions
std::string alpha_key(const Process& p);

enum class BisimMode { BF, SBF };

struct BisimResult {
  bool holds = false;
  std::size_t explored = 0;
  // one triple "state1 ; state2 ; {i->j, ...}" per line when holds
  std::vector<std::string> witness;
  // alternating attacker/defender moves ending in an unanswered attack
  std::vector<std::string> play;
};

// Explores from the origins of r1 and r2. Throws FeatureDisabled on
// replication (infinite state space), Unreachable on unreachable inputs.
BisimResult bisimilar(const RProc& r1, const RProc& r2, BisimMode mode, std::size_t max_states = 200000);
inline bool bf_bisimilar(const RProc& r1, const RProc& r2) { return bisimilar(r1, r2, BisimMode::BF).holds; }
inline bool sbf_bisimilar(const RProc& r1, const RProc& r2) { return bisimilar(r1, r2, BisimMode::SBF).holds; }

}  // namespace irccs
