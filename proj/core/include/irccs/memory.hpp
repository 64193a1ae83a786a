// Memories: stacks of events and pairs of memories.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "irccs/ident.hpp"
#include "irccs/syntax.hpp"

namespace irccs {

enum class ChoiceOp : std::uint8_t { NdChoice, Sum, IntChoice };
enum class Side : std::uint8_t { L, R };

struct BranchRecord {
  ChoiceOp op = ChoiceOp::Sum;
  Process discarded;
  Side dir = Side::R;
  auto operator<=>(const BranchRecord&) const = default;
  bool operator==(const BranchRecord&) const = default;
};

struct MemoryEvent {
  Identifier id;
  Label label;
  std::vector<BranchRecord> branches;
  std::uint8_t marks = 0;  // replication marker depth; 0 = unmarked
  auto operator<=>(const MemoryEvent&) const = default;
  bool operator==(const MemoryEvent&) const = default;
};

class Memory {
 public:
  Memory() = default;  // empty stack
  static Memory stack(std::vector<MemoryEvent> newest_first);
  static Memory pair(Memory l, Memory r);

  bool is_pair() const { return pair_; }
  bool is_stack() const { return !pair_; }
  bool empty_stack() const { return !pair_ && ev_.empty(); }
  const Memory& left() const { return *l_; }
  const Memory& right() const { return *r_; }

  // stack access; events are stored oldest first internally
  std::size_t depth() const { return ev_.size(); }
  const MemoryEvent& top() const { return ev_.back(); }
  const std::vector<MemoryEvent>& oldest_first() const { return ev_; }
  std::vector<MemoryEvent> newest_first() const;
  Memory push(MemoryEvent e) const;
  Memory pop() const;
  Memory append_bottom(MemoryEvent e) const;
  // marker under the bottom event; lets an empty stack carry a replication mark
  std::uint8_t base_marks() const { return base_; }
  Memory with_base_marks(std::uint8_t n) const;

  std::size_t event_count() const;
  Shape shape() const;

  friend bool operator==(const Memory& a, const Memory& b);
  friend std::strong_ordering operator<=>(const Memory& a, const Memory& b);

 private:
  bool pair_ = false;
  std::uint8_t base_ = 0;
  std::vector<MemoryEvent> ev_;
  std::shared_ptr<const Memory> l_, r_;
};

Memory subst_id(const Memory& m, const Identifier& from, const Identifier& to);
Memory insert_at(const Memory& m, const Identifier& j, const BranchRecord& r);
// inverse of insert_at: strips the last record of every event with ident j;
// nullopt unless every such event ends with exactly r
std::optional<Memory> remove_last_at(const Memory& m, const Identifier& j, const BranchRecord& r);
Memory dup_helper(const Memory& m, const Process& p);
// m' such that dup_helper(m', p) == m, when every leaf copy is the same stack
std::optional<Memory> collapse(const Memory& m, const Process& p);
bool contains_id(const Memory& m, const Identifier& i);
std::vector<Identifier> identifiers(const Memory& m);
// newest events of all leaf stacks
std::vector<MemoryEvent> tops(const Memory& m);

// mark/unmark act on a stack: every event, or the base marker of an empty stack
Memory mark_all(const Memory& m);
Memory unmark_all(const Memory& m);
bool all_marked(const Memory& m);
bool any_marked(const Memory& m);
// events of a not found (by identifier) in b, keeping the shape of a
Memory difference(const Memory& a, const Memory& b);

std::string to_string(ChoiceOp op);
std::string to_string(const BranchRecord& r);
std::string to_string(const MemoryEvent& e);
std::string to_string(const Memory& m);
Memory parse_memory(const std::string& text);

}  // namespace irccs
