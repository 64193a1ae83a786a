// Translations of reversible processes into RCCS and CCSK concrete syntax.
#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "irccs/irlts.hpp"

namespace irccs {

struct EncodeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A memory written [m', m''].m_s, the pair being optional. In RCCS output a
// fork symbol may sit in the stack; it is an empty optional.
struct Zipped {
  std::shared_ptr<const Zipped> left, right;
  std::vector<std::optional<MemoryEvent>> stack;  // newest first
  bool forked() const { return left != nullptr; }
};

std::string to_string(const Zipped& z);
Zipped zip(const Memory& m);

// Paired identifiers collapse to their smaller component, sum records fold
// into one undirected alternative. Throws EncodeError on \/, /\, upsilon,
// replication marks or, when checked, unreachable input.
RProc prepare(const RProc& r, bool check_reachable = true);

// "stack > proc" threads with Y for the fork symbol
std::string to_rccs(const RProc& r, bool check_reachable = true);
// keyed past prefixes label[key]
std::string to_ccsk(const RProc& r, bool check_reachable = true);

}  // namespace irccs
