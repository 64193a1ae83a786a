#include "irccs/memory.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <stdexcept>

namespace irccs {

Memory Memory::stack(std::vector<MemoryEvent> newest_first) {
  Memory m;
  m.ev_.assign(newest_first.rbegin(), newest_first.rend());
  return m;
}

Memory Memory::pair(Memory l, Memory r) {
  Memory m;
  m.pair_ = true;
  m.l_ = std::make_shared<const Memory>(std::move(l));
  m.r_ = std::make_shared<const Memory>(std::move(r));
  return m;
}

std::vector<MemoryEvent> Memory::newest_first() const { return {ev_.rbegin(), ev_.rend()}; }

Memory Memory::push(MemoryEvent e) const {
  if (pair_) throw std::logic_error("push on a memory pair");
  Memory m = *this;
  m.ev_.push_back(std::move(e));
  return m;
}

Memory Memory::pop() const {
  if (pair_ || ev_.empty()) throw std::logic_error("pop on an empty or paired memory");
  Memory m = *this;
  m.ev_.pop_back();
  return m;
}

Memory Memory::append_bottom(MemoryEvent e) const {
  if (pair_) return pair(l_->append_bottom(e), r_->append_bottom(e));
  Memory m = *this;
  m.ev_.insert(m.ev_.begin(), std::move(e));
  return m;
}

Memory Memory::with_base_marks(std::uint8_t n) const {
  if (pair_) throw std::logic_error("base marker on a memory pair");
  Memory m = *this;
  m.base_ = n;
  return m;
}

std::size_t Memory::event_count() const {
  if (pair_) return l_->event_count() + r_->event_count();
  return ev_.size();
}

Shape Memory::shape() const {
  if (!pair_) return Shape::make_leaf();
  return Shape::node(l_->shape(), r_->shape());
}

bool operator==(const Memory& a, const Memory& b) {
  if (a.pair_ != b.pair_) return false;
  if (!a.pair_) return a.base_ == b.base_ && a.ev_ == b.ev_;
  return (a.l_ == b.l_ || *a.l_ == *b.l_) && (a.r_ == b.r_ || *a.r_ == *b.r_);
}

std::strong_ordering operator<=>(const Memory& a, const Memory& b) {
  if (a.pair_ != b.pair_) return a.pair_ ? std::strong_ordering::greater : std::strong_ordering::less;
  if (!a.pair_) {
    if (a.base_ != b.base_) return a.base_ <=> b.base_;
    return std::lexicographical_compare_three_way(a.ev_.begin(), a.ev_.end(), b.ev_.begin(), b.ev_.end());
  }
  if (auto c = *a.l_ <=> *b.l_; c != 0) return c;
  return *a.r_ <=> *b.r_;
}

namespace {

template <class F>
Memory map_events(const Memory& m, F&& f) {
  if (m.is_pair()) return Memory::pair(map_events(m.left(), f), map_events(m.right(), f));
  auto ev = m.newest_first();
  for (auto& e : ev) f(e);
  return Memory::stack(std::move(ev)).with_base_marks(m.base_marks());
}

template <class F>
void each_event(const Memory& m, F&& f) {
  if (m.is_pair()) {
    each_event(m.left(), f);
    each_event(m.right(), f);
    return;
  }
  for (const auto& e : m.oldest_first()) f(e);
}

}  // namespace

Memory subst_id(const Memory& m, const Identifier& from, const Identifier& to) {
  return map_events(m, [&](MemoryEvent& e) {
    if (e.id == from) e.id = to;
  });
}

Memory insert_at(const Memory& m, const Identifier& j, const BranchRecord& r) {
  return map_events(m, [&](MemoryEvent& e) {
    if (e.id == j) e.branches.push_back(r);
  });
}

std::optional<Memory> remove_last_at(const Memory& m, const Identifier& j, const BranchRecord& r) {
  bool ok = true, seen = false;
  Memory out = map_events(m, [&](MemoryEvent& e) {
    if (e.id != j) return;
    seen = true;
    if (e.branches.empty() || e.branches.back() != r) {
      ok = false;
      return;
    }
    e.branches.pop_back();
  });
  if (!ok || !seen) return std::nullopt;
  return out;
}

Memory dup_helper(const Memory& m, const Process& p) {
  Process q = strip_restrictions(p);
  if (q.kind() != Kind::Par) return m;
  return Memory::pair(dup_helper(m, q.left()), dup_helper(m, q.right()));
}

std::optional<Memory> collapse(const Memory& m, const Process& p) {
  Process q = strip_restrictions(p);
  if (q.kind() != Kind::Par) {
    if (m.is_pair()) return std::nullopt;
    return m;
  }
  if (!m.is_pair()) return std::nullopt;
  auto l = collapse(m.left(), q.left());
  if (!l) return std::nullopt;
  auto r = collapse(m.right(), q.right());
  if (!r || !(*l == *r)) return std::nullopt;
  return l;
}

bool contains_id(const Memory& m, const Identifier& i) {
  if (m.is_pair()) return contains_id(m.left(), i) || contains_id(m.right(), i);
  for (const auto& e : m.oldest_first())
    if (e.id == i) return true;
  return false;
}

std::vector<Identifier> identifiers(const Memory& m) {
  std::set<Identifier> s;
  each_event(m, [&](const MemoryEvent& e) { s.insert(e.id); });
  return {s.begin(), s.end()};
}

std::vector<MemoryEvent> tops(const Memory& m) {
  std::vector<MemoryEvent> out;
  std::function<void(const Memory&)> go = [&](const Memory& x) {
    if (x.is_pair()) {
      go(x.left());
      go(x.right());
    } else if (x.depth() > 0) {
      out.push_back(x.top());
    }
  };
  go(m);
  return out;
}

Memory mark_all(const Memory& m) {
  if (m.is_pair()) return Memory::pair(mark_all(m.left()), mark_all(m.right()));
  if (m.depth() == 0) return m.with_base_marks(static_cast<std::uint8_t>(m.base_marks() + 1));
  return map_events(m, [](MemoryEvent& e) { ++e.marks; });
}

Memory unmark_all(const Memory& m) {
  if (m.is_pair()) return Memory::pair(unmark_all(m.left()), unmark_all(m.right()));
  if (m.depth() == 0) return m.with_base_marks(m.base_marks() ? static_cast<std::uint8_t>(m.base_marks() - 1) : 0);
  return map_events(m, [](MemoryEvent& e) {
    if (e.marks) --e.marks;
  });
}

bool all_marked(const Memory& m) {
  if (m.is_pair()) return all_marked(m.left()) && all_marked(m.right());
  if (m.depth() == 0) return m.base_marks() > 0;
  bool all = true;
  each_event(m, [&](const MemoryEvent& e) { all = all && e.marks > 0; });
  return all;
}

bool any_marked(const Memory& m) {
  if (m.is_pair()) return any_marked(m.left()) || any_marked(m.right());
  bool any = m.base_marks() > 0;
  each_event(m, [&](const MemoryEvent& e) { any = any || e.marks > 0; });
  return any;
}

Memory difference(const Memory& a, const Memory& b) {
  auto ids = identifiers(b);
  std::set<Identifier> in_b(ids.begin(), ids.end());
  if (a.is_pair()) return Memory::pair(difference(a.left(), b), difference(a.right(), b));
  std::vector<MemoryEvent> keep;
  for (const auto& e : a.newest_first())
    if (!in_b.count(e.id)) keep.push_back(e);
  return Memory::stack(std::move(keep));
}

// ---------------------------------------------------------------- display

std::string to_string(ChoiceOp op) {
  switch (op) {
    case ChoiceOp::NdChoice: return "\\/";
    case ChoiceOp::Sum: return "+";
    case ChoiceOp::IntChoice: return "/\\";
  }
  return "?";
}

std::string to_string(const BranchRecord& r) {
  return "(" + to_string(r.op) + ", " + print_process(r.discarded) + ", " + (r.dir == Side::L ? "L" : "R") + ")";
}

std::string to_string(const MemoryEvent& e) {
  std::string s(e.marks, '?');
  s += "<";
  s += to_string(e.id) + ", " + to_string(e.label) + ", ";
  if (e.branches.empty()) {
    s += "_";
  } else if (e.branches.size() == 1) {
    s += to_string(e.branches[0]);
  } else {
    s += "(";
    for (std::size_t k = 0; k < e.branches.size(); ++k) s += (k ? ", " : "") + to_string(e.branches[k]);
    s += ")";
  }
  return s + ">";
}

std::string to_string(const Memory& m) {
  if (m.is_pair()) return "[" + to_string(m.left()) + ", " + to_string(m.right()) + "]";
  std::string base = std::string(m.base_marks(), '?') + "{}";
  if (m.depth() == 0) return base;
  std::string s;
  bool first = true;
  for (const auto& e : m.newest_first()) {
    if (!first) s += ".";
    first = false;
    s += to_string(e);
  }
  if (m.base_marks()) s += "." + base;
  return s;
}

namespace {

struct MemParser {
  const std::string& t;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("memory: expected " + what + " at offset " + std::to_string(pos) + " in '" + t + "'");
  }
  void ws() {
    while (pos < t.size() && std::isspace(static_cast<unsigned char>(t[pos]))) ++pos;
  }
  bool peek(char c) {
    ws();
    return pos < t.size() && t[pos] == c;
  }
  bool peek_str(const char* s) {
    ws();
    return t.compare(pos, std::char_traits<char>::length(s), s) == 0;
  }
  void eat(char c) {
    if (!peek(c)) fail(std::string("'") + c + "'");
    ++pos;
  }
  // text up to the next top-level ',' or '>' (exclusive), balancing parens
  std::string until_sep() {
    ws();
    std::size_t start = pos;
    int depth = 0;
    while (pos < t.size()) {
      char c = t[pos];
      if (c == '(') ++depth;
      if (c == ')') {
        if (depth == 0) break;
        --depth;
      }
      if (depth == 0 && (c == ',' || c == '>')) break;
      ++pos;
    }
    std::string s = t.substr(start, pos - start);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    return s;
  }

  ChoiceOp op() {
    ws();
    if (peek_str("\\/")) {
      pos += 2;
      return ChoiceOp::NdChoice;
    }
    if (peek_str("/\\")) {
      pos += 2;
      return ChoiceOp::IntChoice;
    }
    if (peek('+')) {
      ++pos;
      return ChoiceOp::Sum;
    }
    fail("choice operator");
  }

  BranchRecord record() {
    eat('(');
    BranchRecord r;
    r.op = op();
    eat(',');
    // the process may contain parentheses; scan to the last top-level comma
    ws();
    std::size_t start = pos;
    int depth = 0;
    std::size_t last_comma = std::string::npos;
    while (pos < t.size()) {
      char c = t[pos];
      if (c == '(') ++depth;
      if (c == ')') {
        if (depth == 0) break;
        --depth;
      }
      if (c == ',' && depth == 0) last_comma = pos;
      ++pos;
    }
    if (last_comma == std::string::npos) fail("', L' or ', R'");
    r.discarded = parse_process(t.substr(start, last_comma - start));
    pos = last_comma + 1;
    ws();
    if (peek('L')) {
      r.dir = Side::L;
    } else if (peek('R')) {
      r.dir = Side::R;
    } else {
      fail("L or R");
    }
    ++pos;
    eat(')');
    return r;
  }

  MemoryEvent event() {
    MemoryEvent e;
    while (peek('?')) {
      ++pos;
      ++e.marks;
    }
    eat('<');
    e.id = parse_identifier(until_sep());
    eat(',');
    e.label = parse_label(until_sep());
    eat(',');
    ws();
    if (peek('_')) {
      ++pos;
    } else {
      // either a single record "(op, P, d)" or a list "((...), (...))"
      std::size_t save = pos;
      eat('(');
      ws();
      bool list = peek('(');
      pos = save;
      if (!list) {
        e.branches.push_back(record());
      } else {
        eat('(');
        e.branches.push_back(record());
        while (peek(',')) {
          ++pos;
          e.branches.push_back(record());
        }
        eat(')');
      }
    }
    eat('>');
    return e;
  }

  Memory mem() {
    if (peek('[')) {
      ++pos;
      Memory l = mem();
      eat(',');
      Memory r = mem();
      eat(']');
      return Memory::pair(std::move(l), std::move(r));
    }
    std::vector<MemoryEvent> ev;
    for (;;) {
      std::size_t save = pos;
      std::uint8_t q = 0;
      while (peek('?')) {
        ++pos;
        ++q;
      }
      if (peek_str("{}")) {
        pos += 2;
        return Memory::stack(std::move(ev)).with_base_marks(q);
      }
      pos = save;
      ev.push_back(event());
      if (!peek('.')) break;
      ++pos;
    }
    return Memory::stack(std::move(ev));
  }
};

}  // namespace

Memory parse_memory(const std::string& text) {
  MemParser p{text};
  Memory m = p.mem();
  p.ws();
  if (p.pos != text.size()) p.fail("end of memory");
  return m;
}

}  // namespace irccs
