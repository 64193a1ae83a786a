#include "irccs/encode.hpp"

#include <functional>

namespace irccs {

namespace {

std::string join_stack(const std::vector<std::optional<MemoryEvent>>& st,
                       const std::function<std::string(const MemoryEvent&)>& ev) {
  std::string s;
  for (std::size_t k = 0; k < st.size(); ++k) {
    if (k) s += ".";
    s += st[k] ? ev(*st[k]) : "Y";
  }
  return s;
}

std::string zipped_str(const Zipped& z, const std::function<std::string(const MemoryEvent&)>& ev) {
  if (!z.forked()) return z.stack.empty() ? "{}" : join_stack(z.stack, ev);
  std::string s = "[" + zipped_str(*z.left, ev) + ", " + zipped_str(*z.right, ev) + "]";
  if (!z.stack.empty()) s += "." + join_stack(z.stack, ev);
  return s;
}

}  // namespace

std::string to_string(const Zipped& z) {
  return zipped_str(z, [](const MemoryEvent& e) { return to_string(e); });
}

Zipped zip(const Memory& m) {
  if (m.is_stack()) {
    Zipped z;
    for (auto& e : m.newest_first()) z.stack.emplace_back(e);
    return z;
  }
  Zipped a = zip(m.left()), b = zip(m.right());
  // longest common bottom part of the two stacks
  std::size_t n = 0;
  while (n < a.stack.size() && n < b.stack.size() && a.stack[a.stack.size() - 1 - n] == b.stack[b.stack.size() - 1 - n]) ++n;
  Zipped out;
  out.stack.assign(a.stack.end() - static_cast<std::ptrdiff_t>(n), a.stack.end());
  a.stack.resize(a.stack.size() - n);
  b.stack.resize(b.stack.size() - n);
  out.left = std::make_shared<const Zipped>(std::move(a));
  out.right = std::make_shared<const Zipped>(std::move(b));
  return out;
}

namespace {

void check_term(const Process& p) {
  switch (p.kind()) {
    case Kind::NdChoice: throw EncodeError("\\/ has no counterpart in the target calculi");
    case Kind::IntChoice: throw EncodeError("/\\ has no counterpart in the target calculi");
    case Kind::Nil: return;
    case Kind::Prefix:
    case Kind::Restrict:
    case Kind::Bang: check_term(p.body()); return;
    default:
      check_term(p.left());
      check_term(p.right());
  }
}

Memory prep_mem(const Memory& m) {
  if (m.is_pair()) return Memory::pair(prep_mem(m.left()), prep_mem(m.right()));
  if (m.base_marks()) throw EncodeError("memory carries replication marks");
  std::vector<MemoryEvent> out;
  for (auto e : m.newest_first()) {
    if (e.marks) throw EncodeError("memory carries replication marks");
    if (e.label.kind == LabelKind::Upsilon) throw EncodeError("internal choice recorded in memory");
    if (e.id.paired) e.id = gamma(std::min(e.id.a, e.id.b));
    if (!e.branches.empty()) {
      Process alt;
      for (const auto& r : e.branches) {
        if (r.op != ChoiceOp::Sum) throw EncodeError("memory records a \\/ or /\\ choice");
        check_term(r.discarded);
        alt = alt.kind() == Kind::Nil ? r.discarded : Process::sum(alt, r.discarded);
      }
      e.branches = {{ChoiceOp::Sum, alt, Side::R}};
    }
    out.push_back(std::move(e));
  }
  return Memory::stack(std::move(out));
}

std::string alt_of(const MemoryEvent& e) { return e.branches.empty() ? "_" : print_process(e.branches.front().discarded); }

std::string rccs_event(const MemoryEvent& e) {
  return "<" + std::to_string(e.id.a) + "," + to_string(e.label) + "," + alt_of(e) + ">";
}

bool composite(const Process& p) {
  switch (p.kind()) {
    case Kind::Nil:
    case Kind::Prefix:
    case Kind::Bang: return false;
    default: return true;
  }
}

struct Rccs {
  std::string text;
  bool single;
};

Rccs rccs(const Zipped& z, const Process& p) {
  if (!z.forked()) {
    std::string proc = print_process(p);
    if (composite(p)) proc = "(" + proc + ")";
    return {zipped_str(z, rccs_event) + " > " + proc, true};
  }
  if (p.kind() == Kind::Restrict) {
    auto inner = rccs(z, p.body());
    return {"(" + inner.text + ") \\ " + p.name(), true};
  }
  if (p.kind() != Kind::Par) throw EncodeError("memory pair does not match the term: " + print_process(p));
  auto side = [&](const Zipped& part, const Process& q) {
    Zipped t = part;
    t.stack.emplace_back(std::nullopt);
    t.stack.insert(t.stack.end(), z.stack.begin(), z.stack.end());
    auto r = rccs(t, q);
    return r.single ? r.text : "(" + r.text + ")";
  };
  return {side(*z.left, p.left()) + " | " + side(*z.right, p.right()), false};
}

// CCSK terms: a past prefix over a continuation, a parallel list, or a plain
// process.
struct Ccsk {
  enum class K { Proc, Past, Par, Restrict } k = K::Proc;
  Process proc;
  Label label;
  Nat key = 0;
  std::optional<Process> alt;
  std::vector<Ccsk> items;  // Par operands, or the single Past/Restrict body
  Name name;
};

int level(const Ccsk& x) {
  switch (x.k) {
    case Ccsk::K::Par:
    case Ccsk::K::Restrict: return 0;
    case Ccsk::K::Past: return x.alt ? 1 : 2;
    case Ccsk::K::Proc:
      switch (x.proc.kind()) {
        case Kind::Par:
        case Kind::Restrict: return 0;
        case Kind::Sum:
        case Kind::NdChoice:
        case Kind::IntChoice: return 1;
        default: return 2;
      }
  }
  return 2;
}

std::string ccsk_str(const Ccsk& x) {
  auto wrap = [](const Ccsk& y, int need) { return level(y) < need ? "(" + ccsk_str(y) + ")" : ccsk_str(y); };
  switch (x.k) {
    case Ccsk::K::Proc: return print_process(x.proc);
    case Ccsk::K::Past: {
      std::string s = to_string(x.label) + "[" + std::to_string(x.key) + "]." + wrap(x.items.front(), 2);
      if (x.alt) {
        std::string a = print_process(*x.alt);
        if (composite(*x.alt) && x.alt->kind() != Kind::Sum) a = "(" + a + ")";
        s += " + " + a;
      }
      return s;
    }
    case Ccsk::K::Restrict: return wrap(x.items.front(), 1) + " \\ " + x.name;
    case Ccsk::K::Par: {
      std::string s;
      for (std::size_t k = 0; k < x.items.size(); ++k) {
        if (k) s += " | ";
        s += wrap(x.items[k], 1);
      }
      return s;
    }
  }
  return {};
}

Ccsk ccsk(const Zipped& z, const Process& p) {
  Ccsk x;
  if (!z.forked()) {
    x.proc = p;
  } else if (p.kind() == Kind::Restrict) {
    x.k = Ccsk::K::Restrict;
    x.name = p.name();
    Zipped inner = z;
    inner.stack.clear();
    x.items.push_back(ccsk(inner, p.body()));
  } else {
    if (p.kind() != Kind::Par) throw EncodeError("memory pair does not match the term: " + print_process(p));
    x.k = Ccsk::K::Par;
    for (auto [part, q] : {std::pair{z.left, p.left()}, std::pair{z.right, p.right()}}) {
      Ccsk y = ccsk(*part, q);
      if (y.k == Ccsk::K::Par) {
        for (auto& it : y.items) x.items.push_back(std::move(it));
      } else {
        x.items.push_back(std::move(y));
      }
    }
  }
  for (const auto& e : z.stack) {
    if (!e) continue;
    Ccsk past;
    past.k = Ccsk::K::Past;
    past.label = e->label;
    past.key = e->id.a;
    if (!e->branches.empty()) past.alt = e->branches.front().discarded;
    past.items.push_back(std::move(x));
    x = std::move(past);
  }
  return x;
}

}  // namespace

RProc prepare(const RProc& r, bool check_reachable) {
  check_term(r.proc);
  if (check_reachable) {
    try {
      origin(r);
    } catch (const std::exception& e) {
      throw EncodeError(std::string("not reachable: ") + e.what());
    }
  }
  return {r.seed, prep_mem(r.mem), r.proc};
}

std::string to_rccs(const RProc& r, bool check_reachable) {
  RProc p = prepare(r, check_reachable);
  return rccs(zip(p.mem), p.proc).text;
}

std::string to_ccsk(const RProc& r, bool check_reachable) {
  RProc p = prepare(r, check_reachable);
  return ccsk_str(ccsk(zip(p.mem), p.proc));
}

}  // namespace irccs
