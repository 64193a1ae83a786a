#include "irccs/equiv.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

namespace irccs {

namespace {

const Name kSlot = "zslot_";

Process slot() { return Process::prefix(Label::in(kSlot), Process::nil()); }
bool is_slot(const Process& p) { return p.kind() == Kind::Prefix && p.label() == Label::in(kSlot) && p.body().kind() == Kind::Nil; }

bool has_slot(const Process& p) {
  if (is_slot(p)) return true;
  switch (p.kind()) {
    case Kind::Nil: return false;
    case Kind::Prefix:
    case Kind::Restrict:
    case Kind::Bang: return has_slot(p.body());
    default: return has_slot(p.left()) || has_slot(p.right());
  }
}

std::size_t slot_count(const Process& p) {
  if (is_slot(p)) return 1;
  switch (p.kind()) {
    case Kind::Nil: return 0;
    case Kind::Prefix:
    case Kind::Restrict:
    case Kind::Bang: return slot_count(p.body());
    default: return slot_count(p.left()) + slot_count(p.right());
  }
}

Process binary(Kind k, Process l, Process r) {
  switch (k) {
    case Kind::Par: return Process::par(std::move(l), std::move(r));
    case Kind::NdChoice: return Process::ndchoice(std::move(l), std::move(r));
    case Kind::Sum: return Process::sum(std::move(l), std::move(r));
    case Kind::IntChoice: return Process::intchoice(std::move(l), std::move(r));
    default: throw std::logic_error("not a binary operator");
  }
}

Process fill(const Process& p, const Process& q) {
  if (is_slot(p)) return q;
  switch (p.kind()) {
    case Kind::Nil: return p;
    case Kind::Prefix: return Process::prefix(p.label(), fill(p.body(), q));
    case Kind::Restrict: return Process::restrict(fill(p.body(), q), p.name());
    case Kind::Bang: return Process::bang(fill(p.body(), q));
    default: return binary(p.kind(), fill(p.left(), q), fill(p.right(), q));
  }
}

void replace_all(std::string& s, const std::string& from, const std::string& to) {
  for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size()) s.replace(pos, from.size(), to);
}

}  // namespace

TermContext TermContext::hole() { return TermContext(slot()); }

TermContext TermContext::parse(const std::string& text) {
  if (text.find(kSlot) != std::string::npos) throw std::invalid_argument("reserved name in context: " + kSlot);
  std::string s = text;
  replace_all(s, "[]", kSlot);
  Process p = parse_process(s);
  if (slot_count(p) != 1) throw std::invalid_argument("a context needs exactly one slot '[]'");
  return TermContext(p);
}

TermContext TermContext::prefix(const Label& l) const { return TermContext(Process::prefix(l, body_)); }
TermContext TermContext::par(const Process& o, bool right) const {
  return TermContext(right ? Process::par(o, body_) : Process::par(body_, o));
}
TermContext TermContext::restrict(const Name& a) const { return TermContext(Process::restrict(body_, a)); }
TermContext TermContext::ndchoice(const Process& o, bool right) const {
  return TermContext(right ? Process::ndchoice(o, body_) : Process::ndchoice(body_, o));
}
TermContext TermContext::sum(const Process& o, bool right) const {
  return TermContext(right ? Process::sum(o, body_) : Process::sum(body_, o));
}
TermContext TermContext::intchoice(const Process& o, bool right) const {
  return TermContext(right ? Process::intchoice(o, body_) : Process::intchoice(body_, o));
}

Process TermContext::apply(const Process& p) const { return fill(body_, p); }

Seed TermContext::seed_for(const Seed& s) const {
  std::function<Seed(const Process&, const Seed&)> go = [&](const Process& c, const Seed& t) -> Seed {
    if (is_slot(c)) return t;
    if (c.kind() == Kind::Restrict) return go(c.body(), t);
    if (c.kind() == Kind::Par) {
      Seed a = seed_proj(t, 1), b = seed_proj(t, 2);
      if (has_slot(c.left())) return Seed::node(go(c.left(), a), splitter_helper(b.leaves().front(), c.right()));
      return Seed::node(splitter_helper(a.leaves().front(), c.left()), go(c.right(), b));
    }
    return Seed::leaf(unify(t));
  };
  return go(body_, s);
}

std::string TermContext::str() const {
  std::string s = print_process(body_);
  replace_all(s, kSlot, "[]");
  return s;
}

Process apply_term_context(const TermContext& c, const Process& p) { return c.apply(p); }

IdentifiedProcess apply_id_context(const TermContext& c, const IdentifiedProcess& ip) {
  return {c.seed_for(ip.seed), c.apply(ip.proc)};
}

struct MemContext::Node {
  Op op = Op::Hole;
  std::shared_ptr<const Node> inner;
  Memory other;
  MemoryEvent ev;
  Identifier from, to;
  BranchRecord rec;
};

namespace {
template <class F>
std::shared_ptr<const MemContext::Node> wrap_node(std::shared_ptr<const MemContext::Node> inner, MemContext::Op op, F&& f) {
  auto n = std::make_shared<MemContext::Node>();
  n->op = op;
  n->inner = std::move(inner);
  f(*n);
  return n;
}

Memory push_each(const Memory& m, const MemoryEvent& e) {
  if (m.is_pair()) return Memory::pair(push_each(m.left(), e), push_each(m.right(), e));
  return m.push(e);
}

Memory append_each(const Memory& m, const MemoryEvent& e) {
  if (m.is_pair()) return Memory::pair(append_each(m.left(), e), append_each(m.right(), e));
  return m.append_bottom(e);
}

// split "X, Y" at the top-level comma
std::pair<std::string, std::string> split_top(const std::string& s) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '[' || c == '<' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '>' || c == '}') --depth;
    if (c == ',' && depth == 0) return {s.substr(0, i), s.substr(i + 1)};
  }
  throw std::invalid_argument("expected '[X, Y]' in memory context: " + s);
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\n");
  auto e = s.find_last_not_of(" \t\n");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}
}  // namespace

MemContext MemContext::hole() { return MemContext(std::make_shared<Node>()); }

MemContext MemContext::parse(const std::string& text) {
  std::string s = trim(text);
  if (s == "@") return hole();
  if (s.rfind("dup(", 0) == 0 && s.back() == ')') return parse(s.substr(4, s.size() - 5)).dup();
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']') {
    auto [x, y] = split_top(s.substr(1, s.size() - 2));
    bool lx = x.find('@') != std::string::npos, ly = y.find('@') != std::string::npos;
    if (lx == ly) throw std::invalid_argument("a memory context needs exactly one slot '@'");
    if (lx) return parse(x).pair_left(parse_memory(trim(y)));
    return parse(y).pair_right(parse_memory(trim(x)));
  }
  throw std::invalid_argument("bad memory context: " + text);
}

MemContext MemContext::pair_left(Memory right) const {
  return MemContext(wrap_node(n_, Op::PairL, [&](Node& n) { n.other = std::move(right); }));
}
MemContext MemContext::pair_right(Memory left) const {
  return MemContext(wrap_node(n_, Op::PairR, [&](Node& n) { n.other = std::move(left); }));
}
MemContext MemContext::push(MemoryEvent e) const {
  return MemContext(wrap_node(n_, Op::Push, [&](Node& n) { n.ev = std::move(e); }));
}
MemContext MemContext::append(MemoryEvent e) const {
  return MemContext(wrap_node(n_, Op::Append, [&](Node& n) { n.ev = std::move(e); }));
}
MemContext MemContext::dup() const {
  return MemContext(wrap_node(n_, Op::Dup, [](Node&) {}));
}
MemContext MemContext::subst(Identifier from, Identifier to) const {
  return MemContext(wrap_node(n_, Op::Subst, [&](Node& n) {
    n.from = from;
    n.to = to;
  }));
}
MemContext MemContext::insert(Identifier at, BranchRecord r) const {
  return MemContext(wrap_node(n_, Op::Insert, [&](Node& n) {
    n.from = at;
    n.rec = std::move(r);
  }));
}

Memory MemContext::apply(const Memory& m) const {
  const Node& n = *n_;
  if (n.op == Op::Hole) return m;
  Memory in = MemContext(n.inner).apply(m);
  switch (n.op) {
    case Op::PairL: return Memory::pair(in, n.other);
    case Op::PairR: return Memory::pair(n.other, in);
    case Op::Push: return push_each(in, n.ev);
    case Op::Append: return append_each(in, n.ev);
    case Op::Dup: return Memory::pair(in, in);
    case Op::Subst: return subst_id(in, n.from, n.to);
    case Op::Insert: return insert_at(in, n.from, n.rec);
    case Op::Hole: break;
  }
  return in;
}

bool MemContext::memory_neutral() const {
  const Node& n = *n_;
  switch (n.op) {
    case Op::Hole: return true;
    case Op::PairL:
    case Op::PairR: return n.other.empty_stack() && n.other.base_marks() == 0 && MemContext(n.inner).memory_neutral();
    default: return false;
  }
}

std::string MemContext::str() const {
  const Node& n = *n_;
  if (n.op == Op::Hole) return "@";
  std::string in = MemContext(n.inner).str();
  switch (n.op) {
    case Op::PairL: return "[" + in + ", " + to_string(n.other) + "]";
    case Op::PairR: return "[" + to_string(n.other) + ", " + in + "]";
    case Op::Push: return to_string(n.ev) + "." + in;
    case Op::Append: return in + "." + to_string(n.ev);
    case Op::Dup: return "dup(" + in + ")";
    case Op::Subst: return in + "[" + to_string(n.from) + " <- " + to_string(n.to) + "]";
    case Op::Insert: return in + " |x|" + to_string(n.from) + " " + to_string(n.rec);
    case Op::Hole: break;
  }
  return in;
}

RProc apply_rev_context(const RevContext& c, const RProc& r) {
  return {c.term.seed_for(r.seed), c.mem.apply(r.mem), c.term.apply(r.proc)};
}

bool is_memory_neutral(const RevContext& c) { return c.mem.memory_neutral(); }

// ---- alpha-equivalence ---------------------------------------------------

std::string alpha_key(const Process& p) {
  std::vector<Name> env;
  std::function<std::string(const Name&)> nm = [&](const Name& n) {
    for (std::size_t k = env.size(); k-- > 0;)
      if (env[k] == n) return "%" + std::to_string(k);
    return n;
  };
  std::function<std::string(const Process&)> go = [&](const Process& q) -> std::string {
    switch (q.kind()) {
      case Kind::Nil: return "0";
      case Kind::Prefix: {
        const Label& l = q.label();
        return (l.kind == LabelKind::Out ? "~" : "") + nm(l.name) + ".(" + go(q.body()) + ")";
      }
      case Kind::Restrict: {
        env.push_back(q.name());
        std::string s = "new%" + std::to_string(env.size() - 1) + "(" + go(q.body()) + ")";
        env.pop_back();
        return s;
      }
      case Kind::Bang: return "!(" + go(q.body()) + ")";
      case Kind::Par: return "(" + go(q.left()) + "|" + go(q.right()) + ")";
      case Kind::Sum: return "(" + go(q.left()) + "+" + go(q.right()) + ")";
      case Kind::NdChoice: return "(" + go(q.left()) + "\\/" + go(q.right()) + ")";
      case Kind::IntChoice: return "(" + go(q.left()) + "/\\" + go(q.right()) + ")";
    }
    return {};
  };
  return go(p);
}

bool alpha_eq(const Process& p, const Process& q) { return alpha_key(p) == alpha_key(q); }

// ---- structural normalization ---------------------------------------------

namespace {

void flatten(const Process& p, Kind k, std::vector<Process>& out) {
  if (p.kind() == k) {
    flatten(p.left(), k, out);
    flatten(p.right(), k, out);
  } else {
    out.push_back(p);
  }
}

Process rebuild(Kind k, std::vector<Process> ops) {
  if (k != Kind::Sum) std::erase_if(ops, [](const Process& q) { return q.kind() == Kind::Nil; });
  std::vector<std::pair<std::string, Process>> keyed;
  for (auto& q : ops) keyed.emplace_back(alpha_key(q), q);
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  if (k != Kind::Par)
    keyed.erase(std::unique(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
                keyed.end());
  if (keyed.empty()) return Process::nil();
  Process acc = keyed.front().second;
  for (std::size_t i = 1; i < keyed.size(); ++i) acc = binary(k, acc, keyed[i].second);
  return acc;
}

Process restrict_all(const Process& c, std::vector<Name> names);

Process chain(Process core, const std::vector<Name>& names) {
  for (const auto& n : names) core = Process::restrict(core, n);
  return core;
}

Process par_restrict(const Process& par, const std::vector<Name>& names) {
  std::vector<Process> comps;
  flatten(par, Kind::Par, comps);
  std::vector<bool> stuck(comps.size(), false);
  for (const auto& n : names) {
    std::vector<std::size_t> group;
    for (std::size_t i = 0; i < comps.size(); ++i)
      if (free_names(comps[i]).count(n)) group.push_back(i);
    if (group.empty()) continue;
    if (group.size() == 1) {
      auto i = group.front();
      comps[i] = stuck[i] ? Process::restrict(comps[i], n) : restrict_all(comps[i], {n});
      continue;
    }
    std::vector<Process> members;
    for (auto i : group) members.push_back(comps[i]);
    Process merged = Process::restrict(rebuild(Kind::Par, members), n);
    for (auto it = group.rbegin(); it != group.rend(); ++it) {
      comps.erase(comps.begin() + static_cast<std::ptrdiff_t>(*it));
      stuck.erase(stuck.begin() + static_cast<std::ptrdiff_t>(*it));
    }
    comps.push_back(merged);
    stuck.push_back(true);
  }
  return rebuild(Kind::Par, comps);
}

// restrict c by every name, pushing each as far inward as it goes
Process restrict_all(const Process& c, std::vector<Name> names) {
  auto fn = free_names(c);
  std::erase_if(names, [&](const Name& n) { return !fn.count(n); });
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  if (names.empty()) return c;
  switch (c.kind()) {
    case Kind::Restrict: {
      Process core = c;
      while (core.kind() == Kind::Restrict) {
        names.push_back(core.name());
        core = core.body();
      }
      // the inner binder shadows an outer one of the same name
      std::vector<Name> all;
      std::set<Name> seen;
      for (auto it = names.rbegin(); it != names.rend(); ++it)
        if (seen.insert(*it).second) all.push_back(*it);
      if (core.kind() == Kind::Par) {
        std::sort(all.begin(), all.end());
        return par_restrict(core, all);
      }
      return restrict_all(core, all);
    }
    case Kind::Sum:
    case Kind::NdChoice:
    case Kind::IntChoice: {
      std::vector<Process> ops;
      flatten(c, c.kind(), ops);
      for (auto& q : ops) q = restrict_all(q, names);
      return rebuild(c.kind(), ops);
    }
    case Kind::Par: return par_restrict(c, names);
    default: return chain(c, names);
  }
}

Process norm(const Process& p) {
  switch (p.kind()) {
    case Kind::Nil: return p;
    case Kind::Prefix: return Process::prefix(p.label(), norm(p.body()));
    case Kind::Bang: return Process::bang(norm(p.body()));
    case Kind::Restrict: return restrict_all(norm(p.body()), {p.name()});
    default: {
      std::vector<Process> ops;
      flatten(p, p.kind(), ops);
      for (auto& q : ops) q = norm(q);
      // normalized operands may expose further nesting of the same operator
      std::vector<Process> flat;
      for (auto& q : ops) flatten(q, p.kind(), flat);
      return rebuild(p.kind(), flat);
    }
  }
}

}  // namespace

Process struct_normalize(const Process& p) {
  Process cur = p;
  for (int k = 0; k < 64; ++k) {
    Process next = norm(cur);
    if (next == cur) return cur;
    cur = next;
  }
  return cur;
}

bool struct_equiv(const Process& p, const Process& q) { return alpha_eq(struct_normalize(p), struct_normalize(q)); }

// ---- back-and-forth bisimulation -----------------------------------------

namespace {

bool has_bang(const Process& p) {
  switch (p.kind()) {
    case Kind::Nil: return false;
    case Kind::Bang: return true;
    case Kind::Prefix:
    case Kind::Restrict: return has_bang(p.body());
    default: return has_bang(p.left()) || has_bang(p.right());
  }
}

using Bij = std::vector<std::pair<Identifier, Identifier>>;  // sorted

std::string bij_str(const Bij& f) {
  std::string s = "{";
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (k) s += ", ";
    s += to_string(f[k].first) + "->" + to_string(f[k].second);
  }
  return s + "}";
}

struct Triple {
  RProc r1, r2;
  Bij f;
};

struct Challenge {
  int side;  // 1: attacker plays on r1, 2: on r2
  RTransition move;
  std::vector<std::size_t> answers;
  std::vector<RTransition> replies;
};

}  // namespace

BisimResult bisimilar(const RProc& a, const RProc& b, BisimMode mode, std::size_t max_states) {
  if (has_bang(a.proc) || has_bang(b.proc)) throw FeatureDisabled("bisimulation needs replication-free processes");
  Config cfg;
  cfg.policy = ReplPolicy::None;
  Explorer ex(cfg);
  bool simple = mode == BisimMode::SBF;

  std::vector<Triple> nodes;
  std::vector<std::vector<Challenge>> chals;
  std::unordered_map<std::string, std::size_t> index;
  auto key = [](const Triple& t) { return to_string(t.r1) + " ; " + to_string(t.r2) + " ; " + bij_str(t.f); };
  auto intern = [&](Triple t) {
    auto k = key(t);
    auto it = index.find(k);
    if (it != index.end()) return it->second;
    if (nodes.size() >= max_states) throw std::runtime_error("bisimulation state space exceeds bound");
    index.emplace(k, nodes.size());
    nodes.push_back(std::move(t));
    chals.emplace_back();
    return nodes.size() - 1;
  };

  intern({origin(a, cfg), origin(b, cfg), {}});
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    Triple cur = nodes[n];
    std::vector<Challenge> cs;
    const auto m1 = ex.moves(cur.r1);
    const auto m2 = ex.moves(cur.r2);
    for (int side : {1, 2}) {
      const auto& att = side == 1 ? m1 : m2;
      const auto& def = side == 1 ? m2 : m1;
      for (const auto& t : att) {
        Challenge c{side, t, {}, {}};
        for (const auto& u : def) {
          if (u.dir != t.dir || u.label != t.label) continue;
          const Identifier& i1 = side == 1 ? t.id : u.id;
          const Identifier& i2 = side == 1 ? u.id : t.id;
          Bij g = cur.f;
          if (!simple) {
            if (t.dir == Dir::Fwd) {
              g.emplace_back(i1, i2);
              std::sort(g.begin(), g.end());
            } else {
              auto it = std::find(g.begin(), g.end(), std::make_pair(i1, i2));
              if (it == g.end()) continue;
              g.erase(it);
            }
          }
          const RProc& s1 = side == 1 ? t.target : u.target;
          const RProc& s2 = side == 1 ? u.target : t.target;
          c.answers.push_back(intern({s1, s2, std::move(g)}));
          c.replies.push_back(u);
        }
        cs.push_back(std::move(c));
      }
    }
    chals[n] = std::move(cs);
  }

  // greatest fixpoint; round[n] is the refinement round that removed n
  constexpr std::size_t kAlive = static_cast<std::size_t>(-1);
  std::vector<std::size_t> round(nodes.size(), kAlive);
  for (std::size_t r = 0;; ++r) {
    std::vector<std::size_t> dying;
    for (std::size_t n = 0; n < nodes.size(); ++n) {
      if (round[n] != kAlive) continue;
      for (const auto& c : chals[n]) {
        bool answered = std::any_of(c.answers.begin(), c.answers.end(), [&](std::size_t x) { return round[x] == kAlive; });
        if (!answered) {
          dying.push_back(n);
          break;
        }
      }
    }
    if (dying.empty()) break;
    for (auto n : dying) round[n] = r;
  }

  BisimResult res;
  res.explored = nodes.size();
  res.holds = round[0] == kAlive;
  auto side_str = [](int s) { return s == 1 ? std::string("left") : std::string("right"); };
  auto move_str = [](const RTransition& t) { return to_string(t.dir) + " " + to_string(t.id) + " " + to_string(t.label); };
  if (res.holds) {
    std::vector<bool> seen(nodes.size(), false);
    std::deque<std::size_t> q{0};
    seen[0] = true;
    while (!q.empty()) {
      auto n = q.front();
      q.pop_front();
      res.witness.push_back(key(nodes[n]));
      for (const auto& c : chals[n])
        for (auto x : c.answers)
          if (round[x] == kAlive && !seen[x]) {
            seen[x] = true;
            q.push_back(x);
          }
    }
    return res;
  }
  std::size_t n = 0;
  while (true) {
    const Challenge* pick = nullptr;
    for (const auto& c : chals[n]) {
      bool refutes = std::all_of(c.answers.begin(), c.answers.end(), [&](std::size_t x) { return round[x] < round[n]; });
      if (refutes) {
        pick = &c;
        break;
      }
    }
    if (!pick) break;  // unreachable: a removed node always has a refuting challenge
    res.play.push_back("attacker " + side_str(pick->side) + ": " + move_str(pick->move) + " -> " + to_string(pick->move.target));
    if (pick->answers.empty()) {
      res.play.push_back("defender " + side_str(3 - pick->side) + ": no matching move");
      break;
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < pick->answers.size(); ++k)
      if (round[pick->answers[k]] > round[pick->answers[best]]) best = k;
    res.play.push_back("defender " + side_str(3 - pick->side) + ": " + move_str(pick->replies[best]) + " -> " +
                       to_string(pick->replies[best].target));
    n = pick->answers[best];
  }
  return res;
}

}  // namespace irccs
