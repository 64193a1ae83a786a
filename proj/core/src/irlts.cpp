#include "irccs/irlts.hpp"

#include <deque>
#include <functional>
#include <queue>
#include <random>
#include <set>
#include <unordered_set>

namespace irccs {

std::string to_string(const RProc& r) {
  return to_string(r.seed) + " o " + to_string(r.mem) + " |> " + print_process(r.proc);
}

RProc parse_rproc(const std::string& text) {
  auto o = text.find(" o ");
  auto t = text.find(" |> ");
  if (o == std::string::npos || t == std::string::npos || t < o)
    throw std::invalid_argument("state must read 'SEED o MEMORY |> PROCESS': " + text);
  return {parse_seed(text.substr(0, o)), parse_memory(text.substr(o + 3, t - o - 3)), parse_process(text.substr(t + 4))};
}

RProc initial_of(const Process& p) { return {splitter_helper({0, 1}, p), dup_helper(Memory(), p), p}; }

bool well_formed(const RProc& r) { return well_identified(r.seed, r.proc); }

std::string to_string(Dir d) { return d == Dir::Fwd ? "fwd" : "bwd"; }

std::string to_string(const RTransition& t) {
  std::string arrow = t.dir == Dir::Fwd ? "--[" : "~~[";
  std::string tail = t.dir == Dir::Fwd ? "]-->" : "]~~>";
  return to_string(t.source) + " " + arrow + to_string(t.id) + " : " + to_string(t.label) + tail + " " +
         to_string(t.target);
}

bool same_move(const RTransition& a, const RTransition& b) {
  return a.dir == b.dir && a.id == b.id && a.label == b.label;
}

bool inverse(const RTransition& t, const RTransition& u) {
  return t.dir != u.dir && t.id == u.id && t.label == u.label && t.source == u.target && t.target == u.source;
}

namespace {

struct RStep {
  Identifier id;
  Label label;
  Seed seed;
  Memory mem;
  Process proc;
};

Identifier flipped(const Identifier& i) { return Identifier::pair_of(i.b, i.a); }

Memory insert_rec(const Memory& m, const Identifier& i, const BranchRecord& r) {
  Memory out = insert_at(m, i, r);
  if (i.paired) out = insert_at(out, flipped(i), r);
  return out;
}

std::optional<Memory> remove_rec(const Memory& m, const Identifier& i, const BranchRecord& r) {
  if (!i.paired) return remove_last_at(m, i, r);
  auto a = remove_last_at(m, i, r);
  auto b = remove_last_at(a ? *a : m, flipped(i), r);
  if (b) return b;
  return a;
}

Seed after_act(const IdPattern& ip, const Process& cont) { return splitter_helper({ip.c + ip.s, ip.s}, cont); }

class Engine {
 public:
  explicit Engine(const Config& cfg) : cfg_(cfg) {}

  std::vector<RStep> fwd(const Seed& s, const Memory& m, const Process& p) const;
  std::vector<RStep> bwd(const Seed& s, const Memory& m, const Process& p) const;

 private:
  const Config& cfg_;

  Memory copy_start(const Memory& m, const Process& body) const {
    if (cfg_.policy == ReplPolicy::B) return dup_helper(Memory(), body);
    return dup_helper(cfg_.marks ? mark_all(m) : m, body);
  }
  // t, a backward step of the right operand of a parallel whose left operand
  // is s1 o m1 |> p1, would leave a replicated copy that has not acted yet
  bool restores_copy(const Seed& s1, const Memory& m1, const Process& p1, const RStep& t) const;
  void undo_top(const Seed& s, const Memory& m, const Process& p, std::vector<RStep>& out) const;
  void undo_ndchoice(const Seed& s, const Memory& m, const Process& p, std::vector<RStep>& out) const;
  void undo_par(const Seed& s, const Memory& m, const Process& p, std::vector<RStep>& out) const;
};

void pair_up(const std::vector<RStep>& ls, const std::vector<RStep>& rs,
             const std::function<void(const RStep&, const RStep&)>& f) {
  for (const auto& a : ls) {
    if (!a.label.is_action()) continue;
    for (const auto& b : rs)
      if (b.label == a.label.complement()) f(a, b);
  }
}

std::vector<RStep> Engine::fwd(const Seed& s, const Memory& m, const Process& p) const {
  std::vector<RStep> out;
  switch (p.kind()) {
    case Kind::Nil: break;
    case Kind::Prefix: {
      if (!s.is_leaf() || !m.is_stack()) break;
      const auto& ip = s.pattern();
      MemoryEvent e{gamma(ip.c), p.label(), {}, 0};
      out.push_back({e.id, e.label, after_act(ip, p.body()), dup_helper(m.push(e), p.body()), p.body()});
      break;
    }
    case Kind::Restrict:
      for (auto& t : fwd(s, m, p.body())) {
        if (t.label.is_action() && t.label.name == p.name()) continue;
        t.proc = Process::restrict(t.proc, p.name());
        out.push_back(std::move(t));
      }
      break;
    case Kind::Par: {
      if (s.is_leaf() || !m.is_pair()) break;
      const Seed &s1 = s.left(), &s2 = s.right();
      const Memory &m1 = m.left(), &m2 = m.right();
      auto ls = fwd(s1, m1, p.left());
      auto rs = fwd(s2, m2, p.right());
      for (auto& t : ls)
        out.push_back({t.id, t.label, Seed::node(t.seed, s2), Memory::pair(t.mem, m2), Process::par(t.proc, p.right())});
      for (auto& t : rs)
        out.push_back({t.id, t.label, Seed::node(s1, t.seed), Memory::pair(m1, t.mem), Process::par(p.left(), t.proc)});
      pair_up(ls, rs, [&](const RStep& a, const RStep& b) {
        Identifier i = pair(a.id, b.id);
        out.push_back({i, Label::tau(), Seed::node(a.seed, b.seed),
                       Memory::pair(subst_id(a.mem, a.id, i), subst_id(b.mem, b.id, pair(b.id, a.id))),
                       Process::par(a.proc, b.proc)});
      });
      break;
    }
    case Kind::NdChoice:
      for (auto& t : fwd(s, m, p.left())) {
        t.mem = insert_rec(t.mem, t.id, {ChoiceOp::NdChoice, p.right(), Side::R});
        out.push_back(std::move(t));
      }
      for (auto& t : fwd(s, m, p.right())) {
        t.mem = insert_rec(t.mem, t.id, {ChoiceOp::NdChoice, p.left(), Side::L});
        out.push_back(std::move(t));
      }
      break;
    case Kind::Sum: {
      if (!s.is_leaf() || !m.is_stack()) break;
      const auto& ip = s.pattern();
      for (auto& c : sum_choices(p)) {
        MemoryEvent e{gamma(ip.c), c.label, {}, 0};
        for (auto& [q, right] : c.discarded) e.branches.push_back({ChoiceOp::Sum, q, right ? Side::R : Side::L});
        out.push_back({e.id, e.label, after_act(ip, c.cont), dup_helper(m.push(e), c.cont), c.cont});
      }
      break;
    }
    case Kind::IntChoice: {
      if (!s.is_leaf() || !m.is_stack()) break;
      const auto& ip = s.pattern();
      MemoryEvent el{gamma(ip.c), Label::upsilon(), {{ChoiceOp::IntChoice, p.right(), Side::R}}, 0};
      MemoryEvent er{gamma(ip.c), Label::upsilon(), {{ChoiceOp::IntChoice, p.left(), Side::L}}, 0};
      out.push_back({el.id, el.label, after_act(ip, p.left()), dup_helper(m.push(el), p.left()), p.left()});
      out.push_back({er.id, er.label, after_act(ip, p.right()), dup_helper(m.push(er), p.right()), p.right()});
      break;
    }
    case Kind::Bang: {
      if (cfg_.policy == ReplPolicy::None) throw FeatureDisabled("replication is disabled (choose policy A or B)");
      if (!s.is_leaf() || !m.is_stack()) break;
      const Process& body = p.body();
      auto [l, r] = split(s.pattern());
      Seed keep = Seed::leaf(l);
      Memory left = cfg_.marks ? mark_all(m) : m;
      Memory start = copy_start(m, body);
      for (auto& t : fwd(splitter_helper(r, body), start, body))
        out.push_back({t.id, t.label, Seed::node(keep, t.seed), Memory::pair(left, t.mem), Process::par(p, t.proc)});
      auto [ra, rb] = split(r);
      auto as = fwd(splitter_helper(ra, body), start, body);
      auto bs = fwd(splitter_helper(rb, body), start, body);
      pair_up(as, bs, [&](const RStep& a, const RStep& b) {
        Identifier i = pair(a.id, b.id);
        Memory copies = Memory::pair(subst_id(a.mem, a.id, i), subst_id(b.mem, b.id, pair(b.id, a.id)));
        out.push_back({i, Label::tau(), Seed::node(keep, Seed::node(a.seed, b.seed)), Memory::pair(left, copies),
                       Process::par(p, Process::par(a.proc, b.proc))});
      });
      break;
    }
  }
  return out;
}

// act., + and the internal choice undone at the thread rooted in p
void Engine::undo_top(const Seed& s, const Memory& m, const Process& p, std::vector<RStep>& out) const {
  auto col = collapse(m, p);
  if (!col || col->depth() == 0) return;
  const MemoryEvent& e = col->top();
  if (e.marks > 0 || e.id.paired) return;
  auto u = try_unsplit_for(p, s);
  if (!u) return;
  Nat c = e.id.a;
  if (u->c < u->s || u->c - u->s != c) return;

  Process term;
  try {
    if (e.branches.empty()) {
      if (!e.label.is_action()) return;
      term = Process::prefix(e.label, p);
    } else if (e.branches.front().op == ChoiceOp::IntChoice) {
      if (e.branches.size() != 1 || e.label.kind != LabelKind::Upsilon) return;
      const auto& r = e.branches.front();
      term = r.dir == Side::R ? Process::intchoice(p, r.discarded) : Process::intchoice(r.discarded, p);
    } else {
      if (!e.label.is_action()) return;
      term = Process::prefix(e.label, p);
      for (const auto& r : e.branches) {
        if (r.op != ChoiceOp::Sum) return;
        term = r.dir == Side::R ? Process::sum(term, r.discarded) : Process::sum(r.discarded, term);
      }
    }
  } catch (const std::invalid_argument&) {
    return;
  }
  out.push_back({e.id, e.label, Seed::leaf({c, u->s}), col->pop(), term});
}

void Engine::undo_ndchoice(const Seed& s, const Memory& m, const Process& p, std::vector<RStep>& out) const {
  std::set<std::pair<Identifier, BranchRecord>> cands;
  for (const auto& e : tops(m)) {
    if (e.branches.empty() || e.branches.back().op != ChoiceOp::NdChoice) continue;
    cands.insert({e.id, e.branches.back()});
    if (e.id.paired) cands.insert({flipped(e.id), e.branches.back()});
  }
  for (const auto& [i, r] : cands) {
    auto stripped = remove_rec(m, i, r);
    if (!stripped) continue;
    for (auto& t : bwd(s, *stripped, p)) {
      if (t.id != i || !t.seed.is_leaf() || !t.mem.is_stack()) continue;
      t.proc = r.dir == Side::R ? Process::ndchoice(t.proc, r.discarded) : Process::ndchoice(r.discarded, t.proc);
      out.push_back(std::move(t));
    }
  }
}

bool Engine::restores_copy(const Seed& s1, const Memory& m1, const Process& p1, const RStep& t) const {
  if (!cfg_.marks || cfg_.policy == ReplPolicy::None) return false;
  // the replication sits leftmost below the copies spawned after this one;
  // with pattern (c,S) there, the copy j levels up started at (c+S/2^j, S/2^(j-1))
  const Seed* s = &s1;
  const Memory* m = &m1;
  const Process* p = &p1;
  unsigned j = 1;
  while (p->kind() == Kind::Par && m->is_pair() && !s->is_leaf()) {
    s = &s->left();
    m = &m->left();
    p = &p->left();
    ++j;
  }
  if (p->kind() != Kind::Bang || !s->is_leaf() || !m->is_stack() || !all_marked(*m) || j >= 64) return false;
  // one mark per spawn: only the innermost levels hold copies
  unsigned spawns = m->depth() == 0 ? m->base_marks() : 255;
  for (const auto& e : m->oldest_first()) spawns = std::min<unsigned>(spawns, e.marks);
  if (j > spawns) return false;
  const auto [c, step] = s->pattern();
  if (step % (Nat{1} << j) != 0) return false;
  const IdPattern start{c + (step >> j), step >> (j - 1)};
  const Process& body = p->body();
  auto start_mem = [&](const Memory& mem) -> std::optional<Memory> {
    if (cfg_.policy == ReplPolicy::B) return dup_helper(Memory(), body);
    const Memory* leaf = &mem;
    while (leaf->is_pair()) leaf = &leaf->left();
    if (!all_marked(*leaf)) return std::nullopt;
    return dup_helper(*leaf, body);
  };
  if (t.proc == body) return t.seed == splitter_helper(start, body) && t.mem == start_mem(t.mem);
  if (t.proc == Process::par(body, body) && t.mem.is_pair()) {
    auto [ra, rb] = split(start);
    auto st = start_mem(t.mem.left());
    return st && t.seed == Seed::node(splitter_helper(ra, body), splitter_helper(rb, body)) &&
           t.mem == Memory::pair(*st, *st);
  }
  return false;
}

void Engine::undo_par(const Seed& s, const Memory& m, const Process& p, std::vector<RStep>& out) const {
  if (s.is_leaf() || !m.is_pair()) return;
  const Seed &s1 = s.left(), &s2 = s.right();
  const Memory &m1 = m.left(), &m2 = m.right();
  const Process &p1 = p.left(), &p2 = p.right();

  // replication folding applies when the left thread is a replication whose
  // memory carries the marks left by the rule
  bool folding = cfg_.marks && cfg_.policy != ReplPolicy::None && p1.kind() == Kind::Bang && m1.is_stack() &&
                 s1.is_leaf() && all_marked(m1);
  std::optional<Seed> s_orig;
  Memory m_orig;
  if (folding) {
    s_orig = seed_unproj1(s1);
    m_orig = unmark_all(m1);
  }

  for (auto& t : bwd(s1, m1, p1)) {
    if (contains_id(m2, t.id) || !seeds_compatible(t.seed, s2)) continue;
    out.push_back({t.id, t.label, Seed::node(t.seed, s2), Memory::pair(t.mem, m2), Process::par(t.proc, p2)});
  }
  for (auto& t : bwd(s2, m2, p2)) {
    if (contains_id(m1, t.id) || !seeds_compatible(s1, t.seed)) continue;
    if (restores_copy(s1, m1, p1, t)) continue;
    out.push_back({t.id, t.label, Seed::node(s1, t.seed), Memory::pair(m1, t.mem), Process::par(p1, t.proc)});
  }

  std::set<Identifier> paired;
  for (const auto& e : tops(m1))
    if (e.id.paired) paired.insert(e.id);
  for (const auto& i : paired) {
    Identifier a = gamma(i.a), b = gamma(i.b);
    auto ls = bwd(s1, subst_id(m1, i, a), p1);
    auto rs = bwd(s2, subst_id(m2, flipped(i), b), p2);
    std::erase_if(ls, [&](const RStep& t) { return t.id != a; });
    std::erase_if(rs, [&](const RStep& t) { return t.id != b; });
    pair_up(ls, rs, [&](const RStep& x, const RStep& y) {
      if (!seeds_compatible(x.seed, y.seed) || contains_id(y.mem, a) || contains_id(x.mem, b)) return;
      out.push_back({i, Label::tau(), Seed::node(x.seed, y.seed), Memory::pair(x.mem, y.mem), Process::par(x.proc, y.proc)});
    });
  }

  if (folding && s_orig) {
    for (auto& t : fwd(*s_orig, m_orig, p1))
      if (t.seed == s && t.mem == m && t.proc == p) out.push_back({t.id, t.label, *s_orig, m_orig, p1});
  }
}

std::vector<RStep> Engine::bwd(const Seed& s, const Memory& m, const Process& p) const {
  std::vector<RStep> out;
  if (p.kind() == Kind::Restrict) {
    // restriction is only crossed, never undone at
    for (auto& t : bwd(s, m, p.body())) {
      if (t.label.is_action() && t.label.name == p.name()) continue;
      t.proc = Process::restrict(t.proc, p.name());
      out.push_back(std::move(t));
    }
    return out;
  }
  undo_top(s, m, p, out);
  undo_ndchoice(s, m, p, out);
  if (p.kind() == Kind::Par) undo_par(s, m, p, out);
  return out;
}

void require_well_formed(const RProc& r) {
  if (!well_formed(r)) throw NotWellIdentified("not a well-identified reversible process: " + to_string(r));
}

std::vector<RTransition> wrap(const RProc& r, std::vector<RStep> steps, Dir d) {
  std::vector<RTransition> out;
  out.reserve(steps.size());
  for (auto& t : steps) out.push_back({r, t.id, t.label, d, {std::move(t.seed), std::move(t.mem), std::move(t.proc)}});
  return out;
}

}  // namespace

std::vector<RTransition> enumerate_fwd_r(const RProc& r, const Config& cfg) {
  require_well_formed(r);
  Engine e(cfg);
  return wrap(r, e.fwd(r.seed, r.mem, r.proc), Dir::Fwd);
}

std::vector<RTransition> enumerate_bwd_r(const RProc& r, const Config& cfg) {
  require_well_formed(r);
  Engine e(cfg);
  return wrap(r, e.bwd(r.seed, r.mem, r.proc), Dir::Bwd);
}

std::vector<RTransition> enumerate_r(const RProc& r, const Config& cfg) {
  auto out = enumerate_fwd_r(r, cfg);
  auto b = enumerate_bwd_r(r, cfg);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::vector<RTransition> enumerate_repl_r(const RProc& r, ReplPolicy policy) {
  if (policy == ReplPolicy::None) throw FeatureDisabled("replication is disabled (choose policy A or B)");
  return enumerate_fwd_r(r, Config{policy, true});
}

RProc apply(const RTransition& t, const RProc& current) {
  if (!(t.source == current)) throw std::invalid_argument("stale transition: its source is not the current state");
  return t.target;
}

bool is_initial(const RProc& r) { return well_identified(r.seed, r.proc) && r.mem == dup_helper(Memory(), r.proc); }

RProc origin(const RProc& r, const Config& cfg) {
  RProc cur = r;
  std::size_t budget = r.mem.event_count() + 2;
  while (!is_initial(cur)) {
    if (budget-- == 0) throw Unreachable("backward run does not terminate from " + to_string(r));
    auto bs = enumerate_bwd_r(cur, cfg);
    if (bs.empty()) throw Unreachable("stuck at non-initial " + to_string(cur));
    cur = bs.front().target;
  }
  return cur;
}

std::vector<IdPattern> backward_patterns(const RTransition& t) {
  std::vector<Identifier> comps;
  if (t.id.paired) {
    comps = {gamma(t.id.a), gamma(t.id.b)};
  } else {
    comps = {t.id};
  }
  std::vector<IdPattern> out;
  auto leaves = t.target.seed.leaves();
  for (const auto& c : comps) {
    bool found = false;
    for (const auto& ip : leaves)
      if (ip.c == c.a) {
        out.push_back(ip);
        found = true;
      }
    if (found) continue;
    // identifiers drawn from a pattern that was split afterwards
    for (const auto& ip : leaves)
      if (stream_contains(ip, c)) out.push_back(ip);
  }
  return out;
}

bool concurrent_r(const RTransition& t1, const RTransition& t2) {
  if (!(t1.source == t2.source)) throw std::invalid_argument("transitions are not coinitial");
  if (t1 == t2) return false;
  if (t1.dir == Dir::Fwd && t2.dir == Dir::Fwd) return compatible_ids(t1.id, t2.id);
  if (t1.dir == Dir::Bwd && t2.dir == Dir::Bwd) return true;
  const RTransition& f = t1.dir == Dir::Fwd ? t1 : t2;
  const RTransition& b = t1.dir == Dir::Fwd ? t2 : t1;
  std::vector<Identifier> comps = f.id.paired ? std::vector<Identifier>{gamma(f.id.a), gamma(f.id.b)} : std::vector<Identifier>{f.id};
  for (const auto& ip : backward_patterns(b))
    for (const auto& c : comps)
      if (stream_contains(ip, c)) return false;
  return true;
}

bool Trace::composable() const {
  const RProc* cur = &source;
  for (const auto& t : steps) {
    if (!(t.source == *cur)) return false;
    cur = &t.target;
  }
  return true;
}

std::string trace_key(const Trace& d) {
  std::string k;
  for (const auto& t : d.steps) {
    k += to_string(t.dir) + " " + to_string(t.id) + " " + to_string(t.label) + " | " + to_string(t.target) + "\n";
  }
  return k;
}

bool unicity_holds(const Trace& d) {
  std::multiset<Nat> seen;
  for (const auto& t : d.steps) {
    seen.insert(t.id.a);
    if (t.id.paired) seen.insert(t.id.b);
  }
  for (Nat n : seen)
    if (seen.count(n) > 1) return false;
  return true;
}

const std::vector<RTransition>& Explorer::moves(const RProc& r) {
  std::string k = to_string(r);
  auto it = cache_.find(k);
  if (it != cache_.end()) return it->second;
  return cache_.emplace(std::move(k), enumerate_r(r, cfg_)).first->second;
}

std::vector<Trace> rewrites(const Trace& d, Explorer& ex) {
  std::vector<Trace> out;
  const auto& st = d.steps;
  for (std::size_t k = 0; k + 1 < st.size(); ++k) {
    const RTransition& t1 = st[k];
    const RTransition& t2 = st[k + 1];
    if (inverse(t1, t2)) {
      Trace e{d.source, {}};
      e.steps.insert(e.steps.end(), st.begin(), st.begin() + static_cast<std::ptrdiff_t>(k));
      e.steps.insert(e.steps.end(), st.begin() + static_cast<std::ptrdiff_t>(k + 2), st.end());
      out.push_back(std::move(e));
      continue;
    }
    // t1;t2 ~ u;v where u matches t2 from t1's source and v matches t1
    for (const auto& u : ex.moves(t1.source)) {
      if (!same_move(u, t2) || u == t1 || !concurrent_r(t1, u)) continue;
      for (const auto& v : ex.moves(u.target)) {
        if (!same_move(v, t1) || !(v.target == t2.target)) continue;
        Trace e = d;
        e.steps[k] = u;
        e.steps[k + 1] = v;
        out.push_back(std::move(e));
      }
    }
  }
  return out;
}

bool causally_equivalent(const Trace& d1, const Trace& d2, std::size_t bound, const Config& cfg) {
  if (!(d1.source == d2.source)) throw std::invalid_argument("traces are not coinitial");
  if (!(d1.target() == d2.target())) return false;
  Explorer ex(cfg);
  // side 0 grows from d1, side 1 from d2
  std::unordered_map<std::string, int> owner;
  std::deque<std::pair<Trace, int>> queue;
  auto k1 = trace_key(d1), k2 = trace_key(d2);
  if (k1 == k2) return true;
  owner[k1] = 0;
  owner[k2] = 1;
  queue.emplace_back(d1, 0);
  queue.emplace_back(d2, 1);
  std::size_t visited = 0;
  while (!queue.empty() && visited < bound) {
    auto [d, side] = std::move(queue.front());
    queue.pop_front();
    ++visited;
    for (auto& e : rewrites(d, ex)) {
      auto k = trace_key(e);
      auto it = owner.find(k);
      if (it != owner.end()) {
        if (it->second != side) return true;
        continue;
      }
      owner.emplace(std::move(k), side);
      queue.emplace_back(std::move(e), side);
    }
  }
  return false;
}

Trace normalize_trace(const Trace& d, const Config& cfg, std::size_t bound) {
  if (unicity_holds(d)) return d;
  Explorer ex(cfg);
  auto cmp = [](const Trace& a, const Trace& b) { return a.steps.size() > b.steps.size(); };
  std::priority_queue<Trace, std::vector<Trace>, decltype(cmp)> pq(cmp);
  std::unordered_set<std::string> seen{trace_key(d)};
  pq.push(d);
  Trace best = d;
  std::size_t visited = 0;
  while (!pq.empty() && visited < bound) {
    Trace cur = pq.top();
    pq.pop();
    ++visited;
    if (unicity_holds(cur)) return cur;
    if (cur.steps.size() < best.steps.size()) best = cur;
    for (auto& e : rewrites(cur, ex))
      if (seen.insert(trace_key(e)).second) pq.push(std::move(e));
  }
  return best;
}

Trace random_trace(const RProc& r, std::size_t len, std::uint64_t seed, const Config& cfg) {
  std::mt19937_64 rng(seed);
  Trace d{r, {}};
  RProc cur = r;
  for (std::size_t k = 0; k < len; ++k) {
    auto ms = enumerate_r(cur, cfg);
    if (ms.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, ms.size() - 1);
    d.steps.push_back(ms[pick(rng)]);
    cur = d.steps.back().target;
  }
  return d;
}

}  // namespace irccs
