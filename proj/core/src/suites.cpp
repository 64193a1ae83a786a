#include "irccs/suites.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "irccs/ilts.hpp"
#include "irccs/trace_io.hpp"

namespace irccs {

int term_size(const Process& p) {
  switch (p.kind()) {
    case Kind::Nil: return 0;
    case Kind::Prefix:
    case Kind::Restrict:
    case Kind::Bang: return 1 + term_size(p.body());
    default: return 1 + term_size(p.left()) + term_size(p.right());
  }
}

namespace {

bool restricts_below(const Process& p, bool guarded) {
  switch (p.kind()) {
    case Kind::Nil: return false;
    case Kind::Restrict: return guarded || restricts_below(p.body(), false);
    case Kind::Par: return restricts_below(p.left(), guarded) || restricts_below(p.right(), guarded);
    case Kind::Prefix:
    case Kind::Bang: return restricts_below(p.body(), true);
    default: return restricts_below(p.left(), true) || restricts_below(p.right(), true);
  }
}

}  // namespace

bool restriction_at_roots(const Process& p) { return !restricts_below(p, false); }

namespace {

Name nth_name(std::size_t k) {
  Name n(1, static_cast<char>('a' + k % 26));
  if (k >= 26) n += std::to_string(k / 26);
  return n;
}

Process rename(const Process& p, std::map<Name, Name>& m) {
  auto get = [&](const Name& n) {
    auto it = m.find(n);
    if (it != m.end()) return it->second;
    Name fresh = nth_name(m.size());
    m.emplace(n, fresh);
    return fresh;
  };
  switch (p.kind()) {
    case Kind::Nil: return p;
    case Kind::Prefix: {
      Label l = p.label();
      l.name = get(l.name);
      return Process::prefix(l, rename(p.body(), m));
    }
    case Kind::Restrict: {
      Name a = get(p.name());
      return Process::restrict(rename(p.body(), m), a);
    }
    case Kind::Bang: return Process::bang(rename(p.body(), m));
    case Kind::Par: {
      Process l = rename(p.left(), m);
      return Process::par(l, rename(p.right(), m));
    }
    case Kind::Sum: {
      Process l = rename(p.left(), m);
      return Process::sum(l, rename(p.right(), m));
    }
    case Kind::NdChoice: {
      Process l = rename(p.left(), m);
      return Process::ndchoice(l, rename(p.right(), m));
    }
    case Kind::IntChoice: {
      Process l = rename(p.left(), m);
      return Process::intchoice(l, rename(p.right(), m));
    }
  }
  return p;
}

}  // namespace

Process canonical_names(const Process& p) {
  std::map<Name, Name> m;
  return rename(p, m);
}

std::vector<Process> generate_terms(int max_size, int names, bool with_bang) {
  std::vector<Label> labels;
  std::vector<Name> ns;
  for (int k = 0; k < names; ++k) {
    ns.push_back(nth_name(static_cast<std::size_t>(k)));
    labels.push_back(Label::in(ns.back()));
    labels.push_back(Label::out(ns.back()));
  }
  // by_size[n]: canonical terms of size exactly n
  std::vector<std::vector<Process>> by_size(static_cast<std::size_t>(std::max(max_size, 0)) + 1);
  std::set<std::string> seen;
  auto add = [&](int n, const Process& q) {
    Process c = canonical_names(q);
    if (check_well_formed(c)) return;
    if (seen.insert(print_process(c)).second) by_size[static_cast<std::size_t>(n)].push_back(c);
  };
  add(0, Process::nil());
  auto guarded = [](const Process& q) { return q.kind() == Kind::Prefix || q.kind() == Kind::Sum; };
  for (int n = 1; n <= max_size; ++n) {
    const auto& sub = by_size[static_cast<std::size_t>(n - 1)];
    for (const auto& b : sub) {
      for (const auto& l : labels) add(n, Process::prefix(l, b));
      for (const auto& a : ns) add(n, Process::restrict(b, a));
      if (with_bang) add(n, Process::bang(b));
    }
    for (int i = 0; i <= n - 1; ++i) {
      // operands are canonical separately; rename the right one past the left
      // one's names so that shared and distinct names both arise
      for (const auto& l : by_size[static_cast<std::size_t>(i)])
        for (const auto& r0 : by_size[static_cast<std::size_t>(n - 1 - i)]) {
          std::set<Process> variants{r0};
          const std::vector<Name>& fresh = ns;
          // every injective renaming of r0's names into the name pool
          std::vector<Name> rn;
          for (const auto& x : free_names(r0)) rn.push_back(x);
          std::function<void(std::size_t, std::map<Name, Name>&, std::set<Name>&)> go =
              [&](std::size_t k, std::map<Name, Name>& mp, std::set<Name>& used) {
                if (k == rn.size()) {
                  std::map<Name, Name> m2 = mp;
                  std::function<Process(const Process&, std::set<Name>)> ap = [&](const Process& q, std::set<Name> bound) -> Process {
                    switch (q.kind()) {
                      case Kind::Nil: return q;
                      case Kind::Prefix: {
                        Label lb = q.label();
                        if (!bound.count(lb.name)) lb.name = m2.at(lb.name);
                        return Process::prefix(lb, ap(q.body(), bound));
                      }
                      case Kind::Restrict: {
                        bound.insert(q.name());
                        return Process::restrict(ap(q.body(), bound), q.name());
                      }
                      case Kind::Bang: return Process::bang(ap(q.body(), bound));
                      case Kind::Par: return Process::par(ap(q.left(), bound), ap(q.right(), bound));
                      case Kind::Sum: return Process::sum(ap(q.left(), bound), ap(q.right(), bound));
                      case Kind::NdChoice: return Process::ndchoice(ap(q.left(), bound), ap(q.right(), bound));
                      case Kind::IntChoice: return Process::intchoice(ap(q.left(), bound), ap(q.right(), bound));
                    }
                    return q;
                  };
                  Process v = ap(r0, {});
                  std::set<Name> image;
                  for (auto& [x, y] : m2) image.insert(y);
                  if (free_names(v) == image) variants.insert(v);  // else a binder captured a renamed name
                  return;
                }
                for (const auto& t : fresh) {
                  if (used.count(t)) continue;
                  mp[rn[k]] = t;
                  used.insert(t);
                  go(k + 1, mp, used);
                  used.erase(t);
                  mp.erase(rn[k]);
                }
              };
          std::map<Name, Name> mp;
          std::set<Name> used;
          go(0, mp, used);
          for (const auto& r : variants) {
            add(n, Process::par(l, r));
            add(n, Process::intchoice(l, r));
            if (thread_shape(l).leaf && thread_shape(r).leaf) add(n, Process::ndchoice(l, r));
            if (guarded(l) && guarded(r)) add(n, Process::sum(l, r));
          }
        }
    }
  }
  std::vector<Process> out;
  for (auto& v : by_size)
    for (auto& q : v) out.push_back(q);
  return out;
}

StateSpace explore(const RProc& root, Explorer& ex, std::size_t max_states, int max_depth) {
  StateSpace sp;
  sp.states.push_back(root);
  sp.depth.push_back(0);
  sp.via.emplace_back();
  sp.index.emplace(to_string(root), 0);
  for (std::size_t n = 0; n < sp.states.size(); ++n) {
    if (max_depth >= 0 && sp.depth[n] >= max_depth) continue;
    RProc cur = sp.states[n];
    int d = sp.depth[n];
    for (const auto& t : ex.moves(cur)) {
      auto k = to_string(t.target);
      if (sp.index.count(k)) continue;
      if (sp.states.size() >= max_states) {
        sp.truncated = true;
        return sp;
      }
      sp.index.emplace(std::move(k), sp.states.size());
      sp.states.push_back(t.target);
      sp.depth.push_back(t.dir == Dir::Fwd ? d + 1 : d - 1);
      sp.via.emplace_back(t);
    }
  }
  return sp;
}

Trace path_to(const StateSpace& sp, std::size_t state) {
  std::vector<RTransition> rev;
  std::size_t n = state;
  while (sp.via[n]) {
    rev.push_back(*sp.via[n]);
    n = sp.index.at(to_string(sp.via[n]->source));
  }
  std::reverse(rev.begin(), rev.end());
  return {sp.states[n], rev};
}

std::string SuiteReport::summary() const {
  std::string s = suite + ": " + std::to_string(terms) + " terms, " + std::to_string(states) + " states, " +
                  std::to_string(checks) + " checks, " + std::to_string(violation_count) + " violations";
  return s;
}

namespace {

void violate(SuiteReport& rep, std::string prop, std::string detail, std::optional<Trace> w = std::nullopt) {
  ++rep.violation_count;
  if (rep.violations.size() < 50) rep.violations.push_back({std::move(prop), std::move(detail), std::move(w)});
}

std::string move_str(const RTransition& t) {
  return to_string(t.dir) + " " + to_string(t.id) + " " + to_string(t.label) + " -> " + to_string(t.target);
}

}  // namespace

SuiteReport check_axioms(const std::vector<Process>& terms, const Config& cfg, std::size_t max_states, int max_depth) {
  SuiteReport rep;
  rep.suite = "axioms";
  for (const auto& p : terms) {
    ++rep.terms;
    Explorer ex(cfg);
    RProc root = initial_of(p);
    StateSpace sp = explore(root, ex, max_states, max_depth);
    rep.states += sp.states.size();
    std::unordered_map<std::string, std::string> origins;
    for (std::size_t n = 0; n < sp.states.size(); ++n) {
      const RProc& r = sp.states[n];
      // frontier states of a bounded exploration are only targets
      if (max_depth >= 0 && sp.depth[n] >= max_depth) continue;
      const auto moves = ex.moves(r);
      std::size_t before = r.mem.event_count();
      for (const auto& t : moves) {
        ++rep.checks;
        const auto& back = ex.moves(t.target);
        bool loop = std::any_of(back.begin(), back.end(), [&](const RTransition& u) {
          return u.dir != t.dir && u.id == t.id && u.label == t.label && u.target == r;
        });
        if (!loop) violate(rep, "loop", "no inverse of " + move_str(t), path_to(sp, n));
        if (t.dir == Dir::Bwd && t.target.mem.event_count() >= before)
          violate(rep, "well-foundedness", "memory does not shrink: " + move_str(t), path_to(sp, n));
      }
      for (std::size_t i = 0; i < moves.size(); ++i)
        for (std::size_t j = i + 1; j < moves.size(); ++j) {
          const auto &t1 = moves[i], &t2 = moves[j];
          if (t1 == t2) continue;
          ++rep.checks;
          bool conc = concurrent_r(t1, t2);
          if (t1.dir == Dir::Bwd && t2.dir == Dir::Bwd && !conc)
            violate(rep, "backward concurrency", move_str(t1) + " / " + move_str(t2), path_to(sp, n));
          if (!conc) continue;
          const auto a = ex.moves(t1.target);
          const auto& b = ex.moves(t2.target);
          bool square = false;
          for (const auto& u : a) {
            if (!same_move(u, t2)) continue;
            for (const auto& v : b)
              if (same_move(v, t1) && v.target == u.target) square = true;
          }
          if (!square) violate(rep, "square", move_str(t1) + " / " + move_str(t2), path_to(sp, n));
        }
      // origin must not depend on which backward step is taken first
      try {
        std::string o = to_string(origin(r, cfg));
        for (const auto& t : moves) {
          if (t.dir != Dir::Bwd) continue;
          ++rep.checks;
          std::string o2 = to_string(origin(t.target, cfg));
          if (o2 != o) violate(rep, "origin", "after " + move_str(t) + " origin is " + o2 + " instead of " + o, path_to(sp, n));
        }
      } catch (const std::exception& e) {
        violate(rep, "origin", e.what(), path_to(sp, n));
      }
    }
  }
  return rep;
}

namespace {

bool ilts_unique(const std::vector<FwdTransition>& ts) {
  std::set<Nat> seen;
  for (const auto& t : ts) {
    if (!seen.insert(t.id.a).second) return false;
    if (t.id.paired && !seen.insert(t.id.b).second) return false;
  }
  return true;
}

}  // namespace

SuiteReport check_unicity(const std::vector<Process>& terms, std::size_t samples, std::size_t max_len, std::uint64_t seed,
                          const Config& cfg) {
  SuiteReport rep;
  rep.suite = "unicity";
  if (terms.empty()) return rep;
  rep.terms = terms.size();
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < samples; ++k) {
    const Process& p = terms[k % terms.size()];
    std::size_t len = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
    // identified forward run
    IdentifiedProcess cur = identify(p);
    std::vector<FwdTransition> run;
    for (std::size_t s = 0; s < len; ++s) {
      auto ms = enumerate_fwd(cur);
      if (ms.empty()) break;
      run.push_back(ms[std::uniform_int_distribution<std::size_t>(0, ms.size() - 1)(rng)]);
      cur = run.back().target;
      ++rep.states;
    }
    ++rep.checks;
    if (!ilts_unique(run)) {
      std::string d;
      for (const auto& t : run) d += to_string(t.id) + " " + to_string(t.label) + "; ";
      violate(rep, "ilts unicity", print_process(p) + ": " + d);
    }
    // reversible run in both directions, then normalized
    Trace tr = random_trace(initial_of(p), len, rng(), cfg);
    Trace nt = normalize_trace(tr, cfg);
    ++rep.checks;
    if (!unicity_holds(nt)) violate(rep, "irlts unicity", "normal form repeats an identifier", tr);
    if (!(nt.target() == tr.target()) || !nt.composable()) violate(rep, "irlts unicity", "normal form is not cofinal", tr);
  }
  return rep;
}

SuiteReport check_causal(const std::vector<Process>& terms, std::size_t max_len, const Config& cfg) {
  SuiteReport rep;
  rep.suite = "causal";
  for (const auto& p : terms) {
    ++rep.terms;
    Explorer ex(cfg);
    RProc root = initial_of(p);
    std::vector<Trace> all{{root, {}}};
    std::unordered_map<std::string, std::size_t> idx{{trace_key(all.front()), 0}};
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (all[i].steps.size() >= max_len) continue;
      Trace base = all[i];
      for (const auto& t : ex.moves(base.target())) {
        Trace d = base;
        d.steps.push_back(t);
        auto k = trace_key(d);
        if (idx.emplace(k, all.size()).second) all.push_back(std::move(d));
      }
    }
    std::vector<std::size_t> uf(all.size());
    std::iota(uf.begin(), uf.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
    for (std::size_t i = 0; i < all.size(); ++i)
      for (const auto& e : rewrites(all[i], ex)) {
        auto it = idx.find(trace_key(e));
        if (it == idx.end()) {
          violate(rep, "causal", "rewrite leaves the enumerated traces", e);
          continue;
        }
        uf[find(i)] = find(it->second);
      }
    rep.states += all.size();
    std::unordered_map<std::string, std::size_t> cls;  // target -> class
    for (std::size_t i = 0; i < all.size(); ++i) {
      ++rep.checks;
      auto [it, fresh] = cls.emplace(to_string(all[i].target()), find(i));
      if (!fresh && find(it->second) != find(i)) {
        // find a member of the other class to report
        std::size_t other = 0;
        for (std::size_t j = 0; j < i; ++j)
          if (find(j) == find(it->second) && all[j].target() == all[i].target()) {
            other = j;
            break;
          }
        violate(rep, "causal", "cofinal traces not related by swaps and cancellations:\n" + write_trace(all[other]), all[i]);
        uf[find(i)] = find(it->second);
      }
    }
    // equivalent traces are cofinal by construction of the rewrites; checked
    // anyway
    std::unordered_map<std::size_t, std::string> tgt;
    for (std::size_t i = 0; i < all.size(); ++i) {
      auto [it, fresh] = tgt.emplace(find(i), to_string(all[i].target()));
      if (!fresh && it->second != to_string(all[i].target())) violate(rep, "causal", "equivalent traces are not cofinal", all[i]);
    }
  }
  return rep;
}

namespace {

using LabelSeqs = std::set<std::vector<Label>>;

void ccs_traces(const Process& p, std::vector<Label>& pre, LabelSeqs& out, std::size_t max_len) {
  out.insert(pre);
  if (pre.size() >= max_len) return;
  for (auto& [l, q] : ccs_steps(p)) {
    pre.push_back(l);
    ccs_traces(q, pre, out, max_len);
    pre.pop_back();
  }
}

void ilts_traces(const IdentifiedProcess& ip, std::vector<Label>& pre, LabelSeqs& out, std::size_t max_len) {
  out.insert(pre);
  if (pre.size() >= max_len) return;
  for (auto& t : enumerate_fwd(ip)) {
    pre.push_back(t.label);
    ilts_traces(t.target, pre, out, max_len);
    pre.pop_back();
  }
}

}  // namespace

SuiteReport check_conservativity(const std::vector<Process>& terms, std::size_t max_len) {
  SuiteReport rep;
  rep.suite = "conservativity";
  for (const auto& p : terms) {
    ++rep.terms;
    LabelSeqs a, b;
    std::vector<Label> pre;
    ccs_traces(p, pre, a, max_len);
    ilts_traces(identify(p), pre, b, max_len);
    rep.states += a.size();
    ++rep.checks;
    if (a != b)
      violate(rep, "conservativity",
              print_process(p) + ": " + std::to_string(a.size()) + " CCS traces vs " + std::to_string(b.size()) + " identified");
  }
  return rep;
}

}  // namespace irccs
