#include <set>

#include "doctest.h"
#include "gen.hpp"
#include "irccs/irlts.hpp"
#include "irccs/suites.hpp"

using namespace irccs;

namespace {

const char* kRev = "((2,2),(3,2)) o [<#0, a, (+, b, R)>, <#1, ~a, _>] |> 0 | c";

RProc st(const char* s) { return parse_rproc(s); }

const RTransition& find(const std::vector<RTransition>& ts, Dir d, const Identifier& id) {
  for (const auto& t : ts)
    if (t.dir == d && t.id == id) return t;
  throw std::runtime_error("no such move");
}

Trace walk(const RProc& r, std::initializer_list<std::size_t> picks, const Config& cfg = {}) {
  Trace d{r, {}};
  for (auto k : picks) d.steps.push_back(enumerate_r(d.target(), cfg).at(k));
  return d;
}

// origin by exhaustive search over every backward strategy
std::set<std::string> all_origins(const RProc& r, const Config& cfg) {
  auto bwd = enumerate_bwd_r(r, cfg);
  if (bwd.empty()) return {to_string(r)};
  std::set<std::string> out;
  for (const auto& t : bwd) out.merge(all_origins(t.target, cfg));
  return out;
}

}  // namespace

TEST_CASE("the reversible example: one forward and two backward moves") {
  RProc r = st(kRev);
  auto fwd = enumerate_fwd_r(r);
  auto bwd = enumerate_bwd_r(r);
  REQUIRE(fwd.size() == 1);
  REQUIRE(bwd.size() == 2);
  const auto& t1 = fwd[0];
  CHECK(t1.id == atom(3));
  CHECK(t1.label == Label::in("c"));
  CHECK(t1.target == st("((2,2),(5,2)) o [<#0, a, (+, b, R)>, <#3, c, _>.<#1, ~a, _>] |> 0 | 0"));
  const auto& t2 = find(bwd, Dir::Bwd, atom(1));
  const auto& t3 = find(bwd, Dir::Bwd, atom(0));
  CHECK(t2.label == Label::out("a"));
  CHECK(t2.target == st("((2,2),(1,2)) o [<#0, a, (+, b, R)>, {}] |> 0 | ~a.c"));
  CHECK(t3.label == Label::in("a"));
  CHECK(t3.target == st("((0,2),(3,2)) o [{}, <#1, ~a, _>] |> a + b | c"));

  CHECK(backward_patterns(t3) == std::vector<IdPattern>{{0, 2}});
  CHECK(backward_patterns(t2) == std::vector<IdPattern>{{1, 2}});
  CHECK(concurrent_r(t2, t3));
  CHECK(concurrent_r(t1, t3));
  CHECK_FALSE(concurrent_r(t1, t2));
  CHECK(concurrent_r(t3, t1) == concurrent_r(t1, t3));

  CHECK(apply(t1, r) == t1.target);
  CHECK_THROWS_AS(apply(t1, t3.target), std::invalid_argument);
}

TEST_CASE("forward steps") {
  auto ts = enumerate_fwd_r(initial_of(parse_process("a.!b")));
  REQUIRE(ts.size() == 1);
  CHECK(ts[0].id == atom(0));
  CHECK(ts[0].target == st("(1,1) o <#0, a, _> |> !b"));
  CHECK(enumerate_fwd_r(initial_of(Process::nil())).empty());
  CHECK(to_string(initial_of(parse_process("a | b"))) == "((0,2),(1,2)) o [{}, {}] |> a | b");
}

TEST_CASE("backward steps") {
  RProc r = st("((1,2),(2,2)) o [<#0, a, _>, <#0, a, _>] |> c | b");
  auto bwd = enumerate_bwd_r(r);
  REQUIRE(bwd.size() == 1);
  CHECK(bwd[0].id == atom(0));
  CHECK(bwd[0].target == st("(0,1) o {} |> a.(c | b)"));
  CHECK(enumerate_bwd_r(initial_of(parse_process("a | b"))).empty());
  // copies that disagree cannot be undone together
  CHECK(enumerate_bwd_r(st("((1,2),(2,2)) o [<#0, a, _>, {}] |> c | b")).empty());
}

TEST_CASE("synchronization is undone through both memories") {
  RProc r = initial_of(parse_process("a | ~a"));
  auto tau = find(enumerate_fwd_r(r), Dir::Fwd, pair(atom(0), atom(1)));
  CHECK(tau.label == Label::tau());
  CHECK(tau.target == st("((2,2),(3,2)) o [<#0(+)#1, a, _>, <#1(+)#0, ~a, _>] |> 0 | 0"));
  auto back = enumerate_bwd_r(tau.target);
  REQUIRE(back.size() == 1);
  CHECK(back[0].target == r);
  auto pats = backward_patterns(back[0]);
  CHECK(std::set(pats.begin(), pats.end()) == std::set<IdPattern>{{0, 2}, {1, 2}});
}

TEST_CASE("initial and origin") {
  CHECK(is_initial(st("(0,1) o {} |> a.b")));
  CHECK_FALSE(is_initial(st("(1,1) o <#0, a, _> |> b")));
  CHECK(is_initial(st("((0,2),(1,2)) o [{}, {}] |> a | b")));
  CHECK(origin(st("(1,1) o <#0, a, _> |> b + b")) == st("(0,1) o {} |> a.(b + b)"));
  RProc init = initial_of(parse_process("a.b | c"));
  CHECK(origin(init) == init);
  CHECK(origin(st(kRev)) == st("((0,2),(1,2)) o [{}, {}] |> a + b | ~a.c"));
  CHECK(all_origins(st(kRev), {}) == std::set<std::string>{"((0,2),(1,2)) o [{}, {}] |> a + b | ~a.c"});
  CHECK_THROWS_AS(origin(st("((1,2),(2,2)) o [<#0, a, _>, {}] |> c | b")), Unreachable);
}

TEST_CASE("replication policies") {
  RProc r = st("(1,1) o <#0, a, _> |> !b");
  auto a = enumerate_repl_r(r, ReplPolicy::A);
  auto b = enumerate_repl_r(r, ReplPolicy::B);
  REQUIRE(a.size() == 1);
  REQUIRE(b.size() == 1);
  CHECK(a[0].id == atom(2));
  CHECK(to_string(a[0].target) == "((1,2),(4,2)) o [?<#0, a, _>, <#2, b, _>.?<#0, a, _>] |> !b | 0");
  CHECK(to_string(b[0].target) == "((1,2),(4,2)) o [?<#0, a, _>, <#2, b, _>] |> !b | 0");
  CHECK_THROWS_AS(enumerate_fwd_r(r, Config{ReplPolicy::None}), FeatureDisabled);

  // the marked copy only comes back through the replication rule
  for (const auto& t : {a[0], b[0]}) {
    Config cfg{t.target.mem.right().depth() == 2 ? ReplPolicy::A : ReplPolicy::B};
    auto bwd = enumerate_bwd_r(t.target, cfg);
    REQUIRE(bwd.size() == 1);
    CHECK(bwd[0].id == atom(2));
    CHECK(bwd[0].target == r);
    CHECK(origin(t.target, cfg) == st("(0,1) o {} |> a.!b"));
  }
}

TEST_CASE("causal equivalence") {
  RProc ex4 = initial_of(parse_process("a+b | ~a.c"));
  Trace loop = walk(ex4, {0});
  loop.steps.push_back(find(enumerate_bwd_r(loop.target()), Dir::Bwd, atom(0)));
  CHECK(causally_equivalent(loop, Trace{ex4, {}}, 10000));
  CHECK(normalize_trace(loop).steps.empty());

  // a then ~a against ~a then a
  auto first = enumerate_fwd_r(ex4);
  Trace d1{ex4, {first[0], find(enumerate_fwd_r(first[0].target), Dir::Fwd, atom(1))}};
  Trace d2{ex4, {first[2], find(enumerate_fwd_r(first[2].target), Dir::Fwd, atom(0))}};
  REQUIRE(d1.steps[1].label == Label::out("a"));
  REQUIRE(d2.steps[1].label == Label::in("a"));
  CHECK(d1.target() == d2.target());
  CHECK(causally_equivalent(d1, d2, 10000));
  CHECK_FALSE(causally_equivalent(walk(ex4, {0}), Trace{ex4, {}}, 10000));
  CHECK_THROWS_AS(causally_equivalent(d1, Trace{initial_of(parse_process("a")), {}}, 10), std::invalid_argument);
}

TEST_CASE("trace normalization") {
  RProc r = initial_of(parse_process("a | b"));
  Trace d = walk(r, {0});
  d.steps.push_back(find(enumerate_fwd_r(d.target()), Dir::Fwd, atom(1)));
  d.steps.push_back(find(enumerate_bwd_r(d.target()), Dir::Bwd, atom(1)));
  Trace n = normalize_trace(d);
  REQUIRE(n.steps.size() == 1);
  CHECK(n.steps[0].id == atom(0));
  CHECK(n.target() == d.target());
  Trace clean = walk(r, {0, 0});
  CHECK(trace_key(normalize_trace(clean)) == trace_key(clean));
  CHECK(unicity_holds(clean));
  CHECK_FALSE(unicity_holds(d));
}

TEST_CASE("random traces") {
  RProc r = initial_of(parse_process("a.b"));
  CHECK(random_trace(r, 0, 1).steps.empty());
  for (std::uint64_t s = 0; s < 20; ++s) {
    Trace d = random_trace(r, 2, s);
    REQUIRE(d.steps.size() == 2);
    CHECK(d.composable());
    CHECK(d.steps[0].label == Label::in("a"));
    bool fwd_b = d.steps[1].dir == Dir::Fwd && d.steps[1].label == Label::in("b");
    bool bwd_a = d.steps[1].dir == Dir::Bwd && d.steps[1].label == Label::in("a");
    CHECK((fwd_b || bwd_a));
    CHECK(trace_key(random_trace(r, 2, s)) == trace_key(d));
  }
  CHECK(random_trace(initial_of(Process::nil()), 5, 0).steps.empty());
}

TEST_CASE("loop, origin and forward projection on random terms") {
  gen::TermGen g(99);
  int seen = 0;
  for (int i = 0; i < 300; ++i) {
    Process p = g.term(4);
    if (check_well_formed(p) || !restriction_at_roots(p)) continue;
    RProc init = initial_of(p);
    for (std::uint64_t s = 0; s < 3; ++s) {
      Trace d = random_trace(init, 6, s * 7 + i);
      const RProc& r = d.target();
      for (const auto& t : enumerate_fwd_r(r)) {
        bool back = false;
        for (const auto& u : enumerate_bwd_r(t.target)) back |= inverse(t, u) && u.target == r;
        CHECK(back);
      }
      for (const auto& t : enumerate_bwd_r(r)) {
        CHECK(t.target.mem.event_count() < r.mem.event_count());
        bool fwd = false;
        for (const auto& u : enumerate_fwd_r(t.target)) fwd |= inverse(t, u) && u.target == r;
        CHECK(fwd);
      }
      auto origins = all_origins(r, {});
      CHECK(origins == std::set<std::string>{to_string(init)});
      ++seen;
    }
    // forward moves project to the identified forward moves
    auto ilts = enumerate_fwd(IdentifiedProcess{init.seed, init.proc});
    auto irlts = enumerate_fwd_r(init);
    REQUIRE(ilts.size() == irlts.size());
    for (std::size_t k = 0; k < ilts.size(); ++k) {
      CHECK(ilts[k].id == irlts[k].id);
      CHECK(ilts[k].label == irlts[k].label);
      CHECK(ilts[k].target.seed == irlts[k].target.seed);
      CHECK(ilts[k].target.proc == irlts[k].target.proc);
    }
  }
  CHECK(seen > 200);
}
