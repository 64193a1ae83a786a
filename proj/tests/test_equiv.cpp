#include <set>

#include "doctest.h"
#include "gen.hpp"
#include "irccs/equiv.hpp"
#include "irccs/suites.hpp"

using namespace irccs;

namespace {

RProc st(const char* s) { return parse_rproc(s); }
Process pp(const char* s) { return parse_process(s); }

// visible label sequences of identified forward traces, up to len; internal
// choice steps are silent (P /\ 0 and P /\ P are equated with P)
void label_traces(const IdentifiedProcess& ip, std::size_t len, std::string prefix, std::set<std::string>& out) {
  out.insert(prefix);
  for (const auto& t : enumerate_fwd(ip)) {
    if (t.label == Label::upsilon())
      label_traces(t.target, len, prefix, out);
    else if (len > 0)
      label_traces(t.target, len - 1, prefix + to_string(t.label) + ";", out);
  }
}

std::set<std::string> label_traces(const Process& p, std::size_t len) {
  std::set<std::string> out;
  label_traces(identify(p), len, "", out);
  return out;
}

}  // namespace

TEST_CASE("term contexts") {
  CHECK(apply_term_context(TermContext::parse("[] | ~a"), pp("a+b")) == pp("a+b | ~a"));
  CHECK(apply_term_context(TermContext::hole(), pp("a.b")) == pp("a.b"));
  CHECK(apply_term_context(TermContext::parse("[] + c"), pp("b")) == pp("b + c"));
  CHECK(apply_term_context(TermContext::hole().sum(pp("c"), false), pp("b")) == pp("b + c"));
  CHECK(apply_term_context(TermContext::parse("([] | a) \\ a"), pp("~a")) == pp("(~a | a) \\ a"));
  CHECK_THROWS_AS(TermContext::parse("[] | []"), std::invalid_argument);
  CHECK_THROWS_AS(TermContext::parse("a | b"), std::invalid_argument);
  CHECK_THROWS_AS(TermContext::parse("[] + c").apply(pp("a | b")), std::invalid_argument);
  CHECK(TermContext::parse("a.([] | b)").str() == "a.([] | b)");
}

TEST_CASE("identified contexts") {
  TermContext c = TermContext::parse("[] | ~a");
  CHECK(apply_id_context(c, {parse_seed("(0,1)"), pp("a+b")}) ==
        IdentifiedProcess{parse_seed("((0,2),(1,2))"), pp("a+b | ~a")});
  CHECK(apply_id_context(c, {parse_seed("((0,2),(1,2))"), pp("a | b")}) ==
        IdentifiedProcess{parse_seed("(((0,4),(1,4)),(2,4))"), pp("(a | b) | ~a")});
  IdentifiedProcess leaf{parse_seed("(3,2)"), pp("a.b")};
  CHECK(apply_id_context(TermContext::hole(), leaf) == leaf);
}

TEST_CASE("reversible contexts") {
  RProc r = st("(1,1) o <#0, a, _> |> b");
  RevContext c1{MemContext::parse("[{}, @]"), TermContext::parse("p | []")};
  RevContext c2{MemContext::parse("dup(@)"), TermContext::parse("p | []")};
  RProc r1 = apply_rev_context(c1, r);
  RProc r2 = apply_rev_context(c2, r);
  CHECK(r1 == st("((1,2),(2,2)) o [{}, <#0, a, _>] |> p | b"));
  CHECK(r2 == st("((1,2),(2,2)) o [<#0, a, _>, <#0, a, _>] |> p | b"));

  // the first only rewinds b's thread, the second goes back to a.(p | b)
  auto back1 = enumerate_bwd_r(r1);
  REQUIRE(back1.size() == 1);
  CHECK(back1[0].id == atom(0));
  CHECK(back1[0].target == st("((1,2),(0,2)) o [{}, {}] |> p | a.b"));
  auto back = enumerate_bwd_r(r2);
  REQUIRE(back.size() == 1);
  CHECK(back[0].target == st("(0,1) o {} |> a.(p | b)"));

  RevContext c3{MemContext::hole(), TermContext::parse("[] + c")};
  CHECK(apply_rev_context(c3, st("(1,1) o <#0, a, _> |> b + b")) == st("(1,1) o <#0, a, _> |> (b + b) + c"));

  CHECK(is_memory_neutral(RevContext{}));
  CHECK(is_memory_neutral(c1));
  CHECK_FALSE(is_memory_neutral(c2));
  CHECK(MemContext::parse("[@, {}]").memory_neutral());
  CHECK_FALSE(MemContext::hole().push(MemoryEvent{atom(0), Label::in("a"), {}, 0}).memory_neutral());
}

TEST_CASE("identified contexts keep processes well identified") {
  gen::TermGen g(17);
  for (int i = 0; i < 500; ++i) {
    Process p = g.term(3);
    IdentifiedProcess ip{splitter_helper(g.pattern(8, 4), p), p};
    TermContext c = g.pick(2) ? TermContext::hole().par(g.term(2), g.pick(2)) : TermContext::hole().prefix(g.label());
    if (g.pick(2)) c = c.restrict(g.name());
    if (g.pick(2)) c = c.ndchoice(g.term(2), g.pick(2));
    if (check_well_formed(c.apply(p))) continue;
    INFO(c.str() << " @ " << to_string(ip));
    CHECK(well_identified(apply_id_context(c, ip)));
  }
}

TEST_CASE("structural normalization") {
  CHECK(struct_normalize(pp("b \\/ 0")) == pp("b"));
  CHECK(struct_normalize(pp("a.b + a.b")) == pp("a.b"));
  CHECK(struct_normalize(pp("a \\ b")) == pp("a"));
  CHECK(struct_equiv(pp("a | b"), pp("b | a")));
  CHECK_FALSE(struct_equiv(pp("a"), pp("b")));
  CHECK(struct_equiv(pp("(a+b) \\ c"), pp("(a \\ c) + (b \\ c)")));
  CHECK(struct_equiv(pp("(a | b) | c"), pp("a | (c | b)")));
  CHECK(struct_equiv(pp("(a.b) \\ b"), pp("(a.c) \\ c")));
}

TEST_CASE("alpha equivalence") {
  CHECK(alpha_eq(pp("(a.b) \\ a"), pp("(c.b) \\ c")));
  CHECK_FALSE(alpha_eq(pp("(a.b) \\ a"), pp("(a.c) \\ a")));
  CHECK_FALSE(alpha_eq(pp("(a.b) \\ a"), pp("(b.b) \\ b")));
  gen::TermGen g(4);
  for (int i = 0; i < 500; ++i) {
    Process p = g.term(5);
    CHECK(alpha_eq(p, p));
    CHECK(alpha_key(p) == alpha_key(p));
  }
}

TEST_CASE("normalization properties on random terms") {
  gen::TermGen g(23);
  std::vector<Process> sample;
  for (int i = 0; i < 400; ++i) {
    Process p = g.term(4);
    Process n = struct_normalize(p);
    CHECK(struct_normalize(n) == n);
    CHECK(struct_equiv(p, n));
    if (!check_well_formed(p) && !check_well_formed(n)) {
      INFO(print_process(p) << " ~> " << print_process(n));
      CHECK(label_traces(p, 4) == label_traces(n, 4));
    }
    sample.push_back(p);
  }
  for (std::size_t i = 0; i + 2 < sample.size(); i += 3) {
    const auto &a = sample[i], &b = sample[i + 1], &c = sample[i + 2];
    CHECK(struct_equiv(a, b) == struct_equiv(b, a));
    if (struct_equiv(a, b) && struct_equiv(b, c)) CHECK(struct_equiv(a, c));
  }
}

TEST_CASE("back and forth bisimulation") {
  RProc r1 = st("(1,1) o <#0, a, _> |> b + b");
  RProc r2 = st("(1,1) o <#0, a, (+, a.b, R)> |> b");
  CHECK(origin(r2) == st("(0,1) o {} |> a.b + a.b"));
  auto bf = bisimilar(r1, r2, BisimMode::BF);
  CHECK(bf.holds);
  CHECK_FALSE(bf.witness.empty());
  CHECK(sbf_bisimilar(r1, r2));

  RevContext ctx{MemContext::hole(), TermContext::parse("[] + c")};
  RProc c1 = apply_rev_context(ctx, r1), c2 = apply_rev_context(ctx, r2);
  CHECK(origin(c1) == st("(0,1) o {} |> a.((b + b) + c)"));
  CHECK(origin(c2) == st("(0,1) o {} |> a.(b + c) + a.b"));
  for (auto mode : {BisimMode::BF, BisimMode::SBF}) {
    auto res = bisimilar(c1, c2, mode);
    CHECK_FALSE(res.holds);
    CHECK_FALSE(res.play.empty());
  }

  CHECK(bf_bisimilar(r1, r1));
  CHECK_FALSE(sbf_bisimilar(initial_of(pp("a.b")), initial_of(pp("a.c"))));
  CHECK_THROWS_AS(bisimilar(initial_of(pp("!a")), initial_of(pp("a")), BisimMode::BF), FeatureDisabled);
}

TEST_CASE("bisimulation is reflexive and symmetric, and B&F implies SB&F") {
  auto terms = generate_terms(3, 2);
  std::vector<RProc> states;
  for (std::size_t i = 0; i < terms.size(); i += 7) {
    if (check_well_formed(terms[i]) || !restriction_at_roots(terms[i])) continue;
    states.push_back(random_trace(initial_of(terms[i]), 2, i).target());
  }
  REQUIRE(states.size() > 20);
  for (std::size_t i = 0; i < states.size(); ++i) {
    CHECK(bf_bisimilar(states[i], states[i]));
    const RProc& other = states[(i * 5 + 1) % states.size()];
    bool bf = bf_bisimilar(states[i], other);
    bool sbf = sbf_bisimilar(states[i], other);
    CHECK(bf == bf_bisimilar(other, states[i]));
    CHECK(sbf == sbf_bisimilar(other, states[i]));
    if (bf) CHECK(sbf);
  }
}
