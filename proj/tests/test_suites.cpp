#include <set>

#include "doctest.h"
#include "gen.hpp"
#include "irccs/equiv.hpp"
#include "irccs/suites.hpp"

using namespace irccs;

namespace {

std::vector<Process> terms(std::initializer_list<const char*> ts) {
  std::vector<Process> out;
  for (auto t : ts) out.push_back(parse_process(t));
  return out;
}


}  // namespace

TEST_CASE("term size") {
  CHECK(term_size(parse_process("0")) == 0);
  CHECK(term_size(parse_process("a")) == 1);
  CHECK(term_size(parse_process("a.b | c")) == 4);
  CHECK(term_size(parse_process("!(a \\ b)")) == 3);
}

TEST_CASE("restriction position") {
  CHECK(restriction_at_roots(parse_process("(a | ~a) \\ a")));
  CHECK(restriction_at_roots(parse_process("a | b \\ b")));
  CHECK_FALSE(restriction_at_roots(parse_process("a.(b \\ b)")));
  CHECK_FALSE(restriction_at_roots(parse_process("a \\/ b \\ b")));
  CHECK_FALSE(restriction_at_roots(parse_process("!(a \\ a)")));
}

TEST_CASE("canonical names") {
  CHECK(canonical_names(parse_process("c.b | ~c")) == parse_process("a.b | ~a"));
  CHECK(canonical_names(parse_process("(c.a) \\ c")) == canonical_names(parse_process("(b.c) \\ b")));
}

TEST_CASE("generated terms are well formed, distinct and closed under renaming") {
  auto ts = generate_terms(3, 2);
  std::set<std::string> printed, seen;
  for (const auto& p : ts) {
    CHECK(term_size(p) <= 3);
    CHECK(canonical_names(p) == p);
    CHECK(printed.insert(print_process(p)).second);
    seen.insert(alpha_key(p));
  }
  // every term of size 3 or less over two names shows up, up to renaming
  gen::TermGen g(1);
  g.names = 2;
  for (int i = 0; i < 3000; ++i) {
    Process p = g.term(2);
    if (term_size(p) > 3 || check_well_formed(p)) continue;
    INFO(print_process(p));
    CHECK(seen.count(alpha_key(canonical_names(p))));
  }
  std::set<std::string> banged;
  for (const auto& p : generate_terms(2, 2, true)) banged.insert(print_process(p));
  CHECK(banged.count("!a"));
}

TEST_CASE("exploration reaches every state once") {
  Explorer ex;
  auto sp = explore(initial_of(parse_process("a | b")), ex, 100);
  CHECK(sp.states.size() == 4);
  CHECK_FALSE(sp.truncated);
  for (std::size_t k = 0; k < sp.states.size(); ++k) {
    Trace d = path_to(sp, k);
    CHECK(d.target() == sp.states[k]);
    CHECK(d.steps.size() == std::size_t(sp.depth[k]));
  }
  auto cut = explore(initial_of(parse_process("!a")), ex, 10, 3);
  CHECK(cut.states.size() <= 10);
}

TEST_CASE("suites on hand-picked terms") {
  auto ts = terms({"a+b | ~a.c", "a | (b | (c+d))", "a.(b+b)", "(a | ~a) \\ a", "a \\/ b.c", "a /\\ (b | c)"});
  auto ax = check_axioms(ts);
  CHECK_MESSAGE(ax.ok(), ax.summary());
  CHECK(ax.states > 20);
  auto un = check_unicity(ts, 200, 8, 1);
  CHECK_MESSAGE(un.ok(), un.summary());
  auto ca = check_causal(ts, 4);
  CHECK_MESSAGE(ca.ok(), ca.summary());
  auto co = check_conservativity(ts);
  CHECK_MESSAGE(co.ok(), co.summary());
  auto rep = check_conservativity(terms({"a.!b", "!(a | ~a)"}), 5);
  CHECK_MESSAGE(rep.ok(), rep.summary());
}

TEST_CASE("a buried restriction is reported") {
  auto ax = check_axioms(terms({"a.(b \\ b)"}));
  CHECK_FALSE(ax.ok());
  CHECK(ax.violation_count >= ax.violations.size());
  REQUIRE_FALSE(ax.violations.empty());
  CHECK(ax.violations[0].witness.has_value());
  CHECK(ax.summary().find("violation") != std::string::npos);
}
