#include "doctest.h"
#include "gen.hpp"
#include "irccs/suites.hpp"
#include "irccs/trace_io.hpp"

using namespace irccs;

TEST_CASE("trace text round trip") {
  RProc r = initial_of(parse_process("a+b | ~a.c"));
  Trace d = random_trace(r, 5, 3);
  std::string text = write_trace(d);
  CHECK(text.rfind("init ((0,2),(1,2)) o [{}, {}] |> a + b | ~a.c\n", 0) == 0);
  Trace back = read_trace(text);
  CHECK(write_trace(back) == text);
  CHECK(back.target() == d.target());
  CHECK(read_state(text) == d.target());
  CHECK(read_state("(1,1) o <#0, a, _> |> b") == parse_rproc("(1,1) o <#0, a, _> |> b"));
}

TEST_CASE("step lines") {
  Trace d{initial_of(parse_process("a.b")), {}};
  d.steps.push_back(enumerate_fwd_r(d.source).at(0));
  CHECK(write_trace(d) == "init (0,1) o {} |> a.b\nfwd #0 a | (1,1) o <#0, a, _> |> b\n");
}

TEST_CASE("malformed traces") {
  std::string good = "init (0,1) o {} |> a.b\nfwd #0 a | (1,1) o <#0, a, _> |> b\n";
  CHECK_NOTHROW(read_trace(good));
  // a step the engine does not offer
  std::string forged = "init (0,1) o {} |> a.b\nfwd #5 a | (1,1) o <#5, a, _> |> b\n";
  CHECK_THROWS_AS(read_trace(forged), TraceFormatError);
  CHECK_NOTHROW(read_trace(forged, {}, false));
  try {
    read_trace("init (0,1) o {} |> a.b\nsideways #0 a | (1,1) o <#0, a, _> |> b\n");
    FAIL("accepted");
  } catch (const TraceFormatError& e) {
    CHECK(e.line == 2);
  }
  CHECK_THROWS_AS(read_trace("fwd #0 a | (1,1) o <#0, a, _> |> b\n"), TraceFormatError);
  CHECK_THROWS_AS(read_trace(""), TraceFormatError);
}

TEST_CASE("random traces round trip bit for bit") {
  int n = 0;
  for (const auto& p : generate_terms(4, 3, true)) {
    if (check_well_formed(p) || n > 3000) continue;
    Trace d = random_trace(initial_of(p), 6, n++);
    std::string text = write_trace(d);
    Trace back = read_trace(text, {}, restriction_at_roots(p));
    REQUIRE(write_trace(back) == text);
    CHECK(back.target() == d.target());
  }
  CHECK(n > 1000);
}
