#include "doctest.h"
#include "gen.hpp"
#include "irccs/syntax.hpp"

using namespace irccs;

namespace {
Process pre(const char* a, Process p = Process::nil()) { return Process::prefix(Label::in(a), std::move(p)); }
}  // namespace

TEST_CASE("parser builds the expected trees") {
  CHECK(parse_process("a.(b | c + d)") == pre("a", Process::par(pre("b"), Process::sum(pre("c"), pre("d")))));
  CHECK(parse_process("a + b | ~a.c") ==
        Process::par(Process::sum(pre("a"), pre("b")), Process::prefix(Label::out("a"), pre("c"))));
  CHECK(parse_process("0 \\ a") == Process::restrict(Process::nil(), "a"));
  CHECK(parse_process("!a.b") == Process::bang(pre("a", pre("b"))));
  CHECK(parse_process("a \\/ b /\\ c") ==
        Process::intchoice(Process::ndchoice(pre("a"), pre("b")), pre("c")));
}

TEST_CASE("parser reports position and expectations") {
  try {
    parse_process("a.(b | ");
    FAIL("accepted");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
    CHECK(e.column == 8);
    CHECK_FALSE(e.expected.empty());
  }
  CHECK_THROWS_AS(parse_process("a | (b | c) + d"), ParseError);
  CHECK_THROWS_AS(parse_process("tau.a"), ParseError);
  CHECK_THROWS_AS(parse_process("A"), ParseError);
}

TEST_CASE("printer") {
  CHECK(print_process(Process::nil()) == "0");
  CHECK(print_process(Process::par(pre("a"), pre("b"))) == "a | b");
  CHECK(print_process(Process::sum(pre("a"), pre("b"))) == "a + b");
  CHECK(print_process(parse_process("a.(b \\/ c)")) == "a.(b \\/ c)");
}

TEST_CASE("free names") {
  CHECK(free_names(parse_process("a.b \\ b")) == std::set<Name>{"a"});
  CHECK(free_names(parse_process("0")).empty());
  CHECK(free_names(parse_process("a + b | ~a.c")) == std::set<Name>{"a", "b", "c"});
  CHECK(free_names(parse_process("(a | b \\ a) \\ b")) == std::set<Name>{"a"});
}

TEST_CASE("thread shape") {
  CHECK(to_string(thread_shape(parse_process("a | (b | c)"))) == to_string(Shape::node(Shape::make_leaf(),
                                                                        Shape::node(Shape::make_leaf(), Shape::make_leaf()))));
  CHECK(thread_shape(parse_process("a.(b|c)")).leaf);
  CHECK(thread_shape(parse_process("0")).leaf);
  CHECK(thread_shape(parse_process("(a | b) \\ a")).leaves() == 2);
}

TEST_CASE("labels") {
  CHECK(parse_label("~a") == Label::out("a"));
  CHECK(to_string(Label::out("b")) == "~b");
  CHECK_THROWS_AS(Label::tau().complement(), std::logic_error);
  CHECK_THROWS_AS(Label::upsilon().complement(), std::logic_error);
  for (const char* n : {"a", "x1", "long_name"}) {
    CHECK(Label::in(n).complement().complement() == Label::in(n));
    CHECK(Label::out(n).complement().complement() == Label::out(n));
  }
  CHECK(valid_name("a_B9"));
  CHECK_FALSE(valid_name("Ab"));
  CHECK_FALSE(valid_name(""));
}

TEST_CASE("sum refuses unguarded operands") {
  CHECK_THROWS_AS(Process::sum(Process::par(pre("a"), pre("b")), pre("c")), std::invalid_argument);
  CHECK_NOTHROW(Process::sum(Process::restrict(pre("a"), "a"), pre("c")));
}

TEST_CASE("print then parse is the identity on random terms") {
  gen::TermGen g(7);
  g.bang = true;
  for (int i = 0; i < 2000; ++i) {
    Process p = g.term(6);
    INFO(print_process(p));
    REQUIRE(parse_process(print_process(p)) == p);
  }
}
