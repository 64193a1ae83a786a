// Abstract syntax, parser and printer for extended CCS terms.
#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace irccs {

using Name = std::string;

bool valid_name(const std::string& s);

enum class LabelKind : std::uint8_t { In, Out, Tau, Upsilon };

struct Label {
  LabelKind kind = LabelKind::Tau;
  Name name;

  static Label in(Name n) { return {LabelKind::In, std::move(n)}; }
  static Label out(Name n) { return {LabelKind::Out, std::move(n)}; }
  static Label tau() { return {LabelKind::Tau, {}}; }
  static Label upsilon() { return {LabelKind::Upsilon, {}}; }

  bool is_action() const { return kind == LabelKind::In || kind == LabelKind::Out; }
  // throws std::logic_error on tau / upsilon
  Label complement() const;

  auto operator<=>(const Label&) const = default;
  bool operator==(const Label&) const = default;
};

std::string to_string(const Label& l);
// accepts "a", "~a", "tau", "upsilon"
Label parse_label(const std::string& s);

enum class Kind : std::uint8_t { Nil, Prefix, Par, Restrict, NdChoice, Sum, IntChoice, Bang };

struct Node;

// Immutable, structurally compared handle on a term.
class Process {
 public:
  Process();  // nil

  static Process nil();
  static Process prefix(Label l, Process body);
  static Process par(Process l, Process r);
  static Process restrict(Process body, Name a);
  static Process ndchoice(Process l, Process r);
  // operands must be guarded (see is_guarded); throws std::invalid_argument otherwise
  static Process sum(Process l, Process r);
  static Process intchoice(Process l, Process r);
  static Process bang(Process body);

  Kind kind() const;
  const Label& label() const;  // Prefix
  const Name& name() const;    // Restrict
  const Process& body() const; // Prefix, Restrict, Bang
  const Process& left() const; // Par, NdChoice, Sum, IntChoice
  const Process& right() const;

  bool is_nil() const { return kind() == Kind::Nil; }
  bool is_par() const { return kind() == Kind::Par; }
  std::size_t hash() const;
  std::size_t size() const;

  friend bool operator==(const Process& a, const Process& b);
  friend std::strong_ordering operator<=>(const Process& a, const Process& b);

 private:
  explicit Process(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

// A summand of `+` is a prefix, a sum of summands, or a restricted summand.
bool is_guarded(const Process& p);

struct ParseError : std::runtime_error {
  int line;
  int column;
  std::vector<std::string> expected;
  ParseError(int line, int column, std::vector<std::string> expected, const std::string& found);
};

Process parse_process(const std::string& text);
std::string print_process(const Process& p);

std::set<Name> free_names(const Process& p);

// Tree of top-level parallel compositions. Restriction is transparent.
struct Shape {
  bool leaf = true;
  std::shared_ptr<const Shape> l, r;
  static Shape make_leaf() { return {}; }
  static Shape node(Shape a, Shape b);
  bool operator==(const Shape& o) const;
  std::size_t leaves() const;
};

Shape thread_shape(const Process& p);
std::string to_string(const Shape& s);

// Strip restrictions: returns the innermost non-restriction term and the
// restricted names, outermost first.
Process strip_restrictions(const Process& p, std::vector<Name>* names = nullptr);

}  // namespace irccs

template <>
struct std::hash<irccs::Process> {
  std::size_t operator()(const irccs::Process& p) const noexcept { return p.hash(); }
};
