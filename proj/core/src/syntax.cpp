#include "irccs/syntax.hpp"

#include <cctype>
#include <functional>
#include <sstream>

namespace irccs {

bool valid_name(const std::string& s) {
  if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return s != "tau" && s != "upsilon";
}

Label Label::complement() const {
  switch (kind) {
    case LabelKind::In: return out(name);
    case LabelKind::Out: return in(name);
    default: throw std::logic_error("tau and upsilon have no complement");
  }
}

std::string to_string(const Label& l) {
  switch (l.kind) {
    case LabelKind::In: return l.name;
    case LabelKind::Out: return "~" + l.name;
    case LabelKind::Tau: return "tau";
    case LabelKind::Upsilon: return "upsilon";
  }
  return "?";
}

Label parse_label(const std::string& s) {
  if (s == "tau") return Label::tau();
  if (s == "upsilon") return Label::upsilon();
  if (!s.empty() && s[0] == '~' && valid_name(s.substr(1))) return Label::out(s.substr(1));
  if (valid_name(s)) return Label::in(s);
  throw std::invalid_argument("bad label: " + s);
}

struct Node {
  Kind kind;
  Label label;
  Name name;
  Process a, b;
  std::size_t hash;
  std::size_t size;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

constexpr std::size_t kNilHash = 0x51ed;

}  // namespace

// nil is the null handle; no node is ever allocated for it
Process::Process() = default;

Process Process::nil() { return Process(); }

namespace {

std::shared_ptr<Node> mk(Kind k) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  return n;
}

void finish(Node& n, std::initializer_list<const Process*> kids) {
  std::size_t h = static_cast<std::size_t>(n.kind) * 1315423911u;
  h = mix(h, static_cast<std::size_t>(n.label.kind));
  h = mix(h, std::hash<std::string>{}(n.label.name));
  h = mix(h, std::hash<std::string>{}(n.name));
  std::size_t sz = 1;
  for (auto* k : kids) {
    h = mix(h, k->hash());
    sz += k->size();
  }
  n.hash = h;
  n.size = sz;
}

}  // namespace

Process Process::prefix(Label l, Process body) {
  if (!l.is_action()) throw std::invalid_argument("prefix label must be a name or co-name");
  auto n = mk(Kind::Prefix);
  n->label = std::move(l);
  n->a = std::move(body);
  finish(*n, {&n->a});
  return Process(n);
}

Process Process::par(Process l, Process r) {
  auto n = mk(Kind::Par);
  n->a = std::move(l);
  n->b = std::move(r);
  finish(*n, {&n->a, &n->b});
  return Process(n);
}

Process Process::restrict(Process body, Name a) {
  if (!valid_name(a)) throw std::invalid_argument("bad name: " + a);
  auto n = mk(Kind::Restrict);
  n->name = std::move(a);
  n->a = std::move(body);
  finish(*n, {&n->a});
  return Process(n);
}

Process Process::ndchoice(Process l, Process r) {
  auto n = mk(Kind::NdChoice);
  n->a = std::move(l);
  n->b = std::move(r);
  finish(*n, {&n->a, &n->b});
  return Process(n);
}

Process Process::sum(Process l, Process r) {
  if (!is_guarded(l) || !is_guarded(r)) throw std::invalid_argument("'+' needs prefixed operands");
  auto n = mk(Kind::Sum);
  n->a = std::move(l);
  n->b = std::move(r);
  finish(*n, {&n->a, &n->b});
  return Process(n);
}

Process Process::intchoice(Process l, Process r) {
  auto n = mk(Kind::IntChoice);
  n->a = std::move(l);
  n->b = std::move(r);
  finish(*n, {&n->a, &n->b});
  return Process(n);
}

Process Process::bang(Process body) {
  auto n = mk(Kind::Bang);
  n->a = std::move(body);
  finish(*n, {&n->a});
  return Process(n);
}

Kind Process::kind() const { return n_ ? n_->kind : Kind::Nil; }
const Label& Process::label() const { return n_->label; }
const Name& Process::name() const { return n_->name; }
const Process& Process::body() const { return n_->a; }
const Process& Process::left() const { return n_->a; }
const Process& Process::right() const { return n_->b; }
std::size_t Process::hash() const { return n_ ? n_->hash : kNilHash; }
std::size_t Process::size() const { return n_ ? n_->size : 0; }

bool operator==(const Process& x, const Process& y) {
  if (x.n_ == y.n_) return true;
  if (!x.n_ || !y.n_) return false;
  const Node& a = *x.n_;
  const Node& b = *y.n_;
  if (a.hash != b.hash || a.kind != b.kind || a.size != b.size) return false;
  if (a.label != b.label || a.name != b.name) return false;
  switch (a.kind) {
    case Kind::Nil: return true;
    case Kind::Prefix:
    case Kind::Restrict:
    case Kind::Bang: return a.a == b.a;
    default: return a.a == b.a && a.b == b.b;
  }
}

std::strong_ordering operator<=>(const Process& x, const Process& y) {
  if (x.n_ == y.n_) return std::strong_ordering::equal;
  if (!x.n_) return std::strong_ordering::less;
  if (!y.n_) return std::strong_ordering::greater;
  const Node& a = *x.n_;
  const Node& b = *y.n_;
  if (auto c = a.kind <=> b.kind; c != 0) return c;
  if (auto c = a.label <=> b.label; c != 0) return c;
  if (auto c = a.name <=> b.name; c != 0) return c;
  switch (a.kind) {
    case Kind::Nil: return std::strong_ordering::equal;
    case Kind::Prefix:
    case Kind::Restrict:
    case Kind::Bang: return a.a <=> b.a;
    default:
      if (auto c = a.a <=> b.a; c != 0) return c;
      return a.b <=> b.b;
  }
}

bool is_guarded(const Process& p) {
  switch (p.kind()) {
    case Kind::Prefix:
    case Kind::Sum: return true;
    case Kind::Restrict: return is_guarded(p.body());
    default: return false;
  }
}

// ---------------------------------------------------------------- parser

ParseError::ParseError(int l, int c, std::vector<std::string> exp, const std::string& found)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << l << ":" << c << ": unexpected " << found << ", expected one of {";
        for (std::size_t i = 0; i < exp.size(); ++i) os << (i ? ", " : "") << exp[i];
        os << "}";
        return os.str();
      }()),
      line(l),
      column(c),
      expected(std::move(exp)) {}

namespace {

enum class Tok { Name, Tilde, Zero, Dot, Bar, Plus, Backslash, Bang, LParen, RParen, Or, And, End };

const char* tok_text(Tok t) {
  switch (t) {
    case Tok::Name: return "name";
    case Tok::Tilde: return "'~'";
    case Tok::Zero: return "'0'";
    case Tok::Dot: return "'.'";
    case Tok::Bar: return "'|'";
    case Tok::Plus: return "'+'";
    case Tok::Backslash: return "'\\'";
    case Tok::Bang: return "'!'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Or: return "'\\/'";
    case Tok::And: return "'/\\'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok tok;
  std::string text;
  int line, col;
};

class Parser {
 public:
  explicit Parser(const std::string& src) { lex(src); }

  Process run() {
    Process p = choice();
    expect(Tok::End);
    return p;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail_at(const Token& t, std::vector<std::string> expected) {
    std::string found = t.tok == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.line, t.col, std::move(expected), found);
  }

  void lex(const std::string& s) {
    int line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](Tok t, std::string text, int l, int c) { toks_.push_back({t, std::move(text), l, c}); };
    while (i < s.size()) {
      char ch = s[i];
      if (ch == '\n') {
        ++line;
        col = 1;
        ++i;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(ch))) {
        ++i;
        ++col;
        continue;
      }
      if (ch == '#') {  // comment to end of line
        while (i < s.size() && s[i] != '\n') ++i;
        continue;
      }
      int c0 = col;
      if (ch >= 'a' && ch <= 'z') {
        std::size_t j = i;
        while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
        push(Tok::Name, s.substr(i, j - i), line, c0);
        col += static_cast<int>(j - i);
        i = j;
        continue;
      }
      if (ch == '\\' && i + 1 < s.size() && s[i + 1] == '/') {
        push(Tok::Or, "\\/", line, c0);
        i += 2;
        col += 2;
        continue;
      }
      if (ch == '/' && i + 1 < s.size() && s[i + 1] == '\\') {
        push(Tok::And, "/\\", line, c0);
        i += 2;
        col += 2;
        continue;
      }
      Tok t;
      switch (ch) {
        case '~': t = Tok::Tilde; break;
        case '0': t = Tok::Zero; break;
        case '.': t = Tok::Dot; break;
        case '|': t = Tok::Bar; break;
        case '+': t = Tok::Plus; break;
        case '\\': t = Tok::Backslash; break;
        case '!': t = Tok::Bang; break;
        case '(': t = Tok::LParen; break;
        case ')': t = Tok::RParen; break;
        default:
          throw ParseError(line, c0, {"name", "'~'", "'0'", "'('", "'!'"}, std::string("'") + ch + "'");
      }
      push(t, std::string(1, ch), line, c0);
      ++i;
      ++col;
    }
    push(Tok::End, "", line, col);
  }

  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok t) const { return peek().tok == t; }
  Token take() { return toks_[pos_++]; }
  void expect(Tok t) {
    if (!at(t)) fail_at(peek(), {tok_text(t)});
    ++pos_;
  }

  Process choice() {
    Process p = par();
    while (at(Tok::Or) || at(Tok::And)) {
      bool nd = take().tok == Tok::Or;
      Process q = par();
      p = nd ? Process::ndchoice(p, q) : Process::intchoice(p, q);
    }
    return p;
  }

  Process par() {
    Process p = sum();
    while (at(Tok::Bar)) {
      take();
      p = Process::par(p, sum());
    }
    return p;
  }

  Process sum() {
    const Token first = peek();
    Process p = res();
    while (at(Tok::Plus)) {
      take();
      if (!is_guarded(p)) throw ParseError(first.line, first.col, {"prefixed term before '+'"}, "unguarded operand");
      const Token rhs = peek();
      Process q = res();
      if (!is_guarded(q)) throw ParseError(rhs.line, rhs.col, {"prefixed term after '+'"}, "unguarded operand");
      p = Process::sum(p, q);
    }
    return p;
  }

  Process res() {
    Process p = prefixed();
    while (at(Tok::Backslash)) {
      take();
      if (!at(Tok::Name)) fail_at(peek(), {"name"});
      Token n = take();
      if (!valid_name(n.text)) fail_at(n, {"name"});
      p = Process::restrict(p, n.text);
    }
    return p;
  }

  std::vector<std::string> start_set() const { return {"name", "'~'", "'0'", "'('", "'!'"}; }

  Process prefixed() {
    if (at(Tok::Bang)) {
      take();
      return Process::bang(prefixed());
    }
    if (at(Tok::Name) || at(Tok::Tilde)) {
      bool co = false;
      if (at(Tok::Tilde)) {
        take();
        co = true;
        if (!at(Tok::Name)) fail_at(peek(), {"name"});
      }
      Token n = take();
      if (!valid_name(n.text)) fail_at(n, {"name"});
      Label l = co ? Label::out(n.text) : Label::in(n.text);
      if (at(Tok::Dot)) {
        take();
        return Process::prefix(l, prefixed());
      }
      return Process::prefix(l, Process::nil());
    }
    if (at(Tok::Zero)) {
      take();
      return Process::nil();
    }
    if (at(Tok::LParen)) {
      take();
      Process p = choice();
      expect(Tok::RParen);
      return p;
    }
    fail_at(peek(), start_set());
  }
};

// precedence levels, loosest first
enum Level { LChoice = 0, LPar = 1, LSum = 2, LRes = 3, LPre = 4 };

Level level_of(const Process& p) {
  switch (p.kind()) {
    case Kind::NdChoice:
    case Kind::IntChoice: return LChoice;
    case Kind::Par: return LPar;
    case Kind::Sum: return LSum;
    case Kind::Restrict: return LRes;
    default: return LPre;
  }
}

void print(const Process& p, std::string& out);

void print_at(const Process& p, Level min, std::string& out) {
  if (level_of(p) < min) {
    out += '(';
    print(p, out);
    out += ')';
  } else {
    print(p, out);
  }
}

void print(const Process& p, std::string& out) {
  switch (p.kind()) {
    case Kind::Nil: out += '0'; return;
    case Kind::Prefix:
      out += to_string(p.label());
      if (!p.body().is_nil()) {
        out += '.';
        print_at(p.body(), LPre, out);
      }
      return;
    case Kind::Bang:
      out += '!';
      print_at(p.body(), LPre, out);
      return;
    case Kind::Restrict:
      print_at(p.body(), LRes, out);
      out += " \\ ";
      out += p.name();
      return;
    case Kind::Sum:
      // left-assoc chains are rejected by the parser, so nested sums get parens
      print_at(p.left(), LRes, out);
      out += " + ";
      print_at(p.right(), LRes, out);
      return;
    case Kind::Par:
      print_at(p.left(), LPar, out);
      out += " | ";
      print_at(p.right(), LSum, out);
      return;
    case Kind::NdChoice:
    case Kind::IntChoice:
      print_at(p.left(), LChoice, out);
      out += p.kind() == Kind::NdChoice ? " \\/ " : " /\\ ";
      print_at(p.right(), LPar, out);
      return;
  }
}

void fn_rec(const Process& p, std::multiset<Name>& bound, std::set<Name>& out) {
  switch (p.kind()) {
    case Kind::Nil: return;
    case Kind::Prefix:
      if (!bound.count(p.label().name)) out.insert(p.label().name);
      fn_rec(p.body(), bound, out);
      return;
    case Kind::Restrict: {
      auto it = bound.insert(p.name());
      fn_rec(p.body(), bound, out);
      bound.erase(it);
      return;
    }
    case Kind::Bang: fn_rec(p.body(), bound, out); return;
    default:
      fn_rec(p.left(), bound, out);
      fn_rec(p.right(), bound, out);
  }
}

}  // namespace

Process parse_process(const std::string& text) { return Parser(text).run(); }

std::string print_process(const Process& p) {
  std::string out;
  print(p, out);
  return out;
}

std::set<Name> free_names(const Process& p) {
  std::set<Name> out;
  std::multiset<Name> bound;
  fn_rec(p, bound, out);
  return out;
}

Shape Shape::node(Shape a, Shape b) {
  Shape s;
  s.leaf = false;
  s.l = std::make_shared<const Shape>(std::move(a));
  s.r = std::make_shared<const Shape>(std::move(b));
  return s;
}

bool Shape::operator==(const Shape& o) const {
  if (leaf != o.leaf) return false;
  if (leaf) return true;
  return *l == *o.l && *r == *o.r;
}

std::size_t Shape::leaves() const { return leaf ? 1 : l->leaves() + r->leaves(); }

Process strip_restrictions(const Process& p, std::vector<Name>* names) {
  const Process* q = &p;
  while (q->kind() == Kind::Restrict) {
    if (names) names->push_back(q->name());
    q = &q->body();
  }
  return *q;
}

Shape thread_shape(const Process& p) {
  Process q = strip_restrictions(p);
  if (q.kind() == Kind::Par) return Shape::node(thread_shape(q.left()), thread_shape(q.right()));
  return Shape::make_leaf();
}

std::string to_string(const Shape& s) {
  if (s.leaf) return "Leaf";
  return "Node(" + to_string(*s.l) + ", " + to_string(*s.r) + ")";
}

}  // namespace irccs
