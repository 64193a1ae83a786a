#include "irccs/ident.hpp"

#include <cctype>
#include <numeric>
#include <stdexcept>

namespace irccs {

Identifier gamma(Nat n) { return Identifier::atomic(n); }

Nat gamma_inv(const Identifier& i) {
  if (i.paired) throw std::invalid_argument("gamma_inv on a paired identifier");
  return i.a;
}

Identifier pair(const Identifier& i, const Identifier& j) {
  if (i.paired || j.paired) throw std::invalid_argument("pairing is defined on atomic identifiers only");
  return Identifier::pair_of(i.a, j.a);
}

std::pair<Identifier, Identifier> unpair(const Identifier& i) {
  if (!i.paired) throw std::invalid_argument("unpair on an atomic identifier");
  return {gamma(i.a), gamma(i.b)};
}

namespace {

class IZ final : public IdStructure {
 public:
  std::pair<IdPattern, IdPattern> split(const IdPattern& ip) const override {
    return {{ip.c, 2 * ip.s}, {ip.c + ip.s, 2 * ip.s}};
  }
  std::optional<IdPattern> unsplit(const IdPattern& l, const IdPattern& r) const override {
    if (l.s != r.s || l.s % 2 != 0) return std::nullopt;
    Nat s = l.s / 2;
    if (r.c != l.c + s) return std::nullopt;
    return IdPattern{l.c, s};
  }
  std::optional<__int128> concrete(const Identifier& i) const override {
    if (!i.paired) return static_cast<__int128>(i.a);
    if (i.a > 60 || i.b > (Nat{1} << 60)) return std::nullopt;
    __int128 v = (static_cast<__int128>(1) << i.a) * (2 * static_cast<__int128>(i.b) + 1) - 1;
    return -v;
  }
};

}  // namespace

const IdStructure& iz() {
  static const IZ inst;
  return inst;
}

std::optional<__int128> concrete_value(const Identifier& i) { return iz().concrete(i); }

std::string to_string(const Identifier& i) {
  if (i.paired) return "#" + std::to_string(i.a) + "(+)#" + std::to_string(i.b);
  return "#" + std::to_string(i.a);
}

namespace {

Nat parse_nat(const std::string& s, std::size_t& pos) {
  if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
    throw std::invalid_argument("expected a number in '" + s + "'");
  Nat v = 0;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) v = v * 10 + static_cast<Nat>(s[pos++] - '0');
  return v;
}

}  // namespace

Identifier parse_identifier(const std::string& s) {
  std::size_t pos = 0;
  if (s.empty() || s[0] != '#') throw std::invalid_argument("identifier must start with '#': " + s);
  ++pos;
  Nat a = parse_nat(s, pos);
  if (pos == s.size()) return gamma(a);
  if (s.compare(pos, 4, "(+)#") != 0) throw std::invalid_argument("bad identifier: " + s);
  pos += 4;
  Nat b = parse_nat(s, pos);
  if (pos != s.size()) throw std::invalid_argument("trailing text in identifier: " + s);
  return Identifier::pair_of(a, b);
}

std::string to_string(const IdPattern& ip) {
  return "(" + std::to_string(ip.c) + "," + std::to_string(ip.s) + ")";
}

std::vector<Identifier> stream_take(const IdPattern& ip, Nat n) {
  std::vector<Identifier> out;
  out.reserve(n);
  for (Nat k = 0; k < n; ++k) out.push_back(gamma(ip.c + k * ip.s));
  return out;
}

bool stream_contains(const IdPattern& ip, const Identifier& i) {
  Nat n = gamma_inv(i);
  return n >= ip.c && (n - ip.c) % ip.s == 0;
}

bool compatible_patterns(const IdPattern& a, const IdPattern& b) {
  Nat g = std::gcd(a.s, b.s);
  Nat d = a.c > b.c ? a.c - b.c : b.c - a.c;
  return d % g != 0;
}

std::pair<IdPattern, IdPattern> split(const IdPattern& ip) { return iz().split(ip); }

Seed Seed::leaf(IdPattern ip) {
  if (ip.s == 0) throw std::invalid_argument("pattern step must be positive");
  Seed s;
  s.ip_ = ip;
  return s;
}

Seed Seed::node(Seed l, Seed r) {
  Seed s;
  s.l_ = std::make_shared<const Seed>(std::move(l));
  s.r_ = std::make_shared<const Seed>(std::move(r));
  return s;
}

std::vector<IdPattern> Seed::leaves() const {
  if (is_leaf()) return {ip_};
  auto a = l_->leaves();
  auto b = r_->leaves();
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Shape Seed::shape() const {
  if (is_leaf()) return Shape::make_leaf();
  return Shape::node(l_->shape(), r_->shape());
}

bool operator==(const Seed& a, const Seed& b) {
  if (a.is_leaf() != b.is_leaf()) return false;
  if (a.is_leaf()) return a.ip_ == b.ip_;
  return *a.l_ == *b.l_ && *a.r_ == *b.r_;
}

std::strong_ordering operator<=>(const Seed& a, const Seed& b) {
  if (a.is_leaf() != b.is_leaf()) return a.is_leaf() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.is_leaf()) return a.ip_ <=> b.ip_;
  if (auto c = *a.l_ <=> *b.l_; c != 0) return c;
  return *a.r_ <=> *b.r_;
}

std::string to_string(const Seed& s) {
  if (s.is_leaf()) return to_string(s.pattern());
  return "(" + to_string(s.left()) + "," + to_string(s.right()) + ")";
}

namespace {

struct SeedParser {
  const std::string& t;
  std::size_t pos = 0;

  void ws() {
    while (pos < t.size() && std::isspace(static_cast<unsigned char>(t[pos]))) ++pos;
  }
  void eat(char c) {
    ws();
    if (pos >= t.size() || t[pos] != c) throw std::invalid_argument(std::string("seed: expected '") + c + "' in " + t);
    ++pos;
  }
  Seed seed() {
    eat('(');
    ws();
    if (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) {
      Nat c = parse_nat(t, pos);
      eat(',');
      ws();
      Nat s = parse_nat(t, pos);
      eat(')');
      if (s == 0) throw std::invalid_argument("seed: zero step");
      return Seed::leaf({c, s});
    }
    Seed l = seed();
    eat(',');
    Seed r = seed();
    eat(')');
    return Seed::node(std::move(l), std::move(r));
  }
};

}  // namespace

Seed parse_seed(const std::string& text) {
  SeedParser p{text};
  Seed s = p.seed();
  p.ws();
  if (p.pos != text.size()) throw std::invalid_argument("trailing text after seed: " + text);
  return s;
}

bool seed_valid(const Seed& s) {
  auto ls = s.leaves();
  for (std::size_t i = 0; i < ls.size(); ++i)
    for (std::size_t j = i + 1; j < ls.size(); ++j)
      if (!compatible_patterns(ls[i], ls[j])) return false;
  return true;
}

bool seeds_compatible(const Seed& a, const Seed& b) {
  for (const auto& x : a.leaves())
    for (const auto& y : b.leaves())
      if (!compatible_patterns(x, y)) return false;
  return true;
}

std::pair<Seed, Seed> seed_split(const Seed& s) {
  if (s.is_leaf()) {
    auto [l, r] = iz().split(s.pattern());
    return {Seed::leaf(l), Seed::leaf(r)};
  }
  auto [a1, a2] = seed_split(s.left());
  auto [b1, b2] = seed_split(s.right());
  return {Seed::node(a1, b1), Seed::node(a2, b2)};
}

Seed seed_proj(const Seed& s, int j) {
  if (s.is_leaf()) {
    auto [l, r] = iz().split(s.pattern());
    return Seed::leaf(j == 1 ? l : r);
  }
  return Seed::node(seed_proj(s.left(), j), seed_proj(s.right(), j));
}

std::optional<Seed> seed_unproj1(const Seed& s) {
  if (s.is_leaf()) {
    const auto& ip = s.pattern();
    if (ip.s % 2 != 0) return std::nullopt;
    return Seed::leaf({ip.c, ip.s / 2});
  }
  auto l = seed_unproj1(s.left());
  auto r = seed_unproj1(s.right());
  if (!l || !r) return std::nullopt;
  return Seed::node(*l, *r);
}

Seed splitter_helper(const IdPattern& ip, const Process& p) {
  Process q = strip_restrictions(p);
  if (q.kind() != Kind::Par) return Seed::leaf(ip);
  auto [l, r] = iz().split(ip);
  return Seed::node(splitter_helper(l, q.left()), splitter_helper(r, q.right()));
}

IdPattern unify(const Seed& s) {
  if (s.is_leaf()) return s.pattern();
  const Seed& s1 = s.left();
  if (!s1.is_leaf()) return unify(s1);
  return iz().split(s1.pattern()).first;
}

std::optional<IdPattern> try_unsplit_for(const Process& p, const Seed& s) {
  Process q = strip_restrictions(p);
  if (q.kind() != Kind::Par) {
    if (!s.is_leaf()) return std::nullopt;
    return s.pattern();
  }
  if (s.is_leaf()) return std::nullopt;
  auto l = try_unsplit_for(q.left(), s.left());
  if (!l) return std::nullopt;
  auto r = try_unsplit_for(q.right(), s.right());
  if (!r) return std::nullopt;
  return iz().unsplit(*l, *r);
}

IdPattern unsplit_for(const Process& p, const Seed& s) {
  if (s.shape() != thread_shape(p)) throw UnsplitError("seed shape does not match the thread shape of " + print_process(p));
  auto r = try_unsplit_for(p, s);
  if (!r) throw UnsplitError("seed " + to_string(s) + " is not a canonical split");
  return *r;
}

bool compatible_ids(const Identifier& x, const Identifier& y) {
  if (!x.paired && !y.paired) return x.a != y.a;
  if (!x.paired) return x.a != y.a && x.a != y.b;
  if (!y.paired) return y.a != x.a && y.a != x.b;
  return x.a != y.a && x.a != y.b && x.b != y.a && x.b != y.b;
}

bool downstream(const Identifier& i, const IdPattern& ip) {
  if (!i.paired) return stream_contains(ip, i);
  return stream_contains(ip, gamma(i.a)) || stream_contains(ip, gamma(i.b));
}

}  // namespace irccs
