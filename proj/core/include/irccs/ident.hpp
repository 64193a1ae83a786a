// Identifier structure: generator, pairing, patterns, splitters, seeds.
#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "irccs/syntax.hpp"

namespace irccs {

using Nat = std::uint64_t;

// Atomic(n) is gamma(n); Paired(m, n) is gamma(m) (+) gamma(n).
struct Identifier {
  bool paired = false;
  Nat a = 0;
  Nat b = 0;

  static Identifier atomic(Nat n) { return {false, n, 0}; }
  static Identifier pair_of(Nat m, Nat n) { return {true, m, n}; }

  auto operator<=>(const Identifier&) const = default;
  bool operator==(const Identifier&) const = default;
};

Identifier gamma(Nat n);
Nat gamma_inv(const Identifier& i);  // throws on paired
// throws std::invalid_argument if either argument is paired
Identifier pair(const Identifier& i, const Identifier& j);
std::pair<Identifier, Identifier> unpair(const Identifier& i);
// -(2^m(2n+1)-1) for paired, n for atomic; nullopt when it does not fit
std::optional<__int128> concrete_value(const Identifier& i);

std::string to_string(const Identifier& i);
Identifier parse_identifier(const std::string& s);

struct IdPattern {
  Nat c = 0;
  Nat s = 1;
  auto operator<=>(const IdPattern&) const = default;
  bool operator==(const IdPattern&) const = default;
};

std::string to_string(const IdPattern& ip);

std::vector<Identifier> stream_take(const IdPattern& ip, Nat n);
bool stream_contains(const IdPattern& ip, const Identifier& i);
bool compatible_patterns(const IdPattern& a, const IdPattern& b);
std::pair<IdPattern, IdPattern> split(const IdPattern& ip);

// Swappable identifier structure. Only iZ is shipped.
class IdStructure {
 public:
  virtual ~IdStructure() = default;
  virtual std::pair<IdPattern, IdPattern> split(const IdPattern& ip) const = 0;
  // inverse of split on canonical pairs
  virtual std::optional<IdPattern> unsplit(const IdPattern& l, const IdPattern& r) const = 0;
  virtual std::optional<__int128> concrete(const Identifier& i) const = 0;
};

const IdStructure& iz();

class Seed {
 public:
  Seed() = default;
  static Seed leaf(IdPattern ip);
  static Seed node(Seed l, Seed r);

  bool is_leaf() const { return !l_; }
  const IdPattern& pattern() const { return ip_; }
  const Seed& left() const { return *l_; }
  const Seed& right() const { return *r_; }

  std::vector<IdPattern> leaves() const;
  Shape shape() const;

  friend bool operator==(const Seed& a, const Seed& b);
  friend std::strong_ordering operator<=>(const Seed& a, const Seed& b);

 private:
  IdPattern ip_;
  std::shared_ptr<const Seed> l_, r_;
};

std::string to_string(const Seed& s);
Seed parse_seed(const std::string& text);

// all leaves pairwise compatible
bool seed_valid(const Seed& s);
bool seeds_compatible(const Seed& a, const Seed& b);

std::pair<Seed, Seed> seed_split(const Seed& s);
Seed seed_proj(const Seed& s, int j);
// inverse of seed_proj(., 1): Leaf(c,2s) -> Leaf(c,s); nullopt on odd steps
std::optional<Seed> seed_unproj1(const Seed& s);

Seed splitter_helper(const IdPattern& ip, const Process& p);
IdPattern unify(const Seed& s);

struct UnsplitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// the unique ip with splitter_helper(ip, p) == s; throws UnsplitError
IdPattern unsplit_for(const Process& p, const Seed& s);
std::optional<IdPattern> try_unsplit_for(const Process& p, const Seed& s);

bool compatible_ids(const Identifier& a, const Identifier& b);
bool downstream(const Identifier& i, const IdPattern& ip);

}  // namespace irccs
