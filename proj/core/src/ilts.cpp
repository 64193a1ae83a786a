#include "irccs/ilts.hpp"

#include <functional>

namespace irccs {

std::string to_string(const IdentifiedProcess& ip) { return to_string(ip.seed) + " o " + print_process(ip.proc); }

std::string to_string(const FwdTransition& t) {
  return to_string(t.source) + " --[" + to_string(t.id) + " : " + to_string(t.label) + "]--> " + to_string(t.target);
}

namespace {

// a replication whose first step would happen as the choice is made
bool replicates_first(const Process& p) {
  switch (p.kind()) {
    case Kind::Bang: return true;
    case Kind::Restrict: return replicates_first(p.body());
    case Kind::NdChoice: return replicates_first(p.left()) || replicates_first(p.right());
    default: return false;
  }
}

}  // namespace

std::optional<std::string> check_well_formed(const Process& p) {
  switch (p.kind()) {
    case Kind::Nil: return std::nullopt;
    case Kind::Prefix:
      if (!p.label().is_action()) return "only names and co-names may prefix a term";
      return check_well_formed(p.body());
    case Kind::Restrict:
    case Kind::Bang: return check_well_formed(p.body());
    case Kind::Par:
    case Kind::IntChoice:
      if (auto e = check_well_formed(p.left())) return e;
      return check_well_formed(p.right());
    case Kind::NdChoice:
      for (const Process* q : {&p.left(), &p.right()}) {
        if (!thread_shape(*q).leaf) return "operand of \\/ has parallel threads: " + print_process(*q);
        if (replicates_first(*q)) return "operand of \\/ starts with a replication: " + print_process(*q);
        if (auto e = check_well_formed(*q)) return e;
      }
      return std::nullopt;
    case Kind::Sum:
      for (const Process* q : {&p.left(), &p.right()}) {
        if (q->kind() != Kind::Prefix && q->kind() != Kind::Sum)
          return "summand must be a prefix or a sum: " + print_process(*q);
        if (auto e = check_well_formed(*q)) return e;
      }
      return std::nullopt;
  }
  return std::nullopt;
}

bool well_identified(const Seed& s, const Process& p) {
  return s.shape() == thread_shape(p) && seed_valid(s) && !check_well_formed(p);
}

IdentifiedProcess identify(const Process& p) { return {splitter_helper({0, 1}, p), p}; }

std::vector<SumChoice> sum_choices(const Process& p) {
  if (p.kind() == Kind::Prefix) return {{p.label(), p.body(), {}}};
  std::vector<SumChoice> out;
  if (p.kind() != Kind::Sum) return out;
  for (auto c : sum_choices(p.left())) {
    c.discarded.emplace_back(p.right(), true);
    out.push_back(std::move(c));
  }
  for (auto c : sum_choices(p.right())) {
    c.discarded.emplace_back(p.left(), false);
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

struct Step {
  Identifier id;
  Label label;
  Seed seed;
  Process proc;
};

std::vector<Step> steps(const Seed& s, const Process& p);

Seed after_act(const IdPattern& ip, const Process& cont) { return splitter_helper({ip.c + ip.s, ip.s}, cont); }

void sync(const std::vector<Step>& ls, const std::vector<Step>& rs, std::vector<Step>& out,
          const std::function<Step(const Step&, const Step&)>& make) {
  for (const auto& a : ls) {
    if (!a.label.is_action()) continue;
    for (const auto& b : rs)
      if (b.label == a.label.complement()) out.push_back(make(a, b));
  }
}

std::vector<Step> steps(const Seed& s, const Process& p) {
  std::vector<Step> out;
  switch (p.kind()) {
    case Kind::Nil: break;
    case Kind::Prefix: {
      const auto& ip = s.pattern();
      out.push_back({gamma(ip.c), p.label(), after_act(ip, p.body()), p.body()});
      break;
    }
    case Kind::Restrict:
      for (auto& t : steps(s, p.body())) {
        if (t.label.is_action() && t.label.name == p.name()) continue;
        out.push_back({t.id, t.label, t.seed, Process::restrict(t.proc, p.name())});
      }
      break;
    case Kind::Par: {
      const Seed &s1 = s.left(), &s2 = s.right();
      auto ls = steps(s1, p.left());
      auto rs = steps(s2, p.right());
      for (auto& t : ls) out.push_back({t.id, t.label, Seed::node(t.seed, s2), Process::par(t.proc, p.right())});
      for (auto& t : rs) out.push_back({t.id, t.label, Seed::node(s1, t.seed), Process::par(p.left(), t.proc)});
      sync(ls, rs, out, [](const Step& a, const Step& b) {
        return Step{pair(a.id, b.id), Label::tau(), Seed::node(a.seed, b.seed), Process::par(a.proc, b.proc)};
      });
      break;
    }
    case Kind::NdChoice:
      for (auto& t : steps(s, p.left())) out.push_back(t);
      for (auto& t : steps(s, p.right())) out.push_back(t);
      break;
    case Kind::Sum: {
      const auto& ip = s.pattern();
      for (auto& c : sum_choices(p)) out.push_back({gamma(ip.c), c.label, after_act(ip, c.cont), c.cont});
      break;
    }
    case Kind::IntChoice: {
      const auto& ip = s.pattern();
      out.push_back({gamma(ip.c), Label::upsilon(), after_act(ip, p.left()), p.left()});
      out.push_back({gamma(ip.c), Label::upsilon(), after_act(ip, p.right()), p.right()});
      break;
    }
    case Kind::Bang: {
      const Process& body = p.body();
      auto [l, r] = split(s.pattern());
      Seed keep = Seed::leaf(l);
      for (auto& t : steps(splitter_helper(r, body), body))
        out.push_back({t.id, t.label, Seed::node(keep, t.seed), Process::par(p, t.proc)});
      auto [ra, rb] = split(r);
      auto as = steps(splitter_helper(ra, body), body);
      auto bs = steps(splitter_helper(rb, body), body);
      sync(as, bs, out, [&](const Step& a, const Step& b) {
        return Step{pair(a.id, b.id), Label::tau(), Seed::node(keep, Seed::node(a.seed, b.seed)),
                    Process::par(p, Process::par(a.proc, b.proc))};
      });
      break;
    }
  }
  return out;
}

}  // namespace

std::vector<FwdTransition> enumerate_fwd(const IdentifiedProcess& ip) {
  if (!well_identified(ip)) throw NotWellIdentified("not well-identified: " + to_string(ip));
  std::vector<FwdTransition> out;
  for (auto& t : steps(ip.seed, ip.proc)) out.push_back({ip, t.id, t.label, {t.seed, t.proc}});
  return out;
}

bool concurrent_fwd(const FwdTransition& t1, const FwdTransition& t2) {
  if (!(t1.source == t2.source)) throw std::invalid_argument("transitions are not coinitial");
  return compatible_ids(t1.id, t2.id);
}

std::vector<std::pair<Label, Process>> ccs_steps(const Process& p) {
  std::vector<std::pair<Label, Process>> out;
  auto syncs = [&](const auto& ls, const auto& rs, auto&& mk) {
    for (const auto& [la, pa] : ls) {
      if (!la.is_action()) continue;
      for (const auto& [lb, pb] : rs)
        if (lb == la.complement()) out.emplace_back(Label::tau(), mk(pa, pb));
    }
  };
  switch (p.kind()) {
    case Kind::Nil: break;
    case Kind::Prefix: out.emplace_back(p.label(), p.body()); break;
    case Kind::Restrict:
      for (auto& [l, q] : ccs_steps(p.body()))
        if (!(l.is_action() && l.name == p.name())) out.emplace_back(l, Process::restrict(q, p.name()));
      break;
    case Kind::Par: {
      auto ls = ccs_steps(p.left());
      auto rs = ccs_steps(p.right());
      for (auto& [l, q] : ls) out.emplace_back(l, Process::par(q, p.right()));
      for (auto& [l, q] : rs) out.emplace_back(l, Process::par(p.left(), q));
      syncs(ls, rs, [](const Process& a, const Process& b) { return Process::par(a, b); });
      break;
    }
    case Kind::NdChoice:
      for (auto& x : ccs_steps(p.left())) out.push_back(x);
      for (auto& x : ccs_steps(p.right())) out.push_back(x);
      break;
    case Kind::Sum:
      for (auto& c : sum_choices(p)) out.emplace_back(c.label, c.cont);
      break;
    case Kind::IntChoice:
      out.emplace_back(Label::upsilon(), p.left());
      out.emplace_back(Label::upsilon(), p.right());
      break;
    case Kind::Bang: {
      const Process& body = p.body();
      auto once = ccs_steps(body);
      for (auto& [l, q] : once) out.emplace_back(l, Process::par(p, q));
      syncs(once, once, [&](const Process& a, const Process& b) { return Process::par(p, Process::par(a, b)); });
      break;
    }
  }
  return out;
}

}  // namespace irccs
