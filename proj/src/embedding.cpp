#include <algorithm>
#include <unordered_set>

#include "genlab/group.hpp"

namespace genlab {

namespace {

std::optional<std::size_t> index_of(const GroupOracle& g, const std::vector<Element>& elems, const Element& x) {
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (g.exact()) {
      if (elems[i] == x) return i;
      continue;
    }
    const Verdict v = g.eq(elems[i], x);
    if (v.is_unknown()) throw UndecidedError("cannot compare " + g.render(x) + " with " + g.render(elems[i]), v.bound);
    if (v.is_yes()) return i;
  }
  return std::nullopt;
}

// Elements reachable from the identity by words of length <= radius.
std::vector<Element> exact_ball(const GroupOracle& h, std::size_t radius) {
  std::vector<Element> out{h.identity()};
  std::unordered_set<Element, ElementHash> seen{h.identity()};
  std::vector<Element> steps;
  for (const auto& g : h.generators()) {
    steps.push_back(g);
    steps.push_back(h.inv(g));
  }
  std::size_t layer_start = 0;
  for (std::size_t r = 0; r < radius; ++r) {
    const std::size_t layer_end = out.size();
    for (std::size_t i = layer_start; i < layer_end; ++i)
      for (const auto& s : steps) {
        Element e = h.mul(out[i], s);
        if (seen.insert(e).second) out.push_back(std::move(e));
      }
    if (out.size() == layer_end) break;
    layer_start = layer_end;
  }
  return out;
}

}  // namespace

System multiplication_table_system(const GroupOracle& g, const std::vector<Element>& elems) {
  System s;
  const auto n = static_cast<std::uint32_t>(elems.size());
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      if (auto k = index_of(g, elems, g.mul(elems[i], elems[j])))
        s.add(Equation::eq(Word{Letter::x(i + 1), Letter::x(j + 1), Letter::x(static_cast<std::uint32_t>(*k) + 1, true)}));
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j)
      s.add(Equation::ne(Word{Letter::x(i + 1), Letter::x(j + 1, true)}));
  s.declare_arity(n);
  return s;
}

Verdict embeds_via_systems(const GroupOracle& g, const GroupOracle& h, std::size_t size, std::size_t bound) {
  if (!g.exact()) throw std::invalid_argument("the enumerated group needs an exact oracle");
  const std::vector<Element> elems = g.enumerate(size);
  const System sys = multiplication_table_system(g, elems);
  const bool finite = h.order().has_value();
  const std::vector<Element> pool = finite ? h.elements() : exact_ball(h, bound);
  const std::size_t n = elems.size();

  // Clauses are checked as soon as their largest variable is assigned.
  std::vector<std::vector<const Equation*>> checks(n + 1);
  for (const auto& c : sys.clauses()) checks[c.word.arity()].push_back(&c);

  std::vector<std::size_t> choice(n, 0);
  std::vector<std::size_t> next(n, 0);
  Env env;
  bool undecided = false;
  std::size_t level = 0;
  if (n == 0) return Verdict::yes({{"tuple", nlohmann::json::array()}}, bound);
  while (true) {
    if (next[level] == pool.size()) {
      next[level] = 0;
      if (level == 0) break;
      --level;
      continue;
    }
    choice[level] = next[level]++;
    env[Symbol::var(static_cast<std::uint32_t>(level + 1))] = pool[choice[level]];
    bool ok = true;
    for (const Equation* c : checks[level + 1]) {
      const Verdict v = h.eq(evaluate(h, c->word, env), h.identity());
      if (v.is_unknown()) undecided = true;
      if (v.is_unknown() || v.is_yes() != c->equal) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    if (level + 1 == n) {
      nlohmann::json tuple = nlohmann::json::array();
      for (std::size_t i = 0; i < n; ++i) tuple.push_back(h.render(pool[choice[i]]));
      return Verdict::yes({{"tuple", tuple}, {"system", to_json(sys)}}, bound);
    }
    ++level;
  }
  if (finite && !undecided) return Verdict::no({{"searched", pool.size()}, {"system", to_json(sys)}}, bound);
  return Verdict::unknown(bound, {{"searched", pool.size()}});
}

}  // namespace genlab
