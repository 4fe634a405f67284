#include "genlab/group.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_set>

namespace genlab {

Verdict GroupOracle::eq(const Element& a, const Element& b) const {
  nlohmann::json cert{{"method", "canonical-form"}};
  return a == b ? Verdict::yes(cert) : Verdict::no(cert);
}

std::vector<Element> GroupOracle::elements() const {
  const auto n = order();
  if (!n) throw std::invalid_argument(name() + " is infinite; cannot list its elements");
  return enumerate(*n);
}

std::vector<Element> GroupOracle::enumerate(std::size_t count) const {
  if (!exact()) throw std::invalid_argument("enumeration requires an exact oracle");
  std::vector<Element> out;
  std::unordered_set<Element, ElementHash> seen;
  std::deque<Element> frontier;
  auto visit = [&](Element e) {
    if (out.size() >= count) return;
    if (seen.insert(e).second) {
      out.push_back(e);
      frontier.push_back(std::move(e));
    }
  };
  visit(identity());
  std::vector<Element> steps;
  for (const auto& g : generators()) {
    steps.push_back(g);
    steps.push_back(inv(g));
  }
  while (!frontier.empty() && out.size() < count) {
    Element cur = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& s : steps) visit(mul(cur, s));
  }
  return out;
}

std::string GroupOracle::render(const Element& a) const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < a.data.size(); ++i) os << (i ? "," : "") << a.data[i];
  os << ')';
  return os.str();
}

Element power(const GroupOracle& g, const Element& a, long long n) {
  Element base = n < 0 ? g.inv(a) : a;
  unsigned long long k = n < 0 ? static_cast<unsigned long long>(-n) : static_cast<unsigned long long>(n);
  Element acc = g.identity();
  while (k) {
    if (k & 1) acc = g.mul(acc, base);
    k >>= 1;
    if (k) base = g.mul(base, base);
  }
  return acc;
}

Env variables_env(const std::vector<Element>& tuple) {
  Env env;
  for (std::size_t i = 0; i < tuple.size(); ++i)
    env.emplace(Symbol::var(static_cast<std::uint32_t>(i + 1)), tuple[i]);
  return env;
}

Element evaluate(const GroupOracle& g, const Word& w, const Env& env) {
  Element acc = g.identity();
  for (const Letter& l : w) {
    auto it = env.find(l.symbol);
    if (it == env.end()) {
      throw std::invalid_argument(std::string("no value for letter ") +
                                  (l.symbol.sort == Sort::Variable ? "x" : "c") +
                                  std::to_string(l.symbol.index));
    }
    acc = g.mul(acc, l.inverse ? g.inv(it->second) : it->second);
  }
  return acc;
}

Element evaluate_generators(const GroupOracle& g, const Word& w) {
  if (w.has_constants()) throw std::invalid_argument("word over generators may not contain constants");
  const auto gens = g.generators();
  if (w.arity() > gens.size())
    throw std::invalid_argument("word uses x" + std::to_string(w.arity()) + " but " + g.name() +
                                " has " + std::to_string(gens.size()) + " generators");
  return evaluate(g, w, variables_env(gens));
}

Verdict satisfies(const GroupOracle& g, const System& s, const Env& env) {
  const Element e = g.identity();
  std::optional<Verdict> pending;
  std::size_t index = 0;
  for (const auto& clause : s.clauses()) {
    const Verdict v = g.eq(evaluate(g, clause.word, env), e);
    if (v.is_unknown()) {
      if (!pending) pending = Verdict::unknown(v.bound, {{"clause", to_json(clause)}, {"index", index}});
    } else if (v.is_yes() != clause.equal) {
      return Verdict::no({{"violated", to_json(clause)}, {"index", index}}, v.bound);
    }
    ++index;
  }
  if (pending) return *pending;
  return Verdict::yes({{"clauses", s.size()}});
}

namespace {

class DirectSum final : public GroupOracle {
 public:
  explicit DirectSum(std::vector<OraclePtr> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw std::invalid_argument("direct sum needs at least one factor");
  }

  std::string name() const override {
    std::string n;
    for (std::size_t i = 0; i < factors_.size(); ++i) n += (i ? " + " : "") + factors_[i]->name();
    return n;
  }

  Element identity() const override {
    std::vector<Element> parts;
    for (const auto& f : factors_) parts.push_back(f->identity());
    return pack(parts);
  }

  Element mul(const Element& a, const Element& b) const override {
    const auto pa = unpack(a);
    const auto pb = unpack(b);
    std::vector<Element> parts;
    for (std::size_t i = 0; i < factors_.size(); ++i) parts.push_back(factors_[i]->mul(pa[i], pb[i]));
    return pack(parts);
  }

  Element inv(const Element& a) const override {
    const auto pa = unpack(a);
    std::vector<Element> parts;
    for (std::size_t i = 0; i < factors_.size(); ++i) parts.push_back(factors_[i]->inv(pa[i]));
    return pack(parts);
  }

  Verdict eq(const Element& a, const Element& b) const override {
    const auto pa = unpack(a);
    const auto pb = unpack(b);
    nlohmann::json parts = nlohmann::json::array();
    std::optional<Verdict> unknown;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      Verdict v = factors_[i]->eq(pa[i], pb[i]);
      if (v.is_no()) return Verdict::no({{"factor", i}, {"certificate", v.certificate}}, v.bound);
      if (v.is_unknown() && !unknown) unknown = Verdict::unknown(v.bound, {{"factor", i}});
      parts.push_back(v.certificate);
    }
    if (unknown) return *unknown;
    return Verdict::yes({{"factors", parts}});
  }

  bool exact() const override {
    return std::all_of(factors_.begin(), factors_.end(), [](const OraclePtr& f) { return f->exact(); });
  }

  std::vector<Element> generators() const override {
    std::vector<Element> out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      for (const auto& g : factors_[i]->generators()) {
        std::vector<Element> parts;
        for (std::size_t j = 0; j < factors_.size(); ++j)
          parts.push_back(j == i ? g : factors_[j]->identity());
        out.push_back(pack(parts));
      }
    }
    return out;
  }

  std::optional<std::size_t> order() const override {
    std::size_t n = 1;
    for (const auto& f : factors_) {
      auto o = f->order();
      if (!o) return std::nullopt;
      n *= *o;
    }
    return n;
  }

  std::string render(const Element& a) const override {
    const auto pa = unpack(a);
    std::string s = "(";
    for (std::size_t i = 0; i < factors_.size(); ++i) s += (i ? ", " : "") + factors_[i]->render(pa[i]);
    return s + ")";
  }

 private:
  // Layout: [len_0, data_0..., len_1, data_1..., ...]
  static Element pack(const std::vector<Element>& parts) { return direct_sum_element(parts); }

  std::vector<Element> unpack(const Element& e) const {
    std::vector<Element> parts;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (pos >= e.data.size()) throw std::invalid_argument("malformed direct-sum element");
      const auto len = static_cast<std::size_t>(e.data[pos++]);
      if (pos + len > e.data.size()) throw std::invalid_argument("malformed direct-sum element");
      parts.emplace_back(std::vector<std::int64_t>(e.data.begin() + static_cast<std::ptrdiff_t>(pos),
                                                   e.data.begin() + static_cast<std::ptrdiff_t>(pos + len)));
      pos += len;
    }
    return parts;
  }

  std::vector<OraclePtr> factors_;
};

}  // namespace

Element direct_sum_element(const std::vector<Element>& parts) {
  Element out;
  for (const auto& p : parts) {
    out.data.push_back(static_cast<std::int64_t>(p.data.size()));
    out.data.insert(out.data.end(), p.data.begin(), p.data.end());
  }
  return out;
}

OraclePtr direct_sum(std::vector<OraclePtr> factors) {
  return std::make_shared<DirectSum>(std::move(factors));
}

}  // namespace genlab
