#include <algorithm>
#include <cstdlib>

#include <mutex>

#include "relator_engine.hpp"

namespace genlab {

std::size_t default_bound() {
  if (const char* env = std::getenv("GENLAB_DEFAULT_BOUND")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 2000;
}

struct FpGroup::Caches {
  std::mutex mutex;
  detail::RelatorEngine engine;
};

FpGroup::FpGroup(Presentation p, FpConfig config)
    : p_(std::move(p)),
      config_(config),
      caches_(new Caches{{}, detail::RelatorEngine(p_.generators(), config.max_degree, config.quotient_budget)}) {
  for (const auto& r : p_.relators()) caches_->engine.add_relator(to_gen_word(r));
}

FpGroup::~FpGroup() = default;

std::string FpGroup::name() const {
  std::string s = "<" + std::to_string(p_.generators()) + " |";
  for (std::size_t i = 0; i < p_.relators().size(); ++i) s += (i ? ", " : " ") + genlab::render(p_.relators()[i]);
  return s + ">";
}

Element FpGroup::element_of(const Word& w) {
  Element e;
  for (int v : to_gen_word(w)) e.data.push_back(v);
  return e;
}

Word FpGroup::word_of(const Element& e) {
  GenWord g;
  for (auto v : e.data) g.push_back(static_cast<int>(v));
  return from_gen_word(g);
}

Element FpGroup::mul(const Element& a, const Element& b) const { return element_of(word_of(a) * word_of(b)); }

Element FpGroup::inv(const Element& a) const { return element_of(word_of(a).inverse()); }

std::vector<Element> FpGroup::generators() const {
  std::vector<Element> out;
  for (std::size_t i = 1; i <= p_.generators(); ++i) out.push_back(Element{static_cast<std::int64_t>(i)});
  return out;
}

std::string FpGroup::render(const Element& a) const { return genlab::render(word_of(a)); }

Verdict FpGroup::eq(const Element& a, const Element& b) const {
  return word_problem(word_of(a) * word_of(b).inverse());
}

Verdict FpGroup::word_problem(const Word& w) const { return word_problem(w, config_.bound); }

Verdict FpGroup::word_problem(const Word& w, std::size_t bound) const {
  if (w.has_constants() || w.arity() > p_.generators())
    throw std::invalid_argument("word " + genlab::render(w) + " is not over the presentation's generators");
  if (w.empty()) return Verdict::yes({{"method", "free-reduction"}, {"derivation", to_json(Derivation{})}}, bound);
  if (auto q = abelian_separation(w)) return Verdict::no({{"method", "abelian-quotient"}, {"quotient", to_json(*q)}}, bound);
  if (auto d = find_derivation(w, bound)) return Verdict::yes({{"method", "derivation"}, {"derivation", to_json(*d)}}, bound);
  if (auto q = permutation_separation(w))
    return Verdict::no({{"method", "permutation-quotient"}, {"quotient", to_json(*q)}}, bound);
  return Verdict::unknown(bound, {{"word", genlab::render(w)}});
}

std::optional<PermutationQuotient> FpGroup::separate(const Word& w) const {
  if (auto q = abelian_separation(w)) return q;
  return permutation_separation(w);
}

std::optional<Derivation> FpGroup::find_derivation(const Word& w, std::size_t bound) const {
  std::lock_guard lock(caches_->mutex);
  return caches_->engine.find_derivation(to_gen_word(w), bound);
}

std::optional<PermutationQuotient> FpGroup::abelian_separation(const Word& w) const {
  std::lock_guard lock(caches_->mutex);
  return caches_->engine.abelian_separation(to_gen_word(w));
}

std::optional<PermutationQuotient> FpGroup::permutation_separation(const Word& w) const {
  std::lock_guard lock(caches_->mutex);
  return caches_->engine.permutation_separation(to_gen_word(w));
}

std::shared_ptr<const FpGroup> fp_oracle(const Presentation& p, std::size_t bound) {
  FpConfig config;
  config.bound = bound;
  return std::make_shared<FpGroup>(p, config);
}

std::shared_ptr<const FpGroup> fp_oracle(const Presentation& p, FpConfig config) {
  return std::make_shared<FpGroup>(p, config);
}

}  // namespace genlab
