#include <algorithm>
#include <cstdlib>
#include <set>

#include "genlab/presentation.hpp"

namespace genlab {

Presentation::Presentation(std::size_t generators, std::vector<Word> relators) : generators_(generators) {
  if (generators == 0) throw std::invalid_argument("a presentation needs at least one generator");
  std::set<Word> seen;
  for (auto& r : relators) {
    if (r.has_constants()) throw std::invalid_argument("relators may not contain constants");
    if (r.arity() > generators)
      throw std::invalid_argument("relator " + render(r) + " uses more than " + std::to_string(generators) +
                                  " generators");
    Word c = r.cyclically_reduced();
    if (c.empty() || !seen.insert(c).second) continue;
    relators_.push_back(std::move(c));
  }
}

nlohmann::json to_json(const Presentation& p) {
  nlohmann::json rels = nlohmann::json::array();
  for (const auto& r : p.relators()) rels.push_back(render(r));
  return {{"generators", p.generators()}, {"relators", rels}};
}

Presentation presentation_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("generators") || !j["generators"].is_number_unsigned())
    throw ParseError("presentation needs a non-negative integer \"generators\"");
  std::vector<Word> rels;
  if (j.contains("relators")) {
    if (!j["relators"].is_array()) throw ParseError("\"relators\" must be an array of words");
    for (const auto& r : j["relators"]) {
      if (!r.is_string()) throw ParseError("relators must be strings");
      rels.push_back(parse_word(r.get<std::string>()));
    }
  }
  try {
    return Presentation(j["generators"].get<std::size_t>(), std::move(rels));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

Word shift_variables(const Word& w, std::uint32_t offset) {
  std::vector<Letter> out;
  for (const Letter& l : w) {
    Letter m = l;
    if (m.symbol.sort == Sort::Variable) m.symbol.index += offset;
    out.push_back(m);
  }
  return Word(std::move(out));
}

Presentation free_product(const Presentation& a, const Presentation& b) {
  std::vector<Word> rels = a.relators();
  const auto offset = static_cast<std::uint32_t>(a.generators());
  for (const auto& r : b.relators()) rels.push_back(shift_variables(r, offset));
  return Presentation(a.generators() + b.generators(), std::move(rels));
}

Presentation hnn_extension(const Presentation& p, const Word& g, const Word& h) {
  const std::size_t k = p.generators();
  for (const Word* w : {&g, &h}) {
    if (w->has_constants()) throw std::invalid_argument("HNN words may not contain constants");
    if (w->arity() > k) throw std::invalid_argument("HNN word " + render(*w) + " exceeds the generator count");
  }
  const Word t{Letter::x(static_cast<std::uint32_t>(k + 1))};
  std::vector<Word> rels = p.relators();
  rels.push_back(t.inverse() * g * t * h.inverse());
  return Presentation(k + 1, std::move(rels));
}

Presentation amalgam(const Presentation& a, const Word& wa, const Presentation& b, const Word& wb) {
  if (wa.has_constants() || wb.has_constants())
    throw std::invalid_argument("amalgamated words may not contain constants");
  if (wa.arity() > a.generators() || wb.arity() > b.generators())
    throw std::invalid_argument("amalgamated word exceeds its factor's generators");
  Presentation fp = free_product(a, b);
  std::vector<Word> rels = fp.relators();
  rels.push_back(wa * shift_variables(wb, static_cast<std::uint32_t>(a.generators())).inverse());
  return Presentation(fp.generators(), std::move(rels));
}

Presentation kill_generator(const Presentation& p, std::uint32_t index) {
  if (index == 0 || index > p.generators()) throw std::invalid_argument("no such generator");
  if (p.generators() == 1) throw std::invalid_argument("cannot kill the only generator");
  std::vector<Word> rels;
  for (const auto& r : p.relators()) {
    std::vector<Letter> out;
    for (const Letter& l : r) {
      if (l.symbol.index == index) continue;
      Letter m = l;
      if (m.symbol.index > index) --m.symbol.index;
      out.push_back(m);
    }
    rels.emplace_back(std::move(out));
  }
  return Presentation(p.generators() - 1, std::move(rels));
}

GenWord to_gen_word(const Word& w) {
  GenWord out;
  out.reserve(w.size());
  for (const Letter& l : w) {
    if (l.symbol.sort != Sort::Variable) throw std::invalid_argument("generator words may not contain constants");
    const int i = static_cast<int>(l.symbol.index);
    out.push_back(l.inverse ? -i : i);
  }
  return out;
}

Word from_gen_word(const GenWord& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (int v : w) out.push_back(Letter::x(static_cast<std::uint32_t>(std::abs(v)), v < 0));
  return Word(std::move(out));
}

nlohmann::json to_json(const Derivation& d) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : d.steps)
    steps.push_back({{"conjugator", render(s.conjugator)}, {"relator", s.relator}, {"exponent", s.exponent}});
  return {{"steps", steps}};
}

Derivation derivation_from_json(const nlohmann::json& j) {
  Derivation d;
  for (const auto& s : j.at("steps"))
    d.steps.push_back({parse_word(s.at("conjugator").get<std::string>()), s.at("relator").get<std::size_t>(),
                       s.at("exponent").get<int>()});
  return d;
}

nlohmann::json to_json(const PermutationQuotient& q) { return {{"degree", q.degree}, {"images", q.images}}; }

PermutationQuotient quotient_from_json(const nlohmann::json& j) {
  return {j.at("degree").get<std::size_t>(), j.at("images").get<std::vector<std::vector<int>>>()};
}

bool verify_derivation(const Presentation& p, const Word& w, const Derivation& d) {
  Word acc = w;
  for (const auto& s : d.steps) {
    if (s.relator >= p.relators().size() || (s.exponent != 1 && s.exponent != -1)) return false;
    if (s.conjugator.has_constants() || s.conjugator.arity() > p.generators()) return false;
    const Word& r = p.relators()[s.relator];
    acc = s.conjugator * (s.exponent == 1 ? r : r.inverse()) * s.conjugator.inverse() * acc;
  }
  return acc.empty();
}

namespace {

std::vector<int> apply_word(const PermutationQuotient& q, const Word& w) {
  std::vector<int> acc(q.degree);
  for (std::size_t i = 0; i < q.degree; ++i) acc[i] = static_cast<int>(i);
  for (const Letter& l : w) {
    const auto& img = q.images.at(l.symbol.index - 1);
    std::vector<int> step(q.degree);
    if (l.inverse) {
      for (std::size_t i = 0; i < q.degree; ++i) step[static_cast<std::size_t>(img[i])] = static_cast<int>(i);
    } else {
      step = img;
    }
    for (auto& v : acc) v = step[static_cast<std::size_t>(v)];
  }
  return acc;
}

bool is_permutation(const std::vector<int>& p, std::size_t degree) {
  if (p.size() != degree) return false;
  std::vector<bool> hit(degree, false);
  for (int v : p) {
    if (v < 0 || static_cast<std::size_t>(v) >= degree || hit[static_cast<std::size_t>(v)]) return false;
    hit[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

bool is_identity_perm(const std::vector<int>& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i)) return false;
  return true;
}

}  // namespace

bool verify_separation(const Presentation& p, const Word& w, const PermutationQuotient& q) {
  if (q.degree == 0 || q.images.size() != p.generators()) return false;
  for (const auto& img : q.images)
    if (!is_permutation(img, q.degree)) return false;
  if (w.has_constants() || w.arity() > p.generators()) return false;
  for (const auto& r : p.relators())
    if (!is_identity_perm(apply_word(q, r))) return false;
  return !is_identity_perm(apply_word(q, w));
}

bool verify_eq_verdict(const Presentation& p, const Word& u, const Word& v, const Verdict& verdict) {
  const Word w = u * v.inverse();
  try {
    if (verdict.is_yes()) return verify_derivation(p, w, derivation_from_json(verdict.certificate.at("derivation")));
    if (verdict.is_no()) return verify_separation(p, w, quotient_from_json(verdict.certificate.at("quotient")));
  } catch (const std::exception&) {
    return false;
  }
  return false;
}

}  // namespace genlab
