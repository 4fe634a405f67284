#include <algorithm>
#include <map>

#include "genlab/forcing.hpp"

#include "element_set.hpp"

namespace genlab {

std::optional<std::uint32_t> ec_parameter(const GroupOracle& g, std::size_t index) {
  const auto elems = g.elements();
  if (index >= elems.size()) throw std::out_of_range("element index out of range");
  if (g.is_identity(elems[index])) return std::nullopt;
  std::uint32_t name = 0;
  for (std::size_t i = 0; i <= index; ++i)
    if (!g.is_identity(elems[i])) ++name;
  return name;
}

namespace {

using Bits = std::vector<std::uint64_t>;

struct Table {
  std::vector<std::vector<std::size_t>> mul;
  std::vector<std::size_t> inv;
  std::size_t identity = 0;
};

// Letters are encoded as signed symbol slots: variables first, then parameters.
struct Alphabet {
  std::size_t vars = 0;
  std::size_t params = 0;
  std::size_t symbols() const { return vars + params; }
  bool is_var(std::size_t s) const { return s < vars; }
  Letter letter(std::size_t s, bool inv) const {
    return is_var(s) ? Letter::x(static_cast<std::uint32_t>(s + 1), inv)
                     : Letter::c(static_cast<std::uint32_t>(s - vars + 1), inv);
  }
};

struct Coded {
  Word word;
  std::vector<std::pair<std::size_t, bool>> letters;
};

std::vector<Coded> enumerate_words(const Alphabet& a, std::size_t max_len) {
  std::vector<Coded> out;
  std::vector<std::pair<std::size_t, bool>> cur;
  auto rec = [&](auto&& self) -> void {
    if (!cur.empty() && std::any_of(cur.begin(), cur.end(), [&](const auto& l) { return a.is_var(l.first); })) {
      std::vector<Letter> ls;
      for (auto [s, inv] : cur) ls.push_back(a.letter(s, inv));
      out.push_back({Word(ls), cur});
    }
    if (cur.size() == max_len) return;
    for (std::size_t s = 0; s < a.symbols(); ++s)
      for (bool inv : {false, true}) {
        if (!cur.empty()) {
          const auto [ps, pinv] = cur.back();
          if (ps == s && pinv != inv) continue;
          if (!a.is_var(ps) && !a.is_var(s)) continue;
        }
        cur.push_back({s, inv});
        self(self);
        cur.pop_back();
      }
  };
  rec(rec);
  std::sort(out.begin(), out.end(), [](const Coded& x, const Coded& y) { return x.word < y.word; });
  return out;
}

bool test(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1; }

}  // namespace

Verdict is_ec_in(const GroupOracle& g, const GroupOracle& h, const std::vector<Element>& embedding,
                 std::size_t max_vars, std::size_t max_len) {
  if (!g.order() || !h.order() || !g.exact() || !h.exact())
    throw std::invalid_argument("e.c. checks need finite exact groups");
  const auto ge = g.elements();
  const auto he = h.elements();
  if (embedding.size() != ge.size()) throw std::invalid_argument("the embedding must list one image per element of G");

  detail::ElementSet hs(h);
  for (const auto& x : he) hs.insert(x);
  auto h_index = [&](const Element& x) {
    auto i = hs.find(x);
    if (!i) throw std::invalid_argument("embedding image " + h.render(x) + " is not an element of H");
    return *i;
  };
  Table t;
  const std::size_t n = he.size();
  t.mul.assign(n, std::vector<std::size_t>(n));
  t.inv.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) t.mul[i][j] = h_index(h.mul(he[i], he[j]));
    t.inv[i] = h_index(h.inv(he[i]));
  }
  t.identity = h_index(h.identity());

  detail::ElementSet gs(g);
  for (const auto& x : ge) gs.insert(x);
  std::vector<std::size_t> image(ge.size());
  for (std::size_t i = 0; i < ge.size(); ++i) image[i] = h_index(embedding[i]);
  for (std::size_t i = 0; i < ge.size(); ++i)
    for (std::size_t j = i + 1; j < ge.size(); ++j)
      if (image[i] == image[j])
        throw std::invalid_argument("embedding is not injective: " + g.render(ge[i]) + " and " + g.render(ge[j]));
  for (std::size_t i = 0; i < ge.size(); ++i)
    for (std::size_t j = 0; j < ge.size(); ++j)
      if (image[*gs.find(g.mul(ge[i], ge[j]))] != t.mul[image[i]][image[j]])
        throw std::invalid_argument("embedding is not a homomorphism at (" + g.render(ge[i]) + ", " +
                                    g.render(ge[j]) + ")");

  Alphabet a;
  a.vars = max_vars;
  std::vector<std::size_t> params;
  for (std::size_t i = 0; i < ge.size(); ++i)
    if (!g.is_identity(ge[i])) params.push_back(image[i]);
  a.params = params.size();
  const auto words = enumerate_words(a, max_len);
  const std::size_t blocks = (words.size() + 63) / 64;

  auto diagram = [&](const std::vector<std::size_t>& tuple) {
    Bits b(blocks, 0);
    for (std::size_t w = 0; w < words.size(); ++w) {
      std::size_t acc = t.identity;
      for (auto [s, inv] : words[w].letters) {
        std::size_t v = a.is_var(s) ? tuple[s] : params[s - a.vars];
        acc = t.mul[acc][inv ? t.inv[v] : v];
      }
      if (acc == t.identity) b[w / 64] |= std::uint64_t{1} << (w % 64);
    }
    return b;
  };

  // Tuples in lexicographic order over the given pool.
  auto for_tuples = [&](const std::vector<std::size_t>& pool, auto&& f) {
    std::vector<std::size_t> idx(max_vars, 0), tuple(max_vars);
    while (true) {
      for (std::size_t i = 0; i < max_vars; ++i) tuple[i] = pool[idx[i]];
      if (!f(tuple)) return;
      std::size_t pos = max_vars;
      while (pos > 0 && idx[pos - 1] + 1 == pool.size()) idx[--pos] = 0;
      if (pos == 0) return;
      ++idx[pos - 1];
    }
  };

  std::vector<Bits> g_diagrams;
  std::map<Bits, std::size_t> g_seen;
  for_tuples(image, [&](const std::vector<std::size_t>& tuple) {
    Bits b = diagram(tuple);
    if (g_seen.emplace(b, g_diagrams.size()).second) g_diagrams.push_back(std::move(b));
    return true;
  });

  std::vector<std::size_t> h_pool(n);
  for (std::size_t i = 0; i < n; ++i) h_pool[i] = i;
  std::optional<std::pair<std::vector<std::size_t>, Bits>> missing;
  for_tuples(h_pool, [&](const std::vector<std::size_t>& tuple) {
    Bits b = diagram(tuple);
    if (g_seen.count(b)) return true;
    missing = {tuple, std::move(b)};
    return false;
  });

  const nlohmann::json bounds{{"max_vars", max_vars}, {"max_len", max_len}, {"systems_words", words.size()}};
  if (!missing) return Verdict::yes({{"bounds", bounds}}, max_len);

  const Bits& d = missing->second;
  // One clause of d per G diagram, separating it from d.
  std::vector<std::size_t> clause_words;
  for (const auto& gd : g_diagrams) {
    std::optional<std::size_t> pick;
    for (std::size_t w = 0; w < words.size() && !pick; ++w)
      if (test(d, w) && !test(gd, w)) pick = w;
    for (std::size_t w = 0; w < words.size() && !pick; ++w)
      if (!test(d, w) && test(gd, w)) pick = w;
    if (std::find(clause_words.begin(), clause_words.end(), *pick) == clause_words.end())
      clause_words.push_back(*pick);
  }
  auto refuted_in_g = [&](const std::vector<std::size_t>& cs) {
    for (const auto& gd : g_diagrams) {
      bool solves = true;
      for (auto w : cs) solves = solves && test(gd, w) == test(d, w);
      if (solves) return false;
    }
    return true;
  };
  for (std::size_t i = 0; i < clause_words.size();) {
    auto trial = clause_words;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    if (refuted_in_g(trial))
      clause_words = std::move(trial);
    else
      ++i;
  }
  std::sort(clause_words.begin(), clause_words.end());
  // Variables the witness actually uses, renumbered from x1.
  std::vector<std::size_t> used;
  for (auto w : clause_words)
    for (auto [s, inv] : words[w].letters)
      if (a.is_var(s) && std::find(used.begin(), used.end(), s) == used.end()) used.push_back(s);
  std::sort(used.begin(), used.end());
  System witness;
  for (auto w : clause_words) {
    std::vector<Letter> ls;
    for (auto [s, inv] : words[w].letters) {
      if (a.is_var(s)) s = static_cast<std::size_t>(std::find(used.begin(), used.end(), s) - used.begin());
      ls.push_back(a.letter(s, inv));
    }
    witness.add({Word(ls), test(d, w)});
  }

  nlohmann::json solution = nlohmann::json::array();
  for (auto s : used) solution.push_back(h.render(he[missing->first[s]]));
  nlohmann::json parameters = nlohmann::json::object();
  for (std::size_t j = 0; j < params.size(); ++j)
    parameters["c" + std::to_string(j + 1)] = h.render(he[params[j]]);
  return Verdict::no({{"system", to_json(witness)},
                      {"solution_in_h", solution},
                      {"parameters", parameters},
                      {"bounds", bounds}},
                     max_len);
}

}  // namespace genlab
