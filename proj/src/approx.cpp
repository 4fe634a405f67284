#include <algorithm>
#include <deque>
#include <cctype>
#include <numeric>

#include "genlab/approx.hpp"

#include "element_set.hpp"

namespace genlab {

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::invalid_argument("zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  if (n <= 0) throw std::invalid_argument("epsilon must be positive");
  const std::int64_t g = std::gcd(n, d);
  num = n / g;
  den = d / g;
}

std::string Rational::render() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

Rational parse_rational(const std::string& text) {
  auto parse_int = [&](const std::string& s) -> std::int64_t {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw ParseError("malformed rational \"" + text + "\"");
    if (s.size() > 15) throw ParseError("rational component too large in \"" + text + "\"");
    return std::stoll(s);
  };
  try {
    if (auto slash = text.find('/'); slash != std::string::npos)
      return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
    if (auto dot = text.find('.'); dot != std::string::npos) {
      const std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
      std::int64_t den = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
      return Rational((whole.empty() ? 0 : parse_int(whole)) * den + parse_int(frac), den);
    }
    return Rational(parse_int(text), 1);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string(e.what()) + " in \"" + text + "\"");
  }
}

FolnerReport folner_check(const GroupOracle& g, const std::vector<Element>& f, const std::vector<Element>& k,
                          Rational eps) {
  if (k.empty()) throw std::invalid_argument("the candidate set K must be nonempty");
  detail::ElementSet set(g);
  FolnerReport r;
  r.eps = eps;
  for (const auto& x : k)
    if (set.insert(x)) r.k.push_back(x);
  for (const auto& s : f) {
    std::size_t inside = 0;
    for (const auto& x : r.k)
      if (set.find(g.mul(s, x))) ++inside;
    const std::size_t size = 2 * (r.k.size() - inside);
    r.sizes.push_back(size);
    const auto lhs = static_cast<__int128>(size) * eps.den;
    const auto rhs = static_cast<__int128>(eps.num) * static_cast<__int128>(r.k.size());
    if (!(lhs < rhs)) r.pass = false;
  }
  return r;
}

FolnerSearchResult folner_search(const GroupOracle& g, const std::vector<Element>& f, Rational eps,
                                 BallsStrategy strategy) {
  FolnerSearchResult out;
  const MarkedGroup m{std::shared_ptr<const GroupOracle>(&g, [](const GroupOracle*) {}), g.generators()};
  for (std::size_t r = 1; r <= strategy.max_radius; ++r) {
    std::vector<Element> elems;
    ball(m, r, &elems);
    ++out.candidates_tried;
    auto report = folner_check(g, f, elems, eps);
    if (report.pass) {
      out.found = std::move(report);
      out.radius = r;
      return out;
    }
  }
  return out;
}

FolnerSearchResult folner_search(const GroupOracle& g, const std::vector<Element>& f, Rational eps,
                                 SubsetsStrategy strategy) {
  FolnerSearchResult out;
  const MarkedGroup m{std::shared_ptr<const GroupOracle>(&g, [](const GroupOracle*) {}), g.generators()};
  std::vector<Element> pool;
  ball(m, strategy.radius, &pool);
  const std::size_t n = pool.size();
  for (std::size_t size = 1; size <= std::min(strategy.max_size, n); ++size) {
    std::vector<std::size_t> idx(size);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      std::vector<Element> k;
      for (auto i : idx) k.push_back(pool[i]);
      ++out.candidates_tried;
      auto report = folner_check(g, f, k, eps);
      if (report.pass) {
        out.found = std::move(report);
        return out;
      }
      std::size_t pos = size;
      while (pos > 0 && idx[pos - 1] == n - size + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t j = pos; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

LabeledGraph::LabeledGraph(std::size_t vertices, std::size_t labels)
    : labels_(labels),
      out_(vertices, std::vector<std::optional<std::size_t>>(labels)),
      in_(vertices, std::vector<std::optional<std::size_t>>(labels)) {}

void LabeledGraph::add_edge(std::size_t u, std::size_t label, std::size_t v) {
  if (label == 0 || label > labels_) throw std::invalid_argument("edge label " + std::to_string(label) + " out of range");
  if (u >= vertices() || v >= vertices()) throw std::invalid_argument("edge endpoint out of range");
  auto& o = out_[u][label - 1];
  auto& i = in_[v][label - 1];
  if ((o && *o != v) || (i && *i != u))
    throw std::invalid_argument("edge (" + std::to_string(u) + ", " + std::to_string(label) + ", " +
                                std::to_string(v) + ") breaks determinism");
  o = v;
  i = u;
}

void LabeledGraph::remove_edge(std::size_t u, std::size_t label) {
  auto& o = out_.at(u).at(label - 1);
  if (!o) return;
  in_[*o][label - 1].reset();
  o.reset();
}

std::vector<std::array<std::size_t, 3>> LabeledGraph::edges() const {
  std::vector<std::array<std::size_t, 3>> out;
  for (std::size_t u = 0; u < vertices(); ++u)
    for (std::size_t l = 0; l < labels_; ++l)
      if (out_[u][l]) out.push_back({u, l + 1, *out_[u][l]});
  return out;
}

Ball LabeledGraph::neighborhood(std::size_t root, std::size_t radius) const {
  std::vector<std::optional<std::size_t>> local(vertices());
  std::vector<std::size_t> order{root};
  Ball b(radius, labels_);
  local[root] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const std::size_t u = order[head];
    const std::size_t d = b.depth(*local[u]);
    if (d == radius) continue;
    for (std::size_t l = 0; l < labels_; ++l)
      for (auto next : {out_[u][l], in_[u][l]})
        if (next && !local[*next]) {
          local[*next] = b.add_vertex(d + 1);
          order.push_back(*next);
        }
  }
  for (auto u : order)
    for (std::size_t l = 0; l < labels_; ++l)
      if (auto v = out_[u][l]; v && local[*v]) b.add_edge(*local[u], l, *local[*v]);
  return b;
}

nlohmann::json to_json(const LabeledGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges()) edges.push_back({e[0], e[1], e[2]});
  return {{"vertices", g.vertices()}, {"labels", g.labels()}, {"edges", edges}};
}

LabeledGraph labeled_graph_from_json(const nlohmann::json& j) {
  try {
    LabeledGraph g(j.at("vertices").get<std::size_t>(), j.at("labels").get<std::size_t>());
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) throw ParseError("edges must be [u, label, v] triples");
      g.add_edge(e[0].get<std::size_t>(), e[1].get<std::size_t>(), e[2].get<std::size_t>());
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed graph: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("malformed graph: ") + e.what());
  }
}

SoficReport sofic_check(const LabeledGraph& g, const MarkedGroup& m, std::size_t n) {
  if (n < 2) throw std::invalid_argument("sofic approximations need n >= 2");
  if (g.labels() != m.marking.size())
    throw std::invalid_argument("graph has " + std::to_string(g.labels()) + " labels but the marking has " +
                                std::to_string(m.marking.size()) + " generators");
  const Ball reference = ball(m, n);
  SoficReport r;
  r.vertices = g.vertices();
  for (std::size_t v = 0; v < g.vertices(); ++v)
    if (ball_isomorphic(reference, g.neighborhood(v, n))) r.good.push_back(v);
  r.pass = r.good.size() * n > (n - 1) * r.vertices;
  return r;
}

LabeledGraph sofic_from_quotient(std::size_t d, const std::vector<std::size_t>& moduli) {
  if (moduli.size() != d) throw std::invalid_argument("need one modulus per coordinate");
  std::size_t total = 1;
  for (auto m : moduli) {
    if (m == 0) throw std::invalid_argument("moduli must be positive");
    total *= m;
  }
  LabeledGraph g(total, d);
  for (std::size_t v = 0; v < total; ++v) {
    std::size_t stride = 1;
    for (std::size_t i = 0; i < d; ++i) {
      const std::size_t coord = (v / stride) % moduli[i];
      const std::size_t next = v - coord * stride + ((coord + 1) % moduli[i]) * stride;
      g.add_edge(v, i + 1, next);
      stride *= moduli[i];
    }
  }
  return g;
}

}  // namespace genlab
