#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

#include "genlab/marked.hpp"

namespace genlab {

MarkedGroup default_marking(OraclePtr oracle) {
  auto gens = oracle->generators();
  return {std::move(oracle), std::move(gens)};
}

Ball::Ball(std::size_t radius, std::size_t labels) : radius_(radius), labels_(labels) { add_vertex(0); }

std::size_t Ball::add_vertex(std::size_t depth) {
  depth_.push_back(depth);
  out_.emplace_back(labels_);
  in_.emplace_back(labels_);
  return out_.size() - 1;
}

void Ball::add_edge(std::size_t u, std::size_t label, std::size_t v) {
  auto& o = out_.at(u).at(label);
  auto& i = in_.at(v).at(label);
  if ((o && *o != v) || (i && *i != u))
    throw std::invalid_argument("edge (" + std::to_string(u) + ", " + std::to_string(label + 1) + ", " +
                                std::to_string(v) + ") breaks determinism");
  o = v;
  i = u;
}

std::vector<std::array<std::size_t, 3>> Ball::edges() const {
  std::vector<std::array<std::size_t, 3>> out;
  for (std::size_t u = 0; u < size(); ++u)
    for (std::size_t l = 0; l < labels_; ++l)
      if (out_[u][l]) out.push_back({u, l + 1, *out_[u][l]});
  return out;
}

Ball Ball::restrict(std::size_t r) const {
  Ball b(std::min(r, radius_), labels_);
  std::vector<std::optional<std::size_t>> map(size());
  map[0] = 0;
  for (std::size_t v = 1; v < size(); ++v)
    if (depth_[v] <= r) map[v] = b.add_vertex(depth_[v]);
  for (const auto& [u, l, v] : edges())
    if (map[u] && map[v]) b.add_edge(*map[u], l - 1, *map[v]);
  return b;
}

std::vector<Word> Ball::geodesics() const {
  std::vector<std::optional<Word>> geo(size());
  geo[0] = Word{};
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t l = 0; l < labels_; ++l) {
      const auto label = static_cast<std::uint32_t>(l + 1);
      if (auto v = out_[u][l]; v && !geo[*v]) {
        geo[*v] = *geo[u] * Word{Letter::x(label)};
        queue.push_back(*v);
      }
      if (auto v = in_[u][l]; v && !geo[*v]) {
        geo[*v] = *geo[u] * Word{Letter::x(label, true)};
        queue.push_back(*v);
      }
    }
  }
  std::vector<Word> out;
  for (auto& g : geo) {
    if (!g) throw std::invalid_argument("ball is not connected");
    out.push_back(std::move(*g));
  }
  return out;
}

nlohmann::json to_json(const Ball& b) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : b.edges()) edges.push_back({e[0], e[1], e[2]});
  return {{"radius", b.radius()}, {"labels", b.labels()}, {"root", 0}, {"vertices", b.size()}, {"edges", edges}};
}

Ball ball_from_json(const nlohmann::json& j) {
  try {
    const auto radius = j.at("radius").get<std::size_t>();
    const auto labels = j.at("labels").get<std::size_t>();
    if (j.contains("root") && j["root"].get<std::size_t>() != 0) throw ParseError("ball root must be vertex 0");
    std::size_t n = j.value("vertices", std::size_t{1});
    std::vector<std::array<std::size_t, 3>> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) throw ParseError("edges must be [u, label, v] triples");
      edges.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>(), e[2].get<std::size_t>()});
      if (edges.back()[1] == 0 || edges.back()[1] > labels) throw ParseError("edge label out of range");
      n = std::max({n, edges.back()[0] + 1, edges.back()[2] + 1});
    }
    // Depths by undirected breadth-first search from the root.
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& e : edges) {
      adj[e[0]].push_back(e[2]);
      adj[e[2]].push_back(e[0]);
    }
    std::vector<std::size_t> depth(n, SIZE_MAX);
    depth[0] = 0;
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      for (auto v : adj[u])
        if (depth[v] == SIZE_MAX) {
          depth[v] = depth[u] + 1;
          queue.push_back(v);
        }
    }
    Ball b(radius, labels);
    for (std::size_t v = 1; v < n; ++v) {
      if (depth[v] == SIZE_MAX || depth[v] > radius)
        throw ParseError("vertex " + std::to_string(v) + " is not within the radius of the root");
      b.add_vertex(depth[v]);
    }
    for (const auto& e : edges) b.add_edge(e[0], e[1] - 1, e[2]);
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed ball: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("malformed ball: ") + e.what());
  }
}

namespace {

class VertexIndex {
 public:
  explicit VertexIndex(const GroupOracle& g) : g_(g) {}

  std::optional<std::size_t> find(const Element& e) const {
    if (g_.exact()) {
      auto it = map_.find(e);
      if (it == map_.end()) return std::nullopt;
      return it->second;
    }
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      const Verdict v = g_.eq(elems_[i], e);
      if (v.is_unknown())
        throw UndecidedError("cannot decide whether " + g_.render(e) + " equals " + g_.render(elems_[i]), v.bound);
      if (v.is_yes()) return i;
    }
    return std::nullopt;
  }

  std::size_t insert(Element e) {
    map_.emplace(e, elems_.size());
    elems_.push_back(std::move(e));
    return elems_.size() - 1;
  }

  const std::vector<Element>& elements() const { return elems_; }

 private:
  const GroupOracle& g_;
  std::unordered_map<Element, std::size_t, ElementHash> map_;
  std::vector<Element> elems_;
};

}  // namespace

Ball ball(const MarkedGroup& m, std::size_t radius) { return ball(m, radius, nullptr); }

Ball ball(const MarkedGroup& m, std::size_t radius, std::vector<Element>* elements) {
  const GroupOracle& g = *m.oracle;
  const std::size_t k = m.marking.size();
  std::vector<Element> inverses;
  for (const auto& s : m.marking) inverses.push_back(g.inv(s));

  Ball b(radius, k);
  VertexIndex index(g);
  index.insert(g.identity());
  for (std::size_t u = 0; u < b.size(); ++u) {
    const bool interior = b.depth(u) < radius;
    for (std::size_t l = 0; l < k; ++l) {
      for (int dir = 0; dir < 2; ++dir) {
        if (dir == 0 ? b.out(u, l).has_value() : b.in(u, l).has_value()) continue;
        const Element next = g.mul(index.elements()[u], dir == 0 ? m.marking[l] : inverses[l]);
        std::optional<std::size_t> v = index.find(next);
        if (!v) {
          if (!interior) continue;
          v = b.add_vertex(b.depth(u) + 1);
          index.insert(next);
        }
        if (dir == 0)
          b.add_edge(u, l, *v);
        else
          b.add_edge(*v, l, u);
      }
    }
  }
  if (elements) *elements = index.elements();
  return b;
}

bool ball_isomorphic(const Ball& a, const Ball& b) {
  if (a.labels() != b.labels()) throw std::invalid_argument("balls have different label alphabets");
  if (a.radius() != b.radius()) throw std::invalid_argument("balls have different radii");
  if (a.size() != b.size()) return false;
  std::vector<std::optional<std::size_t>> fwd(a.size()), back(b.size());
  fwd[0] = 0;
  back[0] = 0;
  std::deque<std::size_t> queue{0};
  auto pair = [&](std::optional<std::size_t> x, std::optional<std::size_t> y) {
    if (x.has_value() != y.has_value()) return false;
    if (!x) return true;
    if (fwd[*x] || back[*y]) return fwd[*x] == y && back[*y] == x;
    fwd[*x] = y;
    back[*y] = x;
    queue.push_back(*x);
    return true;
  };
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    const std::size_t v = *fwd[u];
    for (std::size_t l = 0; l < a.labels(); ++l)
      if (!pair(a.out(u, l), b.out(v, l)) || !pair(a.in(u, l), b.in(v, l))) return false;
  }
  return std::all_of(fwd.begin(), fwd.end(), [](const auto& x) { return x.has_value(); });
}

std::string MarkedDistance::render() const {
  const std::string value = n == 0 ? "1" : "e^-" + std::to_string(n);
  return exact ? value : "<= " + value;
}

MarkedDistance marked_distance(const MarkedGroup& a, const MarkedGroup& b, std::size_t max_radius) {
  if (a.marking.size() != b.marking.size())
    throw std::invalid_argument("markings have different lengths (" + std::to_string(a.marking.size()) + " and " +
                                std::to_string(b.marking.size()) + ")");
  for (std::size_t r = 1; r <= max_radius; ++r)
    if (!ball_isomorphic(ball(a, r), ball(b, r))) return {true, r - 1};
  return {false, max_radius};
}

System ball_to_system(const Ball& b) {
  const auto geo = b.geodesics();
  System s;
  for (const auto& [u, l, v] : b.edges()) {
    Word w = geo[u] * Word{Letter::x(static_cast<std::uint32_t>(l))} * geo[v].inverse();
    if (!w.empty()) s.add(Equation::eq(orientation_canonical(w)));
  }
  for (std::size_t u = 0; u < b.size(); ++u)
    for (std::size_t v = u + 1; v < b.size(); ++v) s.add(Equation::ne(orientation_canonical(geo[u].inverse() * geo[v])));
  s.declare_arity(static_cast<std::uint32_t>(b.labels()));
  return s;
}

TauStage tau_stage(const PartialEnumeratedGroup& t, std::uint32_t n, std::size_t length_bound) {
  TauStage out;
  if (!t.identity) {
    out.missing.push_back({0, 0});
    return out;
  }
  const std::uint32_t id = *t.identity;
  std::set<std::pair<std::uint32_t, std::uint32_t>> missing;
  struct Prefix {
    Word word;
    std::uint32_t value;
  };
  std::vector<Prefix> layer{{Word{}, id}};
  for (std::size_t len = 1; len <= length_bound && !layer.empty(); ++len) {
    std::vector<Prefix> next;
    for (const auto& p : layer) {
      for (std::uint32_t i = 1; i <= n; ++i) {
        for (bool inverse : {false, true}) {
          const Letter l = Letter::x(i, inverse);
          if (!p.word.empty() && p.word.letters().back().cancels(l)) continue;
          std::uint32_t letter_value = i;
          if (inverse) {
            auto iv = t.inverse(i);
            if (!iv) {
              missing.insert({i, 0});
              continue;
            }
            letter_value = *iv;
          }
          auto value = t.product(p.value, letter_value);
          if (!value) {
            missing.insert({p.value, letter_value});
            continue;
          }
          Word w = p.word * Word{l};
          if (*value == id && orientation_canonical(w) == w) out.relators.push_back(w);
          next.push_back({std::move(w), *value});
        }
      }
    }
    layer = std::move(next);
  }
  out.missing.assign(missing.begin(), missing.end());
  return out;
}

}  // namespace genlab
