#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "genlab/marked.hpp"

using namespace genlab;

namespace {

MarkedGroup marked(const std::string& name) { return default_marking(builtin(name)); }

// Rooted labelled graph given by explicit out-edge maps, built without Ball.
struct Graph {
  std::vector<std::map<std::size_t, std::size_t>> out;
};

// Cayley ball of the cyclic group Z/n (n = 0 means Z) with generator 1.
Graph cyclic_ball(std::int64_t n, std::int64_t r) {
  std::vector<std::int64_t> verts;
  auto norm = [&](std::int64_t v) { return n == 0 ? v : ((v % n) + n) % n; };
  auto dist = [&](std::int64_t v) { return n == 0 ? std::abs(v) : std::min(v, n - v); };
  std::map<std::int64_t, std::size_t> index;
  for (std::int64_t v = -r; v <= r; ++v) {
    const auto k = norm(v);
    if (dist(k) <= r && !index.count(k)) {
      index[k] = verts.size();
      verts.push_back(k);
    }
  }
  Graph g;
  g.out.resize(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) {
    auto it = index.find(norm(verts[i] + 1));
    if (it != index.end()) g.out[i][1] = it->second;
  }
  // Root is the vertex for 0.
  std::swap(g.out[0], g.out[index[0]]);
  for (auto& m : g.out)
    for (auto& [l, v] : m) {
      if (v == 0) v = index[0];
      else if (v == index[0]) v = 0;
    }
  return g;
}

// Rooted isomorphism of deterministic labelled graphs in which every vertex is
// reachable from the root along edges in either direction: a candidate map is
// forced by walking, then checked to be an edge-preserving bijection.
bool rooted_isomorphic(const Graph& a, const Graph& b) {
  if (a.out.size() != b.out.size()) return false;
  const std::size_t n = a.out.size();
  auto in_edges = [](const Graph& g) {
    std::vector<std::map<std::size_t, std::size_t>> in(g.out.size());
    for (std::size_t u = 0; u < g.out.size(); ++u)
      for (auto [l, v] : g.out[u]) in[v][l] = u;
    return in;
  };
  const auto ain = in_edges(a), bin = in_edges(b);
  std::vector<std::optional<std::size_t>> f(n);
  f[0] = 0;
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const auto u = stack.back();
    stack.pop_back();
    for (int dir = 0; dir < 2; ++dir) {
      const auto& am = dir == 0 ? a.out[u] : ain[u];
      const auto& bm = dir == 0 ? b.out[*f[u]] : bin[*f[u]];
      if (am.size() != bm.size()) return false;
      for (auto [l, v] : am) {
        auto it = bm.find(l);
        if (it == bm.end()) return false;
        if (!f[v]) {
          f[v] = it->second;
          stack.push_back(v);
        } else if (*f[v] != it->second) {
          return false;
        }
      }
    }
  }
  std::vector<bool> hit(n, false);
  for (auto& x : f) {
    if (!x || hit[*x]) return false;
    hit[*x] = true;
  }
  return true;
}

Graph as_graph(const Ball& b) {
  Graph g;
  g.out.resize(b.size());
  for (const auto& [u, l, v] : b.edges()) g.out[u][l] = v;
  return g;
}

}  // namespace

TEST_CASE("ball examples") {
  const Ball z1 = ball(marked("Z"), 1);
  CHECK(z1.size() == 3);
  CHECK(z1.edges().size() == 2);
  const Ball t1 = ball(marked("Z/2"), 1);
  CHECK(t1.size() == 2);
  CHECK(t1.edges() == std::vector<std::array<std::size_t, 3>>{{0, 1, 1}, {1, 1, 0}});
  for (const auto& name : {"Z", "F2", "Q8", "lamplighter"}) {
    const Ball b0 = ball(marked(name), 0);
    CHECK(b0.size() == 1);
    CHECK(b0.edges().empty());
  }
}

TEST_CASE("ball_isomorphic examples") {
  const auto z = marked("Z");
  const auto z5 = marked("Z/5");
  CHECK(ball_isomorphic(ball(z, 1), ball(z5, 1)));
  CHECK_FALSE(ball_isomorphic(ball(z, 2), ball(z5, 2)));
  const Ball f = ball(marked("F2"), 3);
  CHECK(ball_isomorphic(f, f));
}

TEST_CASE("marked_distance examples") {
  const auto d = marked_distance(marked("Z"), marked("Z/5"), 5);
  CHECK(d.exact);
  CHECK(d.n == 1);
  CHECK(d.render() == "e^-1");
  const auto d23 = marked_distance(marked("Z/2"), marked("Z/3"), 5);
  CHECK(d23.exact);
  CHECK(d23.n == 0);
  const auto same = marked_distance(marked("Z"), marked("Z"), 8);
  CHECK_FALSE(same.exact);
  CHECK(same.n == 8);
}

TEST_CASE("oracle: cyclic balls match an arithmetic construction") {
  for (std::int64_t n : {0, 2, 3, 5, 8}) {
    const auto m = n == 0 ? marked("Z") : marked("Z/" + std::to_string(n));
    for (std::int64_t r = 0; r <= 5; ++r) {
      CAPTURE(n);
      CAPTURE(r);
      CHECK(rooted_isomorphic(as_graph(ball(m, static_cast<std::size_t>(r))), cyclic_ball(n, r)));
    }
  }
}

TEST_CASE("oracle: distance from Z to Z/N matches brute-force ball comparison") {
  for (std::int64_t n = 2; n <= 12; ++n) {
    CAPTURE(n);
    std::int64_t agree = 0;
    while (agree < 10 && rooted_isomorphic(cyclic_ball(0, agree + 1), cyclic_ball(n, agree + 1))) ++agree;
    const auto d = marked_distance(marked("Z"), marked("Z/" + std::to_string(n)), 10);
    CHECK(d.exact);
    CHECK(static_cast<std::int64_t>(d.n) == agree);
  }
}

TEST_CASE("property: restriction of a ball is the smaller ball") {
  for (const auto& name : {"Z^2", "F2", "BS(1,2)", "lamplighter", "S3", "Q8"}) {
    CAPTURE(name);
    const auto m = marked(name);
    const Ball big = ball(m, 4);
    for (std::size_t r = 0; r <= 4; ++r) CHECK(ball_isomorphic(big.restrict(r), ball(m, r)));
  }
}

TEST_CASE("ball JSON round trip and malformed input") {
  const Ball b = ball(marked("BS(1,2)"), 3);
  const Ball back = ball_from_json(to_json(b));
  CHECK(back.edges() == b.edges());
  CHECK(back.radius() == b.radius());
  CHECK_THROWS_AS(ball_from_json(nlohmann::json::parse(R"({"radius": 1})")), ParseError);
}

TEST_CASE("ball_to_system examples") {
  const System s2 = ball_to_system(ball(marked("Z/2"), 2));
  CHECK(s2.size() == 2);
  CHECK(s2.contains(Equation::eq(parse_word("x1^2"))));
  CHECK(s2.contains(Equation::ne(parse_word("x1"))));

  const System z1 = ball_to_system(ball(marked("Z"), 1));
  CHECK(z1.size() == 2);
  CHECK(z1.contains(Equation::ne(parse_word("x1"))));
  CHECK(z1.contains(Equation::ne(parse_word("x1^2"))));

  CHECK(ball_to_system(ball(marked("F2"), 0)).empty());
}

TEST_CASE("property: every built-in marked group satisfies its ball systems") {
  for (const auto& name : {"trivial", "Z", "Z^2", "F2", "BS(1,2)", "BS(1,-1)", "lamplighter", "Z/4", "S3", "D4",
                           "Q8", "K4", "Z2^3", "Z4xZ2"}) {
    const auto m = marked(name);
    for (std::size_t r = 0; r <= 3; ++r) {
      CAPTURE(name);
      CAPTURE(r);
      CHECK(satisfies(*m.oracle, ball_to_system(ball(m, r)), variables_env(m.marking)).is_yes());
    }
  }
}

TEST_CASE("tau_stage") {
  PartialEnumeratedGroup z2;
  z2.identity = 2;
  z2.products = {{{2, 2}, 2}, {{2, 1}, 1}, {{1, 2}, 1}, {{1, 1}, 2}};
  z2.inverses = {{1, 1}, {2, 2}};
  const TauStage t = tau_stage(z2, 1, 2);
  CHECK(t.complete());
  CHECK(t.relators == std::vector<Word>{parse_word("x1^2")});

  PartialEnumeratedGroup bare;
  bare.identity = 1;
  const TauStage u = tau_stage(bare, 2, 1);
  CHECK_FALSE(u.complete());

  // Z on constants: c1 = 1, c2 = 0, c3 = -1, then c_{2k} = k and c_{2k+1} = -k.
  auto code = [](std::int64_t v) -> std::uint32_t {
    if (v == 1) return 1;
    if (v == 0) return 2;
    if (v == -1) return 3;
    return static_cast<std::uint32_t>(v > 0 ? 2 * v : -2 * v + 1);
  };
  PartialEnumeratedGroup z;
  z.identity = 2;
  for (std::int64_t a = -10; a <= 10; ++a) {
    z.inverses[code(a)] = code(-a);
    for (std::int64_t b = -10; b <= 10; ++b)
      if (std::abs(a + b) <= 10) z.products[{code(a), code(b)}] = code(a + b);
  }
  CHECK(z.violations().empty());
  const TauStage zt = tau_stage(z, 1, 6);
  CHECK(zt.complete());
  CHECK(zt.relators.empty());
}
