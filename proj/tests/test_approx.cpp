#include <doctest.h>

#include <set>

#include "genlab/approx.hpp"

using namespace genlab;

namespace {

std::vector<Element> interval(std::int64_t lo, std::int64_t hi) {
  std::vector<Element> out;
  for (auto v = lo; v <= hi; ++v) out.push_back(Element{v});
  return out;
}

std::vector<Element> symmetric(const GroupOracle& g) {
  std::vector<Element> out;
  for (const auto& s : g.generators()) {
    out.push_back(s);
    out.push_back(g.inv(s));
  }
  return out;
}

LabeledGraph cycle(std::size_t n) {
  LabeledGraph g(n, 1);
  for (std::size_t i = 0; i < n; ++i) g.add_edge(i, 1, (i + 1) % n);
  return g;
}

}  // namespace

TEST_CASE("rationals") {
  CHECK(parse_rational("1/10") == Rational(1, 10));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("2") == Rational(2, 1));
  CHECK(Rational(2, 4).render() == "1/2");
  CHECK_THROWS(parse_rational("-1/2"));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("folner_check examples") {
  const auto z = builtin("Z");
  const FolnerReport r = folner_check(*z, {Element{1}, Element{-1}}, interval(0, 20), Rational(1, 10));
  CHECK(r.pass);
  CHECK(r.sizes == std::vector<std::size_t>{2, 2});

  const auto f2 = builtin("F2");
  std::vector<Element> k;
  ball(default_marking(f2), 2, &k);
  REQUIRE(k.size() == 17);
  const FolnerReport bad = folner_check(*f2, symmetric(*f2), k, Rational(1, 2));
  CHECK_FALSE(bad.pass);
  CHECK(bad.sizes.front() == 18);

  CHECK(folner_check(*z, {}, interval(0, 3), Rational(1, 10)).pass);
}

TEST_CASE("oracle: symmetric differences match brute-force set arithmetic") {
  const auto f2 = builtin("F2");
  std::vector<Element> k;
  ball(default_marking(f2), 3, &k);
  const auto f = symmetric(*f2);
  const FolnerReport r = folner_check(*f2, f, k, Rational(1, 2));
  const std::set<Element> ks(k.begin(), k.end());
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::set<Element> gk;
    for (const auto& x : k) gk.insert(f2->mul(f[i], x));
    std::size_t diff = 0;
    for (const auto& x : gk) diff += !ks.count(x);
    for (const auto& x : ks) diff += !gk.count(x);
    CHECK(r.sizes[i] == diff);
  }
}

TEST_CASE("folner_search examples") {
  const auto z = builtin("Z");
  const auto found = folner_search(*z, {Element{1}, Element{-1}}, Rational(1, 10), BallsStrategy{25});
  REQUIRE(found.found);
  CHECK(found.radius == 10u);
  CHECK(found.found->k.size() == 21);

  // Word balls of the lamplighter keep |gK - K| / |K| above 1/2, so none passes.
  const auto ll = builtin("lamplighter");
  const auto balls = folner_search(*ll, ll->generators(), Rational(1, 2), BallsStrategy{6});
  CHECK_FALSE(balls.found);
  CHECK(balls.candidates_tried == 6);

  const auto f2 = builtin("F2");
  CHECK_FALSE(folner_search(*f2, symmetric(*f2), Rational(1, 2), BallsStrategy{6}).found);

  const auto sub = folner_search(*z, {Element{1}}, Rational(1, 2), SubsetsStrategy{3, 5});
  REQUIRE(sub.found);
  CHECK(sub.found->k.size() == 5);
}

TEST_CASE("lamplighter boxes are Folner sets") {
  // Lamps supported on [0, n) with the lamplighter in [0, n); inverted because
  // translates act on the left.
  const auto ll = builtin("lamplighter");
  const auto g = ll->generators();
  const Element a = g[0], t = g[1];
  const std::size_t n = 5;
  std::vector<Element> k;
  for (std::size_t mask = 0; mask < (1u << n); ++mask)
    for (std::size_t p = 0; p < n; ++p) {
      Element x = ll->identity();
      for (std::size_t i = 0; i < n; ++i) {
        if (mask >> i & 1) x = ll->mul(x, a);
        x = ll->mul(x, t);
      }
      x = ll->mul(x, power(*ll, t, -static_cast<long long>(n - p)));
      k.push_back(ll->inv(x));
    }
  REQUIRE(std::set<Element>(k.begin(), k.end()).size() == n << n);
  const FolnerReport r = folner_check(*ll, g, k, Rational(1, 2));
  CHECK(r.pass);
  CHECK(r.sizes == std::vector<std::size_t>{0, 2u << n});
}

TEST_CASE("sofic examples") {
  const auto z = default_marking(builtin("Z"));
  const SoficReport c8 = sofic_check(cycle(8), z, 2);
  CHECK(c8.pass);
  CHECK(c8.good.size() == 8);
  const SoficReport c4 = sofic_check(cycle(4), z, 2);
  CHECK_FALSE(c4.pass);
  CHECK(c4.good.empty());

  const MarkedGroup trivial{builtin("trivial"), {}};
  CHECK(sofic_check(LabeledGraph(1, 0), trivial, 2).pass);
}

TEST_CASE("sofic_check agrees with the cycle length threshold") {
  const auto z = default_marking(builtin("Z"));
  for (std::size_t n = 2; n <= 4; ++n)
    for (std::size_t len = 4; len <= 14; ++len) {
      CAPTURE(n);
      CAPTURE(len);
      CHECK(sofic_check(cycle(len), z, n).pass == (len >= 2 * n + 2));
    }
}

TEST_CASE("sofic_from_quotient") {
  const LabeledGraph c8 = sofic_from_quotient(1, {8});
  CHECK(c8.edges() == cycle(8).edges());
  const LabeledGraph torus = sofic_from_quotient(2, {3, 3});
  CHECK(torus.vertices() == 9);
  CHECK(torus.edges().size() == 18);
  CHECK(torus.out(0, 1) == 1u);
  CHECK(torus.out(0, 2) == 3u);
  const auto z2 = default_marking(builtin("Z^2"));
  CHECK(sofic_check(sofic_from_quotient(2, {6, 6}), z2, 2).pass);
  CHECK_FALSE(sofic_check(torus, z2, 2).pass);
}

TEST_CASE("labelled graphs keep determinism and round trip") {
  LabeledGraph g(3, 2);
  g.add_edge(0, 1, 1);
  CHECK_THROWS(g.add_edge(0, 1, 2));
  CHECK_THROWS(g.add_edge(2, 1, 1));
  g.add_edge(1, 2, 2);
  const LabeledGraph back = labeled_graph_from_json(to_json(g));
  CHECK(back.edges() == g.edges());
  g.remove_edge(0, 1);
  CHECK_FALSE(g.out(0, 1));
  CHECK_THROWS_AS(labeled_graph_from_json(nlohmann::json::parse(R"({"vertices": 2})")), ParseError);
}
