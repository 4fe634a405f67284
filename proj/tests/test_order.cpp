#include <doctest.h>

#include <random>

#include "genlab/order.hpp"

using namespace genlab;

namespace {

std::vector<Element> gens(const OraclePtr& g) { return g->generators(); }

Element random_nontrivial(const GroupOracle& g, std::mt19937& rng) {
  const auto gs = g.generators();
  while (true) {
    Element x = g.identity();
    const auto len = 1 + rng() % 4;
    for (std::size_t i = 0; i < len; ++i) {
      const Element& s = gs[rng() % gs.size()];
      x = g.mul(x, rng() % 2 ? s : g.inv(s));
    }
    if (!g.is_identity(x)) return x;
  }
}

}  // namespace

TEST_CASE("sign vectors") {
  CHECK(sign_vectors(0) == std::vector<SignVector>{{}});
  CHECK(sign_vectors(2) == std::vector<SignVector>{{-1, -1}, {-1, 1}, {1, -1}, {1, 1}});
}

TEST_CASE("left_order_test examples") {
  const auto z2 = builtin("Z/2");
  const Verdict v = left_order_test(*z2, gens(z2), 2);
  CHECK(v.is_no());
  CHECK(verify_refutation(*z2, gens(z2), 2, v.certificate));

  const auto z = builtin("Z");
  const Verdict u = left_order_test(*z, {Element{5}, Element{-3}}, 8);
  CHECK(u.is_unknown());
  CHECK(u.bound == 8);

  const auto f2 = builtin("F2");
  const Verdict w = left_order_test(*f2, gens(f2), 12);
  CHECK(w.is_unknown());
  CHECK(w.bound == 12);

  CHECK_THROWS_AS(left_order_test(*z, {Element{0}}, 3), std::invalid_argument);
}

TEST_CASE("left_order_test on Z/n refutes at m = n") {
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto g = make_cyclic(n);
    const Verdict v = left_order_test(*g, {Element{1}}, n);
    CHECK(v.is_no());
    CHECK(verify_refutation(*g, {Element{1}}, n, v.certificate));
    CHECK(left_order_test(*g, {Element{1}}, n - 1).is_unknown());
  }
}

TEST_CASE("verify_refutation rejects tampered certificates") {
  const auto z3 = make_cyclic(3);
  Verdict v = left_order_test(*z3, {Element{1}}, 3);
  REQUIRE(v.is_no());
  CHECK_FALSE(verify_refutation(*z3, {Element{1}}, 2, v.certificate));
  auto bad = v.certificate;
  bad["refutations"].erase(0);
  CHECK_FALSE(verify_refutation(*z3, {Element{1}}, 3, bad));
}

TEST_CASE("locally_indicable_test examples") {
  const auto z3 = builtin("Z/3");
  const Verdict v = locally_indicable_test(*z3, gens(z3), 2);
  CHECK(v.is_no());
  CHECK(verify_closure_refutation(*z3, gens(z3), 2, ClosureKind::LocallyIndicable, v.certificate));
  const auto bs = builtin("BS(1,-1)");
  CHECK(locally_indicable_test(*bs, gens(bs), 3).is_unknown());
  const auto z = builtin("Z");
  CHECK(locally_indicable_test(*z, gens(z), 5).is_unknown());
}

TEST_CASE("biorderable_test examples") {
  const auto bs = builtin("BS(1,-1)");
  const Verdict v = biorderable_test(*bs, gens(bs), 3);
  REQUIRE(v.is_no());
  CHECK(verify_closure_refutation(*bs, gens(bs), 3, ClosureKind::Biorderable, v.certificate));
  REQUIRE(v.certificate["refutations"].size() == 4);
  for (const auto& r : v.certificate["refutations"]) {
    const auto e = closure_expr_from_json(r["expr"]);
    CHECK(e->operations() <= 3);
    CHECK(e->rounds() <= 3);
  }
  // The same traces are not LI refutations: conjugation is not available there.
  CHECK_FALSE(verify_closure_refutation(*bs, gens(bs), 3, ClosureKind::LocallyIndicable, v.certificate));

  const auto z2 = builtin("Z^2");
  CHECK(biorderable_test(*z2, gens(z2), 4).is_unknown());

  for (const auto& [name, g] : small_finite_groups()) {
    for (const auto& x : g->elements()) {
      if (g->is_identity(x) || !g->is_identity(g->mul(x, x))) continue;
      CAPTURE(name);
      CHECK(biorderable_test(*g, {x}, 1).is_no());
      break;
    }
  }
}

TEST_CASE("property: left orderable groups are never refuted") {
  std::mt19937 rng(41);
  for (const auto& name : {"Z", "Z^2", "F2", "BS(1,-1)"}) {
    const auto g = builtin(name);
    for (int trial = 0; trial < 15; ++trial) {
      std::vector<Element> f;
      const auto n = 1 + rng() % 3;
      for (std::size_t i = 0; i < n; ++i) f.push_back(random_nontrivial(*g, rng));
      const auto m = 1 + rng() % 5;
      CAPTURE(name);
      CHECK_FALSE(left_order_test(*g, f, m).is_no());
      CHECK_FALSE(locally_indicable_test(*g, f, 2).is_no());
    }
  }
}

TEST_CASE("property: refutations survive in the LI and BO closures") {
  for (const auto& [name, g] : small_finite_groups()) {
    for (const auto& x : g->elements()) {
      if (g->is_identity(x)) continue;
      const Verdict v = left_order_test(*g, {x}, 8);
      REQUIRE(v.is_no());
      for (const auto& t : product_traces_from_json(v.certificate)) {
        CAPTURE(name);
        CHECK(replay_in_closure(*g, {x}, t, ClosureKind::LocallyIndicable));
        CHECK(replay_in_closure(*g, {x}, t, ClosureKind::Biorderable));
      }
    }
  }
}

TEST_CASE("closure expressions round trip through JSON") {
  const auto bs = builtin("BS(1,-1)");
  const Verdict v = biorderable_test(*bs, gens(bs), 3);
  REQUIRE(v.is_no());
  for (const auto& r : v.certificate["refutations"]) CHECK(to_json(*closure_expr_from_json(r["expr"])) == r["expr"]);
}

TEST_CASE("upp_test examples") {
  const auto z = builtin("Z");
  const UppResult r = upp_test(*z, {Element{0}, Element{3}}, {Element{0}, Element{5}});
  CHECK(r.holds);
  REQUIRE(r.witness);
  CHECK(r.table.size() == 4);

  const auto z2 = builtin("Z/2");
  CHECK_FALSE(upp_test(*z2, {Element{0}, Element{1}}, {Element{0}, Element{1}}).holds);

  const UppResult e = upp_test(*builtin("Q8"), {builtin("Q8")->identity()}, {builtin("Q8")->identity()});
  CHECK(e.holds);
  REQUIRE(e.witness);
  CHECK((*e.witness)[0] == builtin("Q8")->identity());
}

TEST_CASE("property: the maximum of X + Y is uniquely represented in Z") {
  std::mt19937 rng(42);
  const auto z = builtin("Z");
  for (int trial = 0; trial < 100; ++trial) {
    std::set<std::int64_t> xs, ys;
    const auto nx = 1 + rng() % 6, ny = 1 + rng() % 6;
    while (xs.size() < nx) xs.insert(static_cast<std::int64_t>(rng() % 41) - 20);
    while (ys.size() < ny) ys.insert(static_cast<std::int64_t>(rng() % 41) - 20);
    std::vector<Element> x, y;
    for (auto v : xs) x.push_back(Element{v});
    for (auto v : ys) y.push_back(Element{v});
    const UppResult r = upp_test(*z, x, y);
    CHECK(r.holds);
    REQUIRE(r.witness);
    // Independent count of factorizations of the witness.
    const std::int64_t g = (*r.witness)[0].data[0];
    int count = 0;
    for (auto a : xs)
      for (auto b : ys) count += a + b == g;
    CHECK(count == 1);
  }
}

TEST_CASE("sigma_mn_check examples") {
  const SigmaResult a = sigma_mn_check(*builtin("Z/2"), 2, 1);
  CHECK_FALSE(a.holds);
  CHECK(a.counterexample == std::vector<Element>{Element{1}});
  CHECK(sigma_mn_check(*builtin("trivial"), 3, 2).holds);
  CHECK_FALSE(sigma_mn_check(*builtin("Z/3"), 3, 1).holds);
  CHECK(sigma_mn_check(*builtin("Z/3"), 2, 1).holds);
}
