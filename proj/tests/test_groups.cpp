#include <doctest.h>

#include <random>

#include "genlab/group.hpp"
#include "genlab/presentation.hpp"

using namespace genlab;

namespace {

Element random_word_element(const GroupOracle& g, std::mt19937& rng, std::size_t len) {
  const auto gens = g.generators();
  Element x = g.identity();
  for (std::size_t i = 0; i < len; ++i) {
    const Element& s = gens[rng() % gens.size()];
    x = g.mul(x, rng() % 2 ? s : g.inv(s));
  }
  return x;
}

}  // namespace

TEST_CASE("evaluate examples") {
  const auto z2 = make_integer_lattice(2);
  const Env env{{Symbol::var(1), Element{3, -1}}, {Symbol::var(2), Element{2, 5}}};
  CHECK(evaluate(*z2, parse_word("x1*x2*x1^-1*x2^-1"), env) == z2->identity());
  CHECK(evaluate(*z2, Word{}, env) == z2->identity());
  const auto z = builtin("Z");
  CHECK(evaluate(*z, parse_word("x1^3"), variables_env({Element{5}})) == Element{15});
}

TEST_CASE("satisfies examples") {
  const auto z = builtin("Z");
  const System s({Equation::eq(parse_word("x1"))});
  CHECK(satisfies(*z, s, variables_env({Element{0}})).is_yes());
  const Verdict v = satisfies(*z, s, variables_env({Element{2}}));
  CHECK(v.is_no());
  CHECK(v.certificate.dump().find("x1") != std::string::npos);

  const auto free = fp_oracle(Presentation(2, {}), FpConfig{1, 2, 10});
  const System hard({Equation::eq(parse_word("x1*x2*x1^-1*x2^-1"))});
  const Verdict u = satisfies(*free, hard, variables_env(free->generators()));
  CHECK_FALSE(u.is_yes());
}

TEST_CASE("BS(1,-1) conjugation inverts a") {
  const auto bs = builtin("BS(1,-1)");
  const auto gens = bs->generators();
  const Element a = gens[0], b = gens[1];
  CHECK(bs->mul(bs->mul(b, a), bs->inv(b)) == bs->inv(a));
  CHECK(bs->mul(bs->mul(bs->inv(b), a), b) == bs->inv(a));
}

TEST_CASE("finite tables") {
  const auto z4 = make_cyclic(4);
  CHECK(z4->inv(Element{3}) == Element{1});
  CHECK(z4->order() == 4u);
  CHECK_THROWS_AS(make_finite_table({{0, 1}, {1, 1}}), InvalidGroupTable);
  CHECK_THROWS_AS(make_finite_table({{0, 1, 2}, {1, 2, 0}, {2, 1, 0}}), InvalidGroupTable);
  CHECK_THROWS_AS(finite_table_from_json(nlohmann::json::parse(R"({"table": [[0, -1]]})")), ParseError);
}

TEST_CASE("property: group axioms of the built-in oracles") {
  std::vector<OraclePtr> groups{builtin("trivial"), builtin("Z"), builtin("Z^2"), builtin("F2"),
                                builtin("BS(1,2)"), builtin("BS(1,-1)"), builtin("lamplighter")};
  for (auto& [name, g] : small_finite_groups()) groups.push_back(g);
  std::mt19937 rng(21);
  for (const auto& g : groups) {
    CAPTURE(g->name());
    if (g->generators().empty()) continue;
    for (int trial = 0; trial < 60; ++trial) {
      const Element a = random_word_element(*g, rng, rng() % 6);
      const Element b = random_word_element(*g, rng, rng() % 6);
      const Element c = random_word_element(*g, rng, rng() % 6);
      CHECK(g->mul(g->mul(a, b), c) == g->mul(a, g->mul(b, c)));
      CHECK(g->mul(a, g->identity()) == a);
      CHECK(g->mul(g->identity(), a) == a);
      CHECK(g->is_identity(g->mul(a, g->inv(a))));
      CHECK(g->inv(g->inv(a)) == a);
    }
  }
}

TEST_CASE("small finite groups have the advertised orders and are pairwise distinct") {
  const std::map<std::string, std::size_t> orders{{"S3", 6}, {"D4", 8}, {"Q8", 8}, {"K4", 4}, {"Z2^3", 8},
                                                  {"Z4xZ2", 8}};
  for (const auto& [name, g] : small_finite_groups()) {
    CAPTURE(name);
    REQUIRE(g->order());
    CHECK(g->elements().size() == *g->order());
    if (orders.count(name)) CHECK(*g->order() == orders.at(name));
  }
}

TEST_CASE("direct sums") {
  const auto s = direct_sum({builtin("Z"), make_cyclic(2)});
  const Element a = direct_sum_element({Element{3}, Element{1}});
  const Element b = direct_sum_element({Element{4}, Element{1}});
  CHECK(s->mul(a, b) == direct_sum_element({Element{7}, Element{0}}));

  const auto t = direct_sum({make_cyclic(5), make_trivial()});
  const auto five = make_cyclic(5);
  for (std::int64_t i = 0; i < 5; ++i)
    for (std::int64_t j = 0; j < 5; ++j)
      CHECK(t->mul(direct_sum_element({Element{i}, Element{}}), direct_sum_element({Element{j}, Element{}})) ==
            direct_sum_element({five->mul(Element{i}, Element{j}), Element{}}));

  // An fp factor whose word problem is out of reach at bound 1 makes eq Unknown.
  const auto fp = fp_oracle(Presentation(2, {parse_word("x1*x2*x1^-1*x2^-1")}), FpConfig{1, 2, 10});
  const auto mixed = direct_sum({builtin("Z"), fp});
  CHECK(fp->eq(FpGroup::element_of(parse_word("x1^2*x2")), FpGroup::element_of(parse_word("x2*x1^2"))).is_unknown());
  const Element u2 = direct_sum_element({Element{1}, FpGroup::element_of(parse_word("x1^2*x2"))});
  const Element v2 = direct_sum_element({Element{1}, FpGroup::element_of(parse_word("x2*x1^2"))});
  CHECK(mixed->eq(u2, v2).is_unknown());
  const Element w2 = direct_sum_element({Element{2}, FpGroup::element_of(parse_word("x2*x1^2"))});
  CHECK(mixed->eq(u2, w2).is_no());
}

TEST_CASE("embeds_via_systems examples") {
  const Verdict yes = embeds_via_systems(*make_cyclic(2), *make_cyclic(4), 2, 4);
  CHECK(yes.is_yes());
  CHECK(yes.certificate["tuple"] == nlohmann::json::array({"0", "2"}));
  CHECK(embeds_via_systems(*make_cyclic(3), *make_cyclic(4), 3, 4).is_no());
  CHECK(embeds_via_systems(*builtin("Z"), *make_cyclic(4), 9, 4).is_no());
  CHECK(embeds_via_systems(*builtin("Z/3"), *builtin("S3"), 3, 6).is_yes());
}

TEST_CASE("property: multiplication table systems hold at the identity embedding") {
  for (const auto& [name, g] : small_finite_groups()) {
    CAPTURE(name);
    const auto elems = g->elements();
    const System s = multiplication_table_system(*g, elems);
    CHECK(satisfies(*g, s, variables_env(elems)).is_yes());
  }
}

TEST_CASE("builtin rejects unknown names") {
  CHECK_THROWS_AS(builtin("Z/x"), std::invalid_argument);
  CHECK_THROWS_AS(builtin("SL(2,Z)"), std::invalid_argument);
}
