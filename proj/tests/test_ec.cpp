#include <doctest.h>

#include "genlab/forcing.hpp"

using namespace genlab;

namespace {

// Parameter environment: c_j is the j-th non-identity element of G, read in `target`.
Env parameters(const GroupOracle& g, const std::vector<Element>& images) {
  Env env;
  const auto ge = g.elements();
  for (std::size_t i = 0; i < ge.size(); ++i)
    if (auto c = ec_parameter(g, i)) env[Symbol::constant(*c)] = images[i];
  return env;
}

bool solvable(const GroupOracle& target, const System& s, Env env) {
  const auto elems = target.elements();
  const std::uint32_t k = s.arity();
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    for (std::uint32_t i = 0; i < k; ++i) env[Symbol::var(i + 1)] = elems[idx[i]];
    if (satisfies(target, s, env).is_yes()) return true;
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] + 1 == elems.size()) idx[--pos] = 0;
    if (pos == 0) return false;
    ++idx[pos - 1];
  }
}

void check_witness(const OraclePtr& g, const OraclePtr& h, const std::vector<Element>& embedding, const Verdict& v) {
  REQUIRE(v.is_no());
  const System s = system_from_json(v.certificate["system"]);
  CHECK(solvable(*h, s, parameters(*g, embedding)));
  CHECK_FALSE(solvable(*g, s, parameters(*g, g->elements())));
}

}  // namespace

TEST_CASE("Z/2 in Z/4 is not existentially closed") {
  const auto g = make_cyclic(2), h = make_cyclic(4);
  const std::vector<Element> emb{Element{0}, Element{2}};
  const Verdict v = is_ec_in(*g, *h, emb, 2, 4);
  check_witness(g, h, emb, v);
  CHECK(system_from_json(v.certificate["system"]) == System({Equation::eq(parse_word("x1^2*c1"))}));
}

TEST_CASE("Z/2 in K4 is not existentially closed") {
  const auto g = make_cyclic(2), h = builtin("K4");
  const auto he = h->elements();
  const std::vector<Element> emb{he[0], he[1]};
  const Verdict v = is_ec_in(*g, *h, emb, 2, 4);
  check_witness(g, h, emb, v);
  CHECK(system_from_json(v.certificate["system"]) ==
        System({Equation::ne(parse_word("x1")), Equation::ne(parse_word("x1*c1"))}));
}

TEST_CASE("every small group is existentially closed in itself") {
  for (const auto& [name, g] : small_finite_groups()) {
    CAPTURE(name);
    const Verdict v = is_ec_in(*g, *g, g->elements(), 2, 3);
    CHECK(v.is_yes());
    CHECK(v.certificate["bounds"]["max_vars"] == 2);
  }
}

TEST_CASE("Z/3 in S3 fails through a non-commuting element") {
  const auto g = make_cyclic(3), h = builtin("S3");
  std::vector<Element> emb;
  for (const auto& x : h->elements())
    if (emb.empty() ? h->is_identity(x) : false) emb.push_back(x);
  // Images of 0, 1, 2: an element of order 3 and its square.
  for (const auto& x : h->elements())
    if (!h->is_identity(x) && h->is_identity(power(*h, x, 3)) && emb.size() == 1) {
      emb.push_back(x);
      emb.push_back(h->mul(x, x));
    }
  REQUIRE(emb.size() == 3);
  check_witness(g, h, emb, is_ec_in(*g, *h, emb, 1, 4));
}

TEST_CASE("is_ec_in validates its embedding") {
  const auto g = make_cyclic(2), h = make_cyclic(4);
  CHECK_THROWS_AS(is_ec_in(*g, *h, {Element{0}}, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(is_ec_in(*g, *h, {Element{0}, Element{0}}, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(is_ec_in(*g, *h, {Element{0}, Element{1}}, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(is_ec_in(*builtin("Z"), *h, {}, 1, 2), std::invalid_argument);
}
