#include <doctest.h>

#include <random>

#include "genlab/presentation.hpp"

using namespace genlab;

namespace {

Word random_word(std::mt19937& rng, std::uint32_t gens, std::size_t len) {
  std::vector<Letter> ls;
  for (std::size_t i = 0; i < len; ++i) ls.push_back(Letter::x(1 + rng() % gens, rng() % 2 == 1));
  return Word(ls);
}

using Perm = std::vector<int>;

// Evaluates w with x_i acting by images[i-1], composing left to right.
Perm act(const std::vector<Perm>& images, const Word& w) {
  const std::size_t n = images.front().size();
  Perm acc(n);
  for (std::size_t i = 0; i < n; ++i) acc[i] = static_cast<int>(i);
  for (const Letter& l : w) {
    const Perm& img = images[l.symbol.index - 1];
    Perm step(n);
    if (l.inverse)
      for (std::size_t i = 0; i < n; ++i) step[static_cast<std::size_t>(img[i])] = static_cast<int>(i);
    else
      step = img;
    for (auto& v : acc) v = step[static_cast<std::size_t>(v)];
  }
  return acc;
}

bool trivial(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i)) return false;
  return true;
}

struct FaithfulCase {
  Presentation p;
  // A faithful permutation representation of the presented (finite) group.
  std::vector<Perm> images;
};

std::vector<FaithfulCase> faithful_cases() {
  return {
      {Presentation(1, {parse_word("x1^2")}), {{1, 0}}},
      {Presentation(1, {parse_word("x1^5")}), {{1, 2, 3, 4, 0}}},
      {Presentation(2, {parse_word("x1^2"), parse_word("x2^2"), parse_word("x1*x2*x1*x2*x1*x2")}),
       {{1, 0, 2}, {0, 2, 1}}},
      {Presentation(2, {parse_word("x1^2"), parse_word("x2^2"), parse_word("x1*x2*x1^-1*x2^-1")}),
       {{1, 0, 2, 3}, {0, 1, 3, 2}}},
      {Presentation(2, {parse_word("x1^4"), parse_word("x2^2"), parse_word("x2*x1*x2^-1*x1")}),
       {{1, 2, 3, 0}, {0, 3, 2, 1}}},
  };
}

}  // namespace

TEST_CASE("fp oracle examples") {
  const Presentation z2(1, {parse_word("x1^2")});
  const auto g = fp_oracle(z2, 100);
  const Verdict v = g->word_problem(parse_word("x1*x1"));
  REQUIRE(v.is_yes());
  const Derivation d = derivation_from_json(v.certificate["derivation"]);
  CHECK(d.steps.size() == 1);
  CHECK(verify_derivation(z2, parse_word("x1*x1"), d));

  const Presentation free2(2, {});
  const auto f = fp_oracle(free2, 100);
  const Verdict ne = f->eq(FpGroup::element_of(parse_word("x1")), FpGroup::element_of(parse_word("x2")));
  REQUIRE(ne.is_no());
  const PermutationQuotient q = quotient_from_json(ne.certificate["quotient"]);
  CHECK(q.degree == 2);
  CHECK(q.images == std::vector<std::vector<int>>{{1, 0}, {0, 1}});
  CHECK(verify_eq_verdict(free2, parse_word("x1"), parse_word("x2"), ne));

  const Presentation z2c(2, {parse_word("x1*x2*x1^-1*x2^-1")});
  const auto c = fp_oracle(z2c, 100);
  const Verdict comm = c->eq(FpGroup::element_of(parse_word("x1*x2")), FpGroup::element_of(parse_word("x2*x1")));
  CHECK(comm.is_yes());
  CHECK(verify_eq_verdict(z2c, parse_word("x1*x2"), parse_word("x2*x1"), comm));
}

TEST_CASE("fp oracle answers Unknown when the bound is too small") {
  const Presentation z2c(2, {parse_word("x1*x2*x1^-1*x2^-1")});
  const auto c = fp_oracle(z2c, FpConfig{1, 3, 100});
  const Verdict v = c->word_problem(parse_word("x1^3*x2^3*x1^-3*x2^-3"));
  CHECK(v.is_unknown());
  CHECK(v.bound == 1);
}

TEST_CASE("verifiers reject forged certificates") {
  const Presentation z2(1, {parse_word("x1^2")});
  CHECK_FALSE(verify_derivation(z2, parse_word("x1"), Derivation{{{Word{}, 0, 1}}}));
  CHECK_FALSE(verify_derivation(z2, parse_word("x1^2"), Derivation{{{Word{}, 1, 1}}}));
  CHECK_FALSE(verify_separation(z2, parse_word("x1^2"), PermutationQuotient{2, {{1, 0}}}));
  CHECK_FALSE(verify_separation(z2, parse_word("x1"), PermutationQuotient{3, {{1, 2, 0}}}));
  CHECK(verify_separation(z2, parse_word("x1"), PermutationQuotient{2, {{1, 0}}}));
  CHECK_FALSE(verify_eq_verdict(z2, parse_word("x1"), Word{}, Verdict::unknown(5)));
}

TEST_CASE("oracle: fp verdicts agree with faithful permutation representations") {
  std::mt19937 rng(31);
  for (const auto& fc : faithful_cases()) {
    CAPTURE(to_json(fc.p).dump());
    for (const auto& r : fc.p.relators()) REQUIRE(trivial(act(fc.images, r)));
    const auto g = fp_oracle(fc.p, 1000);
    int decided = 0;
    for (int trial = 0; trial < 60; ++trial) {
      const Word w = random_word(rng, static_cast<std::uint32_t>(fc.p.generators()), rng() % 9);
      CAPTURE(render(w));
      const Verdict v = g->word_problem(w);
      if (v.is_unknown()) continue;
      ++decided;
      CHECK(v.is_yes() == trivial(act(fc.images, w)));
      CHECK(verify_eq_verdict(fc.p, w, Word{}, v));
    }
    CHECK(decided >= 50);
  }
}

TEST_CASE("oracle: the free group never proves a nonempty reduced word trivial") {
  std::mt19937 rng(32);
  const Presentation free2(2, {});
  const auto f = fp_oracle(free2, 500);
  for (int trial = 0; trial < 200; ++trial) {
    const Word w = random_word(rng, 2, 1 + rng() % 10);
    const Verdict v = f->word_problem(w);
    CHECK(v.is_yes() == w.empty());
    if (!v.is_unknown()) CHECK(verify_eq_verdict(free2, w, Word{}, v));
  }
}

TEST_CASE("property: verdicts are monotone in the bound") {
  std::mt19937 rng(33);
  const std::vector<Presentation> ps{
      Presentation(2, {parse_word("x1*x2*x1^-1*x2^-1")}),
      Presentation(2, {parse_word("x2^-1*x1*x2*x1")}),
      Presentation(2, {parse_word("x1^3"), parse_word("x2^2"), parse_word("x1*x2*x1*x2")}),
  };
  for (const auto& p : ps) {
    for (int trial = 0; trial < 40; ++trial) {
      const Word w = random_word(rng, 2, rng() % 8);
      std::optional<Outcome> decided;
      for (std::size_t bound : {10, 100, 1000}) {
        const Verdict v = fp_oracle(p, bound)->word_problem(w);
        if (decided) CHECK(v.outcome == *decided);
        if (!v.is_unknown()) decided = v.outcome;
      }
    }
  }
}

TEST_CASE("presentation constructions") {
  const Presentation a(1, {parse_word("x1^2")});
  const Presentation b(1, {parse_word("x1^3")});
  CHECK(free_product(a, b) == Presentation(2, {parse_word("x1^2"), parse_word("x2^3")}));
  CHECK(free_product(Presentation(2, {}), Presentation(3, {})) == Presentation(5, {}));

  const Presentation z(1, {});
  const Presentation bs = hnn_extension(z, parse_word("x1"), parse_word("x1^-1"));
  CHECK(bs.generators() == 2);
  REQUIRE(bs.relators().size() == 1);
  const auto bs_oracle = fp_oracle(bs, 1000);
  CHECK(bs_oracle->word_problem(parse_word("x2^-1*x1*x2*x1")).is_yes());
  CHECK(bs_oracle->word_problem(parse_word("x1*x2*x1^-1*x2^-1")).is_no());

  const Presentation z2 = hnn_extension(z, parse_word("x1"), parse_word("x1"));
  CHECK(fp_oracle(z2, 1000)->word_problem(parse_word("x1*x2*x1^-1*x2^-1")).is_yes());

  const Presentation zz = amalgam(z, parse_word("x1"), z, parse_word("x1"));
  CHECK(zz.generators() == 2);
  REQUIRE(zz.relators().size() == 1);
  CHECK(fp_oracle(zz, 100)->word_problem(parse_word("x1*x2^-1")).is_yes());

  const Presentation verbal = amalgam(z, parse_word("x1"), Presentation(2, {}), parse_word("x1*x2*x1^-1*x2^-1"));
  CHECK(verbal.generators() == 3);
  CHECK(verbal.relators().size() == 1);

  const Presentation killed = kill_generator(Presentation(2, {parse_word("x1*x2^2")}), 1);
  CHECK(killed == Presentation(1, {parse_word("x1^2")}));
}

TEST_CASE("presentation JSON round trip and validation") {
  const Presentation p(3, {parse_word("x1*x2*x1^-1*x2^-1"), parse_word("x3^5")});
  CHECK(presentation_from_json(to_json(p)) == p);
  CHECK_THROWS_AS(presentation_from_json(nlohmann::json::parse(R"({"generators": 1, "relators": ["x2"]})")),
                  ParseError);
  CHECK_THROWS_AS(presentation_from_json(nlohmann::json::parse(R"({"generators": 1, "relators": ["c1"]})")),
                  ParseError);
}
