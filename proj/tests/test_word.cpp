#include <doctest.h>

#include <random>

#include "genlab/word.hpp"

using namespace genlab;

namespace {

std::vector<Letter> random_letters(std::mt19937& rng, std::size_t len, std::uint32_t vars, std::uint32_t consts) {
  std::vector<Letter> out;
  std::uniform_int_distribution<std::uint32_t> pick(0, vars + consts - 1);
  std::bernoulli_distribution inv(0.5);
  for (std::size_t i = 0; i < len; ++i) {
    const auto s = pick(rng);
    out.push_back(s < vars ? Letter::x(s + 1, inv(rng)) : Letter::c(s - vars + 1, inv(rng)));
  }
  return out;
}

// Reference reduction: repeatedly delete the first cancelling pair.
std::vector<Letter> naive_reduce(std::vector<Letter> v) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
      if (v[i].cancels(v[i + 1])) {
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i), v.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        changed = true;
        break;
      }
  }
  return v;
}

}  // namespace

TEST_CASE("parse_word reduces and tracks arity") {
  CHECK(parse_word("x1*x1^-1").empty());
  CHECK(parse_word("x1*x2*x2^-1*x1") == Word{Letter::x(1), Letter::x(1)});
  CHECK(parse_word("x3*x1^-1").arity() == 3);
  CHECK(parse_word("e").empty());
  CHECK(parse_word("x1^3") == Word{Letter::x(1), Letter::x(1), Letter::x(1)});
  CHECK(parse_word("c2^-2") == Word{Letter::c(2, true), Letter::c(2, true)});
}

TEST_CASE("parse_word rejects malformed text with a position") {
  for (const char* bad : {"x1**", "x0", "y1", "x1^", "c", "x1*", "(x1"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_word(bad), ParseError);
  }
  try {
    parse_word("x1**");
  } catch (const ParseError& e) {
    CHECK(e.position() == 3);
  }
}

TEST_CASE("free_reduce examples") {
  CHECK(free_reduce(std::vector{Letter::x(1), Letter::x(1, true)}).empty());
  CHECK(free_reduce(std::vector{Letter::x(1), Letter::x(2), Letter::x(2, true), Letter::x(1, true)}).empty());
  const std::vector kept{Letter::x(1), Letter::x(2), Letter::x(1, true)};
  CHECK(free_reduce(kept).letters() == kept);
}

TEST_CASE("substitute and system_substitute") {
  CoefficientAssignment a{{1, 3}, {2, 7}};
  CHECK(substitute(parse_word("x1*x2*x1^-1"), a) == parse_word("c3*c7*c3^-1"));
  CHECK(substitute(Word{}, a).empty());
  CHECK(substitute(parse_word("c5"), a) == parse_word("c5"));

  CHECK(system_substitute(System({Equation::eq(parse_word("x1"))}), {{1, 4}}) ==
        System({Equation::eq(parse_word("c4"))}));
  CHECK(system_substitute(System({Equation::ne(parse_word("x1*x2"))}), {{1, 1}, {2, 2}}) ==
        System({Equation::ne(parse_word("c1*c2"))}));
  CHECK(system_substitute(System{}, a).empty());
}

TEST_CASE("system keeps insertion order and drops duplicates") {
  System s;
  CHECK(s.add(Equation::eq(parse_word("x2"))));
  CHECK(s.add(Equation::ne(parse_word("c1"))));
  CHECK_FALSE(s.add(Equation::eq(parse_word("x2"))));
  CHECK(s.size() == 2);
  CHECK(s.arity() == 2);
  CHECK(s.constants() == std::vector<std::uint32_t>{1});
  s.truncate(1);
  CHECK(s.size() == 1);
  CHECK_FALSE(s.contains(Equation::ne(parse_word("c1"))));
  CHECK(s.add(Equation::ne(parse_word("c1"))));
}

TEST_CASE("property: reduction agrees with the naive rewriting") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const auto letters = random_letters(rng, rng() % 20, 2, 1);
    const Word w = free_reduce(letters);
    CHECK(w.letters() == naive_reduce(letters));
    for (std::size_t i = 0; i + 1 < w.size(); ++i) CHECK_FALSE(w[i].cancels(w[i + 1]));
  }
}

TEST_CASE("property: group laws of the free monoid quotient") {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const Word a = free_reduce(random_letters(rng, rng() % 10, 3, 2));
    const Word b = free_reduce(random_letters(rng, rng() % 10, 3, 2));
    const Word c = free_reduce(random_letters(rng, rng() % 10, 3, 2));
    CHECK((a * b) * c == a * (b * c));
    CHECK((a * a.inverse()).empty());
    CHECK((a * b).inverse() == b.inverse() * a.inverse());
    CHECK(power(a, 3) == a * a * a);
    CHECK(power(a, -2) == a.inverse() * a.inverse());
    const Word cr = a.cyclically_reduced();
    if (!cr.empty()) CHECK_FALSE(cr[0].cancels(cr[cr.size() - 1]));
    const Word o = orientation_canonical(a);
    CHECK(o == orientation_canonical(a.inverse()));
    CHECK((o == a || o == a.inverse()));
  }
}

TEST_CASE("property: render and parse round trip") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const Word w = free_reduce(random_letters(rng, rng() % 15, 3, 3));
    CHECK(parse_word(render(w)) == w);
  }
}

TEST_CASE("property: system JSON round trip") {
  std::mt19937 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    System s;
    const auto n = rng() % 6;
    for (std::size_t i = 0; i < n; ++i)
      s.add({free_reduce(random_letters(rng, 1 + rng() % 6, 2, 2)), rng() % 2 == 0});
    s.declare_arity(5);
    CHECK(system_from_json(to_json(s)) == s);
  }
}

TEST_CASE("system JSON rejects malformed input") {
  CHECK_THROWS_AS(system_from_json(nlohmann::json::parse(R"({"clauses": 3})")), ParseError);
  CHECK_THROWS_AS(system_from_json(nlohmann::json::parse(R"({"arity": -1, "clauses": []})")), ParseError);
  CHECK_THROWS_AS(system_from_json(nlohmann::json::parse(R"({"clauses": [{"word": "x1", "eq": 1}]})")), ParseError);
  CHECK_THROWS_AS(system_from_json(nlohmann::json::parse(R"({"clauses": [{"word": "x1**"}]})")), ParseError);
}
