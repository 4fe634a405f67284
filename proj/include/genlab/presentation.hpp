// Finite presentations, the constructions used in density arguments, and the
// bounded word-problem oracle for finitely presented groups.
#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "genlab/group.hpp"

namespace genlab {

/// <x_1..x_k | relators>. Relators are constant-free, freely and cyclically
/// reduced, nonempty, and distinct.
class Presentation {
 public:
  Presentation(std::size_t generators, std::vector<Word> relators);

  std::size_t generators() const noexcept { return generators_; }
  const std::vector<Word>& relators() const noexcept { return relators_; }

  friend bool operator==(const Presentation&, const Presentation&) = default;

 private:
  std::size_t generators_;
  std::vector<Word> relators_;
};

nlohmann::json to_json(const Presentation& p);
Presentation presentation_from_json(const nlohmann::json& j);

/// Shifts every variable index by `offset`.
Word shift_variables(const Word& w, std::uint32_t offset);

Presentation free_product(const Presentation& a, const Presentation& b);
/// Adds a stable letter t = x_{k+1} with t^-1 g t = h.
Presentation hnn_extension(const Presentation& p, const Word& g, const Word& h);
/// A *_{wA = wB} B, with B's generators shifted past A's.
Presentation amalgam(const Presentation& a, const Word& wa, const Presentation& b, const Word& wb);
/// Tietze move setting x_index = e and renumbering the later generators.
Presentation kill_generator(const Presentation& p, std::uint32_t index);

struct FpConfig {
  /// Node expansions allowed in the derivation search.
  std::size_t bound = 2000;
  /// Largest symmetric group searched for separating quotients.
  std::size_t max_degree = 5;
  /// Backtracking nodes per degree in the permutation quotient search.
  std::size_t quotient_budget = 200000;
};

/// Bound read from GENLAB_DEFAULT_BOUND, else 2000.
std::size_t default_bound();

/// Word over generators as signed generator indices (+i for x_i, -i for x_i^-1).
using GenWord = std::vector<int>;

GenWord to_gen_word(const Word& w);
Word from_gen_word(const GenWord& w);

/// One factor c * r^exponent * c^-1 of a derivation.
struct DerivationStep {
  Word conjugator;
  std::size_t relator = 0;
  int exponent = 1;
};

/// Steps f_1..f_n with f_n ... f_1 * w freely reducing to e.
struct Derivation {
  std::vector<DerivationStep> steps;
};

nlohmann::json to_json(const Derivation& d);
Derivation derivation_from_json(const nlohmann::json& j);

/// Images of the generators in S_degree (0-based image arrays).
struct PermutationQuotient {
  std::size_t degree = 0;
  std::vector<std::vector<int>> images;
};

nlohmann::json to_json(const PermutationQuotient& q);
PermutationQuotient quotient_from_json(const nlohmann::json& j);

/// Independent checkers for certificates produced below.
bool verify_derivation(const Presentation& p, const Word& w, const Derivation& d);
bool verify_separation(const Presentation& p, const Word& w, const PermutationQuotient& q);
/// Re-checks an eq(u, v) verdict of an fp oracle; Unknown verdicts fail.
bool verify_eq_verdict(const Presentation& p, const Word& u, const Word& v, const Verdict& verdict);

/// Finitely presented group. Canonical forms are freely reduced words, so
/// equality is semi-decided: Yes needs a derivation found within the bound,
/// No needs a homomorphism to some S_d (d <= max_degree) separating the pair.
class FpGroup final : public GroupOracle {
 public:
  FpGroup(Presentation p, FpConfig config = {});
  ~FpGroup() override;

  std::string name() const override;
  Element identity() const override { return {}; }
  Element mul(const Element& a, const Element& b) const override;
  Element inv(const Element& a) const override;
  Verdict eq(const Element& a, const Element& b) const override;
  bool exact() const override { return false; }
  std::vector<Element> generators() const override;
  std::string render(const Element& a) const override;

  const Presentation& presentation() const noexcept { return p_; }
  const FpConfig& config() const noexcept { return config_; }

  static Element element_of(const Word& w);
  static Word word_of(const Element& e);

  /// Three-valued "w = e".
  Verdict word_problem(const Word& w) const;
  Verdict word_problem(const Word& w, std::size_t bound) const;

  std::optional<Derivation> find_derivation(const Word& w, std::size_t bound) const;
  /// Homomorphism to Z/p (p prime <= max_degree) via exponent sums.
  std::optional<PermutationQuotient> abelian_separation(const Word& w) const;
  /// Backtracking over homomorphisms to S_3..S_max_degree.
  std::optional<PermutationQuotient> permutation_separation(const Word& w) const;
  std::optional<PermutationQuotient> separate(const Word& w) const;

 private:
  struct Caches;

  Presentation p_;
  FpConfig config_;
  std::unique_ptr<Caches> caches_;
};

std::shared_ptr<const FpGroup> fp_oracle(const Presentation& p, std::size_t bound);
std::shared_ptr<const FpGroup> fp_oracle(const Presentation& p, FpConfig config);

}  // namespace genlab
