// Countable groups with computable structure: the oracle contract, word
// evaluation, system satisfaction and the built-in exact instances.
#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "genlab/verdict.hpp"
#include "genlab/word.hpp"

namespace genlab {

/// Canonical form of a group element. The meaning of the payload is private to
/// the oracle that produced it.
struct Element {
  std::vector<std::int64_t> data;

  Element() = default;
  Element(std::initializer_list<std::int64_t> v) : data(v) {}
  explicit Element(std::vector<std::int64_t> v) : data(std::move(v)) {}

  auto operator<=>(const Element&) const = default;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept {
    std::size_t h = e.data.size();
    for (auto v : e.data) h ^= std::hash<std::int64_t>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

class GroupOracle {
 public:
  virtual ~GroupOracle() = default;

  virtual std::string name() const = 0;
  virtual Element identity() const = 0;
  virtual Element mul(const Element& a, const Element& b) const = 0;
  virtual Element inv(const Element& a) const = 0;

  /// Exact oracles compare canonical forms and never answer Unknown.
  virtual Verdict eq(const Element& a, const Element& b) const;

  /// True when canonical forms are unique, so equality is structural.
  virtual bool exact() const { return true; }

  /// Default marking; may be empty.
  virtual std::vector<Element> generators() const = 0;

  virtual std::optional<std::size_t> order() const { return std::nullopt; }

  /// All elements of a finite group, in enumeration order.
  virtual std::vector<Element> elements() const;

  /// First `count` elements of the enumeration: layers of the word-length
  /// ball over generators() (each generator, then its inverse).
  virtual std::vector<Element> enumerate(std::size_t count) const;

  virtual std::string render(const Element& a) const;

  bool is_identity(const Element& a) const { return eq(a, identity()).is_yes(); }
};

using OraclePtr = std::shared_ptr<const GroupOracle>;

Element power(const GroupOracle& g, const Element& a, long long n);

/// Values for the letters of a word, keyed by variable or constant.
using Env = std::map<Symbol, Element>;

/// Env sending x_i to the i-th element of `tuple`.
Env variables_env(const std::vector<Element>& tuple);

Element evaluate(const GroupOracle& g, const Word& w, const Env& env);

/// Evaluates a word whose variable x_i names the i-th default generator.
Element evaluate_generators(const GroupOracle& g, const Word& w);

/// Yes iff all clauses hold; No names the first violated clause; Unknown when
/// an equality query could not be decided.
Verdict satisfies(const GroupOracle& g, const System& s, const Env& env);

/// Raised when a finite table fails a group axiom.
class InvalidGroupTable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// --- built-in exact oracles ------------------------------------------------

OraclePtr make_trivial();
/// Z^d with integer vectors; generators are the standard basis.
OraclePtr make_integer_lattice(std::size_t d);
/// F_k with reduced words; generators x_1..x_k.
OraclePtr make_free_group(std::size_t k);
/// BS(1,n) = <a, b | b^-1 a b = a^n>; generators (a, b).
OraclePtr make_baumslag_solitar(std::int64_t n);
/// Z/2 wr Z; generators (lamp toggle at 0, shift by +1).
OraclePtr make_lamplighter();

/// Multiplication table over elements 0..n-1. `generators` defaults to a
/// greedy generating set in element order.
OraclePtr make_finite_table(std::vector<std::vector<std::size_t>> table,
                            std::optional<std::vector<std::size_t>> generators = std::nullopt,
                            std::string name = "finite");
OraclePtr make_cyclic(std::size_t n);

/// Direct product of tables, (a,b) encoded as a*|B| + b.
std::vector<std::vector<std::size_t>> product_table(const std::vector<std::vector<std::size_t>>& a,
                                                    const std::vector<std::vector<std::size_t>>& b);

/// Named finite groups of order <= 8 (one per isomorphism type).
std::vector<std::pair<std::string, OraclePtr>> small_finite_groups();

/// Dispatch by name: "trivial", "Z", "Z^d", "Fk", "BS(1,n)", "lamplighter",
/// "Z/n", "S3", "D4", "Q8", "K4", "Z2^3", "Z4xZ2".
OraclePtr builtin(const std::string& name);

/// Componentwise operations; eq is the three-valued conjunction (any No
/// wins, then any Unknown).
OraclePtr direct_sum(std::vector<OraclePtr> factors);
/// Canonical form in a direct sum from per-factor canonical forms.
Element direct_sum_element(const std::vector<Element>& parts);

/// Table-backed oracle views (used for JSON I/O of finite groups).
struct FiniteTableView {
  const std::vector<std::vector<std::size_t>>* table = nullptr;
};
std::optional<FiniteTableView> finite_table_of(const GroupOracle& g);

OraclePtr finite_table_from_json(const nlohmann::json& j);

/// Checks that the multiplication-table system of G's first `size` elements
/// has a solution in H among elements reachable by words of length <= bound
/// in H's generators (all of H when H is finite).
Verdict embeds_via_systems(const GroupOracle& g, const GroupOracle& h, std::size_t size,
                           std::size_t bound);

/// The system whose solutions are injective maps of `elems` into a group
/// preserving every product that stays inside `elems`.
System multiplication_table_system(const GroupOracle& g, const std::vector<Element>& elems);

}  // namespace genlab
