// Finite fragments of an enumerated group: identity, product, inverse and
// inequality facts over natural-number constants.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace genlab {

struct PartialEnumeratedGroup {
  std::optional<std::uint32_t> identity;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> products;
  std::map<std::uint32_t, std::uint32_t> inverses;
  /// Pairs (i, j) with i > j; (i, 0) records c_i != e.
  std::set<std::pair<std::uint32_t, std::uint32_t>> inequalities;

  std::optional<std::uint32_t> product(std::uint32_t a, std::uint32_t b) const;
  std::optional<std::uint32_t> inverse(std::uint32_t a) const;
  bool has_product(std::uint32_t a, std::uint32_t b) const { return product(a, b).has_value(); }
  void add_inequality(std::uint32_t a, std::uint32_t b);

  std::set<std::uint32_t> constants() const;

  /// Descriptions of every breach of the finite-stage group laws
  /// (associativity, identity, inverses, cancellation, inequalities).
  std::vector<std::string> violations() const;

  bool operator==(const PartialEnumeratedGroup&) const = default;
};

nlohmann::json to_json(const PartialEnumeratedGroup& g);

}  // namespace genlab
