// Sets of group elements with duplicate elimination.
#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "genlab/group.hpp"

namespace genlab::detail {

// Duplicate elimination by canonical form, or by pairwise eq for inexact
// oracles (Unknown aborts through UndecidedError).
class ElementSet {
 public:
  explicit ElementSet(const GroupOracle& g) : g_(g) {}

  std::optional<std::size_t> find(const Element& e) const {
    if (g_.exact()) {
      auto it = map_.find(e);
      return it == map_.end() ? std::nullopt : std::optional<std::size_t>(it->second);
    }
    for (std::size_t i = 0; i < elems_.size(); ++i)
      if (equal(elems_[i], e)) return i;
    return std::nullopt;
  }

  /// Index of the new element, or nullopt if already present.
  std::optional<std::size_t> insert(const Element& e) {
    if (find(e)) return std::nullopt;
    map_.emplace(e, elems_.size());
    elems_.push_back(e);
    return elems_.size() - 1;
  }

  const Element& operator[](std::size_t i) const { return elems_[i]; }
  std::size_t size() const { return elems_.size(); }

  bool equal(const Element& a, const Element& b) const {
    if (g_.exact()) return a == b;
    const Verdict v = g_.eq(a, b);
    if (v.is_unknown()) throw UndecidedError("cannot compare " + g_.render(a) + " and " + g_.render(b), v.bound);
    return v.is_yes();
  }

 private:
  const GroupOracle& g_;
  std::unordered_map<Element, std::size_t, ElementHash> map_;
  std::vector<Element> elems_;
};

}  // namespace genlab::detail
