// Search machinery over a growing list of relators: abelian quotients mod p,
// permutation quotients and breadth-first derivations. Index structures are
// built on first use and then extended as relators are added.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "genlab/presentation.hpp"

namespace genlab::detail {

/// Row-reduced relation matrix over Z/p. Each pivot column stores its value
/// as a combination of free columns, so reduction is a single pass.
class ModPEchelon {
 public:
  explicit ModPEchelon(int p) : p_(p) {}

  void add(const std::map<int, int>& relation);
  std::map<int, int> reduce(const std::map<int, int>& v) const;
  /// Values of columns 0..n with `free_column` = 1 and every other free column 0.
  std::vector<int> solution(int free_column, std::size_t n) const;
  int prime() const noexcept { return p_; }

 private:
  int mod(long long v) const { return static_cast<int>(((v % p_) + p_) % p_); }
  int inverse(int a) const;

  int p_;
  std::unordered_map<int, std::map<int, int>> rows_;
  std::unordered_map<int, std::set<int>> users_;
};

/// Cyclic rotation of r^sign starting at `offset`.
struct Rotation {
  std::uint32_t relator;
  std::int32_t sign;
  std::uint32_t offset;
};

std::vector<int> primes_up_to(std::size_t n);

class RelatorEngine {
 public:
  RelatorEngine(std::size_t generators, std::size_t max_degree, std::size_t quotient_budget);

  std::size_t generators() const noexcept { return generators_; }
  void ensure_generators(std::size_t k) { generators_ = std::max(generators_, k); }
  /// `r` must be nonempty, cyclically reduced and not already present.
  void add_relator(GenWord r);
  const std::vector<GenWord>& relators() const noexcept { return relators_; }
  /// Forgets relators after the first n and shrinks back to `generators`.
  void truncate(std::size_t n, std::size_t generators);

  std::optional<PermutationQuotient> abelian_separation(const GenWord& w);
  std::optional<Derivation> find_derivation(const GenWord& w, std::size_t bound);
  std::optional<PermutationQuotient> permutation_separation(const GenWord& w);

 private:
  int letter(const Rotation& r, std::size_t t) const {
    const GenWord& w = relators_[r.relator];
    const std::size_t n = w.size();
    const std::size_t i = (r.offset + t) % n;
    return r.sign > 0 ? w[i] : -w[n - 1 - i];
  }
  void sync_abelian();
  void sync_rotations();
  void sync_graph();

  std::size_t generators_;
  std::size_t max_degree_;
  std::size_t quotient_budget_;
  std::vector<GenWord> relators_;
  std::size_t max_relator_ = 0;

  bool abelian_on_ = false;
  std::size_t abelian_upto_ = 0;
  std::vector<ModPEchelon> abelian_;

  std::size_t rotations_upto_ = 0;
  std::unordered_map<int, std::vector<Rotation>> by_first_;
  std::unordered_map<int, std::vector<Rotation>> by_last_;

  std::size_t graph_upto_ = 0;
  std::unordered_map<int, std::vector<std::size_t>> relators_of_;
};

}  // namespace genlab::detail
