// Følner sets and sofic approximations.
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "genlab/marked.hpp"

namespace genlab {

/// Positive rational in lowest terms.
struct Rational {
  std::int64_t num = 1;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d);

  std::string render() const;
  auto operator<=>(const Rational& o) const {
    return static_cast<__int128>(num) * o.den <=> static_cast<__int128>(o.num) * den;
  }
  bool operator==(const Rational&) const = default;
};

/// Accepts "p/q", integers and finite decimals.
Rational parse_rational(const std::string& text);

struct FolnerReport {
  std::vector<Element> k;
  /// |gK symmetric-difference K| for each g in F, in order.
  std::vector<std::size_t> sizes;
  Rational eps;
  bool pass = true;
};

/// Left translates gK; pass iff every size < eps * |K| (strict).
FolnerReport folner_check(const GroupOracle& g, const std::vector<Element>& f, const std::vector<Element>& k,
                          Rational eps);

struct BallsStrategy {
  std::size_t max_radius;
};
struct SubsetsStrategy {
  /// Candidates are subsets of this ball of the default marking.
  std::size_t radius;
  std::size_t max_size;
};

struct FolnerSearchResult {
  std::optional<FolnerReport> found;
  /// Radius of the passing ball (Balls strategy only).
  std::optional<std::size_t> radius;
  std::size_t candidates_tried = 0;
};

/// Balls of radius 1..max_radius of the default marking, in order.
FolnerSearchResult folner_search(const GroupOracle& g, const std::vector<Element>& f, Rational eps,
                                 BallsStrategy strategy);
/// Subsets by size, then lexicographically by index in ball order.
FolnerSearchResult folner_search(const GroupOracle& g, const std::vector<Element>& f, Rational eps,
                                 SubsetsStrategy strategy);

/// Finite directed graph with edges labelled 1..labels, at most one out-edge
/// and one in-edge per label at each vertex.
class LabeledGraph {
 public:
  LabeledGraph(std::size_t vertices, std::size_t labels);

  std::size_t vertices() const noexcept { return out_.size(); }
  std::size_t labels() const noexcept { return labels_; }
  /// `label` is 1-based.
  void add_edge(std::size_t u, std::size_t label, std::size_t v);
  std::optional<std::size_t> out(std::size_t v, std::size_t label) const { return out_.at(v).at(label - 1); }
  std::optional<std::size_t> in(std::size_t v, std::size_t label) const { return in_.at(v).at(label - 1); }
  void remove_edge(std::size_t u, std::size_t label);
  std::vector<std::array<std::size_t, 3>> edges() const;

  /// Induced rooted subgraph on the vertices within distance `radius` of
  /// `root`, following edges in both directions.
  Ball neighborhood(std::size_t root, std::size_t radius) const;

 private:
  std::size_t labels_;
  std::vector<std::vector<std::optional<std::size_t>>> out_;
  std::vector<std::vector<std::optional<std::size_t>>> in_;
};

nlohmann::json to_json(const LabeledGraph& g);
LabeledGraph labeled_graph_from_json(const nlohmann::json& j);

struct SoficReport {
  bool pass = false;
  std::vector<std::size_t> good;
  std::size_t vertices = 0;
};

/// pass iff |W| > (1 - 1/n)|V| where W holds the vertices whose
/// n-neighbourhood is rooted-isomorphic to the Cayley n-ball.
SoficReport sofic_check(const LabeledGraph& g, const MarkedGroup& m, std::size_t n);

/// Cayley graph of Z^d / (m_1 Z x ... x m_d Z) with the standard labels.
/// Vertex index: coordinate 1 varies fastest.
LabeledGraph sofic_from_quotient(std::size_t d, const std::vector<std::size_t>& moduli);

}  // namespace genlab
