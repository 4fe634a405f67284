// Marked groups, Cayley balls and the metric between them.
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "genlab/group.hpp"
#include "genlab/partial_group.hpp"

namespace genlab {

struct MarkedGroup {
  OraclePtr oracle;
  std::vector<Element> marking;
};

/// Marking by the oracle's default generators.
MarkedGroup default_marking(OraclePtr oracle);

/// Rooted, deterministic, edge-labelled graph. Vertex 0 is the root; labels
/// are 0-based internally and 1-based in JSON and in edges().
class Ball {
 public:
  Ball(std::size_t radius, std::size_t labels);

  std::size_t radius() const noexcept { return radius_; }
  std::size_t labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return out_.size(); }
  std::size_t depth(std::size_t v) const { return depth_.at(v); }

  std::optional<std::size_t> out(std::size_t v, std::size_t label) const { return out_.at(v).at(label); }
  std::optional<std::size_t> in(std::size_t v, std::size_t label) const { return in_.at(v).at(label); }

  std::size_t add_vertex(std::size_t depth);
  /// Throws if the edge would break determinism.
  void add_edge(std::size_t u, std::size_t label, std::size_t v);

  /// (u, label, v) triples with 1-based labels, sorted.
  std::vector<std::array<std::size_t, 3>> edges() const;

  /// Induced sub-ball on the vertices of depth <= r.
  Ball restrict(std::size_t r) const;

  /// Geodesic words of the vertices: the first word reaching each vertex in
  /// breadth-first order, labels ascending, x_i before x_i^-1.
  std::vector<Word> geodesics() const;

 private:
  std::size_t radius_;
  std::size_t labels_;
  std::vector<std::size_t> depth_;
  std::vector<std::vector<std::optional<std::size_t>>> out_;
  std::vector<std::vector<std::optional<std::size_t>>> in_;
};

nlohmann::json to_json(const Ball& b);
/// Depths are recomputed from the root; throws ParseError on malformed input.
Ball ball_from_json(const nlohmann::json& j);

/// Cayley ball around the identity. Throws UndecidedError when an equality
/// needed to merge vertices is Unknown.
Ball ball(const MarkedGroup& m, std::size_t radius);
/// Same, also returning the canonical form behind each vertex.
Ball ball(const MarkedGroup& m, std::size_t radius, std::vector<Element>* elements);

bool ball_isomorphic(const Ball& a, const Ball& b);

struct MarkedDistance {
  bool exact = false;
  /// Distance e^{-n}; when !exact, n = max_radius and the distance is at most that.
  std::size_t n = 0;
  std::string render() const;
};

MarkedDistance marked_distance(const MarkedGroup& a, const MarkedGroup& b, std::size_t max_radius);

/// Equations for every edge and inequations for every pair of vertices, over
/// variables x_1..x_k standing for the marking. Clauses are stored with the
/// smaller of w and w^-1 and deduplicated.
System ball_to_system(const Ball& b);

struct TauStage {
  /// Words of length <= bound over x_1..x_n trivial at (c_1..c_n), one per
  /// inverse pair.
  std::vector<Word> relators;
  /// Products (or inverses, as [a, 0]) that were needed but undefined.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> missing;
  bool complete() const { return missing.empty(); }
};

TauStage tau_stage(const PartialEnumeratedGroup& t, std::uint32_t n, std::size_t length_bound);

}  // namespace genlab
