// Bounded refutations of left orderability, local indicability and
// biorderability, plus the unique product property.
#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "genlab/group.hpp"

namespace genlab {

/// Entries are +1 or -1.
using SignVector = std::vector<int>;

/// All sign vectors of length n, lexicographic with -1 < +1.
std::vector<SignVector> sign_vectors(std::size_t n);

/// Hard cap on the size of a product set or closure.
inline constexpr std::size_t kClosureCap = 100000;

/// A product F[i_1]^{e_{i_1}} ... F[i_l]^{e_{i_l}} equal to the identity.
struct ProductTrace {
  SignVector signs;
  std::vector<std::size_t> factors;
};

/// Searches, for every sign vector E, the products of length <= m over F^E
/// for the identity. No carries one ProductTrace per E; Unknown(m) names a
/// surviving E. Never Yes. Throws std::invalid_argument if F contains the
/// identity.
Verdict left_order_test(const GroupOracle& g, const std::vector<Element>& f, std::size_t m);

std::vector<ProductTrace> product_traces_from_json(const nlohmann::json& certificate);

/// Re-evaluates every trace and checks that all 2^|F| sign vectors are
/// covered by products of length <= m.
bool verify_refutation(const GroupOracle& g, const std::vector<Element>& f, std::size_t m,
                       const nlohmann::json& certificate);

enum class ClosureKind { LocallyIndicable, Biorderable };

/// Node of a closure derivation. Seeds index into F (with the sign applied);
/// "li" is a^-1 b a^2, "conj" is a b a^-1, "conj_inv" is a^-1 b a.
struct ClosureExpr {
  std::string op;
  std::size_t seed = 0;
  std::vector<std::shared_ptr<const ClosureExpr>> args;

  /// Number of non-seed nodes.
  std::size_t operations() const;
  /// Saturation rounds needed to produce this node.
  std::size_t rounds() const;
};

using ClosureExprPtr = std::shared_ptr<const ClosureExpr>;

nlohmann::json to_json(const ClosureExpr& e);
ClosureExprPtr closure_expr_from_json(const nlohmann::json& j);

/// Saturation of F^E under products and the kind's operations for `depth`
/// rounds. No carries one expression tree per sign vector evaluating to the
/// identity; Unknown(depth) names a surviving sign vector or the cap.
Verdict locally_indicable_test(const GroupOracle& g, const std::vector<Element>& f, std::size_t depth);
Verdict biorderable_test(const GroupOracle& g, const std::vector<Element>& f, std::size_t depth);
Verdict closure_test(const GroupOracle& g, const std::vector<Element>& f, std::size_t depth, ClosureKind kind);

/// Evaluates an expression, rejecting operations the kind does not allow.
std::optional<Element> evaluate_closure(const GroupOracle& g, const std::vector<Element>& f, const SignVector& signs,
                                        const ClosureExpr& e, ClosureKind kind);

bool verify_closure_refutation(const GroupOracle& g, const std::vector<Element>& f, std::size_t depth,
                               ClosureKind kind, const nlohmann::json& certificate);

/// Rewrites a product trace as a balanced product tree.
ClosureExprPtr trace_to_closure(const ProductTrace& t);

/// True when the trace, read as a closure derivation of the given kind,
/// evaluates to the identity.
bool replay_in_closure(const GroupOracle& g, const std::vector<Element>& f, const ProductTrace& t, ClosureKind kind);

enum class UppMode {
  /// g has exactly one factorization x*y.
  Standard,
  /// g = x*y and g != x'*y' for all x' != x and y' != y simultaneously.
  Literal
};

struct UppResult {
  bool holds = false;
  /// (g, x, y) when holds.
  std::optional<std::array<Element, 3>> witness;
  /// Each distinct product with its factorizations as (index in X, index in Y).
  std::vector<std::pair<Element, std::vector<std::pair<std::size_t, std::size_t>>>> table;
};

UppResult upp_test(const GroupOracle& g, const std::vector<Element>& x, const std::vector<Element>& y,
                   UppMode mode = UppMode::Standard);

struct SigmaResult {
  bool holds = true;
  std::vector<Element> counterexample;
};

/// Exhaustive evaluation of sigma_{m,n} on a finite exact group.
SigmaResult sigma_mn_check(const GroupOracle& g, std::size_t m, std::size_t n);

}  // namespace genlab
