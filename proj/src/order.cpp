#include <algorithm>
#include <unordered_map>

#include "genlab/order.hpp"

#include "element_set.hpp"

namespace genlab {

std::vector<SignVector> sign_vectors(std::size_t n) {
  std::vector<SignVector> out;
  const std::size_t count = std::size_t{1} << n;
  for (std::size_t mask = 0; mask < count; ++mask) {
    SignVector s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = (mask >> (n - 1 - i)) & 1 ? 1 : -1;
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

using detail::ElementSet;

bool is_identity(const GroupOracle& g, const Element& e) {
  if (g.exact()) return e == g.identity();
  const Verdict v = g.eq(e, g.identity());
  if (v.is_unknown()) throw UndecidedError("cannot decide whether " + g.render(e) + " is trivial", v.bound);
  return v.is_yes();
}

void require_nontrivial(const GroupOracle& g, const std::vector<Element>& f) {
  for (const auto& x : f)
    if (is_identity(g, x)) throw std::invalid_argument("the set contains the identity " + g.render(x));
}

std::vector<Element> signed_set(const GroupOracle& g, const std::vector<Element>& f, const SignVector& s) {
  std::vector<Element> out;
  for (std::size_t i = 0; i < f.size(); ++i) out.push_back(s[i] > 0 ? f[i] : g.inv(f[i]));
  return out;
}

enum class Search { Found, Survived, Capped };

// Breadth-first products of length <= m with duplicate elimination.
Search product_search(const GroupOracle& g, const std::vector<Element>& fe, std::size_t m,
                      std::vector<std::size_t>& trace) {
  struct Node {
    std::size_t parent;
    std::size_t factor;
  };
  ElementSet seen(g);
  std::vector<Node> nodes;
  std::size_t layer_start = 0;
  auto add = [&](const Element& e, std::size_t parent, std::size_t factor) -> std::optional<Search> {
    if (!seen.insert(e)) return std::nullopt;
    nodes.push_back({parent, factor});
    if (is_identity(g, e)) {
      trace.clear();
      for (std::size_t i = nodes.size() - 1; i != SIZE_MAX; i = nodes[i].parent) trace.push_back(nodes[i].factor);
      std::reverse(trace.begin(), trace.end());
      return Search::Found;
    }
    if (nodes.size() >= kClosureCap) return Search::Capped;
    return std::nullopt;
  };
  for (std::size_t i = 0; i < fe.size(); ++i)
    if (auto r = add(fe[i], SIZE_MAX, i)) return *r;
  for (std::size_t len = 2; len <= m; ++len) {
    const std::size_t layer_end = nodes.size();
    if (layer_start == layer_end) break;
    for (std::size_t u = layer_start; u < layer_end; ++u)
      for (std::size_t i = 0; i < fe.size(); ++i)
        if (auto r = add(g.mul(seen[u], fe[i]), u, i)) return *r;
    layer_start = layer_end;
  }
  return Search::Survived;
}

nlohmann::json signs_json(const SignVector& s) { return nlohmann::json(s); }

}  // namespace

Verdict left_order_test(const GroupOracle& g, const std::vector<Element>& f, std::size_t m) {
  if (m == 0) throw std::invalid_argument("the length bound must be at least 1");
  try {
    require_nontrivial(g, f);
    nlohmann::json refutations = nlohmann::json::array();
    for (const auto& s : sign_vectors(f.size())) {
      std::vector<std::size_t> trace;
      const Search r = product_search(g, signed_set(g, f, s), m, trace);
      if (r == Search::Survived) return Verdict::unknown(m, {{"surviving", signs_json(s)}});
      if (r == Search::Capped) return Verdict::unknown(m, {{"cap", kClosureCap}, {"signs", signs_json(s)}});
      refutations.push_back({{"signs", signs_json(s)}, {"trace", trace}});
    }
    return Verdict::no({{"refutations", refutations}}, m);
  } catch (const UndecidedError& e) {
    return Verdict::unknown(e.bound(), {{"undecided", e.what()}});
  }
}

std::vector<ProductTrace> product_traces_from_json(const nlohmann::json& certificate) {
  std::vector<ProductTrace> out;
  for (const auto& r : certificate.at("refutations"))
    out.push_back({r.at("signs").get<SignVector>(), r.at("trace").get<std::vector<std::size_t>>()});
  return out;
}

namespace {

Element evaluate_trace(const GroupOracle& g, const std::vector<Element>& f, const ProductTrace& t) {
  Element acc = g.identity();
  for (auto i : t.factors) acc = g.mul(acc, t.signs.at(i) > 0 ? f.at(i) : g.inv(f.at(i)));
  return acc;
}

bool covers_all_signs(std::size_t n, std::vector<SignVector> seen) {
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  auto all = sign_vectors(n);
  std::sort(all.begin(), all.end());
  return seen == all;
}

}  // namespace

bool verify_refutation(const GroupOracle& g, const std::vector<Element>& f, std::size_t m,
                       const nlohmann::json& certificate) {
  try {
    const auto traces = product_traces_from_json(certificate);
    std::vector<SignVector> signs;
    for (const auto& t : traces) {
      if (t.signs.size() != f.size() || t.factors.empty() || t.factors.size() > m) return false;
      if (!is_identity(g, evaluate_trace(g, f, t))) return false;
      signs.push_back(t.signs);
    }
    return covers_all_signs(f.size(), signs);
  } catch (const std::exception&) {
    return false;
  }
}

std::size_t ClosureExpr::operations() const {
  if (op == "seed") return 0;
  std::size_t n = 1;
  for (const auto& a : args) n += a->operations();
  return n;
}

std::size_t ClosureExpr::rounds() const {
  std::size_t r = 0;
  for (const auto& a : args) r = std::max(r, a->rounds());
  return op == "seed" ? 0 : r + 1;
}

nlohmann::json to_json(const ClosureExpr& e) {
  if (e.op == "seed") return {{"op", "seed"}, {"index", e.seed}};
  nlohmann::json args = nlohmann::json::array();
  for (const auto& a : e.args) args.push_back(to_json(*a));
  return {{"op", e.op}, {"args", args}};
}

ClosureExprPtr closure_expr_from_json(const nlohmann::json& j) {
  auto e = std::make_shared<ClosureExpr>();
  e->op = j.at("op").get<std::string>();
  if (e->op == "seed") {
    e->seed = j.at("index").get<std::size_t>();
    return e;
  }
  if (e->op != "mul" && e->op != "li" && e->op != "conj" && e->op != "conj_inv")
    throw ParseError("unknown closure operation " + e->op);
  for (const auto& a : j.at("args")) e->args.push_back(closure_expr_from_json(a));
  if (e->args.size() != 2) throw ParseError("closure operations take two arguments");
  return e;
}

namespace {

Element apply_op(const GroupOracle& g, const std::string& op, const Element& a, const Element& b) {
  if (op == "mul") return g.mul(a, b);
  const Element ai = g.inv(a);
  if (op == "li") return g.mul(g.mul(g.mul(ai, b), a), a);
  if (op == "conj") return g.mul(g.mul(a, b), ai);
  return g.mul(g.mul(ai, b), a);
}

std::vector<std::string> closure_ops(ClosureKind kind) {
  if (kind == ClosureKind::LocallyIndicable) return {"mul", "li"};
  return {"mul", "conj", "conj_inv"};
}

ClosureExprPtr make_op(const std::string& op, ClosureExprPtr a, ClosureExprPtr b) {
  auto e = std::make_shared<ClosureExpr>();
  e->op = op;
  e->args = {std::move(a), std::move(b)};
  return e;
}

ClosureExprPtr make_seed(std::size_t i) {
  auto e = std::make_shared<ClosureExpr>();
  e->op = "seed";
  e->seed = i;
  return e;
}

}  // namespace

Verdict closure_test(const GroupOracle& g, const std::vector<Element>& f, std::size_t depth, ClosureKind kind) {
  const auto ops = closure_ops(kind);
  try {
    require_nontrivial(g, f);
    nlohmann::json refutations = nlohmann::json::array();
    for (const auto& s : sign_vectors(f.size())) {
      ElementSet set(g);
      std::vector<ClosureExprPtr> exprs;
      ClosureExprPtr found;
      bool capped = false;
      const auto fe = signed_set(g, f, s);
      for (std::size_t i = 0; i < fe.size(); ++i)
        if (set.insert(fe[i])) exprs.push_back(make_seed(i));
      for (std::size_t round = 0; round < depth && !found && !capped; ++round) {
        const std::size_t snapshot = set.size();
        for (std::size_t i = 0; i < snapshot && !found && !capped; ++i)
          for (std::size_t j = 0; j < snapshot && !found && !capped; ++j)
            for (const auto& op : ops) {
              const Element x = apply_op(g, op, set[i], set[j]);
              if (!set.insert(x)) continue;
              exprs.push_back(make_op(op, exprs[i], exprs[j]));
              if (is_identity(g, x)) {
                found = exprs.back();
                break;
              }
              if (set.size() >= kClosureCap) {
                capped = true;
                break;
              }
            }
      }
      if (capped) return Verdict::unknown(depth, {{"cap", kClosureCap}, {"signs", signs_json(s)}});
      if (!found) return Verdict::unknown(depth, {{"surviving", signs_json(s)}});
      refutations.push_back({{"signs", signs_json(s)}, {"expr", to_json(*found)}, {"length", found->operations()}});
    }
    return Verdict::no({{"refutations", refutations}}, depth);
  } catch (const UndecidedError& e) {
    return Verdict::unknown(e.bound(), {{"undecided", e.what()}});
  }
}

Verdict locally_indicable_test(const GroupOracle& g, const std::vector<Element>& f, std::size_t depth) {
  return closure_test(g, f, depth, ClosureKind::LocallyIndicable);
}

Verdict biorderable_test(const GroupOracle& g, const std::vector<Element>& f, std::size_t depth) {
  return closure_test(g, f, depth, ClosureKind::Biorderable);
}

std::optional<Element> evaluate_closure(const GroupOracle& g, const std::vector<Element>& f, const SignVector& signs,
                                        const ClosureExpr& e, ClosureKind kind) {
  if (e.op == "seed") {
    if (e.seed >= f.size() || e.seed >= signs.size()) return std::nullopt;
    return signs[e.seed] > 0 ? f[e.seed] : g.inv(f[e.seed]);
  }
  const auto ops = closure_ops(kind);
  if (std::find(ops.begin(), ops.end(), e.op) == ops.end() || e.args.size() != 2) return std::nullopt;
  auto a = evaluate_closure(g, f, signs, *e.args[0], kind);
  auto b = evaluate_closure(g, f, signs, *e.args[1], kind);
  if (!a || !b) return std::nullopt;
  return apply_op(g, e.op, *a, *b);
}

bool verify_closure_refutation(const GroupOracle& g, const std::vector<Element>& f, std::size_t depth,
                               ClosureKind kind, const nlohmann::json& certificate) {
  try {
    std::vector<SignVector> signs;
    for (const auto& r : certificate.at("refutations")) {
      const auto s = r.at("signs").get<SignVector>();
      if (s.size() != f.size()) return false;
      const auto expr = closure_expr_from_json(r.at("expr"));
      if (expr->rounds() > depth) return false;
      const auto value = evaluate_closure(g, f, s, *expr, kind);
      if (!value || !is_identity(g, *value)) return false;
      signs.push_back(s);
    }
    return covers_all_signs(f.size(), signs);
  } catch (const std::exception&) {
    return false;
  }
}

ClosureExprPtr trace_to_closure(const ProductTrace& t) {
  if (t.factors.empty()) throw std::invalid_argument("empty product trace");
  auto build = [&](auto&& self, std::size_t lo, std::size_t hi) -> ClosureExprPtr {
    if (hi - lo == 1) return make_seed(t.factors[lo]);
    const std::size_t mid = lo + (hi - lo) / 2;
    return make_op("mul", self(self, lo, mid), self(self, mid, hi));
  };
  return build(build, 0, t.factors.size());
}

bool replay_in_closure(const GroupOracle& g, const std::vector<Element>& f, const ProductTrace& t, ClosureKind kind) {
  const auto value = evaluate_closure(g, f, t.signs, *trace_to_closure(t), kind);
  return value && is_identity(g, *value);
}

UppResult upp_test(const GroupOracle& g, const std::vector<Element>& x, const std::vector<Element>& y, UppMode mode) {
  if (x.empty() || y.empty()) throw std::invalid_argument("both sets must be nonempty");
  UppResult out;
  ElementSet products(g);
  std::vector<std::vector<std::size_t>> pair_product(x.size(), std::vector<std::size_t>(y.size()));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) {
      const Element p = g.mul(x[i], y[j]);
      std::size_t k;
      if (auto fresh = products.insert(p)) {
        k = *fresh;
        out.table.push_back({p, {}});
      } else {
        k = *products.find(p);
      }
      out.table[k].second.push_back({i, j});
      pair_product[i][j] = k;
    }
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) {
      const auto& factorizations = out.table[pair_product[i][j]].second;
      bool unique;
      if (mode == UppMode::Standard) {
        unique = factorizations.size() == 1;
      } else {
        unique = std::none_of(factorizations.begin(), factorizations.end(),
                              [&](const auto& p) { return p.first != i && p.second != j; });
      }
      if (unique) {
        out.holds = true;
        out.witness = std::array<Element, 3>{out.table[pair_product[i][j]].first, x[i], y[j]};
      }
    }
  return out;
}

SigmaResult sigma_mn_check(const GroupOracle& g, std::size_t m, std::size_t n) {
  if (!g.exact() || !g.order()) throw std::invalid_argument("sigma_{m,n} is checked on finite exact groups only");
  std::vector<Element> nontrivial;
  for (const auto& e : g.elements())
    if (e != g.identity()) nontrivial.push_back(e);
  if (n == 0) return {};
  if (nontrivial.empty()) return {};
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::vector<Element> tuple;
    for (auto i : idx) tuple.push_back(nontrivial[i]);
    if (left_order_test(g, tuple, m).is_no()) return {false, tuple};
    std::size_t pos = n;
    while (pos > 0 && ++idx[pos - 1] == nontrivial.size()) idx[--pos] = 0;
    if (pos == 0) break;
  }
  return {};
}

}  // namespace genlab
