#include <unordered_map>

#include "genlab/partial_group.hpp"

namespace genlab {

std::optional<std::uint32_t> PartialEnumeratedGroup::product(std::uint32_t a, std::uint32_t b) const {
  if (identity && a == *identity) return b;
  if (identity && b == *identity) return a;
  auto it = products.find({a, b});
  if (it == products.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> PartialEnumeratedGroup::inverse(std::uint32_t a) const {
  if (identity && a == *identity) return a;
  auto it = inverses.find(a);
  if (it == inverses.end()) return std::nullopt;
  return it->second;
}

void PartialEnumeratedGroup::add_inequality(std::uint32_t a, std::uint32_t b) {
  inequalities.insert(a > b ? std::pair{a, b} : std::pair{b, a});
}

std::set<std::uint32_t> PartialEnumeratedGroup::constants() const {
  std::set<std::uint32_t> out;
  if (identity) out.insert(*identity);
  for (const auto& [k, v] : products) out.insert({k.first, k.second, v});
  for (const auto& [k, v] : inverses) out.insert({k, v});
  for (const auto& [a, b] : inequalities) {
    out.insert(a);
    if (b) out.insert(b);
  }
  return out;
}

std::vector<std::string> PartialEnumeratedGroup::violations() const {
  std::vector<std::string> out;
  auto c = [](std::uint32_t v) { return "c" + std::to_string(v); };

  std::unordered_map<std::uint32_t, std::vector<std::pair<std::uint32_t, std::uint32_t>>> by_left;
  for (const auto& [k, v] : products) by_left[k.first].push_back({k.second, v});
  for (const auto& [ab, x] : products) {
    const auto [a, b] = ab;
    auto it = by_left.find(x);
    if (it == by_left.end()) continue;
    for (const auto& [cc, abc] : it->second) {
      auto bc = product(b, cc);
      if (!bc) continue;
      auto a_bc = product(a, *bc);
      if (a_bc && *a_bc != abc)
        out.push_back("associativity fails on (" + c(a) + ", " + c(b) + ", " + c(cc) + ")");
    }
  }

  if (identity) {
    const auto e = *identity;
    for (const auto& [k, v] : products) {
      if (k.first == e && v != k.second) out.push_back(c(e) + "*" + c(k.second) + " is not " + c(k.second));
      if (k.second == e && v != k.first) out.push_back(c(k.first) + "*" + c(e) + " is not " + c(k.first));
    }
    for (const auto& [a, ai] : inverses) {
      for (auto p : {products.find({a, ai}), products.find({ai, a})})
        if (p != products.end() && p->second != e)
          out.push_back(c(p->first.first) + "*" + c(p->first.second) + " is not the identity");
    }
    if (inequalities.count({e, 0})) out.push_back(c(e) + " is both the identity and non-trivial");
  }

  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> left_quotient, right_quotient;
  for (const auto& [k, v] : products) {
    auto [l, fresh_l] = left_quotient.emplace(std::pair{k.first, v}, k.second);
    if (!fresh_l && l->second != k.second)
      out.push_back("left cancellation fails: " + c(k.first) + "*" + c(k.second) + " = " + c(k.first) + "*" +
                    c(l->second));
    auto [r, fresh_r] = right_quotient.emplace(std::pair{k.second, v}, k.first);
    if (!fresh_r && r->second != k.first)
      out.push_back("right cancellation fails: " + c(k.first) + "*" + c(k.second) + " = " + c(r->second) + "*" +
                    c(k.second));
  }

  for (const auto& [a, b] : inequalities)
    if (a == b) out.push_back(c(a) + " != " + c(b));
  return out;
}

nlohmann::json to_json(const PartialEnumeratedGroup& g) {
  nlohmann::json products = nlohmann::json::array();
  for (const auto& [k, v] : g.products) products.push_back({k.first, k.second, v});
  nlohmann::json inverses = nlohmann::json::array();
  for (const auto& [k, v] : g.inverses) inverses.push_back({k, v});
  nlohmann::json neq = nlohmann::json::array();
  for (const auto& [a, b] : g.inequalities) neq.push_back({a, b});
  return {{"identity", g.identity ? nlohmann::json(*g.identity) : nlohmann::json(nullptr)},
          {"products", products},
          {"inverses", inverses},
          {"inequalities", neq}};
}

}  // namespace genlab
