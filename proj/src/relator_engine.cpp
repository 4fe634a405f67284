#include <algorithm>
#include <array>
#include <cstdlib>
#include <numeric>

#include "relator_engine.hpp"

namespace genlab::detail {

std::vector<int> primes_up_to(std::size_t n) {
  std::vector<int> out;
  for (int p = 2; static_cast<std::size_t>(p) <= n; ++p) {
    bool prime = true;
    for (int d = 2; d * d <= p; ++d) prime = prime && (p % d != 0);
    if (prime) out.push_back(p);
  }
  return out;
}

int ModPEchelon::inverse(int a) const {
  for (int x = 1; x < p_; ++x)
    if ((a * x) % p_ == 1) return x;
  throw std::logic_error("no inverse mod p");
}

std::map<int, int> ModPEchelon::reduce(const std::map<int, int>& v) const {
  std::map<int, long long> acc;
  for (const auto& [col, val] : v) {
    auto it = rows_.find(col);
    if (it == rows_.end()) {
      acc[col] += val;
    } else {
      for (const auto& [f, r] : it->second) acc[f] += static_cast<long long>(val) * r;
    }
  }
  std::map<int, int> out;
  for (const auto& [col, val] : acc)
    if (const int m = mod(val)) out.emplace(col, m);
  return out;
}

void ModPEchelon::add(const std::map<int, int>& relation) {
  std::map<int, int> r = reduce(relation);
  if (r.empty()) return;
  const int pivot = r.rbegin()->first;
  const int scale = mod(-static_cast<long long>(inverse(r.rbegin()->second)));
  std::map<int, int> row;
  for (const auto& [f, val] : r)
    if (f != pivot) row.emplace(f, mod(static_cast<long long>(val) * scale));

  if (auto u = users_.find(pivot); u != users_.end()) {
    const std::set<int> dependents = std::move(u->second);
    users_.erase(u);
    for (int d : dependents) {
      auto& target = rows_.at(d);
      const int coeff = target.at(pivot);
      target.erase(pivot);
      for (const auto& [f, val] : row) {
        const int updated = mod(target[f] + static_cast<long long>(coeff) * val);
        if (updated == 0) {
          target.erase(f);
          users_[f].erase(d);
        } else {
          target[f] = updated;
          users_[f].insert(d);
        }
      }
    }
  }
  for (const auto& [f, val] : row) users_[f].insert(pivot);
  rows_.emplace(pivot, std::move(row));
}

std::vector<int> ModPEchelon::solution(int free_column, std::size_t n) const {
  std::vector<int> out(n + 1, 0);
  out[static_cast<std::size_t>(free_column)] = 1;
  for (const auto& [pivot, row] : rows_) {
    if (static_cast<std::size_t>(pivot) > n) continue;
    auto it = row.find(free_column);
    out[static_cast<std::size_t>(pivot)] = it == row.end() ? 0 : it->second;
  }
  return out;
}

namespace {

std::map<int, int> exponent_sums(const GenWord& w) {
  std::map<int, int> out;
  for (int v : w) out[std::abs(v)] += v > 0 ? 1 : -1;
  return out;
}

constexpr std::size_t kMaxDegree = 8;
using Perm = std::array<std::uint8_t, kMaxDegree>;

struct GenWordHash {
  std::size_t operator()(const GenWord& w) const noexcept {
    std::size_t h = w.size();
    for (int v : w) h ^= std::hash<int>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

void reduce_into(GenWord& out, int v) {
  if (!out.empty() && out.back() == -v)
    out.pop_back();
  else
    out.push_back(v);
}

}  // namespace

RelatorEngine::RelatorEngine(std::size_t generators, std::size_t max_degree, std::size_t quotient_budget)
    : generators_(generators), max_degree_(max_degree), quotient_budget_(quotient_budget) {}

void RelatorEngine::add_relator(GenWord r) {
  for (int v : r) ensure_generators(static_cast<std::size_t>(std::abs(v)));
  max_relator_ = std::max(max_relator_, r.size());
  relators_.push_back(std::move(r));
}

void RelatorEngine::truncate(std::size_t n, std::size_t generators) {
  generators_ = generators;
  if (n >= relators_.size()) return;
  relators_.resize(n);
  max_relator_ = 0;
  for (const auto& r : relators_) max_relator_ = std::max(max_relator_, r.size());
  if (abelian_upto_ > n) {
    abelian_.clear();
    abelian_on_ = false;
    abelian_upto_ = 0;
  }
  if (rotations_upto_ > n) {
    for (auto* index : {&by_first_, &by_last_})
      for (auto& [letter, rots] : *index)
        while (!rots.empty() && rots.back().relator >= n) rots.pop_back();
    rotations_upto_ = n;
  }
  if (graph_upto_ > n) {
    for (auto& [g, rs] : relators_of_)
      while (!rs.empty() && rs.back() >= n) rs.pop_back();
    graph_upto_ = n;
  }
}

void RelatorEngine::sync_abelian() {
  if (!abelian_on_) {
    for (int p : primes_up_to(max_degree_)) abelian_.emplace_back(p);
    abelian_on_ = true;
  }
  for (; abelian_upto_ < relators_.size(); ++abelian_upto_) {
    const auto sums = exponent_sums(relators_[abelian_upto_]);
    for (auto& m : abelian_) m.add(sums);
  }
}

void RelatorEngine::sync_rotations() {
  for (; rotations_upto_ < relators_.size(); ++rotations_upto_) {
    const auto r = static_cast<std::uint32_t>(rotations_upto_);
    const std::size_t n = relators_[r].size();
    for (std::int32_t sign : {1, -1}) {
      for (std::uint32_t o = 0; o < n; ++o) {
        const Rotation rot{r, sign, o};
        by_first_[letter(rot, 0)].push_back(rot);
        by_last_[letter(rot, n - 1)].push_back(rot);
      }
    }
  }
}

void RelatorEngine::sync_graph() {
  for (; graph_upto_ < relators_.size(); ++graph_upto_) {
    std::set<int> gens;
    for (int v : relators_[graph_upto_]) gens.insert(std::abs(v));
    for (int g : gens) relators_of_[g].push_back(graph_upto_);
  }
}

std::optional<PermutationQuotient> RelatorEngine::abelian_separation(const GenWord& w) {
  if (w.empty()) return std::nullopt;
  sync_abelian();
  const auto sums = exponent_sums(w);
  for (const auto& m : abelian_) {
    const auto reduced = m.reduce(sums);
    if (reduced.empty()) continue;
    const auto values = m.solution(reduced.begin()->first, generators_);
    const int p = m.prime();
    PermutationQuotient q{static_cast<std::size_t>(p), {}};
    for (std::size_t g = 1; g <= generators_; ++g) {
      std::vector<int> img(static_cast<std::size_t>(p));
      for (int i = 0; i < p; ++i) img[static_cast<std::size_t>(i)] = (i + values[g]) % p;
      q.images.push_back(std::move(img));
    }
    return q;
  }
  return std::nullopt;
}

std::optional<Derivation> RelatorEngine::find_derivation(const GenWord& w, std::size_t bound) {
  if (w.empty()) return Derivation{};
  if (relators_.empty()) return std::nullopt;
  sync_rotations();

  struct Node {
    GenWord word;
    std::size_t parent;
    Rotation move;
    std::size_t position;
  };
  const std::size_t cap = std::max(w.size(), max_relator_) + max_relator_;
  std::vector<Node> nodes;
  std::unordered_map<GenWord, std::size_t, GenWordHash> seen;
  nodes.push_back({w, 0, {}, 0});
  seen.emplace(w, 0);

  auto reconstruct = [&](std::size_t idx) {
    std::vector<DerivationStep> rev;
    while (idx != 0) {
      const Node& n = nodes[idx];
      const GenWord& cur = nodes[n.parent].word;
      // conjugator = prefix * alpha^-1 where r^sign = alpha * beta and the
      // inserted rotation is beta * alpha.
      GenWord conj;
      for (std::size_t i = 0; i < n.position; ++i) reduce_into(conj, cur[i]);
      const Rotation start{n.move.relator, n.move.sign, 0};
      for (std::size_t i = n.move.offset; i-- > 0;) reduce_into(conj, -letter(start, i));
      rev.push_back({from_gen_word(conj), n.move.relator, n.move.sign});
      idx = n.parent;
    }
    std::reverse(rev.begin(), rev.end());
    return Derivation{std::move(rev)};
  };

  GenWord next;
  for (std::size_t head = 0, expanded = 0; head < nodes.size() && expanded < bound; ++head, ++expanded) {
    for (std::size_t pos = 0; pos <= nodes[head].word.size(); ++pos) {
      for (int side = 0; side < 2; ++side) {
        const std::vector<Rotation>* candidates = nullptr;
        {
          const GenWord& cur = nodes[head].word;
          if (side == 0 && pos < cur.size()) {
            auto it = by_last_.find(-cur[pos]);
            if (it != by_last_.end()) candidates = &it->second;
          } else if (side == 1 && pos > 0) {
            auto it = by_first_.find(-cur[pos - 1]);
            if (it != by_first_.end()) candidates = &it->second;
          }
        }
        if (!candidates) continue;
        for (const auto& rot : *candidates) {
          const GenWord& base = nodes[head].word;
          const std::size_t len = relators_[rot.relator].size();
          next.clear();
          for (std::size_t i = 0; i < pos; ++i) next.push_back(base[i]);
          for (std::size_t t = 0; t < len; ++t) reduce_into(next, letter(rot, t));
          for (std::size_t i = pos; i < base.size(); ++i) reduce_into(next, base[i]);
          if (next.size() > cap || seen.count(next)) continue;
          const std::size_t idx = nodes.size();
          seen.emplace(next, idx);
          nodes.push_back({next, head, rot, pos});
          if (nodes.back().word.empty()) return reconstruct(idx);
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<PermutationQuotient> RelatorEngine::permutation_separation(const GenWord& target) {
  if (target.empty()) return std::nullopt;
  sync_graph();

  // Generators connected to the word through shared relators; the rest map
  // to the identity. The word's own generators are assigned first.
  std::vector<int> order;
  std::set<int> component;
  for (int v : target) component.insert(std::abs(v));
  order.assign(component.begin(), component.end());
  std::set<std::size_t> rels;
  for (std::size_t head = 0; head < order.size(); ++head) {
    auto it = relators_of_.find(order[head]);
    if (it == relators_of_.end()) continue;
    for (std::size_t r : it->second) {
      if (!rels.insert(r).second) continue;
      std::set<int> fresh;
      for (int v : relators_[r])
        if (!component.count(std::abs(v))) fresh.insert(std::abs(v));
      for (int g : fresh) {
        component.insert(g);
        order.push_back(g);
      }
    }
  }
  std::unordered_map<int, std::size_t> position;
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
  auto trigger = [&](const GenWord& word) {
    std::size_t t = 0;
    for (int v : word) t = std::max(t, position.at(std::abs(v)));
    return t;
  };
  // Relators as position-indexed words, grouped by the level completing them.
  std::vector<std::vector<std::vector<std::pair<std::size_t, bool>>>> checks(order.size());
  auto encode = [&](const GenWord& word) {
    std::vector<std::pair<std::size_t, bool>> out;
    for (int v : word) out.push_back({position.at(std::abs(v)), v > 0});
    return out;
  };
  for (std::size_t r : rels) checks[trigger(relators_[r])].push_back(encode(relators_[r]));
  const std::size_t target_at = trigger(target);
  const auto target_code = encode(target);

  const std::size_t max_degree = std::min(max_degree_, kMaxDegree);
  for (std::size_t d = 3; d <= max_degree; ++d) {
    std::vector<Perm> perms;
    Perm p{};
    std::iota(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(d), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(d)));
    std::vector<Perm> inverses(perms.size());
    for (std::size_t i = 0; i < perms.size(); ++i)
      for (std::size_t j = 0; j < d; ++j) inverses[i][perms[i][j]] = static_cast<std::uint8_t>(j);

    std::vector<std::size_t> choice(order.size(), 0);
    auto is_identity = [&](const std::vector<std::pair<std::size_t, bool>>& word) {
      for (std::size_t start = 0; start < d; ++start) {
        std::uint8_t x = static_cast<std::uint8_t>(start);
        for (const auto& [pos, positive] : word) x = positive ? perms[choice[pos]][x] : inverses[choice[pos]][x];
        if (x != start) return false;
      }
      return true;
    };

    std::size_t nodes = 0;
    std::size_t level = 0;
    std::vector<std::size_t> next(order.size(), 0);
    bool found = false;
    while (true) {
      if (next[level] == perms.size()) {
        next[level] = 0;
        if (level == 0) break;
        --level;
        continue;
      }
      if (++nodes > quotient_budget_) break;
      choice[level] = next[level]++;
      bool ok = true;
      for (const auto& r : checks[level])
        if (!is_identity(r)) {
          ok = false;
          break;
        }
      if (ok && level == target_at) ok = !is_identity(target_code);
      if (!ok) continue;
      if (level + 1 == order.size()) {
        found = true;
        break;
      }
      ++level;
    }
    if (!found) continue;
    PermutationQuotient q{d, {}};
    for (std::size_t g = 1; g <= generators_; ++g) {
      std::vector<int> img(d);
      auto it = position.find(static_cast<int>(g));
      for (std::size_t i = 0; i < d; ++i)
        img[i] = it == position.end() ? static_cast<int>(i) : perms[choice[it->second]][i];
      q.images.push_back(std::move(img));
    }
    return q;
  }
  return std::nullopt;
}

}  // namespace genlab::detail
