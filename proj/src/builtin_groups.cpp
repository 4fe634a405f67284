#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "genlab/group.hpp"

namespace genlab {
namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in group arithmetic");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in group arithmetic");
  return r;
}

class Trivial final : public GroupOracle {
 public:
  std::string name() const override { return "trivial"; }
  Element identity() const override { return {}; }
  Element mul(const Element&, const Element&) const override { return {}; }
  Element inv(const Element&) const override { return {}; }
  std::vector<Element> generators() const override { return {}; }
  std::optional<std::size_t> order() const override { return 1; }
  std::string render(const Element&) const override { return "e"; }
};

class IntegerLattice final : public GroupOracle {
 public:
  explicit IntegerLattice(std::size_t d) : d_(d) {
    if (d == 0) throw std::invalid_argument("Z^d needs d >= 1");
  }
  std::string name() const override { return d_ == 1 ? "Z" : "Z^" + std::to_string(d_); }
  Element identity() const override { return Element(std::vector<std::int64_t>(d_, 0)); }
  Element mul(const Element& a, const Element& b) const override {
    Element r = a;
    for (std::size_t i = 0; i < d_; ++i) r.data[i] = checked_add(r.data[i], b.data[i]);
    return r;
  }
  Element inv(const Element& a) const override {
    Element r = a;
    for (auto& v : r.data) v = -v;
    return r;
  }
  std::vector<Element> generators() const override {
    std::vector<Element> out;
    for (std::size_t i = 0; i < d_; ++i) {
      Element e = identity();
      e.data[i] = 1;
      out.push_back(e);
    }
    return out;
  }
  std::string render(const Element& a) const override {
    if (d_ == 1) return std::to_string(a.data[0]);
    return GroupOracle::render(a);
  }

 private:
  std::size_t d_;
};

// Letters of a reduced word encoded as +i / -i.
class FreeGroup final : public GroupOracle {
 public:
  explicit FreeGroup(std::size_t k) : k_(k) {
    if (k == 0) throw std::invalid_argument("F_k needs k >= 1");
  }
  std::string name() const override { return "F" + std::to_string(k_); }
  Element identity() const override { return {}; }
  Element mul(const Element& a, const Element& b) const override {
    Element r = a;
    for (auto v : b.data) {
      if (!r.data.empty() && r.data.back() == -v) {
        r.data.pop_back();
      } else {
        r.data.push_back(v);
      }
    }
    return r;
  }
  Element inv(const Element& a) const override {
    Element r;
    for (auto it = a.data.rbegin(); it != a.data.rend(); ++it) r.data.push_back(-*it);
    return r;
  }
  std::vector<Element> generators() const override {
    std::vector<Element> out;
    for (std::size_t i = 1; i <= k_; ++i) out.push_back(Element{static_cast<std::int64_t>(i)});
    return out;
  }
  std::string render(const Element& a) const override {
    std::vector<Letter> letters;
    for (auto v : a.data) letters.push_back(Letter::x(static_cast<std::uint32_t>(std::llabs(v)), v < 0));
    return genlab::render(Word(std::move(letters)));
  }

 private:
  std::size_t k_;
};

// BS(1,-1) in the normal form b^m a^l, with
// (b^m a^l)(b^p a^q) = b^(m+p) a^((-1)^p l + q).
class KleinBottleGroup final : public GroupOracle {
 public:
  std::string name() const override { return "BS(1,-1)"; }
  Element identity() const override { return {0, 0}; }
  Element mul(const Element& x, const Element& y) const override {
    const std::int64_t sign = (y.data[0] % 2 == 0) ? 1 : -1;
    return {checked_add(x.data[0], y.data[0]), checked_add(sign * x.data[1], y.data[1])};
  }
  Element inv(const Element& x) const override {
    const std::int64_t sign = (x.data[0] % 2 == 0) ? 1 : -1;
    return {-x.data[0], -sign * x.data[1]};
  }
  std::vector<Element> generators() const override { return {{0, 1}, {1, 0}}; }
  std::string render(const Element& x) const override {
    return "b^" + std::to_string(x.data[0]) + " a^" + std::to_string(x.data[1]);
  }
};

// BS(1,n) via the affine representation a: t -> t + 1, b: t -> t / n.
// Canonical form (p, m, q) stands for b^p a^m b^-q with p, q >= 0 and
// not (p > 0, q > 0, n | m).
class BaumslagSolitar final : public GroupOracle {
 public:
  explicit BaumslagSolitar(std::int64_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("BS(1,n) needs n != 0");
  }
  std::string name() const override { return "BS(1," + std::to_string(n_) + ")"; }
  Element identity() const override { return {0, 0, 0}; }
  Element mul(const Element& x, const Element& y) const override {
    const Affine a = to_affine(x);
    const Affine b = to_affine(y);
    // [[s1, r1], [0, 1]] * [[s2, r2], [0, 1]] = [[s1 s2, s1 r2 + r1], [0, 1]]
    return from_affine({a.k + b.k, add(shift(b.r, a.k), a.r)});
  }
  Element inv(const Element& x) const override {
    const Affine a = to_affine(x);
    Dyadic r = shift(a.r, -a.k);
    r.num = -r.num;
    return from_affine({-a.k, r});
  }
  std::vector<Element> generators() const override { return {{0, 1, 0}, {1, 0, 0}}; }
  std::string render(const Element& x) const override {
    return "b^" + std::to_string(x.data[0]) + " a^" + std::to_string(x.data[1]) + " b^-" +
           std::to_string(x.data[2]);
  }

 private:
  // num / n^e, e >= 0, reduced.
  struct Dyadic {
    std::int64_t num = 0;
    std::int64_t e = 0;
  };
  struct Affine {
    std::int64_t k = 0;  // scale n^k
    Dyadic r;
  };

  std::int64_t pow_n(std::int64_t e) const {
    std::int64_t r = 1;
    for (std::int64_t i = 0; i < e; ++i) r = checked_mul(r, n_);
    return r;
  }

  Dyadic normalize(Dyadic d) const {
    if (d.num == 0) return {0, 0};
    if (d.e < 0) {
      d.num = checked_mul(d.num, pow_n(-d.e));
      d.e = 0;
    }
    while (d.e > 0 && d.num % n_ == 0) {
      d.num /= n_;
      --d.e;
    }
    return d;
  }

  // Multiplies by n^j.
  Dyadic shift(Dyadic d, std::int64_t j) const {
    d.e -= j;
    return normalize(d);
  }

  Dyadic add(Dyadic a, Dyadic b) const {
    const std::int64_t e = std::max(a.e, b.e);
    const std::int64_t num =
        checked_add(checked_mul(a.num, pow_n(e - a.e)), checked_mul(b.num, pow_n(e - b.e)));
    return normalize({num, e});
  }

  Affine to_affine(const Element& x) const {
    const std::int64_t p = x.data[0], m = x.data[1], q = x.data[2];
    return {q - p, normalize({m, p})};
  }

  Element from_affine(const Affine& a) const {
    const std::int64_t p = std::max<std::int64_t>({a.r.e, -a.k, 0});
    const std::int64_t m = checked_mul(a.r.num, pow_n(p - a.r.e));
    return {p, m, a.k + p};
  }

  std::int64_t n_;
};

// Z/2 wr Z: [shift, lit positions ascending...].
class Lamplighter final : public GroupOracle {
 public:
  std::string name() const override { return "lamplighter"; }
  Element identity() const override { return {0}; }
  Element mul(const Element& x, const Element& y) const override {
    const std::int64_t s = x.data[0];
    std::set<std::int64_t> lamps(x.data.begin() + 1, x.data.end());
    for (auto it = y.data.begin() + 1; it != y.data.end(); ++it) {
      const std::int64_t p = checked_add(*it, s);
      if (!lamps.erase(p)) lamps.insert(p);
    }
    Element r{checked_add(s, y.data[0])};
    r.data.insert(r.data.end(), lamps.begin(), lamps.end());
    return r;
  }
  Element inv(const Element& x) const override {
    const std::int64_t s = x.data[0];
    Element r{-s};
    for (auto it = x.data.begin() + 1; it != x.data.end(); ++it) r.data.push_back(*it - s);
    return r;
  }
  std::vector<Element> generators() const override { return {{0, 0}, {1}}; }
  std::string render(const Element& x) const override {
    std::string s = "shift " + std::to_string(x.data[0]) + " lamps {";
    for (std::size_t i = 1; i < x.data.size(); ++i) s += (i > 1 ? "," : "") + std::to_string(x.data[i]);
    return s + "}";
  }
};

class FiniteTable final : public GroupOracle {
 public:
  FiniteTable(std::vector<std::vector<std::size_t>> table, std::optional<std::vector<std::size_t>> gens,
              std::string name)
      : table_(std::move(table)), name_(std::move(name)) {
    validate();
    if (gens) {
      for (auto g : *gens)
        if (g >= table_.size()) throw InvalidGroupTable("generator index out of range");
      gens_ = *gens;
    } else {
      gens_ = greedy_generators();
    }
  }

  std::string name() const override { return name_; }
  Element identity() const override { return {static_cast<std::int64_t>(identity_)}; }
  Element mul(const Element& a, const Element& b) const override {
    return {static_cast<std::int64_t>(table_.at(index(a)).at(index(b)))};
  }
  Element inv(const Element& a) const override { return {static_cast<std::int64_t>(inverse_.at(index(a)))}; }
  std::vector<Element> generators() const override {
    std::vector<Element> out;
    for (auto g : gens_) out.push_back({static_cast<std::int64_t>(g)});
    return out;
  }
  std::optional<std::size_t> order() const override { return table_.size(); }
  std::vector<Element> elements() const override {
    std::vector<Element> out;
    for (std::size_t i = 0; i < table_.size(); ++i) out.push_back({static_cast<std::int64_t>(i)});
    return out;
  }
  std::vector<Element> enumerate(std::size_t count) const override {
    auto all = elements();
    if (all.size() > count) all.resize(count);
    return all;
  }
  std::string render(const Element& a) const override { return std::to_string(a.data.at(0)); }

  const std::vector<std::vector<std::size_t>>& table() const { return table_; }

 private:
  static std::size_t index(const Element& a) {
    if (a.data.size() != 1 || a.data[0] < 0) throw std::invalid_argument("not a finite-table element");
    return static_cast<std::size_t>(a.data[0]);
  }

  void validate() {
    const std::size_t n = table_.size();
    if (n == 0) throw InvalidGroupTable("closure: empty table");
    for (std::size_t i = 0; i < n; ++i) {
      if (table_[i].size() != n) throw InvalidGroupTable("closure: table is not square");
      for (std::size_t j = 0; j < n; ++j)
        if (table_[i][j] >= n)
          throw InvalidGroupTable("closure: " + std::to_string(i) + "*" + std::to_string(j) +
                                  " is outside the table");
    }
    std::optional<std::size_t> e;
    for (std::size_t i = 0; i < n && !e; ++i) {
      bool ok = true;
      for (std::size_t j = 0; j < n && ok; ++j) ok = table_[i][j] == j && table_[j][i] == j;
      if (ok) e = i;
    }
    if (!e) throw InvalidGroupTable("identity: no two-sided identity element");
    identity_ = *e;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
            throw InvalidGroupTable("associativity: fails on (" + std::to_string(a) + "," +
                                    std::to_string(b) + "," + std::to_string(c) + ")");
    inverse_.assign(n, n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b)
        if (table_[a][b] == identity_ && table_[b][a] == identity_) {
          inverse_[a] = b;
          break;
        }
      if (inverse_[a] == n) throw InvalidGroupTable("inverses: element " + std::to_string(a) + " has no inverse");
    }
  }

  std::vector<std::size_t> greedy_generators() const {
    const std::size_t n = table_.size();
    std::vector<std::size_t> gens;
    std::vector<bool> in_subgroup(n, false);
    in_subgroup[identity_] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (in_subgroup[i]) continue;
      gens.push_back(i);
      std::vector<std::size_t> members;
      for (std::size_t j = 0; j < n; ++j)
        if (in_subgroup[j]) members.push_back(j);
      // Close under right multiplication by all generators.
      std::vector<std::size_t> frontier = members;
      while (!frontier.empty()) {
        std::vector<std::size_t> next;
        for (auto x : frontier)
          for (auto g : gens) {
            const auto y = table_[x][g];
            if (!in_subgroup[y]) {
              in_subgroup[y] = true;
              next.push_back(y);
            }
          }
        frontier = std::move(next);
      }
    }
    return gens;
  }

  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inverse_;
  std::vector<std::size_t> gens_;
  std::size_t identity_ = 0;
  std::string name_;
};

template <class T, class Mul>
std::vector<std::vector<std::size_t>> table_from_closure(const T& id, const std::vector<T>& gens, Mul mul) {
  std::vector<T> elems{id};
  std::map<T, std::size_t> index{{id, 0}};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& g : gens) {
      T y = mul(elems[i], g);
      if (!index.count(y)) {
        index.emplace(y, elems.size());
        elems.push_back(y);
      }
    }
  }
  std::vector<std::vector<std::size_t>> table(elems.size(), std::vector<std::size_t>(elems.size()));
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j) table[i][j] = index.at(mul(elems[i], elems[j]));
  return table;
}

using Perm = std::vector<int>;

std::vector<std::vector<std::size_t>> permutation_table(const std::vector<Perm>& gens) {
  Perm id(gens.front().size());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
  return table_from_closure(id, gens, [](const Perm& a, const Perm& b) {
    Perm r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[static_cast<std::size_t>(a[i])];
    return r;
  });
}

using Quaternion = std::array<int, 4>;

Quaternion hamilton(const Quaternion& p, const Quaternion& q) {
  return {p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
          p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
          p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
          p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]};
}

std::vector<std::vector<std::size_t>> cyclic_table(std::size_t n) {
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return t;
}

}  // namespace

OraclePtr make_trivial() { return std::make_shared<Trivial>(); }
OraclePtr make_integer_lattice(std::size_t d) { return std::make_shared<IntegerLattice>(d); }
OraclePtr make_free_group(std::size_t k) { return std::make_shared<FreeGroup>(k); }
OraclePtr make_baumslag_solitar(std::int64_t n) {
  if (n == -1) return std::make_shared<KleinBottleGroup>();
  return std::make_shared<BaumslagSolitar>(n);
}
OraclePtr make_lamplighter() { return std::make_shared<Lamplighter>(); }

OraclePtr make_finite_table(std::vector<std::vector<std::size_t>> table,
                            std::optional<std::vector<std::size_t>> generators, std::string name) {
  return std::make_shared<FiniteTable>(std::move(table), std::move(generators), std::move(name));
}

OraclePtr make_cyclic(std::size_t n) {
  if (n == 0) throw std::invalid_argument("Z/n needs n >= 1");
  return make_finite_table(cyclic_table(n), std::nullopt, "Z/" + std::to_string(n));
}

std::vector<std::vector<std::size_t>> product_table(const std::vector<std::vector<std::size_t>>& a,
                                                    const std::vector<std::vector<std::size_t>>& b) {
  const std::size_t na = a.size(), nb = b.size();
  std::vector<std::vector<std::size_t>> t(na * nb, std::vector<std::size_t>(na * nb));
  for (std::size_t i = 0; i < na * nb; ++i)
    for (std::size_t j = 0; j < na * nb; ++j) t[i][j] = a[i / nb][j / nb] * nb + b[i % nb][j % nb];
  return t;
}

std::vector<std::pair<std::string, OraclePtr>> small_finite_groups() {
  std::vector<std::pair<std::string, OraclePtr>> out;
  out.emplace_back("trivial", make_finite_table({{0}}, std::nullopt, "trivial"));
  for (std::size_t n = 2; n <= 8; ++n) out.emplace_back("Z/" + std::to_string(n), make_cyclic(n));
  out.emplace_back("K4", make_finite_table(product_table(cyclic_table(2), cyclic_table(2)), std::nullopt, "K4"));
  out.emplace_back("Z4xZ2", make_finite_table(product_table(cyclic_table(4), cyclic_table(2)), std::nullopt, "Z4xZ2"));
  out.emplace_back("Z2^3", make_finite_table(product_table(product_table(cyclic_table(2), cyclic_table(2)),
                                                           cyclic_table(2)),
                                             std::nullopt, "Z2^3"));
  out.emplace_back("S3", make_finite_table(permutation_table({{1, 2, 0}, {1, 0, 2}}), std::nullopt, "S3"));
  out.emplace_back("D4", make_finite_table(permutation_table({{1, 2, 3, 0}, {0, 3, 2, 1}}), std::nullopt, "D4"));
  out.emplace_back("Q8", make_finite_table(table_from_closure(Quaternion{1, 0, 0, 0},
                                                              {Quaternion{0, 1, 0, 0}, Quaternion{0, 0, 1, 0}},
                                                              hamilton),
                                           std::nullopt, "Q8"));
  return out;
}

OraclePtr builtin(const std::string& raw) {
  std::string name = raw;
  if (name.size() > 6 && name.ends_with("-table")) name.resize(name.size() - 6);
  std::smatch m;
  if (name == "trivial") return make_trivial();
  if (name == "Z") return make_integer_lattice(1);
  if (name == "lamplighter") return make_lamplighter();
  if (std::regex_match(name, m, std::regex(R"(Z\^([0-9]+))"))) return make_integer_lattice(std::stoul(m[1]));
  if (std::regex_match(name, m, std::regex(R"(F_?([0-9]+))"))) return make_free_group(std::stoul(m[1]));
  if (std::regex_match(name, m, std::regex(R"(BS\(1, *(-?[0-9]+)\))")))
    return make_baumslag_solitar(std::stoll(m[1]));
  if (std::regex_match(name, m, std::regex(R"(Z/([0-9]+))"))) return make_cyclic(std::stoul(m[1]));
  for (auto& [n, g] : small_finite_groups())
    if (n == name) return g;
  throw std::invalid_argument("unknown group name '" + raw + "'");
}

std::optional<FiniteTableView> finite_table_of(const GroupOracle& g) {
  if (auto* t = dynamic_cast<const FiniteTable*>(&g)) return FiniteTableView{&t->table()};
  return std::nullopt;
}

OraclePtr finite_table_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("table") || !j["table"].is_array())
    throw ParseError("finite group must be an object with a \"table\" array");
  auto indices = [](const nlohmann::json& row, const char* what) {
    if (!row.is_array()) throw ParseError(std::string(what) + " must be an array of non-negative integers");
    std::vector<std::size_t> out;
    for (const auto& v : row) {
      if (!v.is_number_unsigned()) throw ParseError(std::string(what) + " must be an array of non-negative integers");
      out.push_back(v.get<std::size_t>());
    }
    return out;
  };
  std::vector<std::vector<std::size_t>> table;
  for (const auto& row : j["table"]) table.push_back(indices(row, "each \"table\" row"));
  std::optional<std::vector<std::size_t>> gens;
  if (j.contains("generators")) gens = indices(j["generators"], "\"generators\"");
  const std::string name = j.value("name", std::string("finite"));
  return make_finite_table(std::move(table), std::move(gens), name);
}

}  // namespace genlab
