#include <algorithm>
#include <deque>
#include <unordered_map>

#include "genlab/forcing.hpp"

#include "relator_engine.hpp"

namespace genlab {

namespace {

GenWord constant_word(const Word& w) {
  GenWord out;
  out.reserve(w.size());
  for (const Letter& l : w) {
    if (l.symbol.sort != Sort::Constant) throw std::invalid_argument("clause " + render(w) + " contains a variable");
    const int i = static_cast<int>(l.symbol.index);
    out.push_back(l.inverse ? -i : i);
  }
  return out;
}

Word as_generators(const Word& w) { return from_gen_word(constant_word(w)); }

bool kills(const PermutationQuotient& q, const GenWord& r) {
  for (std::size_t start = 0; start < q.degree; ++start) {
    std::size_t x = start;
    for (int v : r) {
      const auto g = static_cast<std::size_t>(std::abs(v));
      if (g > q.images.size()) continue;
      const auto& img = q.images[g - 1];
      if (v > 0) {
        x = static_cast<std::size_t>(img[x]);
      } else {
        x = static_cast<std::size_t>(std::find(img.begin(), img.end(), static_cast<int>(x)) - img.begin());
      }
    }
    if (x != start) return false;
  }
  return true;
}

// Shortest u with r = u^k, k >= 2.
std::optional<GenWord> proper_root(const GenWord& r) {
  const std::size_t n = r.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = r[i] == r[i % d];
    if (periodic) return GenWord(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(d));
  }
  return std::nullopt;
}

}  // namespace

ConsistencyChecker::ConsistencyChecker(FpConfig config, ConsistencyClass cls)
    : config_(config),
      class_(cls),
      engine_(std::make_unique<detail::RelatorEngine>(1, config.max_degree, config.quotient_budget)) {}

ConsistencyChecker::ConsistencyChecker(const ConsistencyChecker& other)
    : config_(other.config_),
      class_(other.class_),
      system_(other.system_),
      relators_(other.relators_),
      relator_set_(other.relator_set_),
      engine_(std::make_unique<detail::RelatorEngine>(*other.engine_)),
      separations_(other.separations_),
      constants_(other.constants_) {}

ConsistencyChecker& ConsistencyChecker::operator=(const ConsistencyChecker& other) {
  if (this != &other) *this = ConsistencyChecker(other);
  return *this;
}

ConsistencyChecker::ConsistencyChecker(ConsistencyChecker&&) noexcept = default;
ConsistencyChecker& ConsistencyChecker::operator=(ConsistencyChecker&&) noexcept = default;
ConsistencyChecker::~ConsistencyChecker() = default;

void ConsistencyChecker::add(const Equation& e) {
  const GenWord g = constant_word(e.word);
  if (!system_.add(e)) return;
  for (int v : g) {
    constants_.insert(static_cast<std::uint32_t>(std::abs(v)));
    engine_->ensure_generators(static_cast<std::size_t>(std::abs(v)));
  }
  if (!e.equal) return;
  Word r = as_generators(e.word).cyclically_reduced();
  if (r.empty() || !relator_set_.insert(r).second) return;
  engine_->add_relator(to_gen_word(r));
  relators_.push_back(std::move(r));
}

void ConsistencyChecker::add_all(const System& s) {
  for (const auto& e : s.clauses()) add(e);
}

ConsistencyChecker::Checkpoint ConsistencyChecker::checkpoint() const {
  return {system_.size(), relators_.size(), engine_->generators(), constants_};
}

void ConsistencyChecker::rollback(const Checkpoint& cp) {
  system_.truncate(cp.clauses);
  while (relators_.size() > cp.relators) {
    relator_set_.erase(relators_.back());
    relators_.pop_back();
  }
  engine_->truncate(cp.relators, cp.generators);
  constants_ = cp.constants;
  for (auto& [w, sep] : separations_) sep.verified_upto = std::min(sep.verified_upto, cp.relators);
}

bool ConsistencyChecker::proves_trivial(const Word& w) {
  const GenWord g = constant_word(w);
  if (g.empty()) return true;
  for (int v : g) engine_->ensure_generators(static_cast<std::size_t>(std::abs(v)));
  if (engine_->abelian_separation(g)) return false;
  return engine_->find_derivation(g, config_.bound).has_value();
}

Verdict ConsistencyChecker::check(bool with_certificate) {
  const std::size_t bound = config_.bound;
  const auto& rels = engine_->relators();

  auto separated = [&](const Word& key, const GenWord& w) -> std::optional<PermutationQuotient> {
    if (auto q = engine_->abelian_separation(w)) return q;
    auto& cached = separations_[key];
    if (cached.quotient) {
      bool ok = true;
      for (std::size_t i = cached.verified_upto; i < rels.size() && ok; ++i) ok = kills(*cached.quotient, rels[i]);
      if (ok) {
        cached.verified_upto = rels.size();
        return cached.quotient;
      }
      cached.quotient.reset();
    }
    return std::nullopt;
  };
  auto search = [&](const Word& key, const GenWord& w) -> std::optional<PermutationQuotient> {
    auto q = engine_->permutation_separation(w);
    if (q) separations_[key] = {q, rels.size()};
    return q;
  };

  if (class_ == ConsistencyClass::TorsionFreeHeuristic) {
    for (std::size_t i = 0; i < rels.size(); ++i) {
      auto root = proper_root(rels[i]);
      if (!root) continue;
      const Word key = from_gen_word(*root);
      auto q = separated(key, *root);
      if (!q) q = search(key, *root);
      if (q)
        return Verdict::no({{"reason", "torsion"},
                            {"relator", render(relators_[i])},
                            {"root", render(key)},
                            {"quotient", to_json(*q)}},
                           bound);
    }
  }

  nlohmann::json seps = nlohmann::json::array();
  std::optional<Equation> undecided;
  for (const auto& clause : system_.clauses()) {
    if (clause.equal) continue;
    const GenWord w = constant_word(clause.word);
    if (w.empty()) return Verdict::no({{"reason", "trivial inequation"}, {"clause", to_json(clause)}}, bound);
    const Word key = from_gen_word(w);
    auto q = separated(key, w);
    if (!q) {
      if (auto d = engine_->find_derivation(w, bound))
        return Verdict::no({{"reason", "inequation proven trivial"},
                            {"clause", to_json(clause)},
                            {"derivation", to_json(*d)}},
                           bound);
      q = search(key, w);
    }
    if (!q) {
      if (!undecided) undecided = clause;
      continue;
    }
    if (with_certificate) seps.push_back({{"clause", to_json(clause)}, {"quotient", to_json(*q)}});
  }
  if (undecided) return Verdict::unknown(bound, {{"undecided", to_json(*undecided)}});
  if (!with_certificate) return Verdict::yes(nullptr, bound);
  return Verdict::yes({{"presentation", to_json(constant_presentation(system_))}, {"separations", seps}}, bound);
}

Verdict consistency_check(const System& s, ConsistencyClass cls, FpConfig config) {
  ConsistencyChecker c(config, cls);
  c.add_all(s);
  return c.check(true);
}

Presentation constant_presentation(const System& s) {
  std::size_t k = 1;
  std::vector<Word> rels;
  for (const auto& c : s.clauses()) {
    for (int v : constant_word(c.word)) k = std::max(k, static_cast<std::size_t>(std::abs(v)));
    if (!c.equal) continue;
    Word r = as_generators(c.word).cyclically_reduced();
    if (!r.empty() && std::find(rels.begin(), rels.end(), r) == rels.end()) rels.push_back(std::move(r));
  }
  return Presentation(k, std::move(rels));
}

// --- compilation ----------------------------------------------------------

namespace {

struct Letter2 {
  std::uint32_t c;
  bool inv;
};

std::string c(std::uint32_t v) { return "c" + std::to_string(v); }

using Pair = std::pair<std::uint32_t, std::uint32_t>;

// Non-owning reference to a callable producing a trace line.
class Reason {
 public:
  template <class F>
  Reason(const F& f) : obj_(&f), call_([](const void* o) { return (*static_cast<const F*>(o))(); }) {}
  std::string operator()() const { return call_(obj_); }

 private:
  const void* obj_;
  std::string (*call_)(const void*);
};

struct PairHash {
  std::size_t operator()(const Pair& p) const noexcept { return (std::size_t{p.first} << 32) ^ p.second; }
};

// Worklist closure: every newly stored product fact is queued once and only
// re-examines the laws it can take part in. Reasons are built only when a
// fact is new or contradicts, since most steps rediscover known facts.
class Compiler {
 public:
  PartialEnumeratedGroup run(const System& s, const System& extra = {}) {
    for (const auto& clause : s.clauses()) extract(clause);
    for (const auto& clause : extra.clauses())
      if (!s.contains(clause)) extract(clause);
    drain();
    for (const auto& [a, b] : g_.inequalities) {
      if (a == b) fail(c(a) + " != " + c(b));
      if (b == 0 && g_.identity && *g_.identity == a) fail(c(a) + " != e but " + c(a) + " is the identity");
    }
    return g_;
  }

 private:
  struct Equality {
    std::uint32_t a, b, d, c;
  };

  [[noreturn]] void fail(const std::string& why) {
    trace_.push_back(why);
    throw CompileError(why, trace_);
  }

  void set_identity(std::uint32_t e, Reason why) {
    if (g_.identity) {
      if (*g_.identity != e) fail(why() + ": " + c(e) + " and " + c(*g_.identity) + " would both be the identity");
      return;
    }
    g_.identity = e;
    trace_.push_back(why() + ": " + c(e) + " = e");
    const auto products = g_.products;
    for (const auto& [k, v] : products) {
      if (k.first == e && v != k.second) fail(c(e) + "*" + c(k.second) + " = " + c(v) + " contradicts identity");
      if (k.second == e && v != k.first) fail(c(k.first) + "*" + c(e) + " = " + c(v) + " contradicts identity");
      if (v == e) set_inverse(k.first, k.second, [&] { return c(k.first) + "*" + c(k.second) + " = e"; });
    }
    const auto inverses = g_.inverses;
    for (const auto& [a, b] : inverses) set_product(a, b, e, [a = a, b = b] { return c(a) + "^-1 = " + c(b); });
    for (std::size_t i = 0; i < equalities_.size(); ++i) equality(i);
  }

  void set_product(std::uint32_t a, std::uint32_t b, std::uint32_t k, Reason why) {
    if (g_.identity && (a == *g_.identity || b == *g_.identity)) {
      const std::uint32_t expected = a == *g_.identity ? b : a;
      if (expected != k) fail(why() + ": " + c(a) + "*" + c(b) + " = " + c(k) + " contradicts the identity law");
      return;
    }
    auto [it, fresh] = g_.products.emplace(Pair{a, b}, k);
    if (!fresh) {
      if (it->second != k) fail(why() + ": " + c(a) + "*" + c(b) + " is both " + c(it->second) + " and " + c(k));
      return;
    }
    trace_.push_back(why() + ": " + c(a) + "*" + c(b) + " = " + c(k));
    auto [l, lf] = left_quotient_.emplace(Pair{a, k}, b);
    if (!lf && l->second != b) fail("left cancellation forces " + c(b) + " = " + c(l->second));
    auto [r, rf] = right_quotient_.emplace(Pair{b, k}, a);
    if (!rf && r->second != a) fail("right cancellation forces " + c(a) + " = " + c(r->second));
    by_left_[a].push_back({b, k});
    by_right_[b].push_back({a, k});
    by_value_[k].push_back({a, b});
    queue_.push_back({a, b, k});
  }

  void set_inverse(std::uint32_t a, std::uint32_t b, Reason why) {
    for (auto [x, y] : {Pair{a, b}, Pair{b, a}}) {
      auto [it, fresh] = g_.inverses.emplace(x, y);
      if (!fresh && it->second != y) fail(why() + ": " + c(x) + " has inverses " + c(it->second) + " and " + c(y));
      if (!fresh) continue;
      trace_.push_back(why() + ": " + c(x) + "^-1 = " + c(y));
      const auto because = [x = x, y = y] { return c(x) + "^-1 = " + c(y); };
      if (g_.identity)
        set_product(x, y, *g_.identity, because);
      else if (auto p = g_.product(x, y))
        set_identity(*p, because);
    }
  }

  void equality(std::size_t i) {
    const auto [a, b, d, cc] = equalities_[i];
    const auto p1 = g_.product(a, b);
    const auto p2 = g_.product(d, cc);
    if (!p1 && !p2) return;
    const auto why = [&, a = a, b = b, d = d, cc = cc] { return c(a) + "*" + c(b) + " = " + c(d) + "*" + c(cc); };
    if (p1 && !p2) set_product(d, cc, *p1, why);
    if (p2 && !p1) set_product(a, b, *p2, why);
    if (p1 && p2 && *p1 != *p2) fail(why() + " but they are " + c(*p1) + " and " + c(*p2));
  }

  // (ab)c = a(bc) for one triple, given ab = x and bc = z.
  void associate(std::uint32_t a, std::uint32_t b, std::uint32_t cc, std::uint32_t x, std::uint32_t z) {
    const auto why = [=] { return "associativity on (" + c(a) + ", " + c(b) + ", " + c(cc) + ")"; };
    const auto left = g_.product(x, cc);
    const auto right = g_.product(a, z);
    if (left) set_product(a, z, *left, why);
    if (right && !left) set_product(x, cc, *right, why);
  }

  void process(std::uint32_t p, std::uint32_t q, std::uint32_t r) {
    const auto why = [=] { return c(p) + "*" + c(q) + " = " + c(r); };
    if (r == p) set_identity(q, why);
    if (r == q) set_identity(p, why);
    if (g_.identity && r == *g_.identity) set_inverse(p, q, why);
    if (!g_.identity)
      if (auto it = g_.inverses.find(p); it != g_.inverses.end() && it->second == q) set_identity(r, why);
    if (auto it = eq_index_.find({p, q}); it != eq_index_.end())
      for (auto i : std::vector<std::size_t>(it->second)) equality(i);
    // p q = r in each of the four positions of (ab)c = a(bc).
    if (auto it = by_left_.find(q); it != by_left_.end())
      for (auto [cc, z] : std::vector<Pair>(it->second)) associate(p, q, cc, r, z);
    if (auto it = by_right_.find(p); it != by_right_.end())
      for (auto [a, x] : std::vector<Pair>(it->second)) associate(a, p, q, x, r);
    if (auto it = by_value_.find(p); it != by_value_.end())
      for (auto [a, b] : std::vector<Pair>(it->second))
        if (auto z = g_.product(b, q)) associate(a, b, q, p, *z);
    if (auto it = by_value_.find(q); it != by_value_.end())
      for (auto [b, cc] : std::vector<Pair>(it->second))
        if (auto x = g_.product(p, b)) associate(p, b, cc, *x, q);
  }

  void drain() {
    while (!queue_.empty()) {
      const auto [p, q, r] = queue_.front();
      queue_.pop_front();
      process(p, q, r);
    }
  }

  void extract(const Equation& clause) {
    std::vector<Letter2> l;
    for (const Letter& x : clause.word) {
      if (x.symbol.sort != Sort::Constant) throw std::invalid_argument("compile needs constant-only clauses");
      l.push_back({x.symbol.index, x.inverse});
    }
    const auto why = [&] { return "clause " + render(clause); };
    auto invert = [&] {
      std::reverse(l.begin(), l.end());
      for (auto& x : l) x.inv = !x.inv;
    };
    auto inverses = [&] {
      return static_cast<std::size_t>(std::count_if(l.begin(), l.end(), [](const Letter2& x) { return x.inv; }));
    };
    if (!clause.equal) {
      if (l.size() == 1) g_.add_inequality(l[0].c, 0);
      if (l.size() == 2 && inverses() == 1) g_.add_inequality(l[0].c, l[1].c);
      return;
    }
    if (l.size() == 1) {
      set_identity(l[0].c, why);
    } else if (l.size() == 2) {
      if (inverses() == 1) fail(why() + ": " + c(l[0].c) + " = " + c(l[1].c));
      if (inverses() == 2) invert();
      set_inverse(l[0].c, l[1].c, why);
    } else if (l.size() == 3) {
      if (inverses() == 2) invert();
      if (inverses() != 1) return;
      while (!l[2].inv) std::rotate(l.begin(), l.begin() + 1, l.end());
      set_product(l[0].c, l[1].c, l[2].c, why);
    } else if (l.size() == 4) {
      for (int attempt = 0; attempt < 4; ++attempt) {
        if (!l[0].inv && !l[1].inv && l[2].inv && l[3].inv) {
          const std::size_t i = equalities_.size();
          equalities_.push_back({l[0].c, l[1].c, l[3].c, l[2].c});
          eq_index_[{l[0].c, l[1].c}].push_back(i);
          eq_index_[{l[3].c, l[2].c}].push_back(i);
          equality(i);
          return;
        }
        std::rotate(l.begin(), l.begin() + 1, l.end());
      }
    }
  }

  PartialEnumeratedGroup g_;
  std::vector<Equality> equalities_;
  std::unordered_map<Pair, std::vector<std::size_t>, PairHash> eq_index_;
  std::map<Pair, std::uint32_t> left_quotient_, right_quotient_;
  std::unordered_map<std::uint32_t, std::vector<Pair>> by_left_, by_right_, by_value_;
  std::deque<std::array<std::uint32_t, 3>> queue_;
  std::vector<std::string> trace_;
};

}  // namespace

PartialEnumeratedGroup compile(const System& s) { return Compiler().run(s); }

// --- game -----------------------------------------------------------------

std::string to_string(Player p) { return p == Player::I ? "I" : "II"; }

GameState::GameState(GameConfig config) : config_(config), checker_(config.fp, config.cls) {}

std::uint32_t GameState::fresh_constant() const { return fresh_constant(System{}); }

std::uint32_t GameState::fresh_constant(const System& extra) const {
  std::set<std::uint32_t> used = checker_.constants();
  for (auto v : extra.constants()) used.insert(v);
  std::uint32_t k = 1;
  while (used.count(k)) ++k;
  return k;
}

void GameState::play(const System& extension, std::optional<std::pair<std::uint32_t, std::uint32_t>> scheduled) {
  if (!extension.contains_all(system())) {
    for (const auto& c : system().clauses())
      if (!extension.contains(c)) throw IllegalMove("move drops the clause " + render(c));
  }
  System added;
  for (const auto& c : extension.clauses())
    if (!system().contains(c)) added.add(c);
  play_added(added, scheduled);
}

void GameState::play_added(const System& added, std::optional<std::pair<std::uint32_t, std::uint32_t>> scheduled) {
  if (added.has_variables()) throw IllegalMove("moves may only use constants");
  System fresh;
  for (const auto& c : added.clauses())
    if (!system().contains(c)) fresh.add(c);
  Verdict v = Verdict::yes();
  if (!fresh.empty()) {
    const auto cp = checker_.checkpoint();
    checker_.add_all(fresh);
    v = checker_.check();
    if (v.is_no()) {
      checker_.rollback(cp);
      throw IllegalMove("the move makes the system inconsistent", v.certificate);
    }
    try {
      compile(checker_.system());
    } catch (const CompileError& e) {
      checker_.rollback(cp);
      throw IllegalMove(std::string("the move identifies distinct constants: ") + e.what(), {{"trace", e.trace()}});
    }
  }
  log_.push_back({turn_, fresh, scheduled});
  if (scheduled) ++cursor_;
  turn_ = turn_ == Player::I ? Player::II : Player::I;
  last_check_ = v.outcome;
}

GameState play_move(GameState st, const System& extension) {
  st.play(extension);
  return st;
}

std::pair<std::uint32_t, std::uint32_t> diagonal_pair(std::size_t index) {
  std::uint32_t s = 2;
  while (index >= s - 1) {
    index -= s - 1;
    ++s;
  }
  const auto m = static_cast<std::uint32_t>(index + 1);
  return {m, s - m};
}

std::size_t diagonal_rounds_for(std::uint32_t bound) {
  if (bound == 0) return 0;
  const std::size_t s = 2 * static_cast<std::size_t>(bound);
  // Pairs on diagonals 2..s-1, then (1, s-1) .. (bound, bound).
  return (s - 2) * (s - 1) / 2 + bound;
}

System schedule_step(GameState& st, std::pair<std::uint32_t, std::uint32_t> pair, const System& pending) {
  const auto [m, n] = pair;
  try {
    if (Compiler().run(st.system(), pending).product(m, n)) return {};
  } catch (const CompileError&) {
  }
  auto product_word = [&](std::uint32_t k) { return Word{Letter::c(m), Letter::c(n), Letter::c(k, true)}; };
  System out;
  std::set<std::uint32_t> candidates = st.checker().constants();
  candidates.insert(m);
  candidates.insert(n);
  for (std::uint32_t k : candidates) {
    if (st.checker().proves_trivial(product_word(k))) {
      out.add(Equation::eq(product_word(k)));
      return out;
    }
  }
  System with_pair = pending;
  with_pair.add(Equation::eq(Word{Letter::c(m), Letter::c(n)}));
  out.add(Equation::eq(product_word(st.fresh_constant(with_pair))));
  return out;
}

GameState definitive_schedule(GameState st, std::size_t rounds) {
  for (std::size_t r = 0; r < rounds; ++r) {
    const auto pair = diagonal_pair(st.cursor());
    const System step = schedule_step(st, pair);
    st.play_added(step, pair);
  }
  return st;
}

namespace {

class OpenDense final : public Strategy {
 public:
  explicit OpenDense(System target) : target_(std::move(target)) {}
  std::string name() const override { return "open-dense"; }
  System respond(const GameState& st, const System& pending) const override {
    for (const auto& m : st.log())
      if (m.player == Player::II) return {};
    CoefficientAssignment a;
    System used = pending;
    for (std::uint32_t i = 1; i <= target_.arity(); ++i) {
      const std::uint32_t k = st.fresh_constant(used);
      a[i] = k;
      used.add(Equation::eq(Word{Letter::c(k)}));
    }
    return system_substitute(target_, a);
  }

 private:
  System target_;
};

class Centralizer final : public Strategy {
 public:
  std::string name() const override { return "centralizer"; }
  System respond(const GameState& st, const System& pending) const override {
    std::set<std::uint32_t> constants = st.checker().constants();
    for (auto v : pending.constants()) constants.insert(v);
    const std::uint32_t y = st.fresh_constant(pending);
    System out;
    for (auto a : constants)
      out.add(Equation::eq(Word{Letter::c(y), Letter::c(a), Letter::c(y, true), Letter::c(a, true)}));
    out.add(Equation::ne(Word{Letter::c(y)}));
    return out;
  }
};

}  // namespace

std::unique_ptr<Strategy> strategy_open_dense(System target) { return std::make_unique<OpenDense>(std::move(target)); }
std::unique_ptr<Strategy> strategy_centralizer() { return std::make_unique<Centralizer>(); }

System RandomOpponent::propose(const GameState& st) {
  const std::vector<std::uint32_t> cs(st.checker().constants().begin(), st.checker().constants().end());
  auto pick = [&] { return cs[rng_() % cs.size()]; };
  std::uint64_t kind = rng_() % 4;
  if (cs.empty() || (kind == 2 && cs.size() < 2)) kind = 3;
  System out;
  switch (kind) {
    case 0:
      out.add(Equation::ne(Word{Letter::c(pick())}));
      break;
    case 1: {
      const auto i = pick();
      const auto j = pick();
      out.add(Equation::eq(Word{Letter::c(i), Letter::c(j), Letter::c(st.fresh_constant(), true)}));
      break;
    }
    case 2: {
      const auto i = pick();
      auto j = pick();
      while (j == i) j = pick();
      out.add(Equation::ne(Word{Letter::c(i), Letter::c(j, true)}));
      break;
    }
    default:
      out.add(Equation::ne(Word{Letter::c(st.fresh_constant())}));
  }
  return out;
}

System RandomOpponent::move(GameState& st) {
  for (int attempt = 0; attempt < 5; ++attempt) {
    System proposal = propose(st);
    if (st.system().contains_all(proposal)) continue;
    try {
      st.play_added(proposal);
      return proposal;
    } catch (const IllegalMove&) {
    }
  }
  st.play_added({});
  return {};
}

void play_response(GameState& st, const Strategy& strategy) {
  const auto pair = diagonal_pair(st.cursor());
  const System step = schedule_step(st, pair);
  System added = step;
  added.add_all(strategy.respond(st, step));
  try {
    st.play_added(added, pair);
    return;
  } catch (const IllegalMove&) {
  }
  try {
    st.play_added(step, pair);
  } catch (const IllegalMove&) {
    st.play_added({}, pair);
  }
}

GameState auto_game(std::size_t rounds, const Strategy& strategy, std::uint64_t seed, GameConfig config) {
  GameState st(config);
  RandomOpponent opponent(seed);
  for (std::size_t r = 0; r < rounds; ++r) {
    opponent.move(st);
    play_response(st, strategy);
  }
  return st;
}

nlohmann::json game_log_to_json(const GameState& st) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& m : st.log()) {
    nlohmann::json entry{{"player", to_string(m.player)}, {"added_clauses", to_json(m.added)["clauses"]}};
    if (m.scheduled) entry["scheduled"] = {m.scheduled->first, m.scheduled->second};
    out.push_back(std::move(entry));
  }
  return out;
}

std::vector<GameMove> game_log_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("a game log is a JSON array of moves");
  std::vector<GameMove> out;
  for (const auto& m : j) {
    GameMove move;
    const auto player = m.at("player").get<std::string>();
    if (player != "I" && player != "II") throw ParseError("player must be \"I\" or \"II\"");
    move.player = player == "I" ? Player::I : Player::II;
    nlohmann::json sys = nlohmann::json::object();
    sys["arity"] = 0;
    sys["clauses"] = m.at("added_clauses");
    move.added = system_from_json(sys);
    if (m.contains("scheduled")) {
      const auto s = m["scheduled"].get<std::vector<std::uint32_t>>();
      if (s.size() != 2) throw ParseError("scheduled must be a pair");
      move.scheduled = std::pair{s[0], s[1]};
    }
    out.push_back(std::move(move));
  }
  return out;
}

GameState replay(const std::vector<GameMove>& log, GameConfig config) {
  GameState st(config);
  for (std::size_t i = 0; i < log.size(); ++i) {
    if (log[i].player != st.turn())
      throw IllegalMove("move " + std::to_string(i) + " is played out of turn");
    st.play_added(log[i].added, log[i].scheduled);
  }
  return st;
}

std::optional<std::size_t> audit(const GameState& st, GameConfig config) {
  const auto& log = st.log();
  auto inconsistent = [&](std::size_t prefix) {
    ConsistencyChecker c(config.fp, config.cls);
    for (std::size_t i = 0; i < prefix; ++i) c.add_all(log[i].added);
    return c.check().is_no();
  };
  if (log.empty() || !inconsistent(log.size())) return std::nullopt;
  std::size_t lo = 1, hi = log.size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (inconsistent(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo - 1;
}

}  // namespace genlab
