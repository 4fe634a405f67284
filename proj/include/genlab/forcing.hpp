// Consistency of constant systems, compilation into partial enumerated
// groups, and the two-player forcing game.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "genlab/partial_group.hpp"
#include "genlab/presentation.hpp"

namespace genlab {

enum class ConsistencyClass { All, TorsionFreeHeuristic };

namespace detail {
class RelatorEngine;
}

/// Incremental consistency test for a growing system over constants. The
/// constant c_i is read as the generator x_i of a presentation whose
/// relators are the equations; each inequation must then be separated by a
/// finite quotient (Yes), proven trivial (No), or neither (Unknown).
class ConsistencyChecker {
 public:
  explicit ConsistencyChecker(FpConfig config = {}, ConsistencyClass cls = ConsistencyClass::All);
  ConsistencyChecker(const ConsistencyChecker& other);
  ConsistencyChecker& operator=(const ConsistencyChecker& other);
  ConsistencyChecker(ConsistencyChecker&&) noexcept;
  ConsistencyChecker& operator=(ConsistencyChecker&&) noexcept;
  ~ConsistencyChecker();

  /// Throws std::invalid_argument for clauses with variables.
  void add(const Equation& e);
  void add_all(const System& s);
  const System& system() const noexcept { return system_; }

  Verdict check(bool with_certificate = false);

  /// True when w = e follows from the equations by a derivation within the bound.
  bool proves_trivial(const Word& w);

  /// Constants occurring in the system.
  const std::set<std::uint32_t>& constants() const noexcept { return constants_; }

  const FpConfig& config() const noexcept { return config_; }

  struct Checkpoint {
    std::size_t clauses = 0;
    std::size_t relators = 0;
    std::size_t generators = 0;
    std::set<std::uint32_t> constants;
  };
  Checkpoint checkpoint() const;
  /// Undoes every add since `cp` was taken.
  void rollback(const Checkpoint& cp);

 private:
  struct Separation {
    std::optional<PermutationQuotient> quotient;
    std::size_t verified_upto = 0;
  };

  FpConfig config_;
  ConsistencyClass class_;
  System system_;
  std::vector<Word> relators_;
  std::set<Word> relator_set_;
  std::unique_ptr<detail::RelatorEngine> engine_;
  std::map<Word, Separation> separations_;
  std::set<std::uint32_t> constants_;
};

Verdict consistency_check(const System& s, ConsistencyClass cls = ConsistencyClass::All, FpConfig config = {});

/// Presentation read off a constant system: c_i becomes x_i, equations
/// become relators.
Presentation constant_presentation(const System& s);

class CompileError : public std::runtime_error {
 public:
  CompileError(const std::string& what, std::vector<std::string> trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const std::vector<std::string>& trace() const noexcept { return trace_; }

 private:
  std::vector<std::string> trace_;
};

/// Extracts identity, product, inverse and inequality facts from clauses of
/// the recognised shapes and closes them under the group laws. Distinct
/// constants name distinct elements, so any derived equality between two of
/// them raises CompileError.
PartialEnumeratedGroup compile(const System& s);

enum class Player { I, II };
std::string to_string(Player p);

struct GameMove {
  Player player = Player::I;
  System added;
  /// Scheduler pair handled by this move, if any.
  std::optional<std::pair<std::uint32_t, std::uint32_t>> scheduled;
};

struct GameConfig {
  FpConfig fp{50, 4, 2000};
  ConsistencyClass cls = ConsistencyClass::All;
};

class IllegalMove : public std::runtime_error {
 public:
  IllegalMove(const std::string& what, nlohmann::json certificate = nullptr)
      : std::runtime_error(what), certificate_(std::move(certificate)) {}
  const nlohmann::json& certificate() const noexcept { return certificate_; }

 private:
  nlohmann::json certificate_;
};

class GameState {
 public:
  explicit GameState(GameConfig config = {});

  const System& system() const noexcept { return checker_.system(); }
  Player turn() const noexcept { return turn_; }
  const std::vector<GameMove>& log() const noexcept { return log_; }
  /// Index of the next pair in the diagonal order.
  std::size_t cursor() const noexcept { return cursor_; }
  const GameConfig& config() const noexcept { return config_; }
  /// Outcome of the last accepted move's consistency check.
  Outcome last_check() const noexcept { return last_check_; }

  /// Least positive integer not used as a constant.
  std::uint32_t fresh_constant() const;
  std::uint32_t fresh_constant(const System& extra) const;

  /// Plays `extension` (a superset of the current system) for the player to
  /// move. Throws IllegalMove for non-extensions and proven inconsistencies.
  void play(const System& extension, std::optional<std::pair<std::uint32_t, std::uint32_t>> scheduled = {});
  /// Same, given only the new clauses.
  void play_added(const System& added, std::optional<std::pair<std::uint32_t, std::uint32_t>> scheduled = {});

  ConsistencyChecker& checker() noexcept { return checker_; }
  const ConsistencyChecker& checker() const noexcept { return checker_; }

 private:
  GameConfig config_;
  ConsistencyChecker checker_;
  Player turn_ = Player::I;
  std::vector<GameMove> log_;
  std::size_t cursor_ = 0;
  Outcome last_check_ = Outcome::Yes;
};

GameState play_move(GameState st, const System& extension);

/// Pair (m, n) at position `index` of the diagonal order: m + n = 2, 3, ...
/// and m ascending within a diagonal.
std::pair<std::uint32_t, std::uint32_t> diagonal_pair(std::size_t index);
/// 1-based round at which the diagonal order has covered every pair with
/// m, n <= bound.
std::size_t diagonal_rounds_for(std::uint32_t bound);

/// Clauses the scheduler adds for the pair at the state's cursor (empty when
/// the compiled group already multiplies them): c_m c_n = c_k with the
/// least existing k proven to work, else the least unused constant.
System schedule_step(GameState& st, std::pair<std::uint32_t, std::uint32_t> pair, const System& pending = {});

/// Plays `rounds` scheduler steps, one move each.
GameState definitive_schedule(GameState st, std::size_t rounds);

class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::string name() const = 0;
  /// Clauses to add in reply; `pending` holds clauses already chosen for the
  /// same move.
  virtual System respond(const GameState& st, const System& pending) const = 0;
};

/// Plays `target` on fresh constants in player II's first reply.
std::unique_ptr<Strategy> strategy_open_dense(System target);
/// Each reply adds a fresh y with y c = c y for every constant c so far and y != e.
std::unique_ptr<Strategy> strategy_centralizer();

/// Random legal-looking moves for player I.
class RandomOpponent {
 public:
  explicit RandomOpponent(std::uint64_t seed) : rng_(seed) {}
  /// Up to five attempts; returns the accepted clauses (empty for a pass).
  System move(GameState& st);

 private:
  System propose(const GameState& st);
  std::mt19937_64 rng_;
};

/// Player II's reply: the strategy's clauses plus one scheduler step.
void play_response(GameState& st, const Strategy& strategy);

GameState auto_game(std::size_t rounds, const Strategy& strategy, std::uint64_t seed, GameConfig config = {});

nlohmann::json game_log_to_json(const GameState& st);
std::vector<GameMove> game_log_from_json(const nlohmann::json& j);
GameState replay(const std::vector<GameMove>& log, GameConfig config = {});

/// Earliest move whose cumulative system is proven inconsistent at `config`.
std::optional<std::size_t> audit(const GameState& st, GameConfig config);

/// Existential closedness of G in H up to the bounds, by comparing the sets of
/// diagrams (which words over parameters and variables are trivial) realised
/// by tuples. `embedding[i]` is the image of G.elements()[i].
Verdict is_ec_in(const GroupOracle& g, const GroupOracle& h, const std::vector<Element>& embedding,
                 std::size_t max_vars, std::size_t max_len);

/// The parameter constant naming element `index` of G.elements() (the
/// identity has no name).
std::optional<std::uint32_t> ec_parameter(const GroupOracle& g, std::size_t index);

}  // namespace genlab
