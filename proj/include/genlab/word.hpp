// Words over variables and constants, free reduction, and systems of
// equations/inequations.
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace genlab {

/// Raised for malformed textual or JSON input; `position` is a byte offset
/// into the offending text (or npos when not applicable).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position = std::string::npos);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

enum class Sort : std::uint8_t { Variable, Constant };

/// A variable x_i or a natural-number constant c_n (both indices >= 1).
struct Symbol {
  Sort sort = Sort::Variable;
  std::uint32_t index = 1;

  static Symbol var(std::uint32_t i);
  static Symbol constant(std::uint32_t n);

  auto operator<=>(const Symbol&) const = default;
};

struct Letter {
  Symbol symbol;
  bool inverse = false;

  static Letter x(std::uint32_t i, bool inverse = false) { return {Symbol::var(i), inverse}; }
  static Letter c(std::uint32_t n, bool inverse = false) { return {Symbol::constant(n), inverse}; }

  Letter inverted() const { return {symbol, !inverse}; }
  bool cancels(const Letter& other) const {
    return symbol == other.symbol && inverse != other.inverse;
  }
  auto operator<=>(const Letter&) const = default;
};

/// A freely reduced word. Every constructor reduces its input, so a Word never
/// holds an adjacent cancelling pair.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);
  Word(std::initializer_list<Letter> letters) : Word(std::vector<Letter>(letters)) {}

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  /// Largest variable index occurring (0 if none).
  std::uint32_t arity() const;
  bool has_constants() const;
  bool has_variables() const;

  Word inverse() const;
  /// Cyclic reduction: strips matching inverse letters from both ends.
  Word cyclically_reduced() const;

  /// Shortlex order with positive letters before their inverses.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);
  friend bool operator==(const Word& a, const Word& b) = default;

 private:
  std::vector<Letter> letters_;
};

Word free_reduce(std::span<const Letter> letters);
Word operator*(const Word& a, const Word& b);
Word power(const Word& w, long long exponent);

/// Picks the smaller of w and w^-1; equations w = e and w^-1 = e coincide.
Word orientation_canonical(const Word& w);

Word parse_word(std::string_view text);
std::string render(const Word& w);

/// Variable index -> constant value.
using CoefficientAssignment = std::map<std::uint32_t, std::uint32_t>;

Word substitute(const Word& w, const CoefficientAssignment& a);

struct Equation {
  Word word;
  bool equal = true;  ///< true: word = e, false: word != e

  static Equation eq(Word w) { return {std::move(w), true}; }
  static Equation ne(Word w) { return {std::move(w), false}; }

  auto operator<=>(const Equation&) const = default;
  bool operator==(const Equation&) const = default;
};

std::string render(const Equation& e);

/// A finite set of clauses, kept in insertion order without duplicates.
class System {
 public:
  System() = default;
  explicit System(std::vector<Equation> clauses, std::uint32_t declared_arity = 0);

  const std::vector<Equation>& clauses() const noexcept { return clauses_; }
  std::size_t size() const noexcept { return clauses_.size(); }
  bool empty() const noexcept { return clauses_.empty(); }

  /// max(declared arity, largest variable index used).
  std::uint32_t arity() const noexcept { return arity_; }
  void declare_arity(std::uint32_t n);

  /// Returns false when the clause was already present.
  bool add(Equation e);
  void add_all(const System& other);
  /// Drops every clause after the first n.
  void truncate(std::size_t n);
  bool contains(const Equation& e) const;
  bool contains_all(const System& other) const;
  bool has_variables() const;

  /// Constants mentioned anywhere, ascending.
  std::vector<std::uint32_t> constants() const;

  friend bool operator==(const System& a, const System& b) {
    return a.arity_ == b.arity_ && a.clauses_ == b.clauses_;
  }

 private:
  std::vector<Equation> clauses_;
  std::set<Equation> index_;
  std::uint32_t arity_ = 0;
};

System system_substitute(const System& s, const CoefficientAssignment& a);

nlohmann::json to_json(const Equation& e);
nlohmann::json to_json(const System& s);
Equation equation_from_json(const nlohmann::json& j);
System system_from_json(const nlohmann::json& j);

}  // namespace genlab
