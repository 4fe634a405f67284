#include "genlab/word.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <set>
#include <sstream>

namespace genlab {

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::runtime_error(position == std::string::npos
                             ? what
                             : what + " (at position " + std::to_string(position) + ")"),
      position_(position) {}

Symbol Symbol::var(std::uint32_t i) {
  if (i == 0) throw std::invalid_argument("variable index must be positive");
  return {Sort::Variable, i};
}

Symbol Symbol::constant(std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("constant must be positive");
  return {Sort::Constant, n};
}

Word free_reduce(std::span<const Letter> letters) {
  std::vector<Letter> stack;
  stack.reserve(letters.size());
  for (const Letter& l : letters) {
    if (!stack.empty() && stack.back().cancels(l)) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  return Word(std::move(stack));
}

Word::Word(std::vector<Letter> letters) {
  std::size_t top = 0;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (top > 0 && letters[top - 1].cancels(letters[i])) {
      --top;
    } else {
      letters[top++] = letters[i];
    }
  }
  letters.resize(top);
  letters_ = std::move(letters);
}

std::uint32_t Word::arity() const {
  std::uint32_t n = 0;
  for (const Letter& l : letters_)
    if (l.symbol.sort == Sort::Variable) n = std::max(n, l.symbol.index);
  return n;
}

bool Word::has_constants() const {
  return std::any_of(letters_.begin(), letters_.end(),
                     [](const Letter& l) { return l.symbol.sort == Sort::Constant; });
}

bool Word::has_variables() const {
  return std::any_of(letters_.begin(), letters_.end(),
                     [](const Letter& l) { return l.symbol.sort == Sort::Variable; });
}

Word Word::inverse() const {
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(it->inverted());
  return Word(std::move(out));
}

Word Word::cyclically_reduced() const {
  std::size_t lo = 0;
  std::size_t hi = letters_.size();
  while (hi - lo >= 2 && letters_[lo].cancels(letters_[hi - 1])) {
    ++lo;
    --hi;
  }
  return Word(std::vector<Letter>(letters_.begin() + static_cast<std::ptrdiff_t>(lo),
                                  letters_.begin() + static_cast<std::ptrdiff_t>(hi)));
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.letters_.begin(), a.letters_.end(),
                                                b.letters_.begin(), b.letters_.end());
}

Word operator*(const Word& a, const Word& b) {
  std::vector<Letter> all(a.letters());
  all.insert(all.end(), b.begin(), b.end());
  return Word(std::move(all));
}

Word power(const Word& w, long long exponent) {
  const Word base = exponent < 0 ? w.inverse() : w;
  const long long n = exponent < 0 ? -exponent : exponent;
  std::vector<Letter> all;
  all.reserve(base.size() * static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) all.insert(all.end(), base.begin(), base.end());
  return Word(std::move(all));
}

Word orientation_canonical(const Word& w) {
  Word inv = w.inverse();
  return inv < w ? inv : w;
}

namespace {

class WordParser {
 public:
  explicit WordParser(std::string_view text) : text_(text) {}

  Word parse() {
    skip_space();
    if (at_end()) throw ParseError("empty word text", pos_);
    if (peek() == 'e') {
      ++pos_;
      skip_space();
      if (!at_end()) throw ParseError("unexpected input after 'e'", pos_);
      return Word();
    }
    std::vector<Letter> letters;
    parse_term(letters);
    skip_space();
    while (!at_end()) {
      if (peek() != '*') throw ParseError("expected '*'", pos_);
      ++pos_;
      skip_space();
      parse_term(letters);
      skip_space();
    }
    return Word(std::move(letters));
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  std::uint64_t parse_digits(const char* what) {
    const std::size_t start = pos_;
    std::uint64_t value = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + static_cast<std::uint64_t>(peek() - '0');
      if (value > std::numeric_limits<std::uint32_t>::max())
        throw ParseError(std::string(what) + " too large", start);
      ++pos_;
    }
    if (pos_ == start) throw ParseError(std::string("expected ") + what, start);
    return value;
  }

  void parse_term(std::vector<Letter>& out) {
    skip_space();
    if (at_end()) throw ParseError("expected 'x' or 'c'", pos_);
    const std::size_t start = pos_;
    const char head = peek();
    if (head != 'x' && head != 'c') throw ParseError("expected 'x' or 'c'", pos_);
    ++pos_;
    const auto index = parse_digits("index");
    if (index == 0)
      throw ParseError(head == 'x' ? "variable index 0 is not allowed" : "constant 0 is not allowed",
                       start);
    const Symbol sym = head == 'x' ? Symbol::var(static_cast<std::uint32_t>(index))
                                   : Symbol::constant(static_cast<std::uint32_t>(index));
    long long exponent = 1;
    skip_space();
    if (!at_end() && peek() == '^') {
      ++pos_;
      skip_space();
      bool negative = false;
      if (!at_end() && (peek() == '-' || peek() == '+')) {
        negative = peek() == '-';
        ++pos_;
      }
      const auto magnitude = parse_digits("exponent");
      if (magnitude > 1'000'000) throw ParseError("exponent too large", start);
      exponent = negative ? -static_cast<long long>(magnitude) : static_cast<long long>(magnitude);
    }
    const Letter l{sym, exponent < 0};
    for (long long i = 0; i < (exponent < 0 ? -exponent : exponent); ++i) out.push_back(l);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(std::string_view text) { return WordParser(text).parse(); }

std::string render(const Word& w) {
  if (w.empty()) return "e";
  std::ostringstream os;
  std::size_t i = 0;
  bool first = true;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!first) os << '*';
    first = false;
    const Letter& l = w[i];
    os << (l.symbol.sort == Sort::Variable ? 'x' : 'c') << l.symbol.index;
    const std::size_t run = j - i;
    if (l.inverse) {
      os << "^-" << run;
    } else if (run > 1) {
      os << '^' << run;
    }
    i = j;
  }
  return os.str();
}

Word substitute(const Word& w, const CoefficientAssignment& a) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (const Letter& l : w) {
    if (l.symbol.sort == Sort::Variable) {
      auto it = a.find(l.symbol.index);
      if (it == a.end())
        throw std::invalid_argument("no assignment for variable x" + std::to_string(l.symbol.index));
      out.push_back(Letter::c(it->second, l.inverse));
    } else {
      out.push_back(l);
    }
  }
  return Word(std::move(out));
}

std::string render(const Equation& e) {
  return render(e.word) + (e.equal ? " = e" : " != e");
}

System::System(std::vector<Equation> clauses, std::uint32_t declared_arity) {
  arity_ = declared_arity;
  for (auto& c : clauses) add(std::move(c));
}

void System::declare_arity(std::uint32_t n) { arity_ = std::max(arity_, n); }

bool System::add(Equation e) {
  if (!index_.insert(e).second) return false;
  arity_ = std::max(arity_, e.word.arity());
  clauses_.push_back(std::move(e));
  return true;
}

void System::add_all(const System& other) {
  declare_arity(other.arity());
  for (const auto& c : other.clauses()) add(c);
}

void System::truncate(std::size_t n) {
  while (clauses_.size() > n) {
    index_.erase(clauses_.back());
    clauses_.pop_back();
  }
}

bool System::contains(const Equation& e) const {
  return index_.count(e) > 0;
}

bool System::contains_all(const System& other) const {
  return std::all_of(other.clauses().begin(), other.clauses().end(),
                     [&](const Equation& e) { return contains(e); });
}

bool System::has_variables() const {
  return std::any_of(clauses_.begin(), clauses_.end(),
                     [](const Equation& e) { return e.word.has_variables(); });
}

std::vector<std::uint32_t> System::constants() const {
  std::set<std::uint32_t> seen;
  for (const auto& c : clauses_)
    for (const Letter& l : c.word)
      if (l.symbol.sort == Sort::Constant) seen.insert(l.symbol.index);
  return {seen.begin(), seen.end()};
}

System system_substitute(const System& s, const CoefficientAssignment& a) {
  for (std::uint32_t i = 1; i <= s.arity(); ++i)
    if (!a.count(i))
      throw std::invalid_argument("no assignment for variable x" + std::to_string(i));
  System out;
  for (const auto& c : s.clauses()) out.add({substitute(c.word, a), c.equal});
  return out;
}

nlohmann::json to_json(const Equation& e) {
  return {{"word", render(e.word)}, {"eq", e.equal}};
}

nlohmann::json to_json(const System& s) {
  nlohmann::json clauses = nlohmann::json::array();
  for (const auto& c : s.clauses()) clauses.push_back(to_json(c));
  return {{"arity", s.arity()}, {"clauses", clauses}};
}

Equation equation_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("word") || !j["word"].is_string())
    throw ParseError("clause must be an object with a string \"word\"");
  bool equal = true;
  if (j.contains("eq")) {
    if (!j["eq"].is_boolean()) throw ParseError("clause field \"eq\" must be a boolean");
    equal = j["eq"].get<bool>();
  }
  return {parse_word(j["word"].get<std::string>()), equal};
}

System system_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("clauses") || !j["clauses"].is_array())
    throw ParseError("system must be an object with a \"clauses\" array");
  std::uint32_t arity = 0;
  if (j.contains("arity")) {
    if (!j["arity"].is_number_integer() || j["arity"].get<std::int64_t>() < 0) throw ParseError("\"arity\" must be a non-negative integer");
    arity = j["arity"].get<std::uint32_t>();
  }
  System s({}, arity);
  for (const auto& c : j["clauses"]) s.add(equation_from_json(c));
  return s;
}

}  // namespace genlab
