// Three-valued answers for semi-decidable questions.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace genlab {

enum class Outcome { Yes, No, Unknown };

std::string to_string(Outcome o);

/// Yes/No carry a certificate that the producing module can re-verify;
/// Unknown always records the search bound at which it was produced.
struct Verdict {
  Outcome outcome = Outcome::Unknown;
  nlohmann::json certificate;
  std::size_t bound = 0;

  static Verdict yes(nlohmann::json cert = nullptr, std::size_t bound = 0) {
    return {Outcome::Yes, std::move(cert), bound};
  }
  static Verdict no(nlohmann::json cert = nullptr, std::size_t bound = 0) {
    return {Outcome::No, std::move(cert), bound};
  }
  static Verdict unknown(std::size_t bound, nlohmann::json info = nullptr) {
    return {Outcome::Unknown, std::move(info), bound};
  }

  bool is_yes() const noexcept { return outcome == Outcome::Yes; }
  bool is_no() const noexcept { return outcome == Outcome::No; }
  bool is_unknown() const noexcept { return outcome == Outcome::Unknown; }
};

nlohmann::json to_json(const Verdict& v);

/// Thrown by operations whose contract is two-valued when an oracle equality
/// query came back Unknown.
class UndecidedError : public std::runtime_error {
 public:
  UndecidedError(const std::string& what, std::size_t bound)
      : std::runtime_error(what), bound_(bound) {}
  std::size_t bound() const noexcept { return bound_; }

 private:
  std::size_t bound_;
};

}  // namespace genlab
