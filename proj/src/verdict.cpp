#include "genlab/verdict.hpp"

namespace genlab {

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Yes: return "yes";
    case Outcome::No: return "no";
    case Outcome::Unknown: return "unknown";
  }
  return "unknown";
}

nlohmann::json to_json(const Verdict& v) {
  nlohmann::json j{{"outcome", to_string(v.outcome)}, {"bound", v.bound}};
  if (!v.certificate.is_null()) j["certificate"] = v.certificate;
  return j;
}

}  // namespace genlab
