// Command-line frontend and the input parsers it shares with the tests.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "genlab/group.hpp"

namespace genlab {

/// Relative input paths are resolved against `base`; interactive commands
/// read from `input` (standard input when null).
struct InputContext {
  std::filesystem::path base;
  std::istream* input = nullptr;
  std::filesystem::path resolve(const std::string& p) const;
};

/// Reads and parses a JSON file; errors name the path and byte offset.
nlohmann::json read_json_file(const std::filesystem::path& path);

/// Group spec: a built-in name (see builtin()), "finite:<table-file>" or
/// "fp:<presentation-file>" (fp oracles use default_bound()).
OraclePtr parse_group(const std::string& spec, const InputContext& ctx = {});

/// Comma-separated words over x_1..x_k, read as the default generators.
std::vector<Element> parse_elements(const GroupOracle& g, const std::string& list);

/// Exit codes: 0 yes/pass, 1 no/fail, 2 unknown, 64 usage error, 65 bad
/// input data, 66 missing input file.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const InputContext& ctx = {});

/// Lines of a corpus file: "<expected exit> <arguments...>", with shell-style
/// quoting; blank lines and lines starting with '#' are skipped.
struct CorpusEntry {
  int expected = 0;
  std::vector<std::string> args;
  std::size_t line = 0;
};
std::vector<CorpusEntry> parse_corpus(const std::string& text);

}  // namespace genlab
