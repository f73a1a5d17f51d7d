#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace kform::cli {

enum class Exit : int { Ok = 0, VerificationFailed = 1, Usage = 2 };

struct RunConfig {
  std::string command;
  std::string op_text;
  std::string op_file;
  /// Catalog name: operator for most commands, numeric case for `verify`.
  std::string case_name;
  std::string format = "text";
  /// Explicit plan, one entry per operator term in canonical order. "-" means empty.
  std::vector<std::string> path;
  std::vector<std::string> transfer;
  std::vector<std::string> exchange;
  std::string box;
  std::string spectral_sub;
  std::string solution;
  std::size_t nodes = 20;
  std::uint64_t seed = 1;
};

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and runs it.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kform::cli
