#pragma once

// Command-line front end. Uses only the C interface of the library.

#include <iosfwd>
#include <string>
#include <vector>

namespace posynt::cli {

enum Exit { realizable = 0, unrealizable = 1, usage_error = 2, resource_error = 3 };

struct Problem {
  std::string formula;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<std::string> unobservable;
};

/// Comma- or whitespace-separated names.
std::vector<std::string> split_list(const std::string& s);

/// Read `.inputs:` / `.outputs:` from a part file and the formula from an
/// .ltlf file; unobservables are removed from the inputs. Throws
/// std::runtime_error on a malformed part file or a bad unobservable name.
Problem load_part_pair(const std::string& ltlf_path, const std::string& part_path,
                       const std::vector<std::string>& unobservable);

std::string join(const std::vector<std::string>& names, const char* sep = ",");

/// Full `posynt` command line; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace posynt::cli
