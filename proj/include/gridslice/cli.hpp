#pragma once

// The gridslice command-line tool.
//
// Grid files:
//
//   grid v1
//   n = 2
//   x = 1 2
//   o = 2 1
//
// '#' starts a comment; blank lines, CRLF line ends and commas or brackets
// around the permutations are accepted.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gridslice/grid.hpp"

namespace gridslice {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

PlanarGridDiagram parse_grid(std::string_view text);
std::string format_grid(const PlanarGridDiagram& d);

/// A uniformly random diagram of size n; deterministic in the seed.
PlanarGridDiagram random_diagram(int n, std::uint64_t seed);

/// Runs the tool. Returns the exit status: 0 all checks pass, 1 a
/// verification failed, 2 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gridslice
