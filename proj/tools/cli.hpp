#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "klein/verify.hpp"

namespace klein::cli {

inline constexpr char const* kVersion = "0.1.0";
inline constexpr int kMaxEnumerationBound = 64;

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kBadInput = 2,
  kNotCompletelyEmpty = 3,
  kEnumerationCap = 4,
  kIrrationalSpectrum = 5,
  kBudget = 6,
};

struct Hooks {
  VertexSource vertices = canonicalVertices;  // used by verify-lists
};

// args excludes the program name.
int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err, Hooks const& hooks = {});

}  // namespace klein::cli
