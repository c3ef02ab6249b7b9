#pragma once

#include <stdexcept>
#include <string>

namespace stochdg {

// Malformed user input: unknown keys, unparsable values, inconsistent settings.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A conserved state left the valid gas region (density or pressure at or below
// the configured floor, or nonfinite) during a conversion or RHS evaluation.
// element/node locate the offending collocation point when known.
struct StateError : std::runtime_error {
  int element = -1;
  int node = -1;
  StateError(const std::string& what, int element_ = -1, int node_ = -1)
      : std::runtime_error(what), element(element_), node(node_) {}
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace stochdg
