#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kdet/state.hpp"

namespace kdet {

/// Parsed form of the plain-text state file. Schema (one directive per line,
/// '#' starts a comment):
///
///   dims d_1 d_2 ... d_N
///   noise w                  # optional white-noise weight, default 0
///   component w              # starts a pure component with weight w
///   term l_1 ... l_N re im   # adds a basis term to the open component
///
/// Term lines before any `component` line open an implicit component whose
/// weight is 1 - noise. Every component is normalized on construction.
struct MixtureDescription {
  DimensionVector dims{std::vector<int>{2, 2}};
  std::vector<std::pair<double, std::vector<std::pair<ProductLabel, cplx>>>> components;
  double noise = 0.0;

  DensityOperator to_density_operator() const;
  /// Requires exactly two components; their listed weights are ignored and
  /// replaced by the sweep parameters (p, q).
  ParamFamily to_param_family(const std::string& name) const;
};

MixtureDescription parse_state_file(std::istream& in);
MixtureDescription load_state_file(const std::string& path);

}  // namespace kdet
