#pragma once

#include "ere/reduction.hpp"

#include <stdexcept>
#include <string>

namespace ere {

// Version tag written into every JSON document and documented for the CSV outputs.
inline constexpr int kSchemaVersion = 1;

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "%.15g"
std::string fmt15(double x);
// x rounded to 15 significant digits.
double round15(double x);

// {"schema": 1, "kind": "body_system", "masses": [m1..m4], "positions": [[re, im], ...]}
std::string to_json(const BodySystem& s, int indent = 2);
// Accepts the layout above; masses and positions are taken as given (see normalize).
BodySystem body_system_from_json(const std::string& text);

// {"schema": 1, "kind": "essential_parameters", "beta1", "beta2",
//  "beta11": [re, im], "beta12": [re, im], "beta22": [re, im]}
std::string to_json(const EssentialParameters& p, int indent = 2);
EssentialParameters essential_parameters_from_json(const std::string& text);

}  // namespace ere
