#pragma once

#include <memory>
#include <string>

#include "sinhproj/levy_models.hpp"

namespace sinhproj {

// Builds a model from a JSON description, e.g.
//   {"type":"kobol","nu":1.2,"m2":0.1,"lambda_plus":11,"lambda_minus":-4,
//    "r":0.02,"q":0.0}
// kobol accepts either "c" or "m2"; nts takes "delta","alpha","beta";
// bs takes "sigma".  r defaults to 0, q to 0.
std::unique_ptr<CharExp> model_from_json(const std::string& text);
std::unique_ptr<CharExp> model_from_file(const std::string& path);

}  // namespace sinhproj
