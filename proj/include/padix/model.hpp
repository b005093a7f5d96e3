#pragma once

#include <string>
#include <string_view>

namespace padix {

// Haar-random matrices (eigenvalues) or Haar-random polynomials (roots).
enum class Model { Matrix, Poly };

std::string to_string(Model m);
Model parse_model(std::string_view s);

}  // namespace padix
