#pragma once

#include <array>

#include "maball/fields.hpp"

namespace maball {

// Eigenvalues of a symmetric 2x2 or 3x3 matrix, ascending. 2x2 is the
// closed form; 3x3 uses the trigonometric solution of the characteristic
// cubic with a Jacobi-rotation fallback near coincident roots.
std::array<double, 3> sym_eigenvalues(const SymMat& a);

}  // namespace maball
