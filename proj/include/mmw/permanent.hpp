#pragma once

#include "mmw/field.hpp"

namespace mmw {

// Permanent of a row-major n x n complex matrix, n in {1, 2, 3}: the signless
// permutation sum giving bosonic transition amplitudes. Direct expansion.
cplx permanent(const cplx* m, int n);

} // namespace mmw
