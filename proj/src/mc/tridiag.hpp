#pragma once

#include <vector>

namespace softedge {

// Eigenvalues (ascending) of the symmetric tridiagonal matrix with diagonal d
// and off-diagonal e (e.size() == d.size() - 1); implicit-shift QL.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> e);

} // namespace softedge
