#pragma once

#include <vector>

#include "qform/arith.hpp"

namespace qform {

/// Row-style Hermite normal form of the lattice generated by `rows`.
/// Output rows are nonzero, upper echelon, with positive pivots and the
/// entries above each pivot reduced into [0, pivot).
std::vector<Vec> hermite_normal_form(std::vector<Vec> rows);

/// Basis (in HNF) of {x in Z^n : A x = 0} where A is given by its rows and
/// n is the column count.
std::vector<Vec> integer_kernel(const std::vector<Vec>& a, std::size_t n);

}  // namespace qform
