#pragma once

#include <optional>
#include <vector>

#include "eqh/numeric.hpp"

namespace eqh {

using IntMatrix = std::vector<std::vector<Int>>;

struct SmithResult {
    std::vector<Int> diagonal; // nonnegative, each dividing the next
    size_t rank = 0;           // nonzero diagonal entries
};

/// Smith normal form by unimodular row and column operations.
SmithResult smith_normal_form(IntMatrix m);

/// One integer solution of A x = b, when it exists.
std::optional<std::vector<Int>> solve_integer(const IntMatrix& a,
                                              const std::vector<Int>& b);

} // namespace eqh
