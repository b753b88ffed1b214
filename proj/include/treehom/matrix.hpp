#pragma once

#include "treehom/rational.hpp"

#include <vector>

namespace treehom {

// Small dense square matrices with exact integer entries, enough for the
// quotient recurrences. No sparsity, no pivoting, nothing clever.
using IntMatrix = std::vector<std::vector<BigInt>>;

IntMatrix identity_matrix(std::size_t k);
IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b);
std::vector<BigInt> mat_vec(const IntMatrix& a, const std::vector<BigInt>& v);
IntMatrix mat_pow(const IntMatrix& a, unsigned long n);

} // namespace treehom
