#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace fiberwalk {

/// Dense integer matrix, row-major.
using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Exact rank (rational elimination).
std::size_t matrix_rank(const IntMatrix& m);

/// Greedy choice of linearly independent rows, scanning in index order.
std::vector<std::size_t> independent_rows(const IntMatrix& m);

/// Primitive integer generator of the kernel of a matrix with nullity one.
std::vector<std::int64_t> kernel_vector(const IntMatrix& m, std::size_t n_cols);

/// Divides by the gcd of the entries; zero vectors are left unchanged.
void make_primitive(std::vector<std::int64_t>& v);

IntMatrix transpose(const IntMatrix& m, std::size_t n_cols);

}  // namespace fiberwalk
