#pragma once

#include <cstddef>

namespace seastate::ad::detail {

/// C[M x N] (+)= op(A) . op(B), row-major, op = transpose when the flag is set.
/// A is M x K (or K x M when trans_a), B is K x N (or N x K when trans_b).
template <typename T>
void gemm(bool trans_a, bool trans_b, std::size_t m, std::size_t n, std::size_t k, const T* a,
          const T* b, T* c, bool accumulate);

}  // namespace seastate::ad::detail
