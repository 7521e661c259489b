#include "gemm.hpp"

#include <algorithm>
#include <vector>

namespace seastate::ad::detail {

namespace {

constexpr std::size_t kBlockK = 256;
constexpr std::size_t kBlockN = 1024;

// C += A . B with A row-major M x K (leading dim lda) and B row-major K x N.
template <typename T>
void kernel_nn(std::size_t m, std::size_t n, std::size_t k, const T* a, std::size_t lda,
               const T* b, T* c) {
  for (std::size_t j0 = 0; j0 < n; j0 += kBlockN) {
    const std::size_t j1 = std::min(n, j0 + kBlockN);
    for (std::size_t p0 = 0; p0 < k; p0 += kBlockK) {
      const std::size_t p1 = std::min(k, p0 + kBlockK);
      for (std::size_t i = 0; i < m; ++i) {
        T* ci = c + i * n;
        const T* ai = a + i * lda;
        std::size_t p = p0;
        for (; p + 4 <= p1; p += 4) {
          const T a0 = ai[p], a1 = ai[p + 1], a2 = ai[p + 2], a3 = ai[p + 3];
          const T* b0 = b + p * n;
          const T* b1 = b0 + n;
          const T* b2 = b1 + n;
          const T* b3 = b2 + n;
          for (std::size_t j = j0; j < j1; ++j) {
            ci[j] += a0 * b0[j] + a1 * b1[j] + a2 * b2[j] + a3 * b3[j];
          }
        }
        for (; p < p1; ++p) {
          const T ap = ai[p];
          const T* bp = b + p * n;
          for (std::size_t j = j0; j < j1; ++j) ci[j] += ap * bp[j];
        }
      }
    }
  }
}

template <typename T>
void transpose_into(const T* src, std::size_t rows, std::size_t cols, std::vector<T>& dst) {
  dst.resize(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) dst[c * rows + r] = src[r * cols + c];
  }
}

}  // namespace

template <typename T>
void gemm(bool trans_a, bool trans_b, std::size_t m, std::size_t n, std::size_t k, const T* a,
          const T* b, T* c, bool accumulate) {
  if (!accumulate) std::fill(c, c + m * n, T(0));
  if (m == 0 || n == 0 || k == 0) return;

  std::vector<T> a_buf;
  std::vector<T> b_buf;
  const T* a_rm = a;
  const T* b_rm = b;
  if (trans_a) {
    transpose_into(a, k, m, a_buf);
    a_rm = a_buf.data();
  }
  if (trans_b) {
    transpose_into(b, n, k, b_buf);
    b_rm = b_buf.data();
  }
  kernel_nn(m, n, k, a_rm, k, b_rm, c);
}

template void gemm<float>(bool, bool, std::size_t, std::size_t, std::size_t, const float*,
                          const float*, float*, bool);
template void gemm<double>(bool, bool, std::size_t, std::size_t, std::size_t, const double*,
                           const double*, double*, bool);

}  // namespace seastate::ad::detail
