#include "seastate/autodiff/ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gemm.hpp"
#include "seastate/error.hpp"

namespace seastate::ad {

namespace {

template <typename T>
bool tracks(const Tape<T>& tape, std::initializer_list<const Tensor<T>*> inputs) {
  if (!tape.recording()) return false;
  return std::any_of(inputs.begin(), inputs.end(),
                     [](const Tensor<T>* t) { return t->requires_grad(); });
}

template <typename T>
Tensor<T> result(Shape shape, std::vector<T> values, bool grad) {
  Tensor<T> out(std::move(shape), std::move(values), grad);
  if (grad) out.grad();
  return out;
}

template <typename T>
std::vector<T>& grad_of(TensorData<T>& d) {
  if (d.grad.size() != d.value.size()) d.grad.assign(d.value.size(), T(0));
  return d.grad;
}

// Number of elements of `b` that repeat over `a`: b.size() when b has a's
// shape, is a single element, or equals a's trailing axes.
template <typename T>
std::size_t broadcast_inner(const Tensor<T>& a, const Tensor<T>& b, const char* op) {
  if (b.size() == 1) return 1;
  const Shape& sa = a.shape();
  const Shape& sb = b.shape();
  if (sb.size() <= sa.size() && std::equal(sb.rbegin(), sb.rend(), sa.rbegin())) return b.size();
  throw ShapeError(std::string(op) + ": cannot broadcast " + shape_string(sb) + " onto " +
                   shape_string(sa));
}

std::size_t last_extent(const Shape& s) { return s.empty() ? 1 : s.back(); }

}  // namespace

template <typename T>
Tensor<T> add(Tape<T>& tape, const Tensor<T>& a, const Tensor<T>& b) {
  const std::size_t inner = broadcast_inner(a, b, "add");
  std::vector<T> v(a.size());
  const auto av = a.values();
  const auto bv = b.values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = av[i] + bv[i % inner];
  const bool g = tracks(tape, {&a, &b});
  auto out = result<T>(a.shape(), std::move(v), g);
  if (g) {
    tape.record([A = a.storage(), B = b.storage(), O = out.storage(), inner] {
      const auto& go = O->grad;
      if (A->requires_grad) {
        auto& ga = grad_of(*A);
        for (std::size_t i = 0; i < go.size(); ++i) ga[i] += go[i];
      }
      if (B->requires_grad) {
        auto& gb = grad_of(*B);
        for (std::size_t i = 0; i < go.size(); ++i) gb[i % inner] += go[i];
      }
    });
  }
  return out;
}

template <typename T>
Tensor<T> sub(Tape<T>& tape, const Tensor<T>& a, const Tensor<T>& b) {
  const std::size_t inner = broadcast_inner(a, b, "sub");
  std::vector<T> v(a.size());
  const auto av = a.values();
  const auto bv = b.values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = av[i] - bv[i % inner];
  const bool g = tracks(tape, {&a, &b});
  auto out = result<T>(a.shape(), std::move(v), g);
  if (g) {
    tape.record([A = a.storage(), B = b.storage(), O = out.storage(), inner] {
      const auto& go = O->grad;
      if (A->requires_grad) {
        auto& ga = grad_of(*A);
        for (std::size_t i = 0; i < go.size(); ++i) ga[i] += go[i];
      }
      if (B->requires_grad) {
        auto& gb = grad_of(*B);
        for (std::size_t i = 0; i < go.size(); ++i) gb[i % inner] -= go[i];
      }
    });
  }
  return out;
}

template <typename T>
Tensor<T> mul(Tape<T>& tape, const Tensor<T>& a, const Tensor<T>& b) {
  const std::size_t inner = broadcast_inner(a, b, "mul");
  std::vector<T> v(a.size());
  const auto av = a.values();
  const auto bv = b.values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = av[i] * bv[i % inner];
  const bool g = tracks(tape, {&a, &b});
  auto out = result<T>(a.shape(), std::move(v), g);
  if (g) {
    tape.record([A = a.storage(), B = b.storage(), O = out.storage(), inner] {
      const auto& go = O->grad;
      if (A->requires_grad) {
        auto& ga = grad_of(*A);
        for (std::size_t i = 0; i < go.size(); ++i) ga[i] += go[i] * B->value[i % inner];
      }
      if (B->requires_grad) {
        auto& gb = grad_of(*B);
        for (std::size_t i = 0; i < go.size(); ++i) gb[i % inner] += go[i] * A->value[i];
      }
    });
  }
  return out;
}

template <typename T>
Tensor<T> scale(Tape<T>& tape, const Tensor<T>& a, T factor) {
  std::vector<T> v(a.values().begin(), a.values().end());
  for (auto& x : v) x *= factor;
  const bool g = tracks(tape, {&a});
  auto out = result<T>(a.shape(), std::move(v), g);
  if (g) {
    tape.record([A = a.storage(), O = out.storage(), factor] {
      auto& ga = grad_of(*A);
      for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += O->grad[i] * factor;
    });
  }
  return out;
}

template <typename T>
Tensor<T> relu(Tape<T>& tape, const Tensor<T>& a) {
  std::vector<T> v(a.values().begin(), a.values().end());
  for (auto& x : v) x = x < T(0) ? T(0) : x;  // NaN passes through
  const bool g = tracks(tape, {&a});
  auto out = result<T>(a.shape(), std::move(v), g);
  if (g) {
    tape.record([A = a.storage(), O = out.storage()] {
      auto& ga = grad_of(*A);
      for (std::size_t i = 0; i < ga.size(); ++i) {
        if (A->value[i] > T(0)) ga[i] += O->grad[i];
      }
    });
  }
  return out;
}

template <typename T>
Tensor<T> tanh(Tape<T>& tape, const Tensor<T>& a) {
  std::vector<T> v(a.values().begin(), a.values().end());
  for (auto& x : v) x = std::tanh(x);
  const bool g = tracks(tape, {&a});
  auto out = result<T>(a.shape(), std::move(v), g);
  if (g) {
    tape.record([A = a.storage(), O = out.storage()] {
      auto& ga = grad_of(*A);
      for (std::size_t i = 0; i < ga.size(); ++i) {
        const T y = O->value[i];
        ga[i] += O->grad[i] * (T(1) - y * y);
      }
    });
  }
  return out;
}

template <typename T>
Tensor<T> sum(Tape<T>& tape, const Tensor<T>& a) {
  T s = 0;
  for (T x : a.values()) s += x;
  const bool g = tracks(tape, {&a});
  auto out = result<T>(Shape{}, {s}, g);
  if (g) {
    tape.record([A = a.storage(), O = out.storage()] {
      auto& ga = grad_of(*A);
      for (auto& x : ga) x += O->grad[0];
    });
  }
  return out;
}

template <typename T>
Tensor<T> mean(Tape<T>& tape, const Tensor<T>& a) {
  if (a.size() == 0) throw ShapeError("mean of an empty tensor");
  return scale(tape, sum(tape, a), T(1) / static_cast<T>(a.size()));
}

template <typename T>
Tensor<T> reshape(Tape<T>& tape, const Tensor<T>& a, Shape shape) {
  if (element_count(shape) != a.size()) {
    throw ShapeError("reshape " + shape_string(a.shape()) + " -> " + shape_string(shape));
  }
  const bool g = tracks(tape, {&a});
  auto out = result<T>(std::move(shape), std::vector<T>(a.values().begin(), a.values().end()), g);
  if (g) {
    tape.record([A = a.storage(), O = out.storage()] {
      auto& ga = grad_of(*A);
      for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += O->grad[i];
    });
  }
  return out;
}

template <typename T>
Tensor<T> transpose(Tape<T>& tape, const Tensor<T>& a) {
  if (a.rank() != 2 && a.rank() != 3) throw ShapeError("transpose needs rank 2 or 3");
  const std::size_t batch = a.rank() == 3 ? a.dim(0) : 1;
  const std::size_t rows = a.dim(a.rank() - 2);
  const std::size_t cols = a.dim(a.rank() - 1);
  Shape shape = a.shape();
  std::swap(shape[shape.size() - 1], shape[shape.size() - 2]);
  std::vector<T> v(a.size());
  const auto av = a.values();
  for (std::size_t b = 0; b < batch; ++b) {
    const std::size_t off = b * rows * cols;
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) v[off + c * rows + r] = av[off + r * cols + c];
    }
  }
  const bool g = tracks(tape, {&a});
  auto out = result<T>(std::move(shape), std::move(v), g);
  if (g) {
    tape.record([A = a.storage(), O = out.storage(), batch, rows, cols] {
      auto& ga = grad_of(*A);
      for (std::size_t b = 0; b < batch; ++b) {
        const std::size_t off = b * rows * cols;
        for (std::size_t r = 0; r < rows; ++r) {
          for (std::size_t c = 0; c < cols; ++c) ga[off + r * cols + c] += O->grad[off + c * rows + r];
        }
      }
    });
  }
  return out;
}

template <typename T>
Tensor<T> concat_last(Tape<T>& tape, const std::vector<Tensor<T>>& parts) {
  if (parts.empty()) throw ShapeError("concat_last needs at least one tensor");
  const Shape& s0 = parts[0].shape();
  if (s0.empty()) throw ShapeError("concat_last needs rank >= 1");
  const std::size_t rows = parts[0].size() / s0.back();
  std::vector<std::size_t> widths;
  std::size_t total = 0;
  bool g = false;
  for (const auto& p : parts) {
    if (p.rank() != s0.size() || !std::equal(s0.begin(), s0.end() - 1, p.shape().begin())) {
      throw ShapeError("concat_last: leading extents differ");
    }
    widths.push_back(p.shape().back());
    total += widths.back();
    g = g || tracks(tape, {&p});
  }
  std::vector<T> v(rows * total);
  std::size_t col = 0;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const auto pv = parts[k].values();
    for (std::size_t r = 0; r < rows; ++r) {
      std::copy_n(pv.begin() + static_cast<std::ptrdiff_t>(r * widths[k]), widths[k],
                  v.begin() + static_cast<std::ptrdiff_t>(r * total + col));
    }
    col += widths[k];
  }
  Shape shape = s0;
  shape.back() = total;
  auto out = result<T>(std::move(shape), std::move(v), g);
  if (g) {
    std::vector<std::shared_ptr<TensorData<T>>> stores;
    for (const auto& p : parts) stores.push_back(p.storage());
    tape.record([stores, widths, rows, total, O = out.storage()] {
      std::size_t c0 = 0;
      for (std::size_t k = 0; k < stores.size(); ++k) {
        if (stores[k]->requires_grad) {
          auto& gp = grad_of(*stores[k]);
          for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < widths[k]; ++c) gp[r * widths[k] + c] += O->grad[r * total + c0 + c];
          }
        }
        c0 += widths[k];
      }
    });
  }
  return out;
}

template <typename T>
Tensor<T> matmul(Tape<T>& tape, const Tensor<T>& a, const Tensor<T>& b) {
  const bool batched_b = b.rank() == 3;
  if (a.rank() < 2 || a.rank() > 3 || b.rank() < 2 || b.rank() > 3 || (batched_b && a.rank() != 3)) {
    throw ShapeError("matmul: unsupported ranks " + shape_string(a.shape()) + " . " +
                     shape_string(b.shape()));
  }
  const std::size_t k = a.shape().back();
  const std::size_t kb = b.dim(b.rank() - 2);
  const std::size_t n = b.shape().back();
  if (k != kb || (batched_b && a.dim(0) != b.dim(0))) {
    throw ShapeError("matmul: extent mismatch " + shape_string(a.shape()) + " . " +
                     shape_string(b.shape()));
  }
  // Without a batched right operand all of a's rows share b.
  const std::size_t batch = batched_b ? a.dim(0) : 1;
  const std::size_t m = batched_b ? a.dim(1) : a.size() / k;
  Shape shape = a.shape();
  shape.back() = n;
  std::vector<T> v(element_count(shape));
  for (std::size_t s = 0; s < batch; ++s) {
    detail::gemm(false, false, m, n, k, a.values().data() + s * m * k,
                 b.values().data() + s * k * n, v.data() + s * m * n, false);
  }
  const bool g = tracks(tape, {&a, &b});
  auto out = result<T>(std::move(shape), std::move(v), g);
  if (g) {
    tape.record([A = a.storage(), B = b.storage(), O = out.storage(), batch, m, n, k] {
      for (std::size_t s = 0; s < batch; ++s) {
        const T* go = O->grad.data() + s * m * n;
        if (A->requires_grad) {
          detail::gemm(false, true, m, k, n, go, B->value.data() + s * k * n,
                       grad_of(*A).data() + s * m * k, true);
        }
        if (B->requires_grad) {
          detail::gemm(true, false, k, n, m, A->value.data() + s * m * k, go,
                       grad_of(*B).data() + s * k * n, true);
        }
      }
    });
  }
  return out;
}

namespace {

struct ConvGeometry {
  std::size_t batch, channels, height, width, filters, kh, kw, out_h, out_w;
  std::size_t patch() const { return channels * kh * kw; }
  std::size_t positions() const { return out_h * out_w; }
};

template <typename T>
void im2col(const ConvGeometry& g, const T* in, std::vector<T>& col) {
  col.resize(g.patch() * g.positions());
  for (std::size_t c = 0; c < g.channels; ++c) {
    for (std::size_t i = 0; i < g.kh; ++i) {
      for (std::size_t j = 0; j < g.kw; ++j) {
        T* row = col.data() + ((c * g.kh + i) * g.kw + j) * g.positions();
        for (std::size_t y = 0; y < g.out_h; ++y) {
          const T* src = in + (c * g.height + y + i) * g.width + j;
          std::copy_n(src, g.out_w, row + y * g.out_w);
        }
      }
    }
  }
}

template <typename T>
void col2im_add(const ConvGeometry& g, const std::vector<T>& col, T* in_grad) {
  for (std::size_t c = 0; c < g.channels; ++c) {
    for (std::size_t i = 0; i < g.kh; ++i) {
      for (std::size_t j = 0; j < g.kw; ++j) {
        const T* row = col.data() + ((c * g.kh + i) * g.kw + j) * g.positions();
        for (std::size_t y = 0; y < g.out_h; ++y) {
          T* dst = in_grad + (c * g.height + y + i) * g.width + j;
          const T* src = row + y * g.out_w;
          for (std::size_t x = 0; x < g.out_w; ++x) dst[x] += src[x];
        }
      }
    }
  }
}

}  // namespace

template <typename T>
Tensor<T> conv2d_valid(Tape<T>& tape, const Tensor<T>& input, const Tensor<T>& kernels,
                       const Tensor<T>& bias) {
  if ((input.rank() != 3 && input.rank() != 4) || kernels.rank() != 4 || bias.rank() != 1) {
    throw ShapeError("conv2d_valid: expected input [(B x) C x H x W], kernels [F x C x kh x kw], bias [F]");
  }
  const bool batched = input.rank() == 4;
  const std::size_t off = batched ? 1 : 0;
  ConvGeometry geo{};
  geo.batch = batched ? input.dim(0) : 1;
  geo.channels = input.dim(off);
  geo.height = input.dim(off + 1);
  geo.width = input.dim(off + 2);
  geo.filters = kernels.dim(0);
  geo.kh = kernels.dim(2);
  geo.kw = kernels.dim(3);
  if (kernels.dim(1) != geo.channels || bias.dim(0) != geo.filters) {
    throw ShapeError("conv2d_valid: channel or bias extent mismatch");
  }
  if (geo.kh > geo.height || geo.kw > geo.width || geo.kh == 0 || geo.kw == 0) {
    throw ShapeError("conv2d_valid: kernel " + shape_string(kernels.shape()) +
                     " larger than input " + shape_string(input.shape()));
  }
  geo.out_h = geo.height - geo.kh + 1;
  geo.out_w = geo.width - geo.kw + 1;

  Shape shape;
  if (batched) shape.push_back(geo.batch);
  shape.insert(shape.end(), {geo.filters, geo.out_h, geo.out_w});
  std::vector<T> v(element_count(shape));
  std::vector<T> col;
  const std::size_t in_stride = geo.channels * geo.height * geo.width;
  const std::size_t out_stride = geo.filters * geo.positions();
  for (std::size_t s = 0; s < geo.batch; ++s) {
    im2col(geo, input.values().data() + s * in_stride, col);
    T* o = v.data() + s * out_stride;
    for (std::size_t f = 0; f < geo.filters; ++f) {
      std::fill_n(o + f * geo.positions(), geo.positions(), bias[f]);
    }
    detail::gemm(false, false, geo.filters, geo.positions(), geo.patch(), kernels.values().data(),
                 col.data(), o, true);
  }

  const bool g = tracks(tape, {&input, &kernels, &bias});
  auto out = result<T>(std::move(shape), std::move(v), g);
  if (g) {
    tape.record([I = input.storage(), K = kernels.storage(), B = bias.storage(), O = out.storage(),
                 geo, in_stride, out_stride] {
      std::vector<T> col;
      std::vector<T> dcol;
      for (std::size_t s = 0; s < geo.batch; ++s) {
        const T* go = O->grad.data() + s * out_stride;
        if (B->requires_grad) {
          auto& gb = grad_of(*B);
          for (std::size_t f = 0; f < geo.filters; ++f) {
            T acc = 0;
            for (std::size_t p = 0; p < geo.positions(); ++p) acc += go[f * geo.positions() + p];
            gb[f] += acc;
          }
        }
        if (K->requires_grad) {
          im2col(geo, I->value.data() + s * in_stride, col);
          detail::gemm(false, true, geo.filters, geo.patch(), geo.positions(), go, col.data(),
                       grad_of(*K).data(), true);
        }
        if (I->requires_grad) {
          dcol.resize(geo.patch() * geo.positions());
          detail::gemm(true, false, geo.patch(), geo.positions(), geo.filters, K->value.data(), go,
                       dcol.data(), false);
          col2im_add(geo, dcol, grad_of(*I).data() + s * in_stride);
        }
      }
    });
  }
  return out;
}

template <typename T>
Tensor<T> softmax_last(Tape<T>& tape, const Tensor<T>& a) {
  const std::size_t width = last_extent(a.shape());
  const std::size_t rows = width ? a.size() / width : 0;
  std::vector<T> v(a.size());
  const auto av = a.values();
  for (std::size_t r = 0; r < rows; ++r) {
    const T* x = av.data() + r * width;
    T* y = v.data() + r * width;
    const T mx = *std::max_element(x, x + width);
    T total = 0;
    for (std::size_t j = 0; j < width; ++j) {
      y[j] = std::exp(x[j] - mx);
      total += y[j];
    }
    for (std::size_t j = 0; j < width; ++j) y[j] /= total;
  }
  const bool g = tracks(tape, {&a});
  auto out = result<T>(a.shape(), std::move(v), g);
  if (g) {
    tape.record([A = a.storage(), O = out.storage(), rows, width] {
      auto& ga = grad_of(*A);
      for (std::size_t r = 0; r < rows; ++r) {
        const T* y = O->value.data() + r * width;
        const T* gy = O->grad.data() + r * width;
        T dot = 0;
        for (std::size_t j = 0; j < width; ++j) dot += gy[j] * y[j];
        T* gx = ga.data() + r * width;
        for (std::size_t j = 0; j < width; ++j) gx[j] += y[j] * (gy[j] - dot);
      }
    });
  }
  return out;
}

template <typename T>
Tensor<T> layer_norm(Tape<T>& tape, const Tensor<T>& a, T eps) {
  const std::size_t width = last_extent(a.shape());
  if (a.rank() == 0 || width < 2) throw ShapeError("layer_norm needs a last extent >= 2");
  const std::size_t rows = a.size() / width;
  std::vector<T> v(a.size());
  std::vector<T> inv_std(rows);
  const auto av = a.values();
  for (std::size_t r = 0; r < rows; ++r) {
    const T* x = av.data() + r * width;
    T mu = 0;
    for (std::size_t j = 0; j < width; ++j) mu += x[j];
    mu /= static_cast<T>(width);
    T var = 0;
    for (std::size_t j = 0; j < width; ++j) var += (x[j] - mu) * (x[j] - mu);
    var /= static_cast<T>(width);
    inv_std[r] = T(1) / std::sqrt(var + eps);
    for (std::size_t j = 0; j < width; ++j) v[r * width + j] = (x[j] - mu) * inv_std[r];
  }
  const bool g = tracks(tape, {&a});
  auto out = result<T>(a.shape(), std::move(v), g);
  if (g) {
    tape.record([A = a.storage(), O = out.storage(), inv = std::move(inv_std), rows, width] {
      auto& ga = grad_of(*A);
      const T n = static_cast<T>(width);
      for (std::size_t r = 0; r < rows; ++r) {
        const T* xh = O->value.data() + r * width;
        const T* gy = O->grad.data() + r * width;
        T sum_g = 0;
        T sum_gx = 0;
        for (std::size_t j = 0; j < width; ++j) {
          sum_g += gy[j];
          sum_gx += gy[j] * xh[j];
        }
        T* gx = ga.data() + r * width;
        for (std::size_t j = 0; j < width; ++j) {
          gx[j] += inv[r] * (gy[j] - sum_g / n - xh[j] * sum_gx / n);
        }
      }
    });
  }
  return out;
}

template <typename T>
Tensor<T> batch_norm(Tape<T>& tape, const Tensor<T>& x, const Tensor<T>& gamma,
                     const Tensor<T>& beta, BatchNormStats<T>& stats, Mode mode, T momentum,
                     T eps) {
  if (x.rank() != 2) throw ShapeError("batch_norm expects [batch x features]");
  const std::size_t n = x.dim(0);
  const std::size_t f = x.dim(1);
  if (gamma.size() != f || beta.size() != f || stats.mean.size() != f || stats.var.size() != f) {
    throw ShapeError("batch_norm: parameter extents do not match features");
  }
  if (mode == Mode::train && n < 2) throw ArgumentError("batch_norm in train mode needs batch >= 2");

  std::vector<T> mu(f);
  std::vector<T> inv_std(f);
  const auto xv = x.values();
  if (mode == Mode::train) {
    for (std::size_t j = 0; j < f; ++j) {
      T m = 0;
      for (std::size_t i = 0; i < n; ++i) m += xv[i * f + j];
      m /= static_cast<T>(n);
      T var = 0;
      for (std::size_t i = 0; i < n; ++i) var += (xv[i * f + j] - m) * (xv[i * f + j] - m);
      var /= static_cast<T>(n);
      mu[j] = m;
      inv_std[j] = T(1) / std::sqrt(var + eps);
      stats.mean[j] = momentum * stats.mean[j] + (T(1) - momentum) * m;
      stats.var[j] = momentum * stats.var[j] + (T(1) - momentum) * var;
    }
  } else {
    for (std::size_t j = 0; j < f; ++j) {
      mu[j] = stats.mean[j];
      inv_std[j] = T(1) / std::sqrt(stats.var[j] + eps);
    }
  }

  std::vector<T> xhat(x.size());
  std::vector<T> v(x.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < f; ++j) {
      const std::size_t idx = i * f + j;
      xhat[idx] = (xv[idx] - mu[j]) * inv_std[j];
      v[idx] = gamma[j] * xhat[idx] + beta[j];
    }
  }
  const bool g = tracks(tape, {&x, &gamma, &beta});
  auto out = result<T>(x.shape(), std::move(v), g);
  if (g) {
    tape.record([X = x.storage(), G = gamma.storage(), Bt = beta.storage(), O = out.storage(),
                 xhat = std::move(xhat), inv_std = std::move(inv_std), n, f, mode] {
      const auto& go = O->grad;
      std::vector<T> sum_g(f, T(0));
      std::vector<T> sum_gx(f, T(0));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < f; ++j) {
          sum_g[j] += go[i * f + j];
          sum_gx[j] += go[i * f + j] * xhat[i * f + j];
        }
      }
      if (G->requires_grad) {
        auto& gg = grad_of(*G);
        for (std::size_t j = 0; j < f; ++j) gg[j] += sum_gx[j];
      }
      if (Bt->requires_grad) {
        auto& gb = grad_of(*Bt);
        for (std::size_t j = 0; j < f; ++j) gb[j] += sum_g[j];
      }
      if (X->requires_grad) {
        auto& gx = grad_of(*X);
        const T count = static_cast<T>(n);
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < f; ++j) {
            const std::size_t idx = i * f + j;
            const T scale_j = G->value[j] * inv_std[j];
            if (mode == Mode::train) {
              gx[idx] += scale_j * (go[idx] - sum_g[j] / count - xhat[idx] * sum_gx[j] / count);
            } else {
              gx[idx] += scale_j * go[idx];
            }
          }
        }
      }
    });
  }
  return out;
}

template <typename T>
Tensor<T> dropout(Tape<T>& tape, const Tensor<T>& a, double p, Mode mode, Rng& rng) {
  if (!(p >= 0.0 && p < 1.0)) throw ArgumentError("dropout probability must be in [0, 1)");
  if (mode == Mode::infer || p == 0.0) return a;
  const T keep_scale = static_cast<T>(1.0 / (1.0 - p));
  std::vector<T> mask(a.size());
  for (auto& m : mask) m = uniform01(rng) < p ? T(0) : keep_scale;
  std::vector<T> v(a.size());
  const auto av = a.values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = av[i] * mask[i];
  const bool g = tracks(tape, {&a});
  auto out = result<T>(a.shape(), std::move(v), g);
  if (g) {
    tape.record([A = a.storage(), O = out.storage(), mask = std::move(mask)] {
      auto& ga = grad_of(*A);
      for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += O->grad[i] * mask[i];
    });
  }
  return out;
}

template <typename T>
Tensor<T> pool_last(Tape<T>& tape, const Tensor<T>& a, PoolKind kind, std::size_t window) {
  if (window < 1) throw ArgumentError("pool window must be >= 1");
  if (a.rank() == 0) throw ShapeError("pool needs rank >= 1");
  const std::size_t width = a.shape().back();
  if (window > width) {
    throw ShapeError("pool window " + std::to_string(window) + " exceeds axis extent " +
                     std::to_string(width));
  }
  const std::size_t rows = a.size() / width;
  const std::size_t out_w = width / window;
  Shape shape = a.shape();
  shape.back() = out_w;
  std::vector<T> v(rows * out_w);
  std::vector<std::size_t> argmax(kind == PoolKind::max ? v.size() : 0);
  const auto av = a.values();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t o = 0; o < out_w; ++o) {
      const std::size_t base = r * width + o * window;
      if (kind == PoolKind::max) {
        std::size_t best = base;
        // NaN wins so that a diverged input is not silently dropped.
        for (std::size_t w = 1; w < window && !std::isnan(av[best]); ++w) {
          if (av[base + w] > av[best] || std::isnan(av[base + w])) best = base + w;
        }
        argmax[r * out_w + o] = best;
        v[r * out_w + o] = av[best];
      } else {
        T s = 0;
        for (std::size_t w = 0; w < window; ++w) s += av[base + w];
        v[r * out_w + o] = s / static_cast<T>(window);
      }
    }
  }
  const bool g = tracks(tape, {&a});
  auto out = result<T>(std::move(shape), std::move(v), g);
  if (g) {
    tape.record([A = a.storage(), O = out.storage(), argmax = std::move(argmax), kind, rows, width,
                 out_w, window] {
      auto& ga = grad_of(*A);
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t o = 0; o < out_w; ++o) {
          const T go = O->grad[r * out_w + o];
          if (kind == PoolKind::max) {
            ga[argmax[r * out_w + o]] += go;
          } else {
            const std::size_t base = r * width + o * window;
            for (std::size_t w = 0; w < window; ++w) ga[base + w] += go / static_cast<T>(window);
          }
        }
      }
    });
  }
  return out;
}

#define SEASTATE_INSTANTIATE_OPS(T)                                                              \
  template Tensor<T> add(Tape<T>&, const Tensor<T>&, const Tensor<T>&);                          \
  template Tensor<T> sub(Tape<T>&, const Tensor<T>&, const Tensor<T>&);                          \
  template Tensor<T> mul(Tape<T>&, const Tensor<T>&, const Tensor<T>&);                          \
  template Tensor<T> scale(Tape<T>&, const Tensor<T>&, T);                                       \
  template Tensor<T> relu(Tape<T>&, const Tensor<T>&);                                           \
  template Tensor<T> tanh(Tape<T>&, const Tensor<T>&);                                           \
  template Tensor<T> sum(Tape<T>&, const Tensor<T>&);                                            \
  template Tensor<T> mean(Tape<T>&, const Tensor<T>&);                                           \
  template Tensor<T> reshape(Tape<T>&, const Tensor<T>&, Shape);                                 \
  template Tensor<T> transpose(Tape<T>&, const Tensor<T>&);                                      \
  template Tensor<T> concat_last(Tape<T>&, const std::vector<Tensor<T>>&);                       \
  template Tensor<T> matmul(Tape<T>&, const Tensor<T>&, const Tensor<T>&);                       \
  template Tensor<T> conv2d_valid(Tape<T>&, const Tensor<T>&, const Tensor<T>&, const Tensor<T>&); \
  template Tensor<T> softmax_last(Tape<T>&, const Tensor<T>&);                                   \
  template Tensor<T> layer_norm(Tape<T>&, const Tensor<T>&, T);                                  \
  template Tensor<T> batch_norm(Tape<T>&, const Tensor<T>&, const Tensor<T>&, const Tensor<T>&,  \
                                BatchNormStats<T>&, Mode, T, T);                                 \
  template Tensor<T> dropout(Tape<T>&, const Tensor<T>&, double, Mode, Rng&);                    \
  template Tensor<T> pool_last(Tape<T>&, const Tensor<T>&, PoolKind, std::size_t);

SEASTATE_INSTANTIATE_OPS(float)
SEASTATE_INSTANTIATE_OPS(double)

#undef SEASTATE_INSTANTIATE_OPS

}  // namespace seastate::ad
