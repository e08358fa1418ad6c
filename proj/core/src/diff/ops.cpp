/*
 * Copyright 2026 The MPT Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "mpt/diff/ops.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>

#include "mpt/error.hpp"

namespace mpt::diff {

namespace {

std::atomic<std::uint64_t> g_sequence{0};

void require_2d(const Tensor& t, const char* op) {
  if (!t) throw ShapeError(std::string(op) + ": empty tensor");
  if (t.rank() != 2) throw ShapeError(std::string(op) + ": expected a 2-D tensor, got " + shape_string(t.shape()));
}

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (!a || !b) throw ShapeError(std::string(op) + ": empty tensor");
  if (a.shape() != b.shape()) {
    throw ShapeError(std::string(op) + ": shape mismatch " + shape_string(a.shape()) + " vs " +
                     shape_string(b.shape()));
  }
}

Tensor make_result(Shape shape, std::vector<double> data, const char* op, std::vector<Tensor> inputs,
                   Node::BackwardFn fn) {
  for (double v : data) {
    if (!std::isfinite(v)) throw NumericalError(std::string(op) + " produced a non-finite value");
  }
  auto impl = std::make_shared<TensorImpl>();
  impl->shape = std::move(shape);
  impl->data = std::move(data);
  bool needs = false;
  if (grad_enabled()) {
    for (const auto& in : inputs) needs = needs || in.requires_grad();
  }
  if (needs) {
    impl->requires_grad = true;
    auto node = std::make_shared<Node>();
    node->op = op;
    node->inputs = std::move(inputs);
    node->backward = std::move(fn);
    node->sequence = g_sequence.fetch_add(1, std::memory_order_relaxed);
    impl->node = std::move(node);
  }
  return make_tensor(std::move(impl));
}

// Gradient buffer of an op input, or an empty span when it is frozen.
std::span<double> grad_of(const Tensor& t) {
  if (!t.requires_grad()) return {};
  return t.grad_buffer();
}

// C += A * B for row-major (m x k) * (k x n).
void gemm_acc(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = c + i * n;
    const double* arow = a + i * k;
    for (std::size_t p = 0; p < k; ++p) {
      const double av = arow[p];
      const double* brow = b + p * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

// C += A * B^T for (m x k) * (n x k)^T.
void gemm_nt_acc(const double* a, const double* b, double* c, std::size_t m, std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    const double* arow = a + i * k;
    for (std::size_t j = 0; j < n; ++j) {
      const double* brow = b + j * k;
      double s = 0.0;
      for (std::size_t p = 0; p < k; ++p) s += arow[p] * brow[p];
      c[i * n + j] += s;
    }
  }
}

// C += A^T * B for (k x m)^T * (k x n).
void gemm_tn_acc(const double* a, const double* b, double* c, std::size_t k, std::size_t m, std::size_t n) {
  for (std::size_t p = 0; p < k; ++p) {
    const double* arow = a + p * m;
    const double* brow = b + p * n;
    for (std::size_t i = 0; i < m; ++i) {
      const double av = arow[i];
      double* crow = c + i * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

template <class F, class DF>
Tensor unary(const Tensor& a, const char* op, F f, DF df) {
  if (!a) throw ShapeError(std::string(op) + ": empty tensor");
  std::vector<double> out(a.numel());
  auto x = a.data();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(x[i]);
  return make_result(a.shape(), std::move(out), op, {a},
                     [df](const std::vector<Tensor>& in, const TensorImpl& o, std::span<const double> dout) {
                       auto g = grad_of(in[0]);
                       auto xs = in[0].data();
                       for (std::size_t i = 0; i < g.size(); ++i) g[i] += dout[i] * df(xs[i], o.data[i]);
                     });
}

double gelu_value(double x) { return 0.5 * x * (1.0 + std::erf(x / std::numbers::sqrt2)); }

double gelu_slope(double x) {
  const double cdf = 0.5 * (1.0 + std::erf(x / std::numbers::sqrt2));
  const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
  return cdf + x * pdf;
}

double softplus_value(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

Tensor matmul(const Tensor& a, const Tensor& b) {
  require_2d(a, "matmul");
  require_2d(b, "matmul");
  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  if (b.rows() != k) {
    throw ShapeError("matmul: inner dimensions differ " + shape_string(a.shape()) + " x " + shape_string(b.shape()));
  }
  std::vector<double> out(m * n, 0.0);
  gemm_acc(a.data().data(), b.data().data(), out.data(), m, k, n);
  return make_result({m, n}, std::move(out), "matmul", {a, b},
                     [m, k, n](const std::vector<Tensor>& in, const TensorImpl&, std::span<const double> dout) {
                       if (auto ga = grad_of(in[0]); !ga.empty()) {
                         gemm_nt_acc(dout.data(), in[1].data().data(), ga.data(), m, n, k);
                       }
                       if (auto gb = grad_of(in[1]); !gb.empty()) {
                         gemm_tn_acc(in[0].data().data(), dout.data(), gb.data(), m, k, n);
                       }
                     });
}

Tensor transpose(const Tensor& a) {
  require_2d(a, "transpose");
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<double> out(m * n);
  auto x = a.data();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) out[j * m + i] = x[i * n + j];
  return make_result({n, m}, std::move(out), "transpose", {a},
                     [m, n](const std::vector<Tensor>& in, const TensorImpl&, std::span<const double> dout) {
                       auto g = grad_of(in[0]);
                       for (std::size_t i = 0; i < m; ++i)
                         for (std::size_t j = 0; j < n; ++j) g[i * n + j] += dout[j * m + i];
                     });
}

Tensor add(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "add");
  std::vector<double> out(a.numel());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.data()[i] + b.data()[i];
  return make_result(a.shape(), std::move(out), "add", {a, b},
                     [](const std::vector<Tensor>& in, const TensorImpl&, std::span<const double> dout) {
                       for (const auto& t : in) {
                         auto g = grad_of(t);
                         for (std::size_t i = 0; i < g.size(); ++i) g[i] += dout[i];
                       }
                     });
}

Tensor sub(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "sub");
  std::vector<double> out(a.numel());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.data()[i] - b.data()[i];
  return make_result(a.shape(), std::move(out), "sub", {a, b},
                     [](const std::vector<Tensor>& in, const TensorImpl&, std::span<const double> dout) {
                       auto ga = grad_of(in[0]);
                       for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += dout[i];
                       auto gb = grad_of(in[1]);
                       for (std::size_t i = 0; i < gb.size(); ++i) gb[i] -= dout[i];
                     });
}

Tensor mul(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "mul");
  std::vector<double> out(a.numel());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.data()[i] * b.data()[i];
  return make_result(a.shape(), std::move(out), "mul", {a, b},
                     [](const std::vector<Tensor>& in, const TensorImpl&, std::span<const double> dout) {
                       auto ga = grad_of(in[0]);
                       for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += dout[i] * in[1].data()[i];
                       auto gb = grad_of(in[1]);
                       for (std::size_t i = 0; i < gb.size(); ++i) gb[i] += dout[i] * in[0].data()[i];
                     });
}

Tensor div(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "div");
  std::vector<double> out(a.numel());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.data()[i] / b.data()[i];
  return make_result(a.shape(), std::move(out), "div", {a, b},
                     [](const std::vector<Tensor>& in, const TensorImpl& o, std::span<const double> dout) {
                       auto ga = grad_of(in[0]);
                       for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += dout[i] / in[1].data()[i];
                       auto gb = grad_of(in[1]);
                       for (std::size_t i = 0; i < gb.size(); ++i) gb[i] -= dout[i] * o.data[i] / in[1].data()[i];
                     });
}

Tensor scale(const Tensor& a, double factor) {
  return unary(
      a, "scale", [factor](double x) { return factor * x; }, [factor](double, double) { return factor; });
}

Tensor add_scalar(const Tensor& a, double value) {
  return unary(
      a, "add_scalar", [value](double x) { return x + value; }, [](double, double) { return 1.0; });
}

Tensor exp(const Tensor& a) {
  return unary(
      a, "exp", [](double x) { return std::exp(x); }, [](double, double y) { return y; });
}

Tensor log(const Tensor& a) {
  return unary(
      a, "log", [](double x) { return std::log(x); }, [](double x, double) { return 1.0 / x; });
}

Tensor sqrt(const Tensor& a) {
  return unary(
      a, "sqrt", [](double x) { return std::sqrt(x); }, [](double, double y) { return 0.5 / y; });
}

Tensor square(const Tensor& a) {
  return unary(
      a, "square", [](double x) { return x * x; }, [](double x, double) { return 2.0 * x; });
}

Tensor gelu(const Tensor& a) {
  return unary(a, "gelu", gelu_value, [](double x, double) { return gelu_slope(x); });
}

Tensor softplus(const Tensor& a) {
  return unary(a, "softplus", softplus_value, [](double x, double) { return sigmoid(x); });
}

Tensor sum(const Tensor& a) {
  if (!a) throw ShapeError("sum: empty tensor");
  double s = 0.0;
  for (double v : a.data()) s += v;
  return make_result({}, {s}, "sum", {a},
                     [](const std::vector<Tensor>& in, const TensorImpl&, std::span<const double> dout) {
                       auto g = grad_of(in[0]);
                       for (auto& v : g) v += dout[0];
                     });
}

Tensor mean(const Tensor& a) {
  if (!a) throw ShapeError("mean: empty tensor");
  double s = 0.0;
  for (double v : a.data()) s += v;
  const double inv = 1.0 / static_cast<double>(a.numel());
  return make_result({}, {s * inv}, "mean", {a},
                     [inv](const std::vector<Tensor>& in, const TensorImpl&, std::span<const double> dout) {
                       auto g = grad_of(in[0]);
                       for (auto& v : g) v += dout[0] * inv;
                     });
}

Tensor mean_rows(const Tensor& a) {
  require_2d(a, "mean_rows");
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<double> out(n, 0.0);
  auto x = a.data();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) out[j] += x[i * n + j];
  const double inv = 1.0 / static_cast<double>(m);
  for (auto& v : out) v *= inv;
  return make_result({1, n}, std::move(out), "mean_rows", {a},
                     [m, n, inv](const std::vector<Tensor>& in, const TensorImpl&, std::span<const double> dout) {
                       auto g = grad_of(in[0]);
                       for (std::size_t i = 0; i < m; ++i)
                         for (std::size_t j = 0; j < n; ++j) g[i * n + j] += dout[j] * inv;
                     });
}

Tensor broadcast_rows(const Tensor& row, std::size_t m) {
  require_2d(row, "broadcast_rows");
  if (row.rows() != 1) throw ShapeError("broadcast_rows: expected a single row, got " + shape_string(row.shape()));
  if (m == 0) throw ShapeError("broadcast_rows: zero rows");
  const std::size_t n = row.cols();
  std::vector<double> out(m * n);
  for (std::size_t i = 0; i < m; ++i) std::copy(row.data().begin(), row.data().end(), out.begin() + i * n);
  return make_result({m, n}, std::move(out), "broadcast_rows", {row},
                     [m, n](const std::vector<Tensor>& in, const TensorImpl&, std::span<const double> dout) {
                       auto g = grad_of(in[0]);
                       for (std::size_t i = 0; i < m; ++i)
                         for (std::size_t j = 0; j < n; ++j) g[j] += dout[i * n + j];
                     });
}

Tensor add_row(const Tensor& a, const Tensor& row) {
  require_2d(a, "add_row");
  require_2d(row, "add_row");
  if (row.rows() != 1 || row.cols() != a.cols()) {
    throw ShapeError("add_row: row " + shape_string(row.shape()) + " does not fit " + shape_string(a.shape()));
  }
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<double> out(a.data().begin(), a.data().end());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] += row.data()[j];
  return make_result({m, n}, std::move(out), "add_row", {a, row},
                     [m, n](const std::vector<Tensor>& in, const TensorImpl&, std::span<const double> dout) {
                       auto ga = grad_of(in[0]);
                       for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += dout[i];
                       auto gr = grad_of(in[1]);
                       if (!gr.empty()) {
                         for (std::size_t i = 0; i < m; ++i)
                           for (std::size_t j = 0; j < n; ++j) gr[j] += dout[i * n + j];
                       }
                     });
}

namespace {

// Iterates the 1-D slices of a 2-D tensor along `axis`: calls f(offset, stride, length).
template <class F>
void for_each_slice(std::size_t m, std::size_t n, std::size_t axis, F f) {
  if (axis == 1) {
    for (std::size_t i = 0; i < m; ++i) f(i * n, std::size_t{1}, n);
  } else {
    for (std::size_t j = 0; j < n; ++j) f(j, n, m);
  }
}

}  // namespace

Tensor softmax(const Tensor& a, std::size_t axis) {
  require_2d(a, "softmax");
  if (axis > 1) throw ShapeError("softmax: axis must be 0 or 1");
  const std::size_t m = a.rows(), n = a.cols();
  auto x = a.data();
  std::vector<double> out(m * n);
  for_each_slice(m, n, axis, [&](std::size_t off, std::size_t stride, std::size_t len) {
    double mx = x[off];
    for (std::size_t k = 1; k < len; ++k) mx = std::max(mx, x[off + k * stride]);
    double s = 0.0;
    for (std::size_t k = 0; k < len; ++k) {
      const double e = std::exp(x[off + k * stride] - mx);
      out[off + k * stride] = e;
      s += e;
    }
    for (std::size_t k = 0; k < len; ++k) out[off + k * stride] /= s;
  });
  return make_result(
      {m, n}, std::move(out), "softmax", {a},
      [m, n, axis](const std::vector<Tensor>& in, const TensorImpl& o, std::span<const double> dout) {
        auto g = grad_of(in[0]);
        const auto& y = o.data;
        for_each_slice(m, n, axis, [&](std::size_t off, std::size_t stride, std::size_t len) {
          double dot = 0.0;
          for (std::size_t k = 0; k < len; ++k) dot += dout[off + k * stride] * y[off + k * stride];
          for (std::size_t k = 0; k < len; ++k) {
            const std::size_t idx = off + k * stride;
            g[idx] += y[idx] * (dout[idx] - dot);
          }
        });
      });
}

Tensor logsumexp(const Tensor& a, std::size_t axis) {
  require_2d(a, "logsumexp");
  if (axis > 1) throw ShapeError("logsumexp: axis must be 0 or 1");
  const std::size_t m = a.rows(), n = a.cols();
  auto x = a.data();
  Shape shape = axis == 1 ? Shape{m, 1} : Shape{1, n};
  std::vector<double> out;
  out.reserve(axis == 1 ? m : n);
  for_each_slice(m, n, axis, [&](std::size_t off, std::size_t stride, std::size_t len) {
    double mx = x[off];
    for (std::size_t k = 1; k < len; ++k) mx = std::max(mx, x[off + k * stride]);
    double s = 0.0;
    for (std::size_t k = 0; k < len; ++k) s += std::exp(x[off + k * stride] - mx);
    out.push_back(mx + std::log(s));
  });
  return make_result(
      std::move(shape), std::move(out), "logsumexp", {a},
      [m, n, axis](const std::vector<Tensor>& in, const TensorImpl& o, std::span<const double> dout) {
        auto g = grad_of(in[0]);
        auto xs = in[0].data();
        std::size_t slice = 0;
        for_each_slice(m, n, axis, [&](std::size_t off, std::size_t stride, std::size_t len) {
          const double lse = o.data[slice];
          const double d = dout[slice];
          for (std::size_t k = 0; k < len; ++k) {
            const std::size_t idx = off + k * stride;
            g[idx] += d * std::exp(xs[idx] - lse);
          }
          ++slice;
        });
      });
}

Tensor layernorm(const Tensor& x, const Tensor& gain, const Tensor& bias, double eps) {
  require_2d(x, "layernorm");
  const std::size_t m = x.rows(), n = x.cols();
  const Shape row{1, n};
  if (gain.shape() != row || bias.shape() != row) {
    throw ShapeError("layernorm: gain/bias must be " + shape_string(row));
  }
  auto xs = x.data();
  auto gs = gain.data();
  auto bs = bias.data();
  std::vector<double> xhat(m * n), rstd(m), out(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    const double* r = xs.data() + i * n;
    double mu = 0.0;
    for (std::size_t j = 0; j < n; ++j) mu += r[j];
    mu /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t j = 0; j < n; ++j) var += (r[j] - mu) * (r[j] - mu);
    var /= static_cast<double>(n);
    rstd[i] = 1.0 / std::sqrt(var + eps);
    for (std::size_t j = 0; j < n; ++j) {
      xhat[i * n + j] = (r[j] - mu) * rstd[i];
      out[i * n + j] = xhat[i * n + j] * gs[j] + bs[j];
    }
  }
  return make_result(
      {m, n}, std::move(out), "layernorm", {x, gain, bias},
      [m, n, xhat = std::move(xhat), rstd = std::move(rstd)](const std::vector<Tensor>& in, const TensorImpl&,
                                                              std::span<const double> dout) {
        auto gx = grad_of(in[0]);
        auto gg = grad_of(in[1]);
        auto gb = grad_of(in[2]);
        auto gain_v = in[1].data();
        const double inv_n = 1.0 / static_cast<double>(n);
        for (std::size_t i = 0; i < m; ++i) {
          const double* dy = dout.data() + i * n;
          const double* xh = xhat.data() + i * n;
          if (!gg.empty())
            for (std::size_t j = 0; j < n; ++j) gg[j] += dy[j] * xh[j];
          if (!gb.empty())
            for (std::size_t j = 0; j < n; ++j) gb[j] += dy[j];
          if (!gx.empty()) {
            double s1 = 0.0, s2 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
              const double dxh = dy[j] * gain_v[j];
              s1 += dxh;
              s2 += dxh * xh[j];
            }
            for (std::size_t j = 0; j < n; ++j) {
              const double dxh = dy[j] * gain_v[j];
              gx[i * n + j] += rstd[i] * (dxh - inv_n * s1 - xh[j] * inv_n * s2);
            }
          }
        }
      });
}

Tensor concat_rows(std::span<const Tensor> parts) {
  if (parts.empty()) throw ShapeError("concat_rows: no inputs");
  const std::size_t n = [&] {
    require_2d(parts[0], "concat_rows");
    return parts[0].cols();
  }();
  std::size_t m = 0;
  std::vector<double> out;
  for (const auto& p : parts) {
    require_2d(p, "concat_rows");
    if (p.cols() != n) throw ShapeError("concat_rows: column count mismatch");
    m += p.rows();
    out.insert(out.end(), p.data().begin(), p.data().end());
  }
  return make_result({m, n}, std::move(out), "concat_rows", std::vector<Tensor>(parts.begin(), parts.end()),
                     [](const std::vector<Tensor>& in, const TensorImpl&, std::span<const double> dout) {
                       std::size_t off = 0;
                       for (const auto& t : in) {
                         auto g = grad_of(t);
                         for (std::size_t i = 0; i < g.size(); ++i) g[i] += dout[off + i];
                         off += t.numel();
                       }
                     });
}

Tensor slice_rows(const Tensor& a, std::size_t begin, std::size_t end) {
  require_2d(a, "slice_rows");
  if (begin >= end || end > a.rows()) throw ShapeError("slice_rows: invalid range");
  const std::size_t n = a.cols();
  std::vector<double> out(a.data().begin() + begin * n, a.data().begin() + end * n);
  return make_result({end - begin, n}, std::move(out), "slice_rows", {a},
                     [begin, n](const std::vector<Tensor>& in, const TensorImpl&, std::span<const double> dout) {
                       auto g = grad_of(in[0]);
                       for (std::size_t i = 0; i < dout.size(); ++i) g[begin * n + i] += dout[i];
                     });
}

Tensor concat_cols(std::span<const Tensor> parts) {
  if (parts.empty()) throw ShapeError("concat_cols: no inputs");
  require_2d(parts[0], "concat_cols");
  const std::size_t m = parts[0].rows();
  std::size_t n = 0;
  for (const auto& p : parts) {
    require_2d(p, "concat_cols");
    if (p.rows() != m) throw ShapeError("concat_cols: row count mismatch");
    n += p.cols();
  }
  std::vector<double> out(m * n);
  std::size_t col = 0;
  for (const auto& p : parts) {
    const std::size_t w = p.cols();
    for (std::size_t i = 0; i < m; ++i)
      std::copy_n(p.data().begin() + i * w, w, out.begin() + i * n + col);
    col += w;
  }
  return make_result({m, n}, std::move(out), "concat_cols", std::vector<Tensor>(parts.begin(), parts.end()),
                     [m, n](const std::vector<Tensor>& in, const TensorImpl&, std::span<const double> dout) {
                       std::size_t c = 0;
                       for (const auto& t : in) {
                         const std::size_t w = t.cols();
                         auto g = grad_of(t);
                         if (!g.empty()) {
                           for (std::size_t i = 0; i < m; ++i)
                             for (std::size_t j = 0; j < w; ++j) g[i * w + j] += dout[i * n + c + j];
                         }
                         c += w;
                       }
                     });
}

Tensor slice_cols(const Tensor& a, std::size_t begin, std::size_t end) {
  require_2d(a, "slice_cols");
  if (begin >= end || end > a.cols()) throw ShapeError("slice_cols: invalid range");
  const std::size_t m = a.rows(), n = a.cols(), w = end - begin;
  std::vector<double> out(m * w);
  for (std::size_t i = 0; i < m; ++i) std::copy_n(a.data().begin() + i * n + begin, w, out.begin() + i * w);
  return make_result({m, w}, std::move(out), "slice_cols", {a},
                     [m, n, w, begin](const std::vector<Tensor>& in, const TensorImpl&, std::span<const double> dout) {
                       auto g = grad_of(in[0]);
                       for (std::size_t i = 0; i < m; ++i)
                         for (std::size_t j = 0; j < w; ++j) g[i * n + begin + j] += dout[i * w + j];
                     });
}

Tensor reshape(const Tensor& a, Shape shape) {
  if (!a) throw ShapeError("reshape: empty tensor");
  if (numel_of(shape) != a.numel()) {
    throw ShapeError("reshape: " + shape_string(a.shape()) + " -> " + shape_string(shape) + " changes size");
  }
  std::vector<double> out(a.data().begin(), a.data().end());
  return make_result(std::move(shape), std::move(out), "reshape", {a},
                     [](const std::vector<Tensor>& in, const TensorImpl&, std::span<const double> dout) {
                       auto g = grad_of(in[0]);
                       for (std::size_t i = 0; i < g.size(); ++i) g[i] += dout[i];
                     });
}

}  // namespace mpt::diff
