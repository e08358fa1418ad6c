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

#pragma once

#include <cstddef>
#include <span>

#include "mpt/diff/tensor.hpp"

// Differentiable kernels. 2-D ops take (rows x cols) tensors; elementwise ops
// accept any rank but require identical shapes (no implicit broadcasting).
// Every op throws ShapeError on mismatched inputs and NumericalError if it
// produces a non-finite value.
namespace mpt::diff {

Tensor matmul(const Tensor& a, const Tensor& b);
Tensor transpose(const Tensor& a);

Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor div(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, double factor);
Tensor add_scalar(const Tensor& a, double value);

Tensor exp(const Tensor& a);
Tensor log(const Tensor& a);
Tensor sqrt(const Tensor& a);
Tensor square(const Tensor& a);
/// Exact erf form: 0.5 x (1 + erf(x / sqrt 2)).
Tensor gelu(const Tensor& a);
Tensor softplus(const Tensor& a);

Tensor sum(const Tensor& a);
Tensor mean(const Tensor& a);
/// (m x n) -> (1 x n), mean over rows.
Tensor mean_rows(const Tensor& a);
/// (1 x n) -> (m x n).
Tensor broadcast_rows(const Tensor& row, std::size_t m);
/// a + broadcast_rows(row); the usual bias add.
Tensor add_row(const Tensor& a, const Tensor& row);

/// Max-subtracted softmax along axis 0 (columns) or 1 (rows) of a 2-D tensor.
Tensor softmax(const Tensor& a, std::size_t axis = 1);
/// Max-subtracted log-sum-exp along an axis; the reduced axis has size 1.
Tensor logsumexp(const Tensor& a, std::size_t axis = 1);

inline constexpr double kLayerNormEps = 1e-5;
/// Row-wise normalization with (1 x n) gain and bias.
Tensor layernorm(const Tensor& x, const Tensor& gain, const Tensor& bias, double eps = kLayerNormEps);

Tensor concat_rows(std::span<const Tensor> parts);
Tensor slice_rows(const Tensor& a, std::size_t begin, std::size_t end);
Tensor concat_cols(std::span<const Tensor> parts);
Tensor slice_cols(const Tensor& a, std::size_t begin, std::size_t end);
Tensor reshape(const Tensor& a, Shape shape);

}  // namespace mpt::diff
