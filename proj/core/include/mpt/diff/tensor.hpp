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
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mpt::diff {

using Shape = std::vector<std::size_t>;

struct Node;

struct TensorImpl {
  Shape shape;
  std::vector<double> data;
  bool requires_grad = false;
  std::optional<std::vector<double>> grad;
  // Producer of this value; empty for leaves.
  std::shared_ptr<Node> node;
};

std::size_t numel_of(const Shape& shape);
std::string shape_string(const Shape& shape);

/// Shared handle to a dense row-major array of doubles.
///
/// Copies alias the same storage. Values produced by differentiable ops carry a
/// link to the op that made them, so backward() can walk the recorded tape.
class Tensor {
 public:
  Tensor() = default;

  static Tensor zeros(Shape shape, bool requires_grad = false);
  static Tensor full(Shape shape, double value, bool requires_grad = false);
  static Tensor from(Shape shape, std::vector<double> data, bool requires_grad = false);
  static Tensor scalar(double value, bool requires_grad = false);

  explicit operator bool() const noexcept { return impl_ != nullptr; }

  const Shape& shape() const { return impl_->shape; }
  std::size_t rank() const { return impl_->shape.size(); }
  std::size_t dim(std::size_t axis) const;
  std::size_t numel() const { return impl_->data.size(); }
  // Shorthand for 2-D tensors.
  std::size_t rows() const { return dim(0); }
  std::size_t cols() const { return dim(1); }

  std::span<const double> data() const { return impl_->data; }
  // Writable access is for leaves (parameters, inputs) only.
  std::span<double> mutable_data();
  double item() const;
  double at(std::size_t r, std::size_t c) const { return impl_->data[r * cols() + c]; }

  bool requires_grad() const { return impl_->requires_grad; }
  void set_requires_grad(bool on);
  bool is_leaf() const { return impl_->node == nullptr; }

  bool has_grad() const { return impl_->grad.has_value(); }
  std::span<const double> grad() const;
  /// Allocates (or resets) a zero gradient buffer.
  void zero_grad();
  void clear_grad() { impl_->grad.reset(); }

  /// Deep copy of the values with no history and no gradient.
  Tensor detach() const;
  /// Mutable view of the gradient buffer, allocating zeros on first use.
  std::span<double> grad_buffer() const;

  TensorImpl* impl() const noexcept { return impl_.get(); }
  bool same_storage(const Tensor& other) const noexcept { return impl_ == other.impl_; }

 private:
  explicit Tensor(std::shared_ptr<TensorImpl> impl) : impl_(std::move(impl)) {}
  friend Tensor make_tensor(std::shared_ptr<TensorImpl> impl);

  std::shared_ptr<TensorImpl> impl_;
};

Tensor make_tensor(std::shared_ptr<TensorImpl> impl);

/// One recorded operation. The backward closure receives the op output and
/// the gradient flowing into it and accumulates into the inputs that
/// require grad.
struct Node {
  using BackwardFn =
      std::function<void(const std::vector<Tensor>& inputs, const TensorImpl& out, std::span<const double> dout)>;

  const char* op = "";
  std::vector<Tensor> inputs;
  BackwardFn backward;
  std::uint64_t sequence = 0;
};

/// Disables recording on the current thread while alive.
class NoGradGuard {
 public:
  NoGradGuard();
  ~NoGradGuard();
  NoGradGuard(const NoGradGuard&) = delete;
  NoGradGuard& operator=(const NoGradGuard&) = delete;

 private:
  bool previous_;
};

bool grad_enabled() noexcept;

}  // namespace mpt::diff
