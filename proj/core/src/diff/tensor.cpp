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

#include "mpt/diff/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mpt/error.hpp"

namespace mpt::diff {

namespace {
thread_local bool t_grad_enabled = true;
}  // namespace

std::size_t numel_of(const Shape& shape) {
  std::size_t n = 1;
  for (auto d : shape) n *= d;
  return n;
}

std::string shape_string(const Shape& shape) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) os << (i ? "x" : "") << shape[i];
  os << ']';
  return os.str();
}

Tensor make_tensor(std::shared_ptr<TensorImpl> impl) { return Tensor(std::move(impl)); }

Tensor Tensor::zeros(Shape shape, bool requires_grad) { return full(std::move(shape), 0.0, requires_grad); }

Tensor Tensor::full(Shape shape, double value, bool requires_grad) {
  std::vector<double> data(numel_of(shape), value);
  return from(std::move(shape), std::move(data), requires_grad);
}

Tensor Tensor::from(Shape shape, std::vector<double> data, bool requires_grad) {
  for (auto d : shape) {
    if (d == 0) throw ShapeError("tensor dimensions must be positive, got " + shape_string(shape));
  }
  if (data.size() != numel_of(shape)) {
    throw ShapeError("tensor data length " + std::to_string(data.size()) + " does not match shape " +
                     shape_string(shape));
  }
  for (double v : data) {
    if (!std::isfinite(v)) throw NumericalError("tensor initialised with a non-finite value");
  }
  auto impl = std::make_shared<TensorImpl>();
  impl->shape = std::move(shape);
  impl->data = std::move(data);
  impl->requires_grad = requires_grad;
  return Tensor(std::move(impl));
}

Tensor Tensor::scalar(double value, bool requires_grad) { return from({}, {value}, requires_grad); }

std::size_t Tensor::dim(std::size_t axis) const {
  if (axis >= impl_->shape.size()) {
    throw ShapeError("axis " + std::to_string(axis) + " out of range for shape " + shape_string(impl_->shape));
  }
  return impl_->shape[axis];
}

std::span<double> Tensor::mutable_data() {
  if (!is_leaf()) throw Error("cannot write to the values of a recorded intermediate");
  return impl_->data;
}

double Tensor::item() const {
  if (numel() != 1) throw ShapeError("item() on tensor with shape " + shape_string(shape()));
  return impl_->data[0];
}

void Tensor::set_requires_grad(bool on) {
  if (!is_leaf()) throw Error("requires_grad can only be changed on leaves");
  impl_->requires_grad = on;
  if (!on) impl_->grad.reset();
}

std::span<const double> Tensor::grad() const {
  if (!impl_->grad) throw Error("tensor has no gradient");
  return *impl_->grad;
}

void Tensor::zero_grad() { impl_->grad.emplace(impl_->data.size(), 0.0); }

std::span<double> Tensor::grad_buffer() const {
  if (!impl_->grad) impl_->grad.emplace(impl_->data.size(), 0.0);
  return *impl_->grad;
}

Tensor Tensor::detach() const {
  auto impl = std::make_shared<TensorImpl>();
  impl->shape = impl_->shape;
  impl->data = impl_->data;
  return Tensor(std::move(impl));
}

NoGradGuard::NoGradGuard() : previous_(t_grad_enabled) { t_grad_enabled = false; }
NoGradGuard::~NoGradGuard() { t_grad_enabled = previous_; }

bool grad_enabled() noexcept { return t_grad_enabled; }

}  // namespace mpt::diff
