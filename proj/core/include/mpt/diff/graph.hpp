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

#include <vector>

#include "mpt/diff/tensor.hpp"

namespace mpt::diff {

/// Topologically ordered view of the operations that produced a root tensor.
/// Producers come before consumers; every node appears once.
class Graph {
 public:
  struct Entry {
    TensorImpl* output;
    Node* node;
  };

  static Graph from_root(const Tensor& root);

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<Entry> entries_;
};

/// Reverse-mode sweep from a scalar loss.
///
/// Every leaf that requires grad and is reachable from `loss` ends up with
/// dLoss/dLeaf added to its gradient buffer (buffers accumulate across calls
/// until cleared). Intermediate gradients are released after use unless
/// `retain_intermediate` is set. Frozen tensors are never touched.
void backward(const Tensor& loss, bool retain_intermediate = false);

}  // namespace mpt::diff
