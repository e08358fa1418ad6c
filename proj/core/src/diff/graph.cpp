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

#include "mpt/diff/graph.hpp"

#include <algorithm>
#include <unordered_set>

#include "mpt/error.hpp"

namespace mpt::diff {

Graph Graph::from_root(const Tensor& root) {
  Graph g;
  if (!root || root.is_leaf()) return g;

  // Iterative DFS; sequence numbers are assigned at record time and increase
  // monotonically on a thread, so sorting by them yields a topological order.
  std::unordered_set<const TensorImpl*> seen;
  std::vector<TensorImpl*> stack{root.impl()};
  while (!stack.empty()) {
    TensorImpl* t = stack.back();
    stack.pop_back();
    if (!t->node || !seen.insert(t).second) continue;
    g.entries_.push_back({t, t->node.get()});
    for (const auto& in : t->node->inputs) {
      if (in.requires_grad() && !in.is_leaf()) stack.push_back(in.impl());
    }
  }
  std::sort(g.entries_.begin(), g.entries_.end(),
            [](const Entry& a, const Entry& b) { return a.node->sequence < b.node->sequence; });
  return g;
}

void backward(const Tensor& loss, bool retain_intermediate) {
  if (!loss) throw Error("backward on an empty tensor");
  if (loss.numel() != 1) throw ShapeError("backward requires a scalar loss, got " + shape_string(loss.shape()));
  if (!loss.requires_grad()) return;

  Graph graph = Graph::from_root(loss);
  loss.grad_buffer()[0] += 1.0;
  if (graph.size() == 0) return;

  const auto& entries = graph.entries();
  for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
    TensorImpl* out = it->output;
    if (!out->grad) continue;
    it->node->backward(it->node->inputs, *out, *out->grad);
    if (!retain_intermediate && out != loss.impl()) out->grad.reset();
  }
}

}  // namespace mpt::diff
