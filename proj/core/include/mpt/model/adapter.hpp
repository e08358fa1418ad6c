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

#include <array>

#include "mpt/encode/token_batch.hpp"
#include "mpt/model/config.hpp"
#include "mpt/model/params.hpp"

namespace mpt::model {

/// f(x W_down) W_up, row-wise.
diff::Tensor adapter_branch(const diff::Tensor& x, const AdapterBranch& branch);

/// Group adapter for one layer. In mean-broadcast mode each group's mean token
/// goes through its branch and the single correction is added to every token
/// of the group; in per-token mode each token gets its own correction. Empty
/// groups are skipped.
encode::TokenBatch group_adapt(const encode::TokenBatch& tokens, const std::array<AdapterBranch, 3>& branches,
                               AdapterMode mode = AdapterMode::MeanBroadcast);

/// One branch applied to every token: x + f(x W_down) W_up.
encode::TokenBatch primitive_adapt(const encode::TokenBatch& tokens, const AdapterBranch& branch);

}  // namespace mpt::model
