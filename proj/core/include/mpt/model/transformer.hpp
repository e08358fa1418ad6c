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

#include "mpt/encode/token_batch.hpp"
#include "mpt/model/params.hpp"

namespace mpt::model {

/// Pre-norm block over all tokens jointly:
///   x = x + Attn(LN1(x));  x = x + FFN(LN2(x))
/// If `attention` is given it receives one (rows x rows) probability matrix
/// per head.
encode::TokenBatch transformer_layer(const encode::TokenBatch& tokens, const LayerParams& layer, std::size_t heads,
                                     std::vector<diff::Tensor>* attention = nullptr);

}  // namespace mpt::model
