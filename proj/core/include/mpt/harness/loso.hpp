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

#include <string>
#include <vector>

#include "mpt/seqio/manifest.hpp"

namespace mpt::harness {

/// Indices into the manifest entries.
struct Fold {
  std::string subject;
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// One fold per distinct subject, in sorted subject order. Throws DataError
/// with fewer than two subjects.
std::vector<Fold> loso_split(const seqio::Manifest& manifest);

}  // namespace mpt::harness
