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

#include "mpt/harness/loso.hpp"

#include "mpt/error.hpp"

namespace mpt::harness {

std::vector<Fold> loso_split(const seqio::Manifest& manifest) {
  const auto subjects = manifest.subjects();
  if (subjects.size() < 2) {
    throw DataError("loso_split: need at least two subjects, found " + std::to_string(subjects.size()));
  }
  std::vector<Fold> folds;
  for (const auto& s : subjects) {
    Fold f{s, {}, {}};
    for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
      (manifest.entries[i].subject == s ? f.test : f.train).push_back(i);
    }
    folds.push_back(std::move(f));
  }
  return folds;
}

}  // namespace mpt::harness
