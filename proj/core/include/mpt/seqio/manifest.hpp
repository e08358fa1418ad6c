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

#include <filesystem>
#include <string>
#include <vector>

namespace mpt::seqio {

struct ManifestEntry {
  std::string path;
  std::string subject;
  std::size_t label = 0;
};

/// Dataset index. Text form: first line "#classes: a,b,c", then one
/// "path<TAB>subject<TAB>label" record per line. Relative paths are resolved
/// against the manifest's directory.
struct Manifest {
  std::vector<ManifestEntry> entries;
  std::vector<std::string> class_names;

  std::size_t classes() const { return class_names.size(); }
  /// Distinct subjects, sorted.
  std::vector<std::string> subjects() const;
  void validate() const;
};

Manifest parse_manifest(const std::string& text);
std::string format_manifest(const Manifest& m);
Manifest read_manifest(const std::filesystem::path& path);
void write_manifest(const Manifest& m, const std::filesystem::path& path);

}  // namespace mpt::seqio
