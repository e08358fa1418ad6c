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

#include "mpt/seqio/manifest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "mpt/error.hpp"

namespace mpt::seqio {

namespace {

constexpr std::string_view kClassesPrefix = "#classes:";

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::vector<std::string> Manifest::subjects() const {
  std::set<std::string> s;
  for (const auto& e : entries) s.insert(e.subject);
  return {s.begin(), s.end()};
}

void Manifest::validate() const {
  if (class_names.empty()) throw DataError("manifest declares no classes");
  for (const auto& e : entries) {
    if (e.label >= class_names.size()) {
      throw DataError("manifest entry '" + e.path + "' has label " + std::to_string(e.label) + " but only " +
                      std::to_string(class_names.size()) + " classes");
    }
    if (e.subject.empty()) throw DataError("manifest entry '" + e.path + "' has an empty subject");
    if (e.path.empty()) throw DataError("manifest entry with empty path");
  }
}

Manifest parse_manifest(const std::string& text) {
  Manifest m;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!have_header) {
      if (line.rfind(kClassesPrefix, 0) != 0) {
        throw DataError("manifest line 1 must start with '#classes:'");
      }
      for (auto& name : split(std::string_view(line).substr(kClassesPrefix.size()), ',')) {
        auto n = trim(name);
        if (n.empty()) throw DataError("manifest has an empty class name");
        m.class_names.push_back(std::move(n));
      }
      have_header = true;
      continue;
    }
    if (trim(line).empty()) continue;
    auto fields = split(line, '\t');
    if (fields.size() != 3) {
      throw DataError("manifest line " + std::to_string(lineno) + ": expected path<TAB>subject<TAB>label");
    }
    ManifestEntry e{fields[0], fields[1], 0};
    const auto& lab = fields[2];
    auto [ptr, ec] = std::from_chars(lab.data(), lab.data() + lab.size(), e.label);
    if (ec != std::errc() || ptr != lab.data() + lab.size()) {
      throw DataError("manifest line " + std::to_string(lineno) + ": bad label '" + lab + "'");
    }
    m.entries.push_back(std::move(e));
  }
  if (!have_header) throw DataError("manifest is empty");
  m.validate();
  return m;
}

std::string format_manifest(const Manifest& m) {
  std::ostringstream os;
  os << kClassesPrefix << ' ';
  for (std::size_t i = 0; i < m.class_names.size(); ++i) os << (i ? "," : "") << m.class_names[i];
  os << '\n';
  for (const auto& e : m.entries) os << e.path << '\t' << e.subject << '\t' << e.label << '\n';
  return os.str();
}

Manifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open manifest " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str());
}

void write_manifest(const Manifest& m, const std::filesystem::path& path) {
  m.validate();
  std::ofstream out(path);
  if (!out) throw DataError("cannot write manifest " + path.string());
  out << format_manifest(m);
}

}  // namespace mpt::seqio
