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

#include "mpt/harness/config_file.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "mpt/error.hpp"

namespace mpt::harness {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) throw ConfigError("config: bad value '" + value + "' for " + key);
  return out;
}

using Setter = std::function<void(TrainConfig&, const std::string& key, const std::string& value)>;

template <class T, class Field>
Setter number(Field field) {
  return [field](TrainConfig& c, const std::string& k, const std::string& v) {
    std::invoke(field, c) = parse_number<T>(k, v);
  };
}

const std::map<std::string, Setter>& setters() {
  using C = TrainConfig;
  static const std::map<std::string, Setter> table = {
      {"lr", number<double>([](C& c) -> double& { return c.lr; })},
      {"batch", number<std::size_t>([](C& c) -> std::size_t& { return c.batch; })},
      {"epochs", number<std::size_t>([](C& c) -> std::size_t& { return c.epochs; })},
      {"seed", number<std::uint64_t>([](C& c) -> std::uint64_t& { return c.seed; })},
      {"beta", number<double>([](C& c) -> double& { return c.beta; })},
      {"band_low", number<double>([](C& c) -> double& { return c.band.low_hz; })},
      {"band_high", number<double>([](C& c) -> double& { return c.band.high_hz; })},
      {"filter_order", number<int>([](C& c) -> int& { return c.band.order; })},
      {"levels", number<std::size_t>([](C& c) -> std::size_t& { return c.levels; })},
      {"variant", [](C& c, const std::string&, const std::string& v) { c.variant = model::parse_variant(v); }},
      {"weights", [](C& c, const std::string&, const std::string& v) { c.weights = v; }},
      {"height", number<std::size_t>([](C& c) -> std::size_t& { return c.model.height; })},
      {"width", number<std::size_t>([](C& c) -> std::size_t& { return c.model.width; })},
      {"channels", number<std::size_t>([](C& c) -> std::size_t& { return c.model.channels; })},
      {"patch", number<std::size_t>([](C& c) -> std::size_t& { return c.model.patch; })},
      {"dim", number<std::size_t>([](C& c) -> std::size_t& { return c.model.dim; })},
      {"layers", number<std::size_t>([](C& c) -> std::size_t& { return c.model.layers; })},
      {"heads", number<std::size_t>([](C& c) -> std::size_t& { return c.model.heads; })},
      {"mlp_ratio", number<std::size_t>([](C& c) -> std::size_t& { return c.model.mlp_ratio; })},
      {"prompts", number<std::size_t>([](C& c) -> std::size_t& { return c.model.prompts; })},
      {"frames", number<std::size_t>([](C& c) -> std::size_t& { return c.model.frames; })},
      {"reduction", number<std::size_t>([](C& c) -> std::size_t& { return c.model.reduction; })},
      {"classes", number<std::size_t>([](C& c) -> std::size_t& { return c.model.classes; })},
      {"adapter_mode",
       [](C& c, const std::string&, const std::string& v) { c.model.adapter_mode = model::parse_adapter_mode(v); }},
      {"init_std", number<double>([](C& c) -> double& { return c.model.init_std; })},
  };
  return table;
}

}  // namespace

void TrainConfig::validate() const {
  if (!(lr > 0)) throw ConfigError("config: lr must be positive");
  if (batch < 1) throw ConfigError("config: batch must be at least 1");
  if (epochs < 1) throw ConfigError("config: epochs must be at least 1");
  if (!(beta >= 0)) throw ConfigError("config: beta must be non-negative");
  if (levels < 1) throw ConfigError("config: levels must be at least 1");
  if (!(band.low_hz > 0) || !(band.high_hz > band.low_hz)) throw ConfigError("config: need 0 < band_low < band_high");
  if (band.order < 1) throw ConfigError("config: filter_order must be at least 1");
  model.validate();
}

TrainConfig parse_config(const std::string& text, TrainConfig base) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(std::string_view(stripped).substr(0, eq));
    std::string value = trim(std::string_view(stripped).substr(eq + 1));
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
    }
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    it->second(base, key, value);
  }
  return base;
}

TrainConfig load_config(const std::filesystem::path& path, TrainConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), std::move(base));
}

std::string format_config(const TrainConfig& c) {
  std::ostringstream out;
  out.precision(17);
  out << "lr = " << c.lr << "\nbatch = " << c.batch << "\nepochs = " << c.epochs << "\nseed = " << c.seed
      << "\nbeta = " << c.beta << "\nband_low = " << c.band.low_hz << "\nband_high = " << c.band.high_hz
      << "\nfilter_order = " << c.band.order << "\nlevels = " << c.levels << "\nvariant = " << model::variant_name(c.variant)
      << "\nweights = \"" << c.weights << "\"\nheight = " << c.model.height << "\nwidth = " << c.model.width
      << "\nchannels = " << c.model.channels << "\npatch = " << c.model.patch << "\ndim = " << c.model.dim
      << "\nlayers = " << c.model.layers << "\nheads = " << c.model.heads << "\nmlp_ratio = " << c.model.mlp_ratio
      << "\nprompts = " << c.model.prompts << "\nframes = " << c.model.frames << "\nreduction = " << c.model.reduction
      << "\nclasses = " << c.model.classes << "\nadapter_mode = " << model::adapter_mode_name(c.model.adapter_mode)
      << "\ninit_std = " << c.model.init_std << "\n";
  return out.str();
}

}  // namespace mpt::harness
