// Copyright 2026 The Classmark Lookup Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "lookup/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace lookup::config {

namespace {

using nlohmann::json;

Expected<std::string, ConfigError> string_field(const json& j, const char* name,
                                                const std::string& where) {
  auto it = j.find(name);
  if (it == j.end()) return unexpected(ConfigError{where + ": missing \"" + name + "\""});
  if (!it->is_string() || it->get<std::string>().empty()) {
    return unexpected(ConfigError{where + ": \"" + name + "\" must be a non-empty string"});
  }
  return it->get<std::string>();
}

Expected<bool, ConfigError> parse_bind(const std::string& text, Config& config) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == text.size()) {
    return unexpected(ConfigError{"bind_address must be host:port, got \"" + text + "\""});
  }
  const std::string port = text.substr(colon + 1);
  int value = 0;
  for (char c : port) {
    if (c < '0' || c > '9' || value > 65535) {
      return unexpected(ConfigError{"bind_address has a bad port: \"" + port + "\""});
    }
    value = value * 10 + (c - '0');
  }
  if (value > 65535) {
    return unexpected(ConfigError{"bind_address has a bad port: \"" + port + "\""});
  }
  config.host = text.substr(0, colon);
  config.port = value;
  return true;
}

}  // namespace

Expected<Config, ConfigError> parse_config(std::string_view text,
                                           const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    return unexpected(ConfigError{std::string("config is not valid JSON: ") + e.what()});
  }
  if (!j.is_object()) return unexpected(ConfigError{"config must be a JSON object"});

  static const std::set<std::string> kKnown = {"base_uri", "bind_address", "snapshot",
                                               "static_dir", "keys"};
  for (const auto& [name, value] : j.items()) {
    if (!kKnown.count(name)) return unexpected(ConfigError{"unknown config key \"" + name + "\""});
  }

  Config config;
  if (j.contains("base_uri")) {
    auto base = string_field(j, "base_uri", "config");
    if (!base) return unexpected(base.error());
    if (base->find("://") == std::string::npos) {
      return unexpected(ConfigError{"base_uri must be an absolute URI"});
    }
    config.service.base_uri = *base;
  }
  if (j.contains("bind_address")) {
    auto bind = string_field(j, "bind_address", "config");
    if (!bind) return unexpected(bind.error());
    if (auto ok = parse_bind(*bind, config); !ok) return unexpected(ok.error());
  }
  auto snapshot = string_field(j, "snapshot", "config");
  if (!snapshot) return unexpected(snapshot.error());
  config.snapshot = base_dir / *snapshot;
  if (j.contains("static_dir")) {
    auto dir = string_field(j, "static_dir", "config");
    if (!dir) return unexpected(dir.error());
    config.static_dir = base_dir / *dir;
  }

  if (j.contains("keys")) {
    const json& keys = j["keys"];
    if (!keys.is_array()) return unexpected(ConfigError{"keys must be an array"});
    std::set<std::string> ids;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      const json& entry = keys[i];
      std::string where = "keys[" + std::to_string(i) + "]";
      if (!entry.is_object()) return unexpected(ConfigError{where + ": must be an object"});
      if (entry.contains("id") && entry["id"].is_string()) {
        where += " (" + entry["id"].get<std::string>() + ")";
      }
      for (const auto& [name, value] : entry.items()) {
        if (name != "id" && name != "key" && name != "tier") {
          return unexpected(ConfigError{where + ": unknown field \"" + name + "\""});
        }
      }
      auto id = string_field(entry, "id", where);
      if (!id) return unexpected(id.error());
      auto key = string_field(entry, "key", where);
      if (!key) return unexpected(key.error());
      auto tier_text = string_field(entry, "tier", where);
      if (!tier_text) return unexpected(tier_text.error());
      auto tier = store::parse_tier(*tier_text);
      if (!tier) {
        return unexpected(ConfigError{where + ": tier must be summary, abridged or full, got \"" +
                                      *tier_text + "\""});
      }
      if (!ids.insert(*id).second) {
        return unexpected(ConfigError{where + ": duplicate key id"});
      }
      if (!config.service.keys.emplace(*key, service::KeyEntry{*id, *tier}).second) {
        return unexpected(ConfigError{where + ": key value already assigned to another entry"});
      }
    }
  }
  return config;
}

Expected<Config, ConfigError> load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return unexpected(ConfigError{"cannot read config " + path.string()});
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.parent_path());
}

}  // namespace lookup::config
