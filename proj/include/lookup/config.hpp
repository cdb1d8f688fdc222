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


// Service configuration file (JSON):
//
//   {
//     "base_uri": "https://udcdata.info",
//     "bind_address": "127.0.0.1:8080",
//     "snapshot": "archive/",          relative to the config file
//     "static_dir": "webui/dist",      optional, relative likewise
//     "keys": [{"id": "library-a", "key": "s3cret", "tier": "full"}]
//   }

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "lookup/expected.hpp"
#include "lookup/service.hpp"

namespace lookup::config {

struct ConfigError {
  std::string message;
};

struct Config {
  service::ServiceOptions service;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path snapshot;
  std::optional<std::filesystem::path> static_dir;
};

Expected<Config, ConfigError> parse_config(std::string_view text,
                                           const std::filesystem::path& base_dir);
Expected<Config, ConfigError> load_config(const std::filesystem::path& path);

}  // namespace lookup::config
