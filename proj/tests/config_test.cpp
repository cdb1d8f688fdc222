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

#include <gtest/gtest.h>

namespace lookup::config {
namespace {

TEST(ConfigTest, ParsesFullConfig) {
  auto c = parse_config(R"({
    "base_uri": "http://example.org/udc",
    "bind_address": "0.0.0.0:9000",
    "snapshot": "archive",
    "static_dir": "webui/dist",
    "keys": [{"id": "lib-a", "key": "s3cret", "tier": "full"},
             {"id": "lib-b", "key": "other", "tier": "abridged"}]
  })", "/etc/udc");
  ASSERT_TRUE(c.has_value()) << c.error().message;
  EXPECT_EQ(c->service.base_uri, "http://example.org/udc");
  EXPECT_EQ(c->host, "0.0.0.0");
  EXPECT_EQ(c->port, 9000);
  EXPECT_EQ(c->snapshot, "/etc/udc/archive");
  EXPECT_EQ(c->static_dir, std::filesystem::path("/etc/udc/webui/dist"));
  ASSERT_EQ(c->service.keys.size(), 2u);
  EXPECT_EQ(c->service.keys.at("s3cret").id, "lib-a");
  EXPECT_EQ(c->service.keys.at("other").tier, store::Tier::abridged);
}

TEST(ConfigTest, Defaults) {
  auto c = parse_config(R"({"snapshot": "/srv/archive"})", "/etc");
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->host, "127.0.0.1");
  EXPECT_EQ(c->port, 8080);
  EXPECT_EQ(c->snapshot, "/srv/archive");
  EXPECT_TRUE(c->service.keys.empty());
  EXPECT_FALSE(c->static_dir.has_value());
}

TEST(ConfigTest, BadKeyEntryIsNamed) {
  auto c = parse_config(R"({"snapshot": "a", "keys": [
    {"id": "ok", "key": "k1", "tier": "full"},
    {"id": "broken", "key": "k2", "tier": "platinum"}]})", "/");
  ASSERT_FALSE(c.has_value());
  EXPECT_NE(c.error().message.find("keys[1] (broken)"), std::string::npos) << c.error().message;
}

TEST(ConfigTest, Rejections) {
  for (const char* text : {
           R"({})",
           R"({"snapshot": "a", "bind_address": "localhost"})",
           R"({"snapshot": "a", "bind_address": "h:99999"})",
           R"({"snapshot": "a", "base_uri": "udcdata.info"})",
           R"({"snapshot": "a", "colour": "blue"})",
           R"({"snapshot": "a", "keys": [{"id": "x", "key": "k", "tier": "full"},
                                         {"id": "x", "key": "j", "tier": "full"}]})",
           R"({"snapshot": "a", "keys": [{"id": "x", "key": "k", "tier": "full"},
                                         {"id": "y", "key": "k", "tier": "full"}]})",
           R"([1, 2])",
           R"({"snapshot": )",
       }) {
    EXPECT_FALSE(parse_config(text, "/").has_value()) << text;
  }
}

TEST(ConfigTest, MissingFile) {
  EXPECT_FALSE(load_config("/nonexistent/config.json").has_value());
}

}  // namespace
}  // namespace lookup::config
