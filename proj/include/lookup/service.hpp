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

// HTTP face of the look-up service.
//
// Routes:
//   GET /lookup?classmark=...[&tier=][&version=][&format=][&key=]
//   GET /{version}/{encoded-notation}     concept dereference
//   GET /composed/{encoded-classmark}     synthesized expression
//   GET /{numeric-legacy-id}              301 to the versioned URI
//   GET /healthz
//
// Request handling is a pure function of (request, snapshot); the snapshot
// pointer is read once per request, so a swap never splits a request across
// two snapshots.

#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lookup/expected.hpp"
#include "lookup/resolver.hpp"
#include "lookup/store.hpp"

namespace lookup::service {

enum class Format { html, turtle, json };

std::string_view to_string(Format format);  // "html", "ttl", "json"
std::string_view content_type(Format format);

struct NotAcceptable {
  std::string message;
};

// An explicit format parameter wins over the Accept header; Accept entries
// are ranked by q-value. No header and no parameter means JSON.
Expected<Format, NotAcceptable> negotiate(std::optional<std::string_view> accept,
                                          std::optional<std::string_view> format_param);

struct KeyEntry {
  std::string id;
  store::Tier tier;
};
using KeyTable = std::map<std::string, KeyEntry, std::less<>>;

struct AccessGrant {
  store::Tier tier = store::Tier::summary;
  std::optional<std::string> key_id;
};

struct Denial {
  store::Tier requested;
  store::Tier allowed;
  std::string message;
};

// Grants the requested tier (default: the key's maximum). The summary tier
// is granted to everyone, with or without a key.
Expected<AccessGrant, Denial> authorize(const KeyTable& keys,
                                        std::optional<std::string_view> presented_key,
                                        std::optional<store::Tier> requested);

struct Request {
  std::string method = "GET";
  std::string target;  // raw request target: path plus query, still encoded
  std::map<std::string, std::string> headers;  // lower-case names
};

struct Response {
  int status = 200;
  std::string content_type;
  std::string body;
  std::vector<std::pair<std::string, std::string>> headers;
  // For the access log.
  std::string format;
  std::string tier;
};

struct Rendered {
  std::string content_type;
  std::string body;
};

// Bodies shared by the HTTP service and the offline CLI.
Rendered render_report(const resolver::InterpretationReport& report,
                       const resolver::Resolver& resolver, Format format);
Rendered render_concept(const store::ConceptRecord& record,
                        const resolver::Resolver& resolver, Format format);
std::string report_json(const resolver::InterpretationReport& report,
                        const resolver::Resolver& resolver);

struct ServiceOptions {
  std::string base_uri = std::string(resolver::kDefaultBaseUri);
  KeyTable keys;
};

class LookupService {
 public:
  LookupService(ServiceOptions options, std::shared_ptr<const store::Snapshot> snapshot);

  // Atomic publication; in-flight requests keep the snapshot they started on.
  void swap_snapshot(std::shared_ptr<const store::Snapshot> snapshot);
  std::shared_ptr<const store::Snapshot> snapshot() const;

  Response handle(const Request& request) const;

  Response handle_lookup(const resolver::Resolver& resolver, std::string_view classmark,
                         const AccessGrant& grant, Format format,
                         std::optional<store::VersionCode> version = std::nullopt) const;
  Response handle_concept(const resolver::Resolver& resolver,
                          std::string_view version_label,
                          std::string_view encoded_notation, const AccessGrant& grant,
                          Format format) const;
  Response handle_legacy(const resolver::Resolver& resolver,
                         std::string_view identifier) const;

  const ServiceOptions& options() const { return options_; }

 private:
  ServiceOptions options_;
  mutable std::mutex mutex_;
  std::shared_ptr<const store::Snapshot> snapshot_;
};

// Blocking HTTP/1.1 front end over a LookupService.
class HttpServer {
 public:
  HttpServer(LookupService& service, std::ostream* access_log = nullptr,
             std::optional<std::filesystem::path> static_dir = std::nullopt);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds and returns the port, or -1. Port 0 picks a free port.
  int bind(const std::string& host, int port);
  // Serves until stop(); returns false if the listener failed.
  bool listen();
  void wait_until_ready() const;
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace lookup::service
