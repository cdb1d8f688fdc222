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

// Interpretation of classmarks against a snapshot, and the URI scheme.
//
// A concept URI is  <base>/<version>/<percent-encoded notation>  where the
// version is the one in which the record was introduced. Composite
// classmarks get  <base>/composed/<encoded classmark>; those URIs carry no
// authority of their own.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lookup/expected.hpp"
#include "lookup/notation.hpp"
#include "lookup/store.hpp"

namespace lookup::resolver {

inline constexpr std::string_view kDefaultBaseUri = "https://udcdata.info";
inline constexpr std::string_view kComposedSegment = "composed";

// Percent-encodes every byte outside A-Z a-z 0-9 - . _ ~ with uppercase hex.
std::string encode_notation(std::string_view notation);

// Inverse of encode_notation; accepts either hex case. Fails on a truncated
// or non-hex escape.
std::optional<std::string> decode_notation(std::string_view encoded);

struct ConceptUri {
  std::string base;
  std::string version;
  std::string encoded_notation;

  std::string str() const { return base + "/" + version + "/" + encoded_notation; }
  // Path below the base: "/MRF93/%3D162.3".
  std::string path() const { return "/" + version + "/" + encoded_notation; }
  bool operator==(const ConceptUri&) const = default;
};

struct NotFound {
  std::string what;
};

enum class Status { valid, deprecated, unknown, tier_blocked };
std::string_view to_string(Status status);

struct OpenSuperclass {
  std::string notation;
  ConceptUri uri;
  bool operator==(const OpenSuperclass&) const = default;
};

struct ComponentStatus {
  std::string notation;
  notation::LeafKind kind;
  notation::Span span;
  Status status = Status::unknown;
  std::optional<ConceptUri> uri;
  std::vector<ConceptUri> replaced_by;  // transitive redirect endpoints
  bool withdrawn = false;               // deprecated with no successor
  std::optional<store::Tier> required_tier;  // tier_blocked only
  // For unknown and tier-blocked components: the closest open ancestor.
  std::optional<OpenSuperclass> open_superclass;

  bool resolvable() const {
    return status == Status::valid || status == Status::deprecated;
  }
  bool operator==(const ComponentStatus&) const = default;
};

struct InterpretationReport {
  notation::Classmark input;
  notation::ParseTree tree;
  std::vector<ComponentStatus> components;
  std::optional<ConceptUri> composed_uri;
  store::VersionCode snapshot_version;
  store::Tier tier = store::Tier::summary;
};

class Resolver {
 public:
  Resolver(std::shared_ptr<const store::Snapshot> snapshot,
           std::string base_uri = std::string(kDefaultBaseUri));

  const store::Snapshot& snapshot() const { return *snapshot_; }
  const std::shared_ptr<const store::Snapshot>& snapshot_ptr() const {
    return snapshot_;
  }
  const std::string& base_uri() const { return base_; }

  // URI in the version where the notation first appeared.
  Expected<ConceptUri, NotFound> mint_uri(std::string_view notation) const;

  // URI of one specific record (its own introduction version).
  ConceptUri record_uri(const store::ConceptRecord& record) const;

  ConceptUri composed_uri(std::string_view normalized_classmark) const;

  // URI of the record carrying a pre-versioning numeric identifier. A
  // deprecated record maps to itself, never to its replacement.
  Expected<ConceptUri, NotFound> legacy_lookup(std::string_view identifier) const;

  Expected<InterpretationReport, notation::ParseError> interpret(
      std::string_view classmark, store::Tier tier,
      std::optional<store::VersionCode> version = std::nullopt) const;

  std::optional<OpenSuperclass> open_superclass(std::string_view notation) const;

 private:
  ComponentStatus resolve_component(const notation::Leaf& leaf, store::Tier tier,
                                    const std::optional<store::VersionCode>& version) const;

  std::shared_ptr<const store::Snapshot> snapshot_;
  std::string base_;
};

}  // namespace lookup::resolver
