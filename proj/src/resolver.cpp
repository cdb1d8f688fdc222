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

#include "lookup/resolver.hpp"

#include <utility>

namespace lookup::resolver {

namespace {

bool unreserved(unsigned char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
         (c >= '0' && c <= '9') || c == '-' || c == '.' || c == '_' || c == '~';
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

std::string strip_trailing_slash(std::string base) {
  while (!base.empty() && base.back() == '/') base.pop_back();
  return base;
}

}  // namespace

std::string encode_notation(std::string_view notation) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(notation.size());
  for (char ch : notation) {
    const auto c = static_cast<unsigned char>(ch);
    if (unreserved(c)) {
      out += ch;
    } else {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 0xF];
    }
  }
  return out;
}

std::optional<std::string> decode_notation(std::string_view encoded) {
  std::string out;
  out.reserve(encoded.size());
  for (std::size_t i = 0; i < encoded.size(); ++i) {
    if (encoded[i] != '%') {
      out += encoded[i];
      continue;
    }
    if (i + 2 >= encoded.size()) return std::nullopt;
    const int hi = hex_value(encoded[i + 1]);
    const int lo = hex_value(encoded[i + 2]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out += static_cast<char>(hi * 16 + lo);
    i += 2;
  }
  return out;
}

std::string_view to_string(Status status) {
  switch (status) {
    case Status::valid: return "valid";
    case Status::deprecated: return "deprecated";
    case Status::unknown: return "unknown";
    case Status::tier_blocked: return "tier-blocked";
  }
  return "unknown";
}

Resolver::Resolver(std::shared_ptr<const store::Snapshot> snapshot, std::string base_uri)
    : snapshot_(std::move(snapshot)), base_(strip_trailing_slash(std::move(base_uri))) {}

Expected<ConceptUri, NotFound> Resolver::mint_uri(std::string_view notation) const {
  auto version = snapshot_->earliest_version(notation);
  if (!version) return unexpected(NotFound{std::string(notation)});
  return ConceptUri{base_, version->label, encode_notation(notation)};
}

ConceptUri Resolver::record_uri(const store::ConceptRecord& record) const {
  return ConceptUri{base_, record.introduced_in.label, encode_notation(record.notation)};
}

ConceptUri Resolver::composed_uri(std::string_view normalized_classmark) const {
  return ConceptUri{base_, std::string(kComposedSegment),
                    encode_notation(normalized_classmark)};
}

Expected<ConceptUri, NotFound> Resolver::legacy_lookup(std::string_view identifier) const {
  const store::ConceptRecord* r = snapshot_->find_by_identifier(identifier);
  if (r == nullptr) return unexpected(NotFound{std::string(identifier)});
  return record_uri(*r);
}

std::optional<OpenSuperclass> Resolver::open_superclass(std::string_view notation) const {
  auto open = snapshot_->nearest_open_superclass(notation);
  if (!open) return std::nullopt;
  const store::ConceptRecord* r = snapshot_->latest(*open);
  return OpenSuperclass{*open, record_uri(*r)};
}

ComponentStatus Resolver::resolve_component(
    const notation::Leaf& leaf, store::Tier tier,
    const std::optional<store::VersionCode>& version) const {
  ComponentStatus c;
  c.notation = leaf.notation;
  c.kind = leaf.kind;
  c.span = leaf.span;
  const store::GetResult got = snapshot_->get(leaf.notation, tier, version);
  switch (got.status) {
    case store::GetResult::Status::not_found:
      c.status = Status::unknown;
      c.open_superclass = open_superclass(leaf.notation);
      break;
    case store::GetResult::Status::tier_blocked:
      c.status = Status::tier_blocked;
      c.required_tier = got.required_tier;
      c.open_superclass = open_superclass(leaf.notation);
      break;
    case store::GetResult::Status::found: {
      const store::ConceptRecord& r = *got.record;
      c.uri = record_uri(r);
      if (!r.deprecated()) {
        c.status = Status::valid;
        break;
      }
      c.status = Status::deprecated;
      if (auto targets = snapshot_->resolve_redirects(r.notation)) {
        for (const std::string& t : *targets) {
          if (const store::ConceptRecord* tr = snapshot_->latest(t)) {
            c.replaced_by.push_back(record_uri(*tr));
          }
        }
        c.withdrawn = targets->empty();
      }
      break;
    }
  }
  return c;
}

Expected<InterpretationReport, notation::ParseError> Resolver::interpret(
    std::string_view classmark, store::Tier tier,
    std::optional<store::VersionCode> version) const {
  auto normalized = notation::normalize(classmark);
  if (!normalized) return unexpected(normalized.error());
  auto tree = notation::parse(*normalized);
  if (!tree) return unexpected(tree.error());

  InterpretationReport report{*normalized, std::move(*tree), {}, std::nullopt,
                              version.value_or(snapshot_->latest_version()), tier};
  for (const notation::Leaf& leaf : notation::leaves(report.tree)) {
    report.components.push_back(resolve_component(leaf, tier, version));
  }
  bool all_resolvable = report.components.size() >= 2;
  for (const ComponentStatus& c : report.components) {
    all_resolvable = all_resolvable && c.resolvable();
  }
  if (all_resolvable) report.composed_uri = composed_uri(report.input.normalized);
  return report;
}

}  // namespace lookup::resolver
