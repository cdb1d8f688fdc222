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

// Immutable vocabulary snapshots.
//
// A snapshot holds every concept record of every scheme version, the
// deprecation concordance (redirects), cross-scheme alignments and the
// access tier of each record. Records are keyed on (notation, introduced_in)
// so a notation re-used after cancellation yields a second, distinct record.
//
// Ingestion reads three JSON-lines streams: records, redirects, alignments.
// A snapshot never changes after load_snapshot() returns; share it freely.

#pragma once

#include <chrono>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lookup/expected.hpp"

namespace lookup::store {

// Nested access tiers: summary is open, abridged and full are licensed.
enum class Tier { summary = 0, abridged = 1, full = 2 };

std::string_view to_string(Tier tier);
std::optional<Tier> parse_tier(std::string_view text);

// True when a caller granted `granted` may see data published at `required`.
inline bool tier_covers(Tier granted, Tier required) {
  return static_cast<int>(granted) >= static_cast<int>(required);
}

struct VersionCode {
  std::string label;  // e.g. "MRF93"
  int ordinal = 0;    // release chronology
  bool operator==(const VersionCode&) const = default;
};

// Calendar date, serialized as YYYY-MM-DD.
struct Date {
  std::chrono::year_month_day ymd;
  std::string str() const;
  static std::optional<Date> parse(std::string_view text);
  bool operator==(const Date&) const = default;
};

// One class of the scheme in the version range it was in force.
struct ConceptRecord {
  std::string notation;
  std::string identifier;  // legacy record id, e.g. "068288"
  std::optional<std::string> broader;
  std::map<std::string, std::string> caption;  // BCP-47 tag -> text
  std::optional<std::string> including_note;
  std::optional<std::string> application_note;
  std::optional<std::string> scope_note;
  std::vector<std::string> examples;
  std::vector<std::string> see_also;
  std::optional<std::string> revision_history;
  std::optional<Date> introduction_date;
  std::optional<Date> cancellation_date;
  std::vector<std::string> replaced_by;
  std::optional<Date> last_revision_date;

  VersionCode introduced_in;
  std::optional<VersionCode> cancelled_in;
  Tier tier = Tier::full;  // smallest tier exposing this record

  bool deprecated() const { return cancellation_date.has_value(); }
};

struct Redirect {
  std::string from;
  std::vector<std::string> to;
  VersionCode since;
  bool withdrawn = false;
};

enum class AlignmentRelation { identical, local_is_narrower, local_is_broader, related };

std::string_view to_string(AlignmentRelation relation);
std::optional<AlignmentRelation> parse_alignment_relation(std::string_view text);

struct Alignment {
  std::string local;
  std::string external;  // absolute URI
  AlignmentRelation relation;
};

struct IngestError {
  enum class Kind {
    empty_vocabulary,
    malformed,
    duplicate,
    tier_violation,
    version_conflict,
    broader_cycle,
    bad_redirect,
    checksum_mismatch,
    io,
  };
  Kind kind;
  std::string file;  // "records", "redirects", "alignments" or a path
  std::size_t line = 0;  // 1-based; 0 when not tied to a line
  std::string message;

  std::string describe() const;
};

std::string_view to_string(IngestError::Kind kind);

// Non-fatal findings: references to notations absent from the snapshot.
struct IntegrityReport {
  std::vector<std::string> dangling;
  bool clean() const { return dangling.empty(); }
};

struct RedirectCycle {
  std::vector<std::string> cycle;  // first element repeated at the end
};

struct GetResult {
  enum class Status { found, not_found, tier_blocked };
  Status status = Status::not_found;
  const ConceptRecord* record = nullptr;  // set only when found
  Tier required_tier = Tier::summary;     // set when tier_blocked
};

class Snapshot {
 public:
  std::span<const ConceptRecord> records() const { return records_; }
  std::span<const Redirect> redirects() const { return redirects_; }
  std::span<const Alignment> alignments() const { return alignments_; }
  std::span<const VersionCode> versions() const { return versions_; }
  const VersionCode& latest_version() const { return versions_.back(); }
  std::optional<VersionCode> find_version(std::string_view label) const;

  // Hex SHA-256 over the three source streams.
  const std::string& checksum() const { return checksum_; }
  const IntegrityReport& integrity() const { return integrity_; }

  // Record in force at `version` (default: the most recent record of the
  // notation), filtered by tier.
  GetResult get(std::string_view notation, Tier tier,
                std::optional<VersionCode> version = std::nullopt) const;

  // All records of a notation, oldest first.
  std::vector<const ConceptRecord*> history(std::string_view notation) const;
  const ConceptRecord* latest(std::string_view notation) const;
  bool contains(std::string_view notation) const;

  std::optional<VersionCode> earliest_version(std::string_view notation) const;

  // Current notations reached by following redirects transitively.
  // A notation that is not deprecated resolves to itself; a withdrawn one
  // resolves to nothing.
  Expected<std::vector<std::string>, RedirectCycle> resolve_redirects(
      std::string_view notation) const;

  std::optional<std::string> broader_of(std::string_view notation) const;
  std::optional<std::string> nearest_open_superclass(
      std::string_view notation) const;

  const ConceptRecord* find_by_identifier(std::string_view identifier) const;
  std::vector<const Alignment*> alignments_for(std::string_view notation) const;

 private:
  friend Expected<Snapshot, IngestError> load_snapshot(std::string_view,
                                                       std::string_view,
                                                       std::string_view);

  const std::vector<std::size_t>* indices(std::string_view notation) const;
  std::vector<std::string> redirect_targets(std::string_view notation) const;

  std::vector<ConceptRecord> records_;
  std::vector<Redirect> redirects_;
  std::vector<Alignment> alignments_;
  std::vector<VersionCode> versions_;  // ascending ordinal
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_notation_;
  std::map<std::string, std::size_t, std::less<>> by_identifier_;
  std::map<std::string, std::size_t, std::less<>> redirect_index_;
  std::string checksum_;
  IntegrityReport integrity_;
};

// Notational truncation used when a record names no explicit broader class:
// drop the last digit, then any dot or introducer left dangling, until the
// result parses again. Returns nullopt at a top class.
std::optional<std::string> truncate_notation(std::string_view notation);

Expected<Snapshot, IngestError> load_snapshot(std::string_view records,
                                              std::string_view redirects,
                                              std::string_view alignments);

Expected<Snapshot, IngestError> load_snapshot(std::istream& records,
                                              std::istream& redirects,
                                              std::istream& alignments);

// Hex SHA-256 over the three streams, each framed by its byte length.
std::string compute_checksum(std::string_view records,
                             std::string_view redirects,
                             std::string_view alignments);

}  // namespace lookup::store
