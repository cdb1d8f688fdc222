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

#include "lookup/store.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <iterator>
#include <set>
#include <sstream>

#include "json.hpp"
#include "lookup/notation.hpp"

namespace lookup::store {

using json = nlohmann::json;

std::string_view to_string(Tier tier) {
  switch (tier) {
    case Tier::summary: return "summary";
    case Tier::abridged: return "abridged";
    case Tier::full: return "full";
  }
  return "unknown";
}

std::optional<Tier> parse_tier(std::string_view text) {
  if (text == "summary") return Tier::summary;
  if (text == "abridged") return Tier::abridged;
  if (text == "full") return Tier::full;
  return std::nullopt;
}

std::string_view to_string(AlignmentRelation relation) {
  switch (relation) {
    case AlignmentRelation::identical: return "identical";
    case AlignmentRelation::local_is_narrower: return "local-is-narrower";
    case AlignmentRelation::local_is_broader: return "local-is-broader";
    case AlignmentRelation::related: return "related";
  }
  return "unknown";
}

std::optional<AlignmentRelation> parse_alignment_relation(std::string_view text) {
  if (text == "identical") return AlignmentRelation::identical;
  if (text == "local-is-narrower") return AlignmentRelation::local_is_narrower;
  if (text == "local-is-broader") return AlignmentRelation::local_is_broader;
  if (text == "related") return AlignmentRelation::related;
  return std::nullopt;
}

std::string_view to_string(IngestError::Kind kind) {
  using K = IngestError::Kind;
  switch (kind) {
    case K::empty_vocabulary: return "empty vocabulary";
    case K::malformed: return "malformed";
    case K::duplicate: return "duplicate";
    case K::tier_violation: return "tier violation";
    case K::version_conflict: return "version conflict";
    case K::broader_cycle: return "broader cycle";
    case K::bad_redirect: return "bad redirect";
    case K::checksum_mismatch: return "checksum mismatch";
    case K::io: return "i/o";
  }
  return "unknown";
}

std::string IngestError::describe() const {
  std::string out(to_string(kind));
  if (!file.empty()) {
    out += " in " + file;
    if (line > 0) out += ":" + std::to_string(line);
  }
  if (!message.empty()) out += ": " + message;
  return out;
}

std::string Date::str() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()));
  return buf;
}

std::optional<Date> Date::parse(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto number = [&](std::size_t from, std::size_t len) -> std::optional<int> {
    int v = 0;
    for (std::size_t i = from; i < from + len; ++i) {
      if (text[i] < '0' || text[i] > '9') return std::nullopt;
      v = v * 10 + (text[i] - '0');
    }
    return v;
  };
  auto y = number(0, 4);
  auto m = number(5, 2);
  auto d = number(8, 2);
  if (!y || !m || !d) return std::nullopt;
  std::chrono::year_month_day ymd{std::chrono::year{*y},
                                  std::chrono::month{static_cast<unsigned>(*m)},
                                  std::chrono::day{static_cast<unsigned>(*d)}};
  if (!ymd.ok()) return std::nullopt;
  return Date{ymd};
}

std::string compute_checksum(std::string_view records,
                             std::string_view redirects,
                             std::string_view alignments) {
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  for (std::string_view part : {records, redirects, alignments}) {
    const std::string frame = std::to_string(part.size()) + "\n";
    EVP_DigestUpdate(ctx, frame.data(), frame.size());
    EVP_DigestUpdate(ctx, part.data(), part.size());
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xF];
  }
  return hex;
}

namespace {

bool has_digit(std::string_view s) {
  return std::any_of(s.begin(), s.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

bool parses_exactly(std::string_view s) {
  auto tree = notation::parse(s);
  return tree && tree->input.normalized == s;
}

// Any absolute URI: scheme ":" followed by at least one character.
bool is_absolute_uri(std::string_view s) {
  const auto colon = s.find(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == s.size()) {
    return false;
  }
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  if (!alpha(s[0])) return false;
  for (std::size_t i = 1; i < colon; ++i) {
    const char c = s[i];
    if (!alpha(c) && !(c >= '0' && c <= '9') && c != '+' && c != '-' && c != '.') {
      return false;
    }
  }
  return s.find_first_of(" \t\n<>\"") == std::string_view::npos;
}

struct Failure {
  IngestError error;
};

// Parses one JSON-lines stream, handing each object to `on_object`.
template <typename F>
void for_each_line(std::string_view text, const std::string& file, F&& on_object) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const bool blank = line.find_first_not_of(" \t") == std::string_view::npos;
    if (!blank) {
      json obj;
      try {
        obj = json::parse(line);
      } catch (const json::parse_error& e) {
        throw Failure{{IngestError::Kind::malformed, file, line_no, e.what()}};
      }
      if (!obj.is_object()) {
        throw Failure{{IngestError::Kind::malformed, file, line_no,
                       "expected a JSON object"}};
      }
      on_object(obj, line_no);
    }
    if (end == text.size()) break;
    start = end + 1;
  }
}

// Field access with the line context needed for error messages.
class Fields {
 public:
  Fields(const json& obj, const std::string& file, std::size_t line,
         std::initializer_list<std::string_view> allowed)
      : obj_(obj), file_(file), line_(line) {
    for (const auto& [key, value] : obj.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        fail("unknown field '" + key + "'");
      }
    }
  }

  [[noreturn]] void fail(std::string message,
                         IngestError::Kind kind = IngestError::Kind::malformed) const {
    throw Failure{{kind, file_, line_, std::move(message)}};
  }

  bool has(const char* key) const {
    return obj_.contains(key) && !obj_.at(key).is_null();
  }

  std::string text(const char* key) const {
    if (!has(key)) fail(std::string("missing field '") + key + "'");
    return opt_text(key).value();
  }

  std::optional<std::string> opt_text(const char* key) const {
    if (!has(key)) return std::nullopt;
    const json& v = obj_.at(key);
    if (!v.is_string()) fail(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
  }

  std::vector<std::string> text_list(const char* key) const {
    std::vector<std::string> out;
    if (!has(key)) return out;
    const json& v = obj_.at(key);
    if (!v.is_array()) fail(std::string("field '") + key + "' must be an array");
    for (const json& item : v) {
      if (!item.is_string()) {
        fail(std::string("field '") + key + "' must hold strings");
      }
      out.push_back(item.get<std::string>());
    }
    return out;
  }

  std::optional<Date> opt_date(const char* key) const {
    auto raw = opt_text(key);
    if (!raw) return std::nullopt;
    auto date = Date::parse(*raw);
    if (!date) fail(std::string("field '") + key + "' is not a YYYY-MM-DD date");
    return date;
  }

  bool flag(const char* key) const {
    if (!has(key)) return false;
    const json& v = obj_.at(key);
    if (!v.is_boolean()) fail(std::string("field '") + key + "' must be a boolean");
    return v.get<bool>();
  }

  const json& raw(const char* key) const { return obj_.at(key); }

  std::string notation(const char* key) const { return check_notation(text(key), key); }

  std::string check_notation(std::string value, const char* key) const {
    if (!parses_exactly(value)) {
      fail(std::string("field '") + key + "' holds unparseable notation '" +
           value + "'");
    }
    return value;
  }

 private:
  const json& obj_;
  const std::string& file_;
  std::size_t line_;
};

// Collects version labels and their ordinals across all streams. A version
// is written either as {"label": ..., "ordinal": ...} or as a bare label
// defined elsewhere.
class VersionTable {
 public:
  struct Pending {
    VersionCode* target;
    std::string file;
    std::size_t line;
  };

  VersionCode read(const Fields& f, const char* key) {
    if (!f.has(key)) f.fail(std::string("missing field '") + key + "'");
    const json& v = f.raw(key);
    if (v.is_string()) return VersionCode{v.get<std::string>(), kUnresolved};
    if (!v.is_object() || !v.contains("label") || !v.contains("ordinal") ||
        !v.at("label").is_string() || !v.at("ordinal").is_number_integer() ||
        v.size() != 2) {
      f.fail(std::string("field '") + key +
             "' must be a label or {\"label\", \"ordinal\"}");
    }
    VersionCode code{v.at("label").get<std::string>(), v.at("ordinal").get<int>()};
    auto [it, inserted] = ordinals_.emplace(code.label, code.ordinal);
    if (!inserted && it->second != code.ordinal) {
      f.fail("version " + code.label + " has ordinals " +
                 std::to_string(it->second) + " and " +
                 std::to_string(code.ordinal),
             IngestError::Kind::version_conflict);
    }
    return code;
  }

  void resolve(VersionCode& code, const std::string& file, std::size_t line) const {
    auto it = ordinals_.find(code.label);
    if (it == ordinals_.end()) {
      throw Failure{{IngestError::Kind::version_conflict, file, line,
                     "version " + code.label + " has no ordinal"}};
    }
    code.ordinal = it->second;
  }

  std::vector<VersionCode> sorted(const std::string& file) const {
    std::vector<VersionCode> out;
    for (const auto& [label, ordinal] : ordinals_) out.push_back({label, ordinal});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      return a.ordinal < b.ordinal;
    });
    for (std::size_t i = 1; i < out.size(); ++i) {
      if (out[i].ordinal == out[i - 1].ordinal) {
        throw Failure{{IngestError::Kind::version_conflict, file, 0,
                       "versions " + out[i - 1].label + " and " + out[i].label +
                           " share ordinal " + std::to_string(out[i].ordinal)}};
      }
    }
    return out;
  }

  static constexpr int kUnresolved = -2147483647;

 private:
  std::map<std::string, int> ordinals_;
};

}  // namespace

std::optional<std::string> truncate_notation(std::string_view notation_text) {
  if (auto tree = notation::parse(notation_text)) {
    if (const auto* main = tree->root.as<notation::MainNumber>()) {
      if (main->extension || main->suffix) return main->digits;
    }
  }
  std::string s(notation_text);
  for (;;) {
    const auto last = s.find_last_of("0123456789");
    if (last == std::string::npos) return std::nullopt;
    std::size_t p = last;
    s.erase(p, 1);
    while (p > 0 && (p == s.size() || s[p] < '0' || s[p] > '9') &&
           (s[p - 1] == '.' || s[p - 1] == '-' || s[p - 1] == '\'')) {
      s.erase(p - 1, 1);
      --p;
    }
    if (!has_digit(s)) return std::nullopt;
    if (parses_exactly(s)) return s;
  }
}

Expected<Snapshot, IngestError> load_snapshot(std::string_view records,
                                              std::string_view redirects,
                                              std::string_view alignments) {
  Snapshot snap;
  const std::string kRecords = "records";
  const std::string kRedirects = "redirects";
  const std::string kAlignments = "alignments";
  try {
    VersionTable versions;
    std::vector<std::size_t> record_lines;
    std::vector<std::size_t> redirect_lines;
    std::vector<std::size_t> alignment_lines;

    for_each_line(records, kRecords, [&](const json& obj, std::size_t line) {
      Fields f(obj, kRecords, line,
               {"notation", "identifier", "broader", "caption", "including_note",
                "application_note", "scope_note", "examples", "see_also",
                "revision_history", "introduction_date", "cancellation_date",
                "replaced_by", "last_revision_date", "introduced_in",
                "cancelled_in", "tier"});
      ConceptRecord r;
      r.notation = f.notation("notation");
      r.identifier = f.text("identifier");
      if (f.has("broader")) r.broader = f.notation("broader");
      if (f.has("caption")) {
        const json& cap = f.raw("caption");
        if (!cap.is_object()) f.fail("field 'caption' must be an object");
        for (const auto& [lang, text] : cap.items()) {
          if (!text.is_string() || lang.empty()) {
            f.fail("field 'caption' must map language tags to strings");
          }
          r.caption.emplace(lang, text.get<std::string>());
        }
      }
      r.including_note = f.opt_text("including_note");
      r.application_note = f.opt_text("application_note");
      r.scope_note = f.opt_text("scope_note");
      r.examples = f.text_list("examples");
      for (auto& n : f.text_list("see_also")) {
        r.see_also.push_back(f.check_notation(std::move(n), "see_also"));
      }
      r.revision_history = f.opt_text("revision_history");
      r.introduction_date = f.opt_date("introduction_date");
      r.cancellation_date = f.opt_date("cancellation_date");
      for (auto& n : f.text_list("replaced_by")) {
        r.replaced_by.push_back(f.check_notation(std::move(n), "replaced_by"));
      }
      r.last_revision_date = f.opt_date("last_revision_date");
      r.introduced_in = versions.read(f, "introduced_in");
      if (f.has("cancelled_in")) r.cancelled_in = versions.read(f, "cancelled_in");
      auto tier = parse_tier(f.text("tier"));
      if (!tier) f.fail("field 'tier' must be summary, abridged or full");
      r.tier = *tier;

      if (r.cancelled_in.has_value() != r.cancellation_date.has_value()) {
        f.fail("cancelled_in and cancellation_date must appear together");
      }
      if (!r.replaced_by.empty() && !r.deprecated()) {
        f.fail("replaced_by requires a cancellation_date");
      }
      snap.records_.push_back(std::move(r));
      record_lines.push_back(line);
    });

    if (snap.records_.empty()) {
      return unexpected(IngestError{IngestError::Kind::empty_vocabulary, kRecords,
                                    0, "no concept records"});
    }

    for_each_line(redirects, kRedirects, [&](const json& obj, std::size_t line) {
      Fields f(obj, kRedirects, line, {"from", "to", "since", "withdrawn"});
      Redirect r;
      r.from = f.notation("from");
      for (auto& n : f.text_list("to")) {
        r.to.push_back(f.check_notation(std::move(n), "to"));
      }
      r.since = versions.read(f, "since");
      r.withdrawn = f.flag("withdrawn");
      if (r.to.empty() && !r.withdrawn) {
        f.fail("redirect without targets must be flagged withdrawn",
               IngestError::Kind::bad_redirect);
      }
      if (!r.to.empty() && r.withdrawn) {
        f.fail("withdrawn redirect must not list targets",
               IngestError::Kind::bad_redirect);
      }
      snap.redirects_.push_back(std::move(r));
      redirect_lines.push_back(line);
    });

    for_each_line(alignments, kAlignments, [&](const json& obj, std::size_t line) {
      Fields f(obj, kAlignments, line, {"local", "external", "relation"});
      Alignment a;
      a.local = f.notation("local");
      a.external = f.text("external");
      if (!is_absolute_uri(a.external)) f.fail("field 'external' must be an absolute URI");
      auto rel = parse_alignment_relation(f.text("relation"));
      if (!rel) {
        f.fail("field 'relation' must be identical, local-is-narrower, "
               "local-is-broader or related");
      }
      a.relation = *rel;
      snap.alignments_.push_back(std::move(a));
      alignment_lines.push_back(line);
    });

    // Bare version labels can only be resolved once every stream is read.
    for (std::size_t i = 0; i < snap.records_.size(); ++i) {
      ConceptRecord& r = snap.records_[i];
      versions.resolve(r.introduced_in, kRecords, record_lines[i]);
      if (r.cancelled_in) {
        versions.resolve(*r.cancelled_in, kRecords, record_lines[i]);
        if (r.cancelled_in->ordinal <= r.introduced_in.ordinal) {
          throw Failure{{IngestError::Kind::version_conflict, kRecords,
                         record_lines[i], "cancelled_in must follow introduced_in"}};
        }
      }
    }
    for (std::size_t i = 0; i < snap.redirects_.size(); ++i) {
      versions.resolve(snap.redirects_[i].since, kRedirects, redirect_lines[i]);
    }
    snap.versions_ = versions.sorted(kRecords);

    // Indexes.
    std::set<std::pair<std::string, std::string>> keys;
    for (std::size_t i = 0; i < snap.records_.size(); ++i) {
      const ConceptRecord& r = snap.records_[i];
      if (!keys.emplace(r.notation, r.introduced_in.label).second) {
        throw Failure{{IngestError::Kind::duplicate, kRecords, record_lines[i],
                       "record (" + r.notation + ", " + r.introduced_in.label +
                           ") appears twice"}};
      }
      if (!snap.by_identifier_.emplace(r.identifier, i).second) {
        throw Failure{{IngestError::Kind::duplicate, kRecords, record_lines[i],
                       "identifier " + r.identifier + " appears twice"}};
      }
      snap.by_notation_[r.notation].push_back(i);
    }
    for (auto& [notation_key, list] : snap.by_notation_) {
      std::sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
        return snap.records_[a].introduced_in.ordinal <
               snap.records_[b].introduced_in.ordinal;
      });
    }

    for (std::size_t i = 0; i < snap.redirects_.size(); ++i) {
      const Redirect& r = snap.redirects_[i];
      const ConceptRecord* latest = snap.latest(r.from);
      if (latest == nullptr || !latest->deprecated()) {
        throw Failure{{IngestError::Kind::bad_redirect, kRedirects, redirect_lines[i],
                       "redirect source " + r.from + " is not a deprecated class"}};
      }
      if (!snap.redirect_index_.emplace(r.from, i).second) {
        throw Failure{{IngestError::Kind::duplicate, kRedirects, redirect_lines[i],
                       "second redirect from " + r.from}};
      }
    }

    // Broader chains must terminate; an open class may not sit below a
    // licensed one or the open view would have holes in its hierarchy.
    for (std::size_t i = 0; i < snap.records_.size(); ++i) {
      const ConceptRecord& r = snap.records_[i];
      std::set<std::string> seen{r.notation};
      std::optional<std::string> cur = snap.broader_of(r.notation);
      bool checked_tier = false;
      while (cur) {
        if (!seen.insert(*cur).second) {
          throw Failure{{IngestError::Kind::broader_cycle, kRecords, record_lines[i],
                         "broader chain of " + r.notation + " revisits " + *cur}};
        }
        if (!checked_tier) {
          if (const ConceptRecord* parent = snap.latest(*cur)) {
            checked_tier = true;
            if (static_cast<int>(parent->tier) > static_cast<int>(r.tier)) {
              throw Failure{{IngestError::Kind::tier_violation, kRecords,
                             record_lines[i],
                             r.notation + " (" + std::string(to_string(r.tier)) +
                                 ") sits below " + *cur + " (" +
                                 std::string(to_string(parent->tier)) + ")"}};
            }
          }
        }
        cur = snap.broader_of(*cur);
      }
    }

    // Dangling references are reported, not fatal.
    auto note = [&](const std::string& file, std::size_t line,
                    const std::string& what, const std::string& target) {
      if (!snap.contains(target)) {
        snap.integrity_.dangling.push_back(file + ":" + std::to_string(line) +
                                           ": " + what + " " + target +
                                           " is not in the vocabulary");
      }
    };
    for (std::size_t i = 0; i < snap.records_.size(); ++i) {
      const ConceptRecord& r = snap.records_[i];
      if (r.broader) note(kRecords, record_lines[i], "broader", *r.broader);
      for (const auto& n : r.see_also) note(kRecords, record_lines[i], "see_also", n);
      for (const auto& n : r.replaced_by) note(kRecords, record_lines[i], "replaced_by", n);
    }
    for (std::size_t i = 0; i < snap.redirects_.size(); ++i) {
      for (const auto& n : snap.redirects_[i].to) {
        note(kRedirects, redirect_lines[i], "target", n);
      }
    }
    for (std::size_t i = 0; i < snap.alignments_.size(); ++i) {
      note(kAlignments, alignment_lines[i], "local", snap.alignments_[i].local);
    }
  } catch (const Failure& f) {
    return unexpected(f.error);
  }
  snap.checksum_ = compute_checksum(records, redirects, alignments);
  return snap;
}

Expected<Snapshot, IngestError> load_snapshot(std::istream& records,
                                              std::istream& redirects,
                                              std::istream& alignments) {
  auto slurp = [](std::istream& in) {
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  const std::string a = slurp(records);
  const std::string b = slurp(redirects);
  const std::string c = slurp(alignments);
  return load_snapshot(std::string_view(a), std::string_view(b), std::string_view(c));
}

std::optional<VersionCode> Snapshot::find_version(std::string_view label) const {
  for (const VersionCode& v : versions_) {
    if (v.label == label) return v;
  }
  return std::nullopt;
}

const std::vector<std::size_t>* Snapshot::indices(std::string_view notation) const {
  auto it = by_notation_.find(notation);
  return it == by_notation_.end() ? nullptr : &it->second;
}

bool Snapshot::contains(std::string_view notation) const {
  return indices(notation) != nullptr;
}

std::vector<const ConceptRecord*> Snapshot::history(std::string_view notation) const {
  std::vector<const ConceptRecord*> out;
  if (const auto* list = indices(notation)) {
    for (std::size_t i : *list) out.push_back(&records_[i]);
  }
  return out;
}

const ConceptRecord* Snapshot::latest(std::string_view notation) const {
  const auto* list = indices(notation);
  return list == nullptr ? nullptr : &records_[list->back()];
}

GetResult Snapshot::get(std::string_view notation, Tier tier,
                        std::optional<VersionCode> version) const {
  const ConceptRecord* chosen = nullptr;
  if (const auto* list = indices(notation)) {
    for (std::size_t i : *list) {
      const ConceptRecord& r = records_[i];
      if (!version || r.introduced_in.ordinal <= version->ordinal) chosen = &r;
    }
  }
  if (chosen == nullptr) return {GetResult::Status::not_found, nullptr, Tier::summary};
  if (!tier_covers(tier, chosen->tier)) {
    return {GetResult::Status::tier_blocked, nullptr, chosen->tier};
  }
  return {GetResult::Status::found, chosen, chosen->tier};
}

std::optional<VersionCode> Snapshot::earliest_version(std::string_view notation) const {
  const auto* list = indices(notation);
  if (list == nullptr) return std::nullopt;
  return records_[list->front()].introduced_in;
}

std::vector<std::string> Snapshot::redirect_targets(std::string_view notation) const {
  if (auto it = redirect_index_.find(notation); it != redirect_index_.end()) {
    return redirects_[it->second].to;
  }
  const ConceptRecord* r = latest(notation);
  return r == nullptr ? std::vector<std::string>{} : r->replaced_by;
}

Expected<std::vector<std::string>, RedirectCycle> Snapshot::resolve_redirects(
    std::string_view notation) const {
  std::vector<std::string> out;
  std::set<std::string, std::less<>> emitted;
  std::set<std::string, std::less<>> done;
  std::vector<std::string> path;
  std::optional<RedirectCycle> cycle;

  auto visit = [&](auto&& self, const std::string& n) -> void {
    if (cycle) return;
    if (auto on_path = std::find(path.begin(), path.end(), n); on_path != path.end()) {
      RedirectCycle c{std::vector<std::string>(on_path, path.end())};
      c.cycle.push_back(n);
      cycle = std::move(c);
      return;
    }
    if (done.count(n)) return;
    const ConceptRecord* r = latest(n);
    if (r == nullptr || !r->deprecated()) {
      if (emitted.insert(n).second) out.push_back(n);
      done.insert(n);
      return;
    }
    path.push_back(n);
    for (const std::string& target : redirect_targets(n)) self(self, target);
    path.pop_back();
    done.insert(n);
  };
  visit(visit, std::string(notation));
  if (cycle) return unexpected(std::move(*cycle));
  return out;
}

std::optional<std::string> Snapshot::broader_of(std::string_view notation) const {
  if (const ConceptRecord* r = latest(notation); r != nullptr && r->broader) {
    return r->broader;
  }
  return truncate_notation(notation);
}

std::optional<std::string> Snapshot::nearest_open_superclass(
    std::string_view notation) const {
  std::set<std::string, std::less<>> seen;
  std::optional<std::string> cur{std::string(notation)};
  while (cur && seen.insert(*cur).second) {
    if (const ConceptRecord* r = latest(*cur); r != nullptr && r->tier == Tier::summary) {
      return cur;
    }
    cur = broader_of(*cur);
  }
  return std::nullopt;
}

const ConceptRecord* Snapshot::find_by_identifier(std::string_view identifier) const {
  auto it = by_identifier_.find(identifier);
  return it == by_identifier_.end() ? nullptr : &records_[it->second];
}

std::vector<const Alignment*> Snapshot::alignments_for(std::string_view notation) const {
  std::vector<const Alignment*> out;
  for (const Alignment& a : alignments_) {
    if (a.local == notation) out.push_back(&a);
  }
  return out;
}

}  // namespace lookup::store
