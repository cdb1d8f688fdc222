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

#include "lookup/service.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "httplib.h"
#include "json.hpp"
#include "lookup/rdf.hpp"

namespace lookup::service {

using ojson = nlohmann::ordered_json;

std::string_view to_string(Format format) {
  switch (format) {
    case Format::html: return "html";
    case Format::turtle: return "ttl";
    case Format::json: return "json";
  }
  return "json";
}

std::string_view content_type(Format format) {
  switch (format) {
    case Format::html: return "text/html; charset=utf-8";
    case Format::turtle: return "text/turtle; charset=utf-8";
    case Format::json: return "application/json";
  }
  return "application/json";
}

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = s.find(sep, start);
    if (end == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, end - start));
    start = end + 1;
  }
}

}  // namespace

Expected<Format, NotAcceptable> negotiate(std::optional<std::string_view> accept,
                                          std::optional<std::string_view> format_param) {
  if (format_param && !format_param->empty()) {
    const std::string p = lower(*format_param);
    if (p == "html") return Format::html;
    if (p == "ttl") return Format::turtle;
    if (p == "json") return Format::json;
    return unexpected(NotAcceptable{"unsupported format '" + std::string(*format_param) +
                                    "'; use html, ttl or json"});
  }
  if (!accept || trim(*accept).empty()) return Format::json;

  struct Offer {
    Format format;
    std::string_view type;
    std::string_view subtype;
  };
  // Server preference order breaks remaining ties.
  static constexpr Offer kOffers[] = {
      {Format::json, "application", "json"},
      {Format::turtle, "text", "turtle"},
      {Format::html, "text", "html"},
  };
  struct Match {
    double q = -1;
    int specificity = -1;
    std::size_t index = 0;
  };
  Match best_per_offer[3];

  const auto entries = split(*accept, ',');
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto params = split(entries[i], ';');
    const std::string range = lower(trim(params[0]));
    const auto slash = range.find('/');
    if (slash == std::string::npos) continue;
    const std::string type = range.substr(0, slash);
    const std::string subtype = range.substr(slash + 1);
    double q = 1.0;
    for (std::size_t k = 1; k < params.size(); ++k) {
      const std::string param = lower(trim(params[k]));
      if (param.rfind("q=", 0) == 0) {
        char* end = nullptr;
        q = std::strtod(param.c_str() + 2, &end);
        if (end == param.c_str() + 2) q = 1.0;
        q = std::clamp(q, 0.0, 1.0);
      }
    }
    for (std::size_t o = 0; o < 3; ++o) {
      int specificity = -1;
      if (type == kOffers[o].type && subtype == kOffers[o].subtype) {
        specificity = 2;
      } else if (type == kOffers[o].type && subtype == "*") {
        specificity = 1;
      } else if (type == "*" && subtype == "*") {
        specificity = 0;
      }
      Match& m = best_per_offer[o];
      if (specificity > m.specificity) m = Match{q, specificity, i};
    }
  }
  int chosen = -1;
  for (int o = 0; o < 3; ++o) {
    const Match& m = best_per_offer[o];
    if (m.q <= 0) continue;
    if (chosen < 0) {
      chosen = o;
      continue;
    }
    const Match& c = best_per_offer[chosen];
    if (m.q > c.q || (m.q == c.q && m.index < c.index)) chosen = o;
  }
  if (chosen < 0) {
    return unexpected(NotAcceptable{"none of text/html, text/turtle or "
                                    "application/json is acceptable"});
  }
  return kOffers[chosen].format;
}

Expected<AccessGrant, Denial> authorize(const KeyTable& keys,
                                        std::optional<std::string_view> presented_key,
                                        std::optional<store::Tier> requested) {
  AccessGrant ceiling;
  if (presented_key) {
    if (auto it = keys.find(*presented_key); it != keys.end()) {
      ceiling = AccessGrant{it->second.tier, it->second.id};
    }
  }
  const store::Tier tier = requested.value_or(ceiling.tier);
  if (!store::tier_covers(ceiling.tier, tier)) {
    return unexpected(Denial{tier, ceiling.tier,
                             "the " + std::string(store::to_string(tier)) +
                                 " dataset requires a key licensed for it"});
  }
  return AccessGrant{tier, ceiling.key_id};
}

namespace {

std::string html_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

ojson span_json(const notation::Span& s) { return ojson::array({s.begin, s.end}); }

ojson tree_json(const notation::Node& node) {
  ojson j;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, notation::MainNumber>) {
          j["type"] = "main-number";
          j["digits"] = n.digits;
          if (n.extension) j["extension"] = *n.extension;
          if (n.suffix) j["suffix"] = *n.suffix;
        } else if constexpr (std::is_same_v<T, notation::CommonAuxiliary>) {
          j["type"] = "common-auxiliary";
          j["kind"] = notation::to_string(n.kind);
          j["body"] = n.body;
        } else if constexpr (std::is_same_v<T, notation::SpecialAuxiliary>) {
          j["type"] = "special-auxiliary";
          j["kind"] = notation::to_string(n.kind);
          j["body"] = n.body;
          j["attached_to"] = tree_json(*n.attached_to);
        } else if constexpr (std::is_same_v<T, notation::Attachment>) {
          j["type"] = "attachment";
          j["base"] = tree_json(*n.base);
          ojson aux = ojson::array();
          for (const auto& a : n.auxiliaries) aux.push_back(tree_json(a));
          j["auxiliaries"] = std::move(aux);
        } else if constexpr (std::is_same_v<T, notation::Range>) {
          j["type"] = "range";
          j["low"] = tree_json(*n.low);
          j["high"] = tree_json(*n.high);
        } else if constexpr (std::is_same_v<T, notation::Relation>) {
          j["type"] = "relation";
          j["ordered"] = n.ordered;
          ojson members = ojson::array();
          for (const auto& m : n.members) members.push_back(tree_json(m));
          j["members"] = std::move(members);
        } else if constexpr (std::is_same_v<T, notation::Coordination>) {
          j["type"] = "coordination";
          ojson members = ojson::array();
          for (const auto& m : n.members) members.push_back(tree_json(m));
          j["members"] = std::move(members);
        } else {
          j["type"] = "group";
          j["inner"] = tree_json(*n.inner);
        }
      },
      node.value);
  j["span"] = span_json(node.span);
  return j;
}

ojson superclass_json(const std::optional<resolver::OpenSuperclass>& open) {
  if (!open) return nullptr;
  return ojson{{"notation", open->notation}, {"uri", open->uri.str()}};
}

std::optional<store::VersionCode> explicit_version(
    const resolver::InterpretationReport& report, const store::Snapshot& snap) {
  if (report.snapshot_version == snap.latest_version()) return std::nullopt;
  return report.snapshot_version;
}

std::string report_html(const resolver::InterpretationReport& report,
                        const resolver::Resolver& resolver) {
  const std::string& text = report.input.normalized;
  std::string marked;
  std::size_t at = 0;
  for (const auto& c : report.components) {
    marked += html_escape(text.substr(at, c.span.begin - at));
    const std::string piece = html_escape(text.substr(c.span.begin, c.span.end - c.span.begin));
    marked += c.resolvable() ? "<b><u>" + piece + "</u></b>" : piece;
    at = c.span.end;
  }
  marked += html_escape(text.substr(at));

  std::string out =
      "<!DOCTYPE html>\n<html lang=\"en\">\n<head><meta charset=\"utf-8\"><title>" +
      html_escape(text) + "</title></head>\n<body>\n<h1 class=\"classmark\">" + marked +
      "</h1>\n<p>Dataset: " + std::string(store::to_string(report.tier)) +
      ", version " + html_escape(report.snapshot_version.label) + "</p>\n";
  if (report.composed_uri) {
    out += "<p>Expression: <a href=\"" + html_escape(report.composed_uri->str()) + "\">" +
           html_escape(report.composed_uri->str()) + "</a></p>\n";
  }
  out += "<ol class=\"components\">\n";
  const auto version = explicit_version(report, resolver.snapshot());
  for (const auto& c : report.components) {
    out += "<li data-status=\"" + std::string(resolver::to_string(c.status)) +
           "\" data-resolvable=\"" + (c.resolvable() ? "true" : "false") + "\">";
    const std::string n = html_escape(c.notation);
    out += c.resolvable() ? "<b><u>" + n + "</u></b>" : n;
    out += " <span class=\"kind\">" + std::string(notation::to_string(c.kind)) + "</span> ";
    out += "<span class=\"status\">" + std::string(resolver::to_string(c.status)) + "</span>";
    if (c.uri) {
      out += " <a href=\"" + html_escape(c.uri->str()) + "\">" + html_escape(c.uri->str()) + "</a>";
    }
    if (c.status == resolver::Status::valid || c.status == resolver::Status::deprecated) {
      const store::GetResult got = resolver.snapshot().get(c.notation, report.tier, version);
      if (got.record != nullptr) {
        for (const auto& [lang, caption] : got.record->caption) {
          out += " <q lang=\"" + html_escape(lang) + "\">" + html_escape(caption) + "</q>";
        }
      }
    }
    if (!c.replaced_by.empty()) {
      out += " replaced by";
      for (const auto& uri : c.replaced_by) {
        out += " <a class=\"redirect\" href=\"" + html_escape(uri.str()) + "\">" +
               html_escape(uri.str()) + "</a>";
      }
    } else if (c.withdrawn) {
      out += " withdrawn, no successor";
    }
    if (c.open_superclass) {
      out += " nearest open class <a href=\"" + html_escape(c.open_superclass->uri.str()) +
             "\">" + html_escape(c.open_superclass->notation) + "</a>";
    }
    out += "</li>\n";
  }
  out += "</ol>\n</body>\n</html>\n";
  return out;
}

std::string concept_html(const store::ConceptRecord& r, const resolver::Resolver& resolver) {
  const std::string uri = resolver.record_uri(r).str();
  std::string out = "<!DOCTYPE html>\n<html lang=\"en\">\n<head><meta charset=\"utf-8\"><title>" +
                    html_escape(r.notation) + "</title></head>\n<body>\n<h1>" +
                    html_escape(r.notation) + "</h1>\n<p><a href=\"" + html_escape(uri) +
                    "\">" + html_escape(uri) + "</a></p>\n<dl>\n";
  auto row = [&](std::string_view label, const std::string& value) {
    out += "<dt>" + std::string(label) + "</dt><dd>" + html_escape(value) + "</dd>\n";
  };
  for (const auto& [lang, caption] : r.caption) row("caption (" + lang + ")", caption);
  if (r.broader) row("broader", *r.broader);
  if (r.including_note) row("including note", *r.including_note);
  if (r.application_note) row("application note", *r.application_note);
  if (r.scope_note) row("scope note", *r.scope_note);
  for (const auto& e : r.examples) row("example", e);
  for (const auto& s : r.see_also) row("see also", s);
  if (r.revision_history) row("revision history", *r.revision_history);
  if (r.introduction_date) row("introduced", r.introduction_date->str());
  if (r.cancellation_date) row("cancelled", r.cancellation_date->str());
  for (const auto& s : r.replaced_by) row("replaced by", s);
  if (r.last_revision_date) row("last revised", r.last_revision_date->str());
  out += "</dl>\n</body>\n</html>\n";
  return out;
}

Response json_response(int status, const ojson& body) {
  Response r;
  r.status = status;
  r.content_type = "application/json";
  r.body = body.dump(2) + "\n";
  return r;
}

Response error_response(int status, std::string message) {
  return json_response(status, ojson{{"error", std::move(message)}});
}

Response parse_error_response(const notation::ParseError& e) {
  return json_response(400, ojson{{"error", "cannot parse classmark: " + e.message()},
                                  {"position", e.position},
                                  {"expected", e.expected},
                                  {"found", e.found}});
}

// The only payload a caller gets for a class above their tier.
Response blocked_response(const resolver::Resolver& resolver, std::string_view notation,
                          store::Tier required) {
  const auto open = resolver.open_superclass(notation);
  std::string message = "class " + std::string(notation) + " is published in the " +
                        std::string(store::to_string(required)) +
                        " dataset; present a key licensed for it";
  if (open) message += ". Nearest open class: " + open->notation;
  return json_response(403, ojson{{"error", std::move(message)},
                                  {"notation", notation},
                                  {"required_tier", store::to_string(required)},
                                  {"open_superclass", superclass_json(open)}});
}

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

std::string report_json(const resolver::InterpretationReport& report,
                        const resolver::Resolver& resolver) {
  ojson j;
  j["input"] = report.input.raw;
  j["normalized"] = report.input.normalized;
  j["tier"] = store::to_string(report.tier);
  j["snapshot_version"] = report.snapshot_version.label;
  j["tree"] = tree_json(report.tree.root);
  const auto version = explicit_version(report, resolver.snapshot());
  ojson components = ojson::array();
  for (const auto& c : report.components) {
    ojson cj;
    cj["notation"] = c.notation;
    cj["kind"] = notation::to_string(c.kind);
    cj["span"] = span_json(c.span);
    cj["status"] = resolver::to_string(c.status);
    cj["resolvable"] = c.resolvable();
    cj["uri"] = c.uri ? ojson(c.uri->str()) : ojson(nullptr);
    if (c.resolvable()) {
      const store::GetResult got = resolver.snapshot().get(c.notation, report.tier, version);
      if (got.record != nullptr) {
        ojson caption = ojson::object();
        for (const auto& [lang, text] : got.record->caption) caption[lang] = text;
        cj["caption"] = std::move(caption);
      }
    }
    if (c.status == resolver::Status::deprecated) {
      ojson targets = ojson::array();
      for (const auto& uri : c.replaced_by) targets.push_back(uri.str());
      cj["replaced_by"] = std::move(targets);
      cj["withdrawn"] = c.withdrawn;
    }
    if (c.required_tier) cj["required_tier"] = store::to_string(*c.required_tier);
    if (c.status == resolver::Status::unknown ||
        c.status == resolver::Status::tier_blocked) {
      cj["open_superclass"] = superclass_json(c.open_superclass);
    }
    components.push_back(std::move(cj));
  }
  j["components"] = std::move(components);
  j["composed_uri"] = report.composed_uri ? ojson(report.composed_uri->str()) : ojson(nullptr);
  return j.dump(2) + "\n";
}

Rendered render_report(const resolver::InterpretationReport& report,
                       const resolver::Resolver& resolver, Format format) {
  Rendered out{std::string(content_type(format)), {}};
  switch (format) {
    case Format::json:
      out.body = report_json(report, resolver);
      break;
    case Format::html:
      out.body = report_html(report, resolver);
      break;
    case Format::turtle: {
      std::string header = "# classmark " + report.input.normalized + "\n";
      for (const auto& c : report.components) {
        header += "# component " + c.notation + " " +
                  std::string(notation::to_string(c.kind)) + " " +
                  std::string(resolver::to_string(c.status)) + "\n";
      }
      out.body = header + rdf::serialize_turtle(rdf::report_to_graph(report, resolver));
      break;
    }
  }
  return out;
}

Rendered render_concept(const store::ConceptRecord& record,
                        const resolver::Resolver& resolver, Format format) {
  Rendered out{std::string(content_type(format)), {}};
  switch (format) {
    case Format::json:
      out.body = rdf::serialize_json(rdf::concept_document(record, resolver));
      break;
    case Format::turtle:
      out.body = rdf::serialize_turtle(rdf::concept_document(record, resolver));
      break;
    case Format::html:
      out.body = concept_html(record, resolver);
      break;
  }
  return out;
}

LookupService::LookupService(ServiceOptions options,
                             std::shared_ptr<const store::Snapshot> snapshot)
    : options_(std::move(options)), snapshot_(std::move(snapshot)) {}

void LookupService::swap_snapshot(std::shared_ptr<const store::Snapshot> snapshot) {
  std::lock_guard lock(mutex_);
  snapshot_ = std::move(snapshot);
}

std::shared_ptr<const store::Snapshot> LookupService::snapshot() const {
  std::lock_guard lock(mutex_);
  return snapshot_;
}

Response LookupService::handle_lookup(const resolver::Resolver& resolver,
                                      std::string_view classmark, const AccessGrant& grant,
                                      Format format,
                                      std::optional<store::VersionCode> version) const {
  auto report = resolver.interpret(classmark, grant.tier, version);
  if (!report) return parse_error_response(report.error());
  Rendered rendered = render_report(*report, resolver, format);
  Response r;
  r.content_type = std::move(rendered.content_type);
  r.body = std::move(rendered.body);
  return r;
}

Response LookupService::handle_concept(const resolver::Resolver& resolver,
                                       std::string_view version_label,
                                       std::string_view encoded_notation,
                                       const AccessGrant& grant, Format format) const {
  auto notation_text = resolver::decode_notation(encoded_notation);
  if (!notation_text) return error_response(404, "malformed percent-encoding in URI");

  if (version_label == resolver::kComposedSegment) {
    auto report = resolver.interpret(*notation_text, grant.tier);
    if (!report || !report->composed_uri ||
        report->composed_uri->encoded_notation != encoded_notation) {
      return error_response(404, "no synthesized expression " + *notation_text);
    }
    Rendered rendered = render_report(*report, resolver, format);
    Response r;
    r.content_type = std::move(rendered.content_type);
    r.body = std::move(rendered.body);
    return r;
  }

  const auto version = resolver.snapshot().find_version(version_label);
  if (!version) return error_response(404, "unknown version " + std::string(version_label));
  const store::GetResult got = resolver.snapshot().get(*notation_text, grant.tier, version);
  switch (got.status) {
    case store::GetResult::Status::not_found:
      return error_response(404, "no class " + *notation_text + " in version " +
                                     std::string(version_label));
    case store::GetResult::Status::tier_blocked:
      return blocked_response(resolver, *notation_text, got.required_tier);
    case store::GetResult::Status::found:
      break;
  }
  Rendered rendered = render_concept(*got.record, resolver, format);
  Response r;
  r.content_type = std::move(rendered.content_type);
  r.body = std::move(rendered.body);
  return r;
}

Response LookupService::handle_legacy(const resolver::Resolver& resolver,
                                      std::string_view identifier) const {
  auto uri = resolver.legacy_lookup(identifier);
  if (!uri) return error_response(404, "no record with identifier " + std::string(identifier));
  Response r = json_response(301, ojson{{"location", uri->str()}});
  r.headers.emplace_back("Location", uri->path());
  return r;
}

Response LookupService::handle(const Request& request) const {
  // One snapshot per request, whatever swaps happen meanwhile.
  const resolver::Resolver resolver(snapshot(), options_.base_uri);

  if (request.method != "GET" && request.method != "HEAD") {
    Response r = error_response(405, "only GET is supported");
    r.headers.emplace_back("Allow", "GET, HEAD");
    return r;
  }

  const std::string_view target = request.target;
  const auto qmark = target.find('?');
  const std::string_view path = target.substr(0, qmark);
  std::map<std::string, std::string, std::less<>> params;
  if (qmark != std::string_view::npos) {
    for (std::string_view pair : split(target.substr(qmark + 1), '&')) {
      if (pair.empty()) continue;
      const auto eq = pair.find('=');
      auto key = resolver::decode_notation(pair.substr(0, eq));
      auto value = resolver::decode_notation(
          eq == std::string_view::npos ? std::string_view{} : pair.substr(eq + 1));
      if (!key || !value) return error_response(400, "malformed query string");
      params.emplace(std::move(*key), std::move(*value));
    }
  }
  auto param = [&](std::string_view name) -> std::optional<std::string_view> {
    auto it = params.find(name);
    if (it == params.end()) return std::nullopt;
    return std::string_view(it->second);
  };
  auto header = [&](const std::string& name) -> std::optional<std::string_view> {
    auto it = request.headers.find(name);
    if (it == request.headers.end()) return std::nullopt;
    return std::string_view(it->second);
  };

  if (path == "/healthz") {
    Response r;
    r.content_type = "text/plain";
    r.body = "ok\n";
    return r;
  }

  auto format = negotiate(header("accept"), param("format"));
  if (!format) {
    Response r = error_response(406, format.error().message);
    return r;
  }

  std::optional<std::string_view> key;
  if (auto auth = header("authorization")) {
    if (lower(auth->substr(0, 7)) == "bearer ") key = trim(auth->substr(7));
  }
  if (!key) key = param("key");

  std::optional<store::Tier> requested;
  if (auto t = param("tier"); t && !t->empty()) {
    requested = store::parse_tier(*t);
    if (!requested) return error_response(400, "tier must be summary, abridged or full");
  }

  const auto segments = split(path.substr(path.empty() ? 0 : 1), '/');
  const bool is_lookup = path == "/lookup";
  const bool is_legacy = segments.size() == 1 && all_digits(segments[0]);
  const bool is_concept = segments.size() >= 2 && !segments[0].empty();

  auto finish = [&](Response r, const AccessGrant* grant) {
    r.format = std::string(to_string(*format));
    r.tier = grant ? std::string(store::to_string(grant->tier)) : "-";
    return r;
  };

  if (is_legacy) return finish(handle_legacy(resolver, segments[0]), nullptr);
  if (!is_lookup && !is_concept) return finish(error_response(404, "no such resource"), nullptr);

  auto grant = authorize(options_.keys, key, requested);
  if (!grant) {
    const Denial& d = grant.error();
    if (is_concept && segments[0] != resolver::kComposedSegment) {
      const std::string_view rest = path.substr(2 + segments[0].size());
      if (auto n = resolver::decode_notation(rest)) {
        return finish(blocked_response(resolver, *n, d.requested), nullptr);
      }
    }
    return finish(json_response(403, ojson{{"error", d.message},
                                           {"required_tier", store::to_string(d.requested)},
                                           {"open_superclass", nullptr}}),
                  nullptr);
  }

  if (is_lookup) {
    std::optional<store::VersionCode> version;
    if (auto v = param("version"); v && !v->empty()) {
      version = resolver.snapshot().find_version(*v);
      if (!version) {
        return finish(error_response(404, "unknown version " + std::string(*v)), &*grant);
      }
    }
    const std::string classmark(param("classmark").value_or(""));
    return finish(handle_lookup(resolver, classmark, *grant, *format, version), &*grant);
  }
  const std::string_view rest = path.substr(2 + segments[0].size());
  return finish(handle_concept(resolver, segments[0], rest, *grant, *format), &*grant);
}

struct HttpServer::Impl {
  LookupService& service;
  std::ostream* log;
  std::mutex log_mutex;
  httplib::Server server;

  Impl(LookupService& s, std::ostream* l) : service(s), log(l) {}
};

HttpServer::HttpServer(LookupService& service, std::ostream* access_log,
                       std::optional<std::filesystem::path> static_dir)
    : impl_(std::make_unique<Impl>(service, access_log)) {
  if (static_dir) impl_->server.set_mount_point("/", static_dir->string());
  auto handler = [impl = impl_.get()](const httplib::Request& req, httplib::Response& res) {
    Request request;
    request.method = req.method;
    request.target = req.target;
    for (const auto& [name, value] : req.headers) {
      request.headers.emplace(lower(name), value);
    }
    Response r = impl->service.handle(request);
    res.status = r.status;
    for (const auto& [name, value] : r.headers) res.set_header(name, value);
    res.set_content(r.body, r.content_type);
    if (impl->log != nullptr) {
      std::lock_guard lock(impl->log_mutex);
      *impl->log << req.method << ' ' << req.target << ' ' << r.status << ' '
                 << (r.format.empty() ? "-" : r.format) << ' '
                 << (r.tier.empty() ? "-" : r.tier) << std::endl;
    }
  };
  impl_->server.Get(R"(.*)", handler);
  impl_->server.Post(R"(.*)", handler);
  impl_->server.Put(R"(.*)", handler);
  impl_->server.Delete(R"(.*)", handler);
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

void HttpServer::stop() { impl_->server.stop(); }

}  // namespace lookup::service
