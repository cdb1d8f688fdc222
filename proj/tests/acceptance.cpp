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


// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Runs against the shipped sample vocabulary.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "classmark_generator.hpp"
#include "fixtures.hpp"
#include "grammar_oracle.hpp"
#include "httplib.h"
#include "json.hpp"
#include "lookup/archive.hpp"
#include "lookup/notation.hpp"
#include "lookup/rdf.hpp"
#include "lookup/resolver.hpp"
#include "lookup/service.hpp"
#include "record_checks.hpp"
#include "turtle_reader.hpp"

namespace {

using namespace lookup;
using nlohmann::json;

// Collects failure reasons for one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++count_;
  }
  bool passed() const { return count_ == 0; }
  std::string summary() const {
    std::string out;
    for (const auto& f : failures_) out += (out.empty() ? "" : "; ") + f;
    if (count_ > failures_.size()) out += "; +" + std::to_string(count_ - failures_.size());
    return out;
  }

 private:
  std::vector<std::string> failures_;
  std::size_t count_ = 0;
};

service::ServiceOptions options() {
  service::ServiceOptions o;
  o.keys.emplace("acceptance-full", service::KeyEntry{"acceptance", store::Tier::full});
  return o;
}

service::Request get(std::string target, std::map<std::string, std::string> headers = {}) {
  return service::Request{"GET", std::move(target), std::move(headers)};
}

std::string header(const service::Response& r, const std::string& name) {
  for (const auto& [k, v] : r.headers) {
    if (k == name) return v;
  }
  return "";
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void deprecation_scenario(Check& c) {
  service::LookupService svc(options(), testing::sample_snapshot());
  const auto start = std::chrono::steady_clock::now();
  const service::Response r = svc.handle(
      get("/lookup?classmark=681.3(035)", {{"authorization", "Bearer acceptance-full"}}));
  const auto elapsed = std::chrono::steady_clock::now() - start;
  c.expect(elapsed < std::chrono::seconds(1), "took over 1 s");
  c.expect(r.status == 200, "status " + std::to_string(r.status));
  if (r.status != 200) return;
  const json body = json::parse(r.body);
  const json& comps = body["components"];
  c.expect(comps.size() == 2, "component count " + std::to_string(comps.size()));
  if (comps.size() != 2) return;
  c.expect(comps[0]["notation"] == "681.3", "first component");
  c.expect(comps[0]["status"] == "deprecated", "681.3 not deprecated");
  c.expect(comps[0]["replaced_by"] == json::array({"https://udcdata.info/MRF01/004"}),
           "replacement " + comps[0].value("replaced_by", json()).dump());
  c.expect(comps[0]["uri"] == "https://udcdata.info/MRF93/681.3", "681.3 uri");
  c.expect(comps[1]["notation"] == "(035)", "second component");
  c.expect(comps[1]["uri"].is_string() && !comps[1]["uri"].get<std::string>().empty(),
           "(035) uri");
}

void uri_fidelity(Check& c) {
  const resolver::Resolver resolver(testing::sample_snapshot());
  c.expect(resolver::encode_notation("=162.3") == "%3D162.3", "encode");
  const store::ConceptRecord* r = resolver.snapshot().latest("=162.3");
  c.expect(r && r->introduced_in.label == "MRF93", "=162.3 not introduced in MRF93");
  auto uri = resolver.mint_uri("=162.3");
  c.expect(uri.has_value() && uri->str() == "https://udcdata.info/MRF93/%3D162.3",
           uri.has_value() ? uri->str() : "mint failed");
}

void legacy_concordance(Check& c) {
  service::LookupService svc(options(), testing::sample_snapshot());
  const service::Response direct = svc.handle(get("/068288"));
  c.expect(direct.status == 301, "status " + std::to_string(direct.status));
  c.expect(header(direct, "Location") == "/MRF93/%3D162.3", "Location " + header(direct, "Location"));

  service::HttpServer server(svc, nullptr);
  const int port = server.bind("127.0.0.1", 0);
  if (port <= 0) {
    c.expect(false, "cannot bind loopback");
    return;
  }
  std::thread listener([&] { server.listen(); });
  server.wait_until_ready();
  httplib::Client client("127.0.0.1", port);
  client.set_url_encode(false);
  auto res = client.Get("/068288");
  c.expect(res && res->status == 301, "http status");
  c.expect(res && res->get_header_value("Location") == "/MRF93/%3D162.3", "http Location");
  server.stop();
  listener.join();
}

void skos_conformance(Check& c) {
  const resolver::Resolver resolver(testing::sample_snapshot());
  const std::set<std::string> table = testing::mapped_predicates();
  c.expect(table.size() == 14, "table has " + std::to_string(table.size()) + " predicates");

  const store::ConceptRecord* czech = resolver.snapshot().latest("=162.3");
  const std::string golden =
      slurp(testing::source_dir() / "tests" / "golden" / "czech_language.ttl");
  c.expect(czech && rdf::serialize_turtle(rdf::concept_document(*czech, resolver)) == golden,
           "golden Turtle differs");
  std::string error;
  auto graph = testing::read_turtle(golden, &error);
  c.expect(graph.has_value(), "golden does not parse: " + error);
  if (graph && czech) {
    const std::string subject = resolver.record_uri(*czech).str();
    std::set<std::string> seen;
    for (const auto& [s, p, o] : *graph) {
      if (s == "<" + subject + ">") {
        seen.insert(p);
      } else {
        c.expect(p == "<" + testing::kSubPropertyOf + ">", "stray predicate " + p);
      }
    }
    std::set<std::string> expected;
    for (const auto& p : testing::expected_predicates(*czech)) expected.insert("<" + p + ">");
    c.expect(seen == expected, "golden predicates differ from the table");
  }

  for (const store::ConceptRecord& r : resolver.snapshot().records()) {
    const rdf::Graph g = rdf::concept_to_graph(r, resolver);
    const std::string subject = resolver.record_uri(r).str();
    std::set<std::string> seen;
    for (const rdf::Triple& t : g.triples()) {
      if (t.subject.value == subject) {
        c.expect(table.count(t.predicate) == 1, r.notation + " emits " + t.predicate);
        seen.insert(t.predicate);
      } else {
        c.expect(t.predicate == testing::kSubPropertyOf, r.notation + " stray " + t.predicate);
      }
    }
    c.expect(seen == testing::expected_predicates(r), r.notation + " predicate set");
  }
}

void parser_oracle(Check& c) {
  const std::string alphabet = "019.+:/()=[]\"";
  std::string s;
  std::size_t checked = 0;
  std::function<void(std::size_t)> walk = [&](std::size_t len) {
    if (s.size() == len) {
      c.expect(notation::parse(s).has_value() == testing::oracle_accepts(s),
               "disagreement on '" + s + "'");
      ++checked;
      return;
    }
    for (char ch : alphabet) {
      s.push_back(ch);
      walk(len);
      s.pop_back();
    }
  };
  for (std::size_t len = 0; len <= 6; ++len) walk(len);
  std::size_t total = 0;
  for (std::size_t len = 0, n = 1; len <= 6; ++len, n *= alphabet.size()) total += n;
  c.expect(checked == total, "checked " + std::to_string(checked));

  testing::ClassmarkGenerator gen(20260101);
  for (int i = 0; i < 10000; ++i) {
    const std::string text = gen.noisy(gen.classmark());
    auto normalized = notation::normalize(text);
    if (!normalized) {
      c.expect(false, "normalize failed on '" + text + "'");
      continue;
    }
    auto tree = notation::parse(*normalized);
    c.expect(tree.has_value() && notation::serialize(*tree) == normalized->normalized,
             "round trip of '" + text + "'");
  }
}

std::string deprecated_record(const std::string& notation, const std::string& id) {
  return R"({"notation":")" + notation + R"(","identifier":")" + id +
         R"(","introduced_in":{"label":"V1","ordinal":1},"tier":"summary",)"
         R"("cancellation_date":"2001-01-01","cancelled_in":{"label":"V2","ordinal":2}})"
         "\n";
}

void redirect_properties(Check& c) {
  auto sample = testing::sample_snapshot();
  for (const store::ConceptRecord& r : sample->records()) {
    auto targets = sample->resolve_redirects(r.notation);
    c.expect(targets.has_value(), "cycle reported for " + r.notation);
  }

  auto cyclic = testing::snapshot_of(deprecated_record("1", "a") + deprecated_record("2", "b"),
                                     R"({"from":"1","to":["2"],"since":"V2"})"
                                     "\n"
                                     R"({"from":"2","to":["1"],"since":"V2"})");
  auto cycle = cyclic->resolve_redirects("1");
  c.expect(!cycle.has_value(), "cycle not rejected");

  auto chain = testing::snapshot_of(
      deprecated_record("1", "a") + deprecated_record("2", "b") +
          R"({"notation":"3","identifier":"c","introduced_in":{"label":"V1","ordinal":1},"tier":"summary"})"
          "\n",
      R"({"from":"1","to":["2"],"since":"V2"})"
      "\n"
      R"({"from":"2","to":["3"],"since":"V2"})");
  auto resolved = chain->resolve_redirects("1");
  c.expect(resolved.has_value() && *resolved == std::vector<std::string>{"3"}, "chain 1->2->3");
}

void tier_barrier(Check& c) {
  service::LookupService svc(options(), testing::sample_snapshot());
  const resolver::Resolver resolver(svc.snapshot());
  const store::Snapshot& snap = resolver.snapshot();
  for (const store::ConceptRecord& r : snap.records()) {
    const std::string path = resolver.record_uri(r).path();
    const service::Response resp = svc.handle(get(path));
    if (r.tier == store::Tier::summary) {
      c.expect(resp.status == 200, path + " gave " + std::to_string(resp.status));
      auto lookup = svc.handle(get("/lookup?classmark=" + resolver::encode_notation(r.notation)));
      c.expect(lookup.status == 200, "lookup " + r.notation);
      continue;
    }
    c.expect(resp.status == 403, path + " gave " + std::to_string(resp.status));
    if (resp.status != 403) continue;
    const json body = json::parse(resp.body);
    const auto open = snap.nearest_open_superclass(r.notation);
    c.expect(open.has_value(), r.notation + " has no open superclass in the sample");
    if (open) {
      c.expect(body["open_superclass"]["notation"] == *open, r.notation + " superclass");
      c.expect(body["error"].get<std::string>().find(*open) != std::string::npos,
               r.notation + " message lacks superclass");
    }
    for (const std::string& leak : testing::leaked_fields(resp.body, r, true)) {
      c.expect(false, r.notation + " leaks '" + leak + "'");
    }
  }
}

void content_negotiation(Check& c) {
  using service::Format;
  const std::pair<const char*, Format> accepts[] = {{"text/html", Format::html},
                                                    {"text/turtle", Format::turtle},
                                                    {"application/json", Format::json}};
  const std::pair<const char*, Format> params[] = {
      {"html", Format::html}, {"ttl", Format::turtle}, {"json", Format::json}};
  service::LookupService svc(options(), testing::sample_snapshot());
  const std::map<Format, std::string> types = {{Format::html, "text/html; charset=utf-8"},
                                               {Format::turtle, "text/turtle; charset=utf-8"},
                                               {Format::json, "application/json"}};
  for (const auto& [accept, accept_format] : accepts) {
    for (const auto& [param, param_format] : params) {
      const std::string cell = std::string(accept) + " x " + param;
      auto f = service::negotiate(accept, param);
      c.expect(f.has_value() && *f == param_format, cell);
      auto r = svc.handle(get("/MRF93/%3D162.3?format=" + std::string(param), {{"accept", accept}}));
      c.expect(r.content_type == types.at(param_format), cell + " over the service");
    }
  }
}

std::vector<std::string> probe_responses(const std::shared_ptr<const store::Snapshot>& snap) {
  service::LookupService svc(options(), snap);
  const resolver::Resolver resolver(snap);
  std::vector<std::string> out;
  for (const char* classmark : {"681.3(035)", "311:[622%2B669]", "=162.3", "59+636", "999"}) {
    for (const char* format : {"json", "ttl", "html"}) {
      out.push_back(svc.handle(get(std::string("/lookup?classmark=") + classmark + "&format=" +
                                       format,
                                   {{"authorization", "Bearer acceptance-full"}}))
                        .body);
    }
  }
  for (const store::ConceptRecord& r : snap->records()) {
    out.push_back(resolver.record_uri(r).str());
    auto minted = resolver.mint_uri(r.notation);
    out.push_back(minted ? minted->str() : "-");
  }
  return out;
}

void snapshot_determinism(Check& c) {
  auto sources = store::read_sources(testing::sample_dir());
  if (!sources) {
    c.expect(false, sources.error().describe());
    return;
  }
  auto first = store::load_sources(*sources);
  auto second = store::load_sources(*sources);
  if (!first || !second) {
    c.expect(false, "sample does not load");
    return;
  }
  c.expect(first->checksum() == second->checksum(), "checksums differ");
  auto a = std::make_shared<const store::Snapshot>(std::move(*first));
  auto b = std::make_shared<const store::Snapshot>(std::move(*second));
  c.expect(probe_responses(a) == probe_responses(b), "responses differ");

  const auto dir = testing::fresh_temp_dir("acceptance_archive");
  auto written = store::write_archive(dir, *sources, *a);
  c.expect(written.has_value(), "archive not written");
  auto archived = store::load_archive(dir);
  c.expect(archived.has_value() && (*archived)->checksum() == a->checksum(),
           "archive checksum differs");
  if (archived) c.expect(probe_responses(*archived) == probe_responses(a), "archive responses");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"deprecation scenario 681.3(035)", deprecation_scenario},
      {"URI fidelity =162.3", uri_fidelity},
      {"legacy concordance /068288", legacy_concordance},
      {"SKOS mapping conformance", skos_conformance},
      {"parser oracle and round trip", parser_oracle},
      {"redirect properties", redirect_properties},
      {"tier barrier", tier_barrier},
      {"content negotiation matrix", content_negotiation},
      {"snapshot determinism", snapshot_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    std::cout << (check.passed() ? "PASS" : "FAIL") << " " << (i + 1) << " "
              << criteria[i].first << " (" << ms << " ms)";
    if (!check.passed()) std::cout << ": " << check.summary();
    std::cout << std::endl;
    if (!check.passed()) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
