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

// SKOS rendering of concept records, interpretation reports and alignments,
// with deterministic Turtle and JSON writers.
//
// Element mapping (scheme sub-elements live under <base>/schema#):
//
//   notation            skos:notation
//   class identifier    rdf:type skos:Concept
//   broader class       skos:broader
//   caption             skos:prefLabel (one per language)
//   including note      udc:includingNote    < skos:note
//   application note    udc:applicationNote  < skos:note
//   scope note          skos:scopeNote
//   examples            skos:example
//   see also            skos:related
//   revision history    udc:revisionHistory  < skos:historyNote
//   introduction date   udc:introductionDate < skos:historyNote
//   cancellation date   udc:cancellationDate < skos:historyNote
//   replaced by         udc:replacedBy       < skos:historyNote
//   last revision date  udc:lastrevisionDate < skos:historyNote

#pragma once

#include <compare>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lookup/expected.hpp"
#include "lookup/resolver.hpp"
#include "lookup/store.hpp"

namespace lookup::rdf {

namespace ns {
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kSkos = "http://www.w3.org/2004/02/skos/core#";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
// Scheme sub-element namespace for a given base URI.
std::string schema(std::string_view base_uri);
}  // namespace ns

struct Term {
  enum class Kind { iri, blank, literal };
  Kind kind = Kind::iri;
  std::string value;
  std::string language;  // literals only
  std::string datatype;  // literals only; full IRI

  static Term iri(std::string v) { return {Kind::iri, std::move(v), {}, {}}; }
  static Term blank(std::string label) { return {Kind::blank, std::move(label), {}, {}}; }
  static Term literal(std::string v, std::string lang = {}, std::string datatype = {}) {
    return {Kind::literal, std::move(v), std::move(lang), std::move(datatype)};
  }
  auto operator<=>(const Term&) const = default;
};

struct Triple {
  Term subject;
  std::string predicate;  // always an IRI
  Term object;
  auto operator<=>(const Triple&) const = default;
};

class Graph {
 public:
  explicit Graph(std::string_view base_uri);

  void add(Term subject, std::string predicate, Term object);
  void merge(const Graph& other);

  const std::set<Triple>& triples() const { return triples_; }
  // (prefix, namespace IRI), sorted by prefix.
  const std::vector<std::pair<std::string, std::string>>& prefixes() const {
    return prefixes_;
  }
  const std::string& schema_ns() const { return schema_; }
  bool empty() const { return triples_.empty(); }
  std::size_t size() const { return triples_.size(); }

 private:
  std::string schema_;
  std::vector<std::pair<std::string, std::string>> prefixes_;
  std::set<Triple> triples_;
};

// Predicates the record mapping may emit, plus the type and sub-property
// declarations.
std::vector<std::string> concept_predicates(std::string_view base_uri);

// rdfs:subPropertyOf declarations for the scheme sub-elements.
void add_subproperty_declarations(Graph& graph);

Graph concept_to_graph(const store::ConceptRecord& record,
                       const resolver::Resolver& resolver);

Expected<Graph, resolver::NotFound> alignment_to_graph(
    const store::Alignment& alignment, const resolver::Resolver& resolver);

// The record graph plus every alignment whose local side is this notation.
Graph concept_document(const store::ConceptRecord& record,
                       const resolver::Resolver& resolver);

// Composite classmarks become synthesized-expression nodes that mirror the
// parse tree, each with an ordered member list. A single-component report
// yields that component's record graph only.
Graph report_to_graph(const resolver::InterpretationReport& report,
                      const resolver::Resolver& resolver);

std::string serialize_turtle(const Graph& graph);
std::string serialize_json(const Graph& graph);

// Compact "prefix:local" form when a declared namespace matches, else the
// full IRI.
std::string compact(const Graph& graph, std::string_view iri);

}  // namespace lookup::rdf
