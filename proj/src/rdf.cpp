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

#include "lookup/rdf.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "json.hpp"

namespace lookup::rdf {

namespace {

std::string join(std::string_view a, std::string_view b) {
  std::string out(a);
  out += b;
  return out;
}

std::string strip_slash(std::string_view base) {
  std::string out(base);
  while (!out.empty() && out.back() == '/') out.pop_back();
  return out;
}

// Sub-element local name and its SKOS parent.
constexpr std::pair<std::string_view, std::string_view> kSubElements[] = {
    {"includingNote", "note"},         {"applicationNote", "note"},
    {"revisionHistory", "historyNote"}, {"introductionDate", "historyNote"},
    {"cancellationDate", "historyNote"}, {"replacedBy", "historyNote"},
    {"lastrevisionDate", "historyNote"},
};

std::string skos(std::string_view local) { return join(ns::kSkos, local); }
std::string rdf_term(std::string_view local) { return join(ns::kRdf, local); }

}  // namespace

std::string ns::schema(std::string_view base_uri) {
  return strip_slash(base_uri) + "/schema#";
}

Graph::Graph(std::string_view base_uri)
    : schema_(ns::schema(base_uri)),
      prefixes_{{"id", strip_slash(base_uri) + "/"},
                {"owl", std::string(ns::kOwl)},
                {"rdf", std::string(ns::kRdf)},
                {"rdfs", std::string(ns::kRdfs)},
                {"skos", std::string(ns::kSkos)},
                {"udc", schema_},
                {"xsd", std::string(ns::kXsd)}} {}

void Graph::add(Term subject, std::string predicate, Term object) {
  triples_.insert(Triple{std::move(subject), std::move(predicate), std::move(object)});
}

void Graph::merge(const Graph& other) {
  triples_.insert(other.triples_.begin(), other.triples_.end());
}

std::vector<std::string> concept_predicates(std::string_view base_uri) {
  const std::string udc = ns::schema(base_uri);
  return {rdf_term("type"),
          skos("notation"),
          skos("broader"),
          skos("prefLabel"),
          udc + "includingNote",
          udc + "applicationNote",
          skos("scopeNote"),
          skos("example"),
          skos("related"),
          udc + "revisionHistory",
          udc + "introductionDate",
          udc + "cancellationDate",
          udc + "replacedBy",
          udc + "lastrevisionDate",
          join(ns::kRdfs, "subPropertyOf")};
}

void add_subproperty_declarations(Graph& graph) {
  for (const auto& [local, parent] : kSubElements) {
    graph.add(Term::iri(graph.schema_ns() + std::string(local)),
              join(ns::kRdfs, "subPropertyOf"), Term::iri(skos(parent)));
  }
}

namespace {

std::optional<Term> reference(const resolver::Resolver& resolver,
                              std::string_view notation) {
  const store::ConceptRecord* r = resolver.snapshot().latest(notation);
  if (r == nullptr) return std::nullopt;
  return Term::iri(resolver.record_uri(*r).str());
}

Term date_literal(const store::Date& d) {
  return Term::literal(d.str(), {}, join(ns::kXsd, "date"));
}

}  // namespace

Graph concept_to_graph(const store::ConceptRecord& record,
                       const resolver::Resolver& resolver) {
  Graph g(resolver.base_uri());
  const std::string& udc = g.schema_ns();
  const Term self = Term::iri(resolver.record_uri(record).str());
  auto add = [&](std::string predicate, Term object) {
    g.add(self, std::move(predicate), std::move(object));
  };
  auto add_ref = [&](std::string predicate, std::string_view notation) {
    if (auto target = reference(resolver, notation)) add(std::move(predicate), *target);
  };

  add(rdf_term("type"), Term::iri(skos("Concept")));
  add(skos("notation"), Term::literal(record.notation));
  if (record.broader) add_ref(skos("broader"), *record.broader);
  for (const auto& [lang, text] : record.caption) {
    add(skos("prefLabel"), Term::literal(text, lang));
  }
  if (record.including_note) add(udc + "includingNote", Term::literal(*record.including_note));
  if (record.application_note) {
    add(udc + "applicationNote", Term::literal(*record.application_note));
  }
  if (record.scope_note) add(skos("scopeNote"), Term::literal(*record.scope_note));
  for (const auto& ex : record.examples) add(skos("example"), Term::literal(ex));
  for (const auto& n : record.see_also) add_ref(skos("related"), n);
  if (record.revision_history) {
    add(udc + "revisionHistory", Term::literal(*record.revision_history));
  }
  if (record.introduction_date) {
    add(udc + "introductionDate", date_literal(*record.introduction_date));
  }
  if (record.cancellation_date) {
    add(udc + "cancellationDate", date_literal(*record.cancellation_date));
  }
  for (const auto& n : record.replaced_by) add_ref(udc + "replacedBy", n);
  if (record.last_revision_date) {
    add(udc + "lastrevisionDate", date_literal(*record.last_revision_date));
  }
  add_subproperty_declarations(g);
  return g;
}

Expected<Graph, resolver::NotFound> alignment_to_graph(
    const store::Alignment& alignment, const resolver::Resolver& resolver) {
  auto local = reference(resolver, alignment.local);
  if (!local) return unexpected(resolver::NotFound{alignment.local});
  std::string predicate;
  switch (alignment.relation) {
    case store::AlignmentRelation::identical:
      predicate = join(ns::kOwl, "sameAs");
      break;
    case store::AlignmentRelation::local_is_narrower:
      predicate = skos("broadMatch");
      break;
    case store::AlignmentRelation::local_is_broader:
      predicate = skos("narrowMatch");
      break;
    case store::AlignmentRelation::related:
      predicate = skos("relatedMatch");
      break;
  }
  Graph g(resolver.base_uri());
  g.add(*local, std::move(predicate), Term::iri(alignment.external));
  return g;
}

Graph concept_document(const store::ConceptRecord& record,
                       const resolver::Resolver& resolver) {
  Graph g = concept_to_graph(record, resolver);
  for (const store::Alignment* a : resolver.snapshot().alignments_for(record.notation)) {
    if (auto ag = alignment_to_graph(*a, resolver)) g.merge(*ag);
  }
  return g;
}

namespace {

class ReportBuilder {
 public:
  ReportBuilder(const resolver::InterpretationReport& report,
                const resolver::Resolver& resolver, Graph& graph)
      : report_(report), resolver_(resolver), g_(graph) {
    for (const auto& c : report.components) by_begin_.emplace(c.span.begin, &c);
  }

  Term node(const notation::Node& n) {
    if (notation::is_primitive(n)) return component(n.span);
    const bool root = &n == &report_.tree.root;
    const std::string text =
        report_.input.normalized.substr(n.span.begin, n.span.end - n.span.begin);
    const Term self = Term::iri(root ? report_.composed_uri->str()
                                     : resolver_.composed_uri(text).str());
    std::vector<Term> members;
    if (const auto* att = n.as<notation::Attachment>()) {
      members.push_back(node(*att->base));
      for (const auto& aux : att->auxiliaries) members.push_back(node(aux));
    } else if (const auto* r = n.as<notation::Range>()) {
      members.push_back(node(*r->low));
      members.push_back(node(*r->high));
    } else if (const auto* rel = n.as<notation::Relation>()) {
      for (const auto& m : rel->members) members.push_back(node(m));
    } else if (const auto* co = n.as<notation::Coordination>()) {
      for (const auto& m : co->members) members.push_back(node(m));
    } else if (const auto* gr = n.as<notation::Group>()) {
      members.push_back(node(*gr->inner));
    } else if (const auto* sp = n.as<notation::SpecialAuxiliary>()) {
      members.push_back(node(*sp->attached_to));
      members.push_back(component(sp->body_span));
    }
    const std::string& udc = g_.schema_ns();
    g_.add(self, rdf_term("type"), Term::iri(udc + "SynthesizedExpression"));
    g_.add(self, skos("notation"), Term::literal(text));
    g_.add(self, udc + "operator", Term::literal(std::string(notation::operator_name(n))));
    g_.add(self, udc + "nonAuthoritative",
           Term::literal("true", {}, join(ns::kXsd, "boolean")));
    g_.add(self, udc + "memberList", list(members));
    return self;
  }

 private:
  Term component(const notation::Span& span) {
    const resolver::ComponentStatus* c = by_begin_.at(span.begin);
    return Term::iri(c->uri->str());
  }

  Term list(const std::vector<Term>& items) {
    if (items.empty()) return Term::iri(rdf_term("nil"));
    std::vector<Term> cells;
    for (std::size_t i = 0; i < items.size(); ++i) {
      cells.push_back(Term::blank("m" + std::to_string(next_blank_++)));
    }
    for (std::size_t i = 0; i < items.size(); ++i) {
      g_.add(cells[i], rdf_term("first"), items[i]);
      g_.add(cells[i], rdf_term("rest"),
             i + 1 < items.size() ? cells[i + 1] : Term::iri(rdf_term("nil")));
    }
    return cells.front();
  }

  const resolver::InterpretationReport& report_;
  const resolver::Resolver& resolver_;
  Graph& g_;
  std::map<std::size_t, const resolver::ComponentStatus*> by_begin_;
  int next_blank_ = 0;
};

}  // namespace

Graph report_to_graph(const resolver::InterpretationReport& report,
                      const resolver::Resolver& resolver) {
  Graph g(resolver.base_uri());
  const std::optional<store::VersionCode> version =
      report.snapshot_version == resolver.snapshot().latest_version()
          ? std::nullopt
          : std::optional<store::VersionCode>(report.snapshot_version);
  for (const auto& c : report.components) {
    if (!c.resolvable()) continue;
    const store::GetResult got = resolver.snapshot().get(c.notation, report.tier, version);
    if (got.record != nullptr) g.merge(concept_to_graph(*got.record, resolver));
  }
  if (report.composed_uri) {
    ReportBuilder builder(report, resolver, g);
    builder.node(report.tree.root);
  }
  return g;
}

std::string compact(const Graph& graph, std::string_view iri) {
  const std::pair<std::string, std::string>* best = nullptr;
  for (const auto& p : graph.prefixes()) {
    if (iri.starts_with(p.second) &&
        (best == nullptr || p.second.size() > best->second.size())) {
      best = &p;
    }
  }
  if (best != nullptr) {
    const std::string_view local = iri.substr(best->second.size());
    auto name_char = [](char c) {
      return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
             (c >= '0' && c <= '9') || c == '_' || c == '-';
    };
    const bool simple = !local.empty() && !(local[0] >= '0' && local[0] <= '9') &&
                        local[0] != '-' &&
                        std::all_of(local.begin(), local.end(), name_char);
    if (simple) return best->first + ":" + std::string(local);
  }
  return std::string(iri);
}

namespace {

// Position of a predicate in the output: the element mapping order, then
// declarations, alignments and structure.
int predicate_rank(const Graph& g, const std::string& predicate) {
  const std::string& udc = g.schema_ns();
  const std::vector<std::string> order = {
      rdf_term("type"),
      skos("notation"),
      skos("broader"),
      skos("prefLabel"),
      udc + "includingNote",
      udc + "applicationNote",
      skos("scopeNote"),
      skos("example"),
      skos("related"),
      udc + "revisionHistory",
      udc + "introductionDate",
      udc + "cancellationDate",
      udc + "replacedBy",
      udc + "lastrevisionDate",
      join(ns::kRdfs, "subPropertyOf"),
      join(ns::kOwl, "sameAs"),
      skos("broadMatch"),
      skos("narrowMatch"),
      skos("relatedMatch"),
      udc + "operator",
      udc + "nonAuthoritative",
      udc + "memberList",
      rdf_term("first"),
      rdf_term("rest"),
  };
  auto it = std::find(order.begin(), order.end(), predicate);
  return it == order.end() ? static_cast<int>(order.size())
                           : static_cast<int>(it - order.begin());
}

std::string escape_literal(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

std::string turtle_term(const Graph& g, const Term& t) {
  switch (t.kind) {
    case Term::Kind::iri: {
      std::string c = compact(g, t.value);
      return c == t.value ? "<" + t.value + ">" : c;
    }
    case Term::Kind::blank:
      return "_:" + t.value;
    case Term::Kind::literal: {
      std::string out = "\"" + escape_literal(t.value) + "\"";
      if (!t.language.empty()) {
        out += "@" + t.language;
      } else if (!t.datatype.empty()) {
        std::string c = compact(g, t.datatype);
        out += "^^" + (c == t.datatype ? "<" + t.datatype + ">" : c);
      }
      return out;
    }
  }
  return {};
}

struct SubjectOrder {
  bool operator()(const Term& a, const Term& b) const {
    if (a.kind != b.kind) return a.kind == Term::Kind::iri;
    return a.value < b.value;
  }
};

using Grouped =
    std::map<Term, std::vector<std::pair<std::string, std::vector<Term>>>, SubjectOrder>;

Grouped group_by_subject(const Graph& g) {
  std::map<Term, std::map<std::string, std::vector<Term>>, SubjectOrder> raw;
  for (const Triple& t : g.triples()) raw[t.subject][t.predicate].push_back(t.object);
  Grouped out;
  for (auto& [subject, preds] : raw) {
    auto& list = out[subject];
    for (auto& [p, objects] : preds) {
      std::sort(objects.begin(), objects.end());
      list.emplace_back(p, std::move(objects));
    }
    std::stable_sort(list.begin(), list.end(), [&](const auto& a, const auto& b) {
      const int ra = predicate_rank(g, a.first);
      const int rb = predicate_rank(g, b.first);
      return ra != rb ? ra < rb : a.first < b.first;
    });
  }
  return out;
}

}  // namespace

std::string serialize_turtle(const Graph& graph) {
  std::string out;
  for (const auto& [prefix, iri] : graph.prefixes()) {
    out += "@prefix " + prefix + ": <" + iri + "> .\n";
  }
  const std::string type = rdf_term("type");
  for (const auto& [subject, preds] : group_by_subject(graph)) {
    out += "\n" + turtle_term(graph, subject);
    for (std::size_t i = 0; i < preds.size(); ++i) {
      const auto& [p, objects] = preds[i];
      out += "\n    ";
      out += p == type ? std::string("a") : turtle_term(graph, Term::iri(p));
      for (std::size_t j = 0; j < objects.size(); ++j) {
        out += j == 0 ? " " : ", ";
        out += turtle_term(graph, objects[j]);
      }
      out += i + 1 < preds.size() ? " ;" : " .";
    }
    out += "\n";
  }
  return out;
}

std::string serialize_json(const Graph& graph) {
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& [subject, preds] : group_by_subject(graph)) {
    const std::string key =
        subject.kind == Term::Kind::blank ? "_:" + subject.value : subject.value;
    nlohmann::json& node = doc[key];
    node = nlohmann::json::object();
    for (const auto& [p, objects] : preds) {
      nlohmann::json values = nlohmann::json::array();
      for (const Term& o : objects) {
        nlohmann::json v;
        switch (o.kind) {
          case Term::Kind::iri: v["uri"] = o.value; break;
          case Term::Kind::blank: v["bnode"] = "_:" + o.value; break;
          case Term::Kind::literal:
            v["value"] = o.value;
            if (!o.language.empty()) v["lang"] = o.language;
            if (!o.datatype.empty()) v["datatype"] = compact(graph, o.datatype);
            break;
        }
        values.push_back(std::move(v));
      }
      node[compact(graph, p)] = std::move(values);
    }
  }
  return doc.dump(2) + "\n";
}

}  // namespace lookup::rdf
