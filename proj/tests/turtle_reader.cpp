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


#include "turtle_reader.hpp"

#include <map>
#include <stdexcept>

namespace lookup::testing {

namespace {

const char* kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

std::string literal_form(const std::string& value, const std::string& lang,
                         const std::string& datatype) {
  std::string out = "\"" + value + "\"";
  if (!lang.empty()) return out + "@" + lang;
  if (!datatype.empty()) return out + "^^<" + datatype + ">";
  return out;
}

class Reader {
 public:
  explicit Reader(std::string_view s) : s_(s) {}

  CanonicalGraph run() {
    for (;;) {
      skip();
      if (at_end()) return graph_;
      if (s_.substr(pos_, 7) == "@prefix") {
        pos_ += 7;
        skip();
        const std::string prefix = name_until(':');
        expect(':');
        skip();
        prefixes_[prefix] = iri_ref();
        skip();
        expect('.');
        continue;
      }
      const std::string subject = subject_term();
      predicate_list(subject);
      skip();
      expect('.');
    }
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::runtime_error(what + " at offset " + std::to_string(pos_));
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip() {
    while (!at_end()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++pos_;
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') ++pos_;
      } else {
        return;
      }
    }
  }

  static bool name_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-';
  }

  std::string name_until(char stop) {
    const std::size_t begin = pos_;
    while (!at_end() && peek() != stop && name_char(peek())) ++pos_;
    return std::string(s_.substr(begin, pos_ - begin));
  }

  std::string iri_ref() {
    expect('<');
    const std::size_t begin = pos_;
    while (!at_end() && peek() != '>') {
      if (peek() == ' ' || peek() == '"' || peek() == '<') fail("bad IRI character");
      ++pos_;
    }
    const std::string iri(s_.substr(begin, pos_ - begin));
    expect('>');
    return iri;
  }

  std::string prefixed_name() {
    const std::string prefix = name_until(':');
    expect(':');
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) fail("undeclared prefix '" + prefix + "'");
    const std::size_t begin = pos_;
    while (!at_end() && name_char(peek())) ++pos_;
    if (pos_ == begin) fail("empty local name");
    return it->second + std::string(s_.substr(begin, pos_ - begin));
  }

  std::string iri() {
    if (peek() == '<') return iri_ref();
    return prefixed_name();
  }

  std::string blank() {
    if (s_.substr(pos_, 2) != "_:") fail("expected blank node");
    pos_ += 2;
    const std::size_t begin = pos_;
    while (!at_end() && name_char(peek())) ++pos_;
    if (pos_ == begin) fail("empty blank node label");
    return "_:" + std::string(s_.substr(begin, pos_ - begin));
  }

  std::string subject_term() {
    if (peek() == '_') return blank();
    return "<" + iri() + ">";
  }

  std::string string_body() {
    expect('"');
    std::string out;
    for (;;) {
      if (at_end()) fail("unterminated string");
      const char c = s_[pos_++];
      if (c == '"') return out;
      if (c == '\n') fail("newline in short string");
      if (c != '\\') {
        out += c;
        continue;
      }
      if (at_end()) fail("dangling escape");
      const char e = s_[pos_++];
      switch (e) {
        case 'n': out += '\n'; break;
        case 'r': out += '\r'; break;
        case 't': out += '\t'; break;
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        default: fail("unsupported escape");
      }
    }
  }

  std::string object_term() {
    const char c = peek();
    if (c == '_') return blank();
    if (c == '"') {
      const std::string value = string_body();
      std::string lang;
      std::string datatype;
      if (peek() == '@') {
        ++pos_;
        const std::size_t begin = pos_;
        while (!at_end() && name_char(peek())) ++pos_;
        lang = std::string(s_.substr(begin, pos_ - begin));
        if (lang.empty()) fail("empty language tag");
      } else if (s_.substr(pos_, 2) == "^^") {
        pos_ += 2;
        datatype = iri();
      }
      return literal_form(value, lang, datatype);
    }
    return "<" + iri() + ">";
  }

  void predicate_list(const std::string& subject) {
    for (;;) {
      skip();
      std::string predicate;
      if (peek() == 'a' && pos_ + 1 < s_.size() &&
          (s_[pos_ + 1] == ' ' || s_[pos_ + 1] == '\n')) {
        ++pos_;
        predicate = std::string("<") + kRdfType + ">";
      } else {
        predicate = "<" + iri() + ">";
      }
      for (;;) {
        skip();
        graph_.emplace(subject, predicate, object_term());
        skip();
        if (peek() != ',') break;
        ++pos_;
      }
      if (peek() != ';') return;
      ++pos_;
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::map<std::string, std::string> prefixes_;
  CanonicalGraph graph_;
};

std::string term_form(const rdf::Term& t) {
  switch (t.kind) {
    case rdf::Term::Kind::iri: return "<" + t.value + ">";
    case rdf::Term::Kind::blank: return "_:" + t.value;
    case rdf::Term::Kind::literal: return literal_form(t.value, t.language, t.datatype);
  }
  return {};
}

}  // namespace

std::optional<CanonicalGraph> read_turtle(std::string_view text, std::string* error) {
  try {
    return Reader(text).run();
  } catch (const std::runtime_error& e) {
    if (error != nullptr) *error = e.what();
    return std::nullopt;
  }
}

CanonicalGraph canonical(const rdf::Graph& graph) {
  CanonicalGraph out;
  for (const rdf::Triple& t : graph.triples()) {
    out.emplace(term_form(t.subject), "<" + t.predicate + ">", term_form(t.object));
  }
  return out;
}

}  // namespace lookup::testing
