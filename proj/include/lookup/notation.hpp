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

// Classmark grammar: parsing, normalization and serialization of
// pre-coordinated classification notation.
//
// Connector precedence, tightest first:
//   auxiliaries (attachment)  >  /  >  : and ::  >  +
// All connectors are left-associative; [ ] groups explicitly.
//
// Every function here is pure and safe to call concurrently.

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lookup/expected.hpp"

namespace lookup::notation {

// Half-open character range [begin, end) in the normalized input.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool operator==(const Span&) const = default;
};

struct ParseError {
  std::size_t position = 0;
  std::string expected;
  std::string found;  // offending character, or "end of input"

  std::string message() const;
};

struct Classmark {
  std::string raw;
  std::string normalized;
};

// Strips whitespace outside "..." spans. Fails on an unterminated quote.
Expected<Classmark, ParseError> normalize(std::string_view raw);

enum class AuxKind { language, ethnic, place, form, time, property };
enum class SpecialKind { hyphen, point_zero, apostrophe };

struct Node;

// Copyable owning pointer so the tree keeps value semantics.
class Box {
 public:
  Box();
  Box(Node node);
  Box(const Box& other);
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other);
  Box& operator=(Box&&) noexcept = default;
  ~Box();

  const Node& operator*() const { return *ptr_; }
  const Node* operator->() const { return ptr_.get(); }
  Node& operator*() { return *ptr_; }
  Node* operator->() { return ptr_.get(); }

  bool operator==(const Box& other) const;

 private:
  std::unique_ptr<Node> ptr_;
};

struct MainNumber {
  std::string digits;                    // e.g. "621.039"
  std::optional<std::string> extension;  // alphabetic A/Z extension
  std::optional<std::string> suffix;     // non-scheme text after '*'
  bool operator==(const MainNumber&) const = default;
};

struct CommonAuxiliary {
  AuxKind kind;
  std::string body;  // with its delimiters: "=162.3", "(035)", "\"19\""
  bool operator==(const CommonAuxiliary&) const = default;
};

struct SpecialAuxiliary {
  SpecialKind kind;
  std::string body;  // with introducer: "-1", ".01", "'4"
  Span body_span;
  Box attached_to;
  bool operator==(const SpecialAuxiliary&) const = default;
};

struct Attachment {
  Box base;
  std::vector<Node> auxiliaries;
  bool operator==(const Attachment&) const = default;
};

struct Range {
  Box low;
  Box high;
  bool operator==(const Range&) const = default;
};

struct Relation {
  std::vector<Node> members;
  bool ordered = false;  // joined by "::"
  bool operator==(const Relation&) const = default;
};

struct Coordination {
  std::vector<Node> members;
  bool operator==(const Coordination&) const = default;
};

struct Group {
  Box inner;
  bool operator==(const Group&) const = default;
};

struct Node {
  std::variant<MainNumber, CommonAuxiliary, SpecialAuxiliary, Attachment,
               Range, Relation, Coordination, Group>
      value;
  Span span;  // full extent of this node in the normalized input

  bool operator==(const Node&) const = default;

  template <typename T>
  const T* as() const {
    return std::get_if<T>(&value);
  }
};

struct ParseTree {
  Classmark input;
  Node root;
};

Expected<ParseTree, ParseError> parse(const Classmark& classmark);

// normalize() followed by parse().
Expected<ParseTree, ParseError> parse(std::string_view raw);

std::string serialize(const Node& node);
inline std::string serialize(const ParseTree& tree) {
  return serialize(tree.root);
}

enum class LeafKind {
  main,
  language,
  ethnic,
  place,
  form,
  time,
  property,
  hyphen,
  point_zero,
  apostrophe,
};

std::string_view to_string(LeafKind kind);
std::string_view to_string(AuxKind kind);
std::string_view to_string(SpecialKind kind);

struct Leaf {
  std::string notation;
  LeafKind kind;
  Span span;
  bool operator==(const Leaf&) const = default;
};

// Primitive components left to right. Attached auxiliaries are reported as
// standalone notations; a special auxiliary on a primitive base is merged
// with that base ("62-1"), since it has no meaning on its own.
std::vector<Leaf> leaves(const Node& node);
inline std::vector<Leaf> leaves(const ParseTree& tree) {
  return leaves(tree.root);
}

// True iff a dot follows every third digit and appears nowhere else.
bool check_dot_grouping(std::string_view digits);

// Operator name for a composite node: "coordination", "range", "relation",
// "ordered-relation", "attachment", "group", "special-auxiliary".
// Empty for leaf nodes.
std::string_view operator_name(const Node& node);

// True for nodes that leaves() reports as a single component.
bool is_primitive(const Node& node);

}  // namespace lookup::notation
