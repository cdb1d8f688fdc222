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

#include "lookup/notation.hpp"

#include <utility>

namespace lookup::notation {

Box::Box() : ptr_(std::make_unique<Node>()) {}
Box::Box(Node node) : ptr_(std::make_unique<Node>(std::move(node))) {}
Box::Box(const Box& other) : ptr_(std::make_unique<Node>(*other.ptr_)) {}
Box& Box::operator=(const Box& other) {
  if (this != &other) ptr_ = std::make_unique<Node>(*other.ptr_);
  return *this;
}
Box::~Box() = default;
bool Box::operator==(const Box& other) const { return *ptr_ == *other.ptr_; }

std::string ParseError::message() const {
  return "at position " + std::to_string(position) + ": expected " +
         expected + ", found " + found;
}

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_alpha(char c) { return is_upper(c) || (c >= 'a' && c <= 'z'); }
bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}
bool is_time_char(char c) {
  return is_digit(c) || c == '.' || c == '/' || c == '-' || c == ' ';
}

std::string describe(std::string_view s, std::size_t pos) {
  if (pos >= s.size()) return "end of input";
  return std::string("'") + s[pos] + "'";
}

struct Failure {
  ParseError error;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Node parse_all() {
    if (s_.empty()) fail(0, "a classmark");
    Node root = coordination();
    if (pos_ != s_.size()) fail(pos_, "a connector or end of input");
    return root;
  }

 private:
  [[noreturn]] void fail(std::size_t at, std::string expected) const {
    throw Failure{ParseError{at, std::move(expected), describe(s_, at)}};
  }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < s_.size() ? s_[pos_ + ahead] : '\0';
  }

  static Node make(decltype(Node::value) value, std::size_t begin,
                   std::size_t end) {
    return Node{std::move(value), Span{begin, end}};
  }

  Node coordination() {
    const std::size_t begin = pos_;
    Node first = relation();
    if (peek() != '+') return first;
    std::vector<Node> members;
    members.push_back(std::move(first));
    while (peek() == '+') {
      ++pos_;
      members.push_back(relation());
    }
    return make(Coordination{std::move(members)}, begin, pos_);
  }

  Node relation() {
    const std::size_t begin = pos_;
    Node current = range();
    bool built_here = false;
    while (peek() == ':') {
      const bool ordered = peek(1) == ':';
      pos_ += ordered ? 2 : 1;
      Node next = range();
      auto* rel = built_here ? std::get_if<Relation>(&current.value) : nullptr;
      if (rel != nullptr && rel->ordered == ordered) {
        rel->members.push_back(std::move(next));
        current.span.end = pos_;
      } else {
        std::vector<Node> members;
        members.push_back(std::move(current));
        members.push_back(std::move(next));
        current = make(Relation{std::move(members), ordered}, begin, pos_);
        built_here = true;
      }
    }
    return current;
  }

  Node range() {
    const std::size_t begin = pos_;
    Node current = unit();
    while (peek() == '/') {
      ++pos_;
      Node high = unit();
      current = make(Range{Box(std::move(current)), Box(std::move(high))},
                     begin, pos_);
    }
    return current;
  }

  // A base followed by any number of auxiliaries.
  Node unit() {
    const std::size_t begin = pos_;
    Node current = primary();
    bool attached_here = false;
    for (;;) {
      const char c = peek();
      if (c == '(' || c == '=' || c == '"' || (c == '-' && peek(1) == '0')) {
        Node aux = common_auxiliary();
        auto* att =
            attached_here ? std::get_if<Attachment>(&current.value) : nullptr;
        if (att != nullptr) {
          att->auxiliaries.push_back(std::move(aux));
          current.span.end = pos_;
        } else {
          std::vector<Node> auxes;
          auxes.push_back(std::move(aux));
          current = make(Attachment{Box(std::move(current)), std::move(auxes)},
                         begin, pos_);
          attached_here = true;
        }
      } else if (c == '-' || c == '\'' || (c == '.' && peek(1) == '0')) {
        current = special_auxiliary(std::move(current), begin);
        attached_here = false;
      } else if (c == '.') {
        fail(pos_, "a dot only after every third digit");
      } else {
        return current;
      }
    }
  }

  Node primary() {
    const std::size_t begin = pos_;
    const char c = peek();
    if (is_digit(c)) return main_number();
    if (c == '=' || c == '(' || c == '"' || (c == '-' && peek(1) == '0')) {
      return common_auxiliary();
    }
    if (c == '[') {
      ++pos_;
      Node inner = coordination();
      if (peek() != ']') fail(pos_, "']'");
      ++pos_;
      return make(Group{Box(std::move(inner))}, begin, pos_);
    }
    fail(pos_, "a main number, common auxiliary or '['");
  }

  // Digits with a dot after every third digit. Stops before a dot that is
  // not at a grouping position so the caller can treat it as ".0".
  void grouped_digits() {
    if (!is_digit(peek())) fail(pos_, "a digit");
    int run = 0;
    for (;;) {
      const char c = peek();
      if (is_digit(c)) {
        if (run == 3) fail(pos_, "'.' after every third digit");
        ++run;
        ++pos_;
      } else if (c == '.' && run == 3) {
        if (!is_digit(peek(1))) fail(pos_ + 1, "a digit after '.'");
        ++pos_;
        run = 0;
      } else {
        return;
      }
    }
  }

  Node main_number() {
    const std::size_t begin = pos_;
    grouped_digits();
    MainNumber main{std::string(s_.substr(begin, pos_ - begin)), {}, {}};
    if (is_upper(peek())) {
      const std::size_t ext = pos_;
      ++pos_;
      while (is_alpha(peek())) ++pos_;
      main.extension = std::string(s_.substr(ext, pos_ - ext));
    }
    if (peek() == '*') {
      ++pos_;
      const std::size_t sfx = pos_;
      while (is_alpha(peek()) || is_digit(peek()) || peek() == '.') ++pos_;
      if (pos_ == sfx) fail(pos_, "non-scheme text after '*'");
      main.suffix = std::string(s_.substr(sfx, pos_ - sfx));
    }
    return make(std::move(main), begin, pos_);
  }

  Node common_auxiliary() {
    const std::size_t begin = pos_;
    AuxKind kind;
    const char c = peek();
    if (c == '=') {
      kind = AuxKind::language;
      ++pos_;
      grouped_digits();
    } else if (c == '(') {
      ++pos_;
      const char next = peek();
      if (next == '=') {
        kind = AuxKind::ethnic;
        ++pos_;
      } else if (next == '0') {
        kind = AuxKind::form;
      } else if (is_digit(next)) {
        kind = AuxKind::place;
      } else {
        fail(pos_, "'=' or a digit after '('");
      }
      grouped_digits();
      if (peek() != ')') fail(pos_, "')'");
      ++pos_;
    } else if (c == '"') {
      kind = AuxKind::time;
      ++pos_;
      const std::size_t body = pos_;
      bool has_digit = false;
      while (pos_ < s_.size() && s_[pos_] != '"') {
        if (!is_time_char(s_[pos_])) fail(pos_, "a time value character");
        has_digit = has_digit || is_digit(s_[pos_]);
        ++pos_;
      }
      if (pos_ >= s_.size()) fail(pos_, "closing '\"'");
      if (!has_digit) fail(body, "a time value");
      ++pos_;
    } else {
      // "-0" followed by at least one more digit.
      kind = AuxKind::property;
      ++pos_;
      const std::size_t digits = pos_;
      grouped_digits();
      if (pos_ - digits < 2) fail(pos_, "a digit after '-0'");
    }
    return make(CommonAuxiliary{kind, std::string(s_.substr(begin, pos_ - begin))},
                begin, pos_);
  }

  Node special_auxiliary(Node base, std::size_t base_begin) {
    const std::size_t begin = pos_;
    SpecialKind kind;
    const char c = peek();
    if (c == '-') {
      kind = SpecialKind::hyphen;
      ++pos_;
      if (!is_digit(peek()) || peek() == '0') fail(pos_, "a digit 1-9 after '-'");
      grouped_digits();
    } else if (c == '\'') {
      kind = SpecialKind::apostrophe;
      ++pos_;
      grouped_digits();
    } else {
      kind = SpecialKind::point_zero;
      ++pos_;
      const std::size_t digits = pos_;
      grouped_digits();
      if (pos_ - digits < 2) fail(pos_, "a digit after '.0'");
    }
    SpecialAuxiliary aux{kind, std::string(s_.substr(begin, pos_ - begin)),
                         Span{begin, pos_}, Box(std::move(base))};
    return make(std::move(aux), base_begin, pos_);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

void serialize_into(const Node& node, std::string& out);

void join_into(const std::vector<Node>& members, std::string_view sep,
               std::string& out) {
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i > 0) out += sep;
    serialize_into(members[i], out);
  }
}

void serialize_into(const Node& node, std::string& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, MainNumber>) {
          out += n.digits;
          if (n.extension) out += *n.extension;
          if (n.suffix) {
            out += '*';
            out += *n.suffix;
          }
        } else if constexpr (std::is_same_v<T, CommonAuxiliary>) {
          out += n.body;
        } else if constexpr (std::is_same_v<T, SpecialAuxiliary>) {
          serialize_into(*n.attached_to, out);
          out += n.body;
        } else if constexpr (std::is_same_v<T, Attachment>) {
          serialize_into(*n.base, out);
          for (const Node& aux : n.auxiliaries) serialize_into(aux, out);
        } else if constexpr (std::is_same_v<T, Range>) {
          serialize_into(*n.low, out);
          out += '/';
          serialize_into(*n.high, out);
        } else if constexpr (std::is_same_v<T, Relation>) {
          join_into(n.members, n.ordered ? "::" : ":", out);
        } else if constexpr (std::is_same_v<T, Coordination>) {
          join_into(n.members, "+", out);
        } else {
          out += '[';
          serialize_into(*n.inner, out);
          out += ']';
        }
      },
      node.value);
}

LeafKind leaf_kind(AuxKind kind) {
  switch (kind) {
    case AuxKind::language: return LeafKind::language;
    case AuxKind::ethnic: return LeafKind::ethnic;
    case AuxKind::place: return LeafKind::place;
    case AuxKind::form: return LeafKind::form;
    case AuxKind::time: return LeafKind::time;
    case AuxKind::property: return LeafKind::property;
  }
  return LeafKind::main;
}

LeafKind leaf_kind(SpecialKind kind) {
  switch (kind) {
    case SpecialKind::hyphen: return LeafKind::hyphen;
    case SpecialKind::point_zero: return LeafKind::point_zero;
    case SpecialKind::apostrophe: return LeafKind::apostrophe;
  }
  return LeafKind::main;
}

void collect_leaves(const Node& node, std::vector<Leaf>& out) {
  if (node.as<MainNumber>()) {
    out.push_back({serialize(node), LeafKind::main, node.span});
  } else if (const auto* a = node.as<CommonAuxiliary>()) {
    out.push_back({a->body, leaf_kind(a->kind), node.span});
  } else if (const auto* sp = node.as<SpecialAuxiliary>()) {
    if (is_primitive(*sp->attached_to)) {
      out.push_back({serialize(node), leaf_kind(sp->kind), node.span});
    } else {
      collect_leaves(*sp->attached_to, out);
      out.push_back({sp->body, leaf_kind(sp->kind), sp->body_span});
    }
  } else if (const auto* att = node.as<Attachment>()) {
    collect_leaves(*att->base, out);
    for (const Node& aux : att->auxiliaries) collect_leaves(aux, out);
  } else if (const auto* r = node.as<Range>()) {
    collect_leaves(*r->low, out);
    collect_leaves(*r->high, out);
  } else if (const auto* rel = node.as<Relation>()) {
    for (const Node& m : rel->members) collect_leaves(m, out);
  } else if (const auto* co = node.as<Coordination>()) {
    for (const Node& m : co->members) collect_leaves(m, out);
  } else if (const auto* g = node.as<Group>()) {
    collect_leaves(*g->inner, out);
  }
}

}  // namespace

Expected<Classmark, ParseError> normalize(std::string_view raw) {
  Classmark out{std::string(raw), {}};
  out.normalized.reserve(raw.size());
  bool quoted = false;
  std::size_t quote_at = 0;
  for (char c : raw) {
    if (c == '"') {
      if (!quoted) quote_at = out.normalized.size();
      quoted = !quoted;
    } else if (!quoted && is_space(c)) {
      continue;
    }
    out.normalized += c;
  }
  if (quoted) {
    return unexpected(
        ParseError{quote_at, "closing '\"' for this time span", "end of input"});
  }
  return out;
}

Expected<ParseTree, ParseError> parse(const Classmark& classmark) {
  try {
    Parser parser(classmark.normalized);
    return ParseTree{classmark, parser.parse_all()};
  } catch (const Failure& f) {
    return unexpected(f.error);
  }
}

Expected<ParseTree, ParseError> parse(std::string_view raw) {
  auto classmark = normalize(raw);
  if (!classmark) return unexpected(classmark.error());
  return parse(*classmark);
}

std::string serialize(const Node& node) {
  std::string out;
  serialize_into(node, out);
  return out;
}

std::vector<Leaf> leaves(const Node& node) {
  std::vector<Leaf> out;
  collect_leaves(node, out);
  return out;
}

bool is_primitive(const Node& node) {
  if (node.as<MainNumber>() || node.as<CommonAuxiliary>()) return true;
  if (const auto* sp = node.as<SpecialAuxiliary>()) {
    return is_primitive(*sp->attached_to);
  }
  return false;
}

bool check_dot_grouping(std::string_view digits) {
  if (digits.empty()) return false;
  int run = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    const char c = digits[i];
    if (is_digit(c)) {
      if (run == 3) return false;
      ++run;
    } else if (c == '.') {
      if (run != 3 || i + 1 == digits.size()) return false;
      run = 0;
    } else {
      return false;
    }
  }
  return true;
}

std::string_view operator_name(const Node& node) {
  if (node.as<Coordination>()) return "coordination";
  if (node.as<Range>()) return "range";
  if (const auto* rel = node.as<Relation>()) {
    return rel->ordered ? "ordered-relation" : "relation";
  }
  if (node.as<Attachment>()) return "attachment";
  if (node.as<Group>()) return "group";
  if (node.as<SpecialAuxiliary>() && !is_primitive(node)) {
    return "special-auxiliary";
  }
  return {};
}

std::string_view to_string(LeafKind kind) {
  switch (kind) {
    case LeafKind::main: return "main";
    case LeafKind::language: return "language-aux";
    case LeafKind::ethnic: return "ethnic-aux";
    case LeafKind::place: return "place-aux";
    case LeafKind::form: return "form-aux";
    case LeafKind::time: return "time-aux";
    case LeafKind::property: return "property-aux";
    case LeafKind::hyphen: return "hyphen-aux";
    case LeafKind::point_zero: return "point-zero-aux";
    case LeafKind::apostrophe: return "apostrophe-aux";
  }
  return "unknown";
}

std::string_view to_string(AuxKind kind) {
  switch (kind) {
    case AuxKind::language: return "language";
    case AuxKind::ethnic: return "ethnic";
    case AuxKind::place: return "place";
    case AuxKind::form: return "form";
    case AuxKind::time: return "time";
    case AuxKind::property: return "property";
  }
  return "unknown";
}

std::string_view to_string(SpecialKind kind) {
  switch (kind) {
    case SpecialKind::hyphen: return "hyphen";
    case SpecialKind::point_zero: return "point-zero";
    case SpecialKind::apostrophe: return "apostrophe";
  }
  return "unknown";
}

}  // namespace lookup::notation
