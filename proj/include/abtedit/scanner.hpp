// Copyright 2026 The abtedit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

// Character-level scanner shared by the text parsers.

#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "abtedit/error.hpp"

namespace abtedit::detail {

inline bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

inline bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

inline bool is_identifier(std::string_view s) {
  if (s.empty() || !is_ident_start(s.front())) return false;
  for (char c : s) {
    if (!is_ident_char(c)) return false;
  }
  return true;
}

class Scanner {
 public:
  explicit Scanner(std::string_view text, bool hash_comments = true)
      : text_(text), hash_comments_(hash_comments) {}

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#' && hash_comments_) {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  // Skips blanks but stops at a newline.
  void skip_inline_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                   text_[pos_] == '\r')) {
      advance();
    }
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  char peek_raw() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  char peek() {
    skip_space();
    return peek_raw();
  }

  bool lookahead(std::string_view token) {
    skip_space();
    return text_.substr(pos_, token.size()) == token;
  }

  bool consume(std::string_view token) {
    if (!lookahead(token)) return false;
    for (std::size_t i = 0; i < token.size(); ++i) advance();
    return true;
  }

  // Consumes a keyword only when it is not the prefix of a longer identifier.
  bool consume_keyword(std::string_view word) {
    skip_space();
    if (text_.substr(pos_, word.size()) != word) return false;
    std::size_t end = pos_ + word.size();
    if (end < text_.size() && is_ident_char(text_[end])) return false;
    for (std::size_t i = 0; i < word.size(); ++i) advance();
    return true;
  }

  void expect(std::string_view token) {
    if (!consume(token)) fail("expected '" + std::string(token) + "'");
  }

  std::optional<std::string> try_identifier() {
    skip_space();
    if (pos_ >= text_.size() || !is_ident_start(text_[pos_])) {
      return std::nullopt;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) advance();
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string identifier() {
    auto id = try_identifier();
    if (!id) fail("expected identifier");
    return *id;
  }

  bool at_integer() {
    skip_space();
    std::size_t p = pos_;
    if (p < text_.size() && text_[p] == '-') ++p;
    return p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]));
  }

  std::int64_t integer() {
    if (!at_integer()) fail("expected integer");
    std::size_t start = pos_;
    if (text_[pos_] == '-') advance();
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      advance();
    }
    try {
      return std::stoll(std::string(text_.substr(start, pos_ - start)));
    } catch (const std::out_of_range&) {
      fail("integer literal out of range");
    }
  }

  std::size_t position() const { return pos_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

  struct Mark {
    std::size_t pos, line, column;
  };
  Mark mark() const { return {pos_, line_, column_}; }
  void reset(Mark m) {
    pos_ = m.pos;
    line_ = m.line;
    column_ = m.column;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_, column_);
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view text_;
  bool hash_comments_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

}  // namespace abtedit::detail
