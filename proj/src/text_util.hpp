#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "cuspforge/error.hpp"

namespace cuspforge::detail {

inline std::string strip_spaces(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
  }
  return out;
}

// True when text[0] is '(' and its matching ')' is the last character.
inline bool wrapped_in_parens(std::string_view text) {
  if (text.size() < 2 || text.front() != '(' || text.back() != ')') return false;
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')' && --depth == 0) return i + 1 == text.size();
  }
  return false;
}

// Splits at commas outside parentheses.
inline std::vector<std::string> split_top_level(std::string_view text, char sep = ',') {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth < 0) fail(ErrorCode::parse, "unbalanced ')' in '" + std::string(text) + "'");
    if (ch == sep && depth == 0) {
      parts.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (depth != 0) fail(ErrorCode::parse, "unbalanced '(' in '" + std::string(text) + "'");
  parts.push_back(std::move(cur));
  return parts;
}

}  // namespace cuspforge::detail
