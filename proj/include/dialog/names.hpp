#pragma once

#include <cctype>
#include <set>
#include <string>
#include <string_view>

namespace dialog::names {

inline bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

/// A plain name can be written in the DSL without quotes.
inline bool is_plain(std::string_view s) {
  if (s.empty() || s.front() == '\'') return false;
  for (char c : s)
    if (!is_ident_char(c)) return false;
  return true;
}

inline std::string quote(std::string_view s) {
  if (is_plain(s)) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

// Structural names for generated terms. Non-plain operands are parenthesized so
// that distinct structures never produce the same name.
inline std::string wrap(std::string_view s) {
  if (is_plain(s) || (s.size() > 1 && s.front() == '<' && s.back() == '>'))
    return std::string(s);
  return "(" + std::string(s) + ")";
}

/// Name of g∘f.
inline std::string composite(std::string_view f, std::string_view g) {
  return wrap(g) + "." + wrap(f);
}

inline std::string tuple(std::string_view f1, std::string_view f2) {
  return "<" + std::string(f1) + "," + std::string(f2) + ">";
}

inline std::string identity(std::string_view type) { return "id_" + wrap(type); }
inline std::string collapsing(std::string_view type) { return "tu_" + wrap(type); }
inline std::string product(std::string_view y1, std::string_view y2) {
  return wrap(y1) + "*" + wrap(y2);
}

/// First of `base`, `base'`, `base''`, ... not in `used`.
inline std::string fresh(std::string base, const std::set<std::string>& used) {
  while (used.count(base)) base += '\'';
  return base;
}

}  // namespace dialog::names
