#ifndef WARMFLOW_SRC_TEXT_UTIL_H_
#define WARMFLOW_SRC_TEXT_UTIL_H_

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "warmflow/errors.h"

namespace warmflow::text {

struct Line {
  std::size_t number;  // 1-based
  std::vector<std::string_view> tokens;
};

// Splits on LF (a trailing CR is dropped), tokenizes on blanks, skips empty
// lines. Tokens view into `text`.
inline std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    ++number;
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t')) ++i;
      std::size_t j = i;
      while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t') ++j;
      if (j > i) line.tokens.push_back(raw.substr(i, j - i));
      i = j;
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    pos = end + 1;
  }
  return lines;
}

inline std::size_t line_count(std::string_view text) {
  std::size_t n = 0;
  for (char c : text) n += c == '\n';
  if (!text.empty() && text.back() != '\n') ++n;
  return n;
}

inline int64_t parse_int(std::string_view token, std::size_t line,
                         const char* what) {
  int64_t v = 0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(ParseErrorKind::kBadNumber, line,
                     std::string(what) + " '" + std::string(token) +
                         "' is not an integer");
  }
  return v;
}

inline int64_t parse_nonnegative(std::string_view token, std::size_t line,
                                 const char* what) {
  const int64_t v = parse_int(token, line, what);
  if (v < 0) {
    throw ParseError(ParseErrorKind::kBadNumber, line,
                     std::string(what) + " '" + std::string(token) +
                         "' is negative");
  }
  return v;
}

inline void expect_tokens(const Line& line, std::size_t count,
                          const char* what) {
  if (line.tokens.size() != count) {
    throw ParseError(ParseErrorKind::kMalformedLine, line.number,
                     std::string(what) + " line needs " +
                         std::to_string(count) + " fields, got " +
                         std::to_string(line.tokens.size()));
  }
}

}  // namespace warmflow::text

#endif  // WARMFLOW_SRC_TEXT_UTIL_H_
