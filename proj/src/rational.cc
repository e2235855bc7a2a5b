#include "warmflow/rational.h"

#include <charconv>

namespace warmflow {
namespace {

int64_t parse_int(std::string_view text, const std::string& whole) {
  int64_t v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw InputError("not a rational: '" + whole + "'");
  }
  return v;
}

}  // namespace

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text, text));
  const std::string_view sv(text);
  return Rational(parse_int(sv.substr(0, slash), text),
                  parse_int(sv.substr(slash + 1), text));
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace warmflow
