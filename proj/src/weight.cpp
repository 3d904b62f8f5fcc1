#include "tmln/weight.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace tmln {

std::optional<Weight> Weight::Parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool negative = false;
  std::size_t pos = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }
  std::int64_t whole = 0;
  std::size_t int_digits = 0;
  while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
    if (whole > std::numeric_limits<std::int64_t>::max() / kScale / 10) {
      return std::nullopt;
    }
    whole = whole * 10 + (text[pos] - '0');
    ++pos;
    ++int_digits;
  }
  std::int64_t frac = 0;
  int frac_digits = 0;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      if (frac_digits == kMaxFractionDigits) return std::nullopt;
      frac = frac * 10 + (text[pos] - '0');
      ++frac_digits;
      ++pos;
    }
    if (frac_digits == 0) return std::nullopt;
  }
  if (pos != text.size() || int_digits == 0) return std::nullopt;
  for (int i = frac_digits; i < kMaxFractionDigits; ++i) frac *= 10;
  const std::int64_t nanos = whole * kScale + frac;
  return FromNanos(negative ? -nanos : nanos);
}

Weight Weight::FromDouble(double value) {
  return FromNanos(static_cast<std::int64_t>(std::llround(value * kScale)));
}

std::string Weight::ToString() const {
  std::int64_t n = nanos_;
  std::string out;
  if (n < 0) {
    out.push_back('-');
    n = -n;
  }
  out += std::to_string(n / kScale);
  std::int64_t frac = n % kScale;
  if (frac != 0) {
    std::string digits = std::to_string(frac);
    digits.insert(0, kMaxFractionDigits - digits.size(), '0');
    while (!digits.empty() && digits.back() == '0') digits.pop_back();
    out.push_back('.');
    out += digits;
  }
  return out;
}

std::string FormatDecimal(double value) {
  if (!std::isfinite(value)) return value > 0 ? "inf" : "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", value);
  std::string s = buf;
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

}  // namespace tmln
