#ifndef TMLN_WEIGHT_HPP_
#define TMLN_WEIGHT_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tmln {

// Certainty weight stored as an exact decimal with nine fractional digits.
// Grounding only ever takes minima and maxima of weights, so ground-rule
// weights stay exact and print back to the same decimal text.
class Weight {
 public:
  static constexpr std::int64_t kScale = 1'000'000'000;
  static constexpr int kMaxFractionDigits = 9;

  constexpr Weight() = default;

  static constexpr Weight FromNanos(std::int64_t nanos) {
    Weight w;
    w.nanos_ = nanos;
    return w;
  }
  static constexpr Weight Zero() { return FromNanos(0); }
  static constexpr Weight One() { return FromNanos(kScale); }

  // Accepts `[-]digits[.digits]` with at most nine fractional digits.
  // Range is not checked here.
  static std::optional<Weight> Parse(std::string_view text);

  // Rounds to the nearest representable value.
  static Weight FromDouble(double value);

  constexpr std::int64_t nanos() const { return nanos_; }
  double value() const { return static_cast<double>(nanos_) / kScale; }
  constexpr bool in_unit_interval() const {
    return nanos_ >= 0 && nanos_ <= kScale;
  }

  // Shortest decimal text: "1", "0.4", "0.125".
  std::string ToString() const;

  friend constexpr auto operator<=>(const Weight&, const Weight&) = default;

 private:
  std::int64_t nanos_ = 0;
};

// Shortest decimal rendering of a double, used for strengths in reports.
// Rounds to nine fractional digits first so that 5.2000000000000002
// prints as "5.2".
std::string FormatDecimal(double value);

}  // namespace tmln

#endif  // TMLN_WEIGHT_HPP_
