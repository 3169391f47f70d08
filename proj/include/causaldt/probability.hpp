#pragma once

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

namespace causaldt {

/// Exact rational number used for every probability in the library.
///
/// Values are always kept in lowest terms with a positive denominator, so
/// equality is structural. The type does not clamp to [0, 1]; sums and
/// intermediate products may leave the unit interval and validation is the
/// caller's job (see `in_unit_interval`).
class Probability {
 public:
  Probability() = default;
  Probability(long numerator, unsigned long denominator = 1);
  explicit Probability(mpq_class value);

  /// Accepts "p/q", integers, and decimals with an optional exponent
  /// ("0.25", "3e-1"). Decimal text is converted exactly.
  static Probability parse(std::string_view text);

  static Probability zero() { return Probability(); }
  static Probability one() { return Probability(1); }

  /// Canonical rendering: "p/q", or "p" when the denominator is 1.
  std::string str() const;

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_positive() const { return sgn(value_) > 0; }
  bool in_unit_interval() const;

  const mpq_class& value() const { return value_; }
  double to_double() const { return value_.get_d(); }

  Probability& operator+=(const Probability& rhs);
  Probability& operator-=(const Probability& rhs);
  Probability& operator*=(const Probability& rhs);
  Probability& operator/=(const Probability& rhs);

  friend Probability operator+(Probability lhs, const Probability& rhs) { return lhs += rhs; }
  friend Probability operator-(Probability lhs, const Probability& rhs) { return lhs -= rhs; }
  friend Probability operator*(Probability lhs, const Probability& rhs) { return lhs *= rhs; }
  friend Probability operator/(Probability lhs, const Probability& rhs) { return lhs /= rhs; }

  friend bool operator==(const Probability& a, const Probability& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Probability& a, const Probability& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Probability& p) { return os << p.str(); }

 private:
  mpq_class value_{0};
};

}  // namespace causaldt
