#ifndef FAIRDIV_RATIONAL_HPP_
#define FAIRDIV_RATIONAL_HPP_

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace fairdiv {

// Arbitrary-precision rational number, always kept in lowest terms with a
// positive denominator. Thin value wrapper over GMP's mpq_class so that
// expression templates never leak into user code.
class Rational {
 public:
  Rational() = default;
  Rational(int value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long long value);  // NOLINT(google-explicit-constructor)
  Rational(unsigned long value) : q_(value) {}  // NOLINT
  Rational(long numerator, long denominator);

  // Parses "a", "-a" or "a/b". Throws ParseError on malformed input or a
  // zero denominator.
  static Rational parse(std::string_view text);

  std::string to_string() const;
  std::string numerator_string() const;
  std::string denominator_string() const;

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const;
  // Only meaningful for values that fit; used for small counts and sizes.
  double to_double() const { return q_.get_d(); }

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);  // throws DomainError on zero

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.q_, b.q_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  const mpq_class& raw() const { return q_; }

 private:
  explicit Rational(mpq_class q) : q_(std::move(q)) {}
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational abs(const Rational& r);
const Rational& min(const Rational& a, const Rational& b);
const Rational& max(const Rational& a, const Rational& b);

}  // namespace fairdiv

#endif  // FAIRDIV_RATIONAL_HPP_
