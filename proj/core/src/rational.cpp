#include "fairdiv/rational.hpp"

#include <cctype>
#include <ostream>

#include "fairdiv/errors.hpp"

namespace fairdiv {
namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

std::string strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

}  // namespace

Rational::Rational(long long value) : q_(mpz_class(std::to_string(value))) {}

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw DomainError("rational with zero denominator");
  q_ = mpq_class(numerator, denominator);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const std::string s = strip(text);
  const auto slash = s.find('/');
  const std::string num = slash == std::string::npos ? s : strip(std::string_view(s).substr(0, slash));
  const std::string den = slash == std::string::npos ? "1" : strip(std::string_view(s).substr(slash + 1));
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw ParseError("", "malformed rational literal '" + s + "'");
  }
  mpz_class n(num[0] == '+' ? num.substr(1) : num, 10);
  mpz_class d(den, 10);
  if (d == 0) throw ParseError("", "zero denominator in '" + s + "'");
  mpq_class q(n, d);
  q.canonicalize();
  return Rational(std::move(q));
}

std::string Rational::to_string() const { return q_.get_str(10); }
std::string Rational::numerator_string() const { return q_.get_num().get_str(10); }
std::string Rational::denominator_string() const { return q_.get_den().get_str(10); }
bool Rational::is_integer() const { return q_.get_den() == 1; }

Rational& Rational::operator+=(const Rational& rhs) {
  q_ += rhs.q_;
  return *this;
}
Rational& Rational::operator-=(const Rational& rhs) {
  q_ -= rhs.q_;
  return *this;
}
Rational& Rational::operator*=(const Rational& rhs) {
  q_ *= rhs.q_;
  return *this;
}
Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw DomainError("division by zero");
  q_ /= rhs.q_;
  return *this;
}
Rational Rational::operator-() const { return Rational(mpq_class(-q_)); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace fairdiv
