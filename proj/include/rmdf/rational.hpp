#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace rmdf {

// Raised when an operation is called outside its contract (bad arguments,
// wrong actor kind, missing precondition). Distinct from data-level reports,
// which are returned as values.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Exact rational number over arbitrary-precision integers. Always stored
// normalized: denominator > 0 and gcd(|num|, den) == 1. All time quantities
// in this library are Rational milliseconds; frequencies are Rational hertz.
class Rational {
public:
  Rational() : q_(0) {}
  Rational(long n) : q_(n) {}  // NOLINT: implicit by design, mirrors integers
  Rational(long num, long den) { init(mpz_class(num), mpz_class(den)); }
  Rational(const mpz_class& num, const mpz_class& den) { init(num, den); }
  explicit Rational(const mpz_class& n) : q_(n) {}

  // Accepts "p", "-p", "p/q" with optional sign on either part.
  static Rational from_string(const std::string& text);

  const mpz_class& num() const { return q_.get_num(); }
  const mpz_class& den() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_negative() const { return sgn(q_) < 0; }
  bool is_positive() const { return sgn(q_) > 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

  mpz_class floor() const;
  mpz_class ceil() const;
  double to_double() const { return q_.get_d(); }

  // "p" when integral, else "p/q".
  std::string str() const;
  // Fixed-point rendering with round-half-up, display only; comparisons in
  // this library are always exact.
  std::string decimal(int places = 2) const;

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
  explicit Rational(mpq_class q) : q_(std::move(q)) {}
  void init(const mpz_class& num, const mpz_class& den);

  mpq_class q_;
};

// Largest g with every value an integer multiple of g. All values must be
// positive; the set must be nonempty.
Rational rational_gcd(const std::vector<Rational>& values);

// Smallest L with L/value a positive integer for every value. Same
// preconditions as rational_gcd.
Rational rational_lcm(const std::vector<Rational>& values);

}  // namespace rmdf
