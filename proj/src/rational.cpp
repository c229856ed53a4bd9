#include "rmdf/rational.hpp"

#include <ostream>
#include <sstream>

namespace rmdf {

void Rational::init(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw UsageError("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw UsageError("rational division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::from_string(const std::string& text) {
  std::string s = text;
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(mpz_class(s), mpz_class(1));
    }
    mpz_class num(s.substr(0, slash));
    mpz_class den(s.substr(slash + 1));
    return Rational(num, den);
  } catch (const std::invalid_argument&) {
    throw UsageError("malformed rational literal '" + text + "'");
  }
}

mpz_class Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
  return q;
}

mpz_class Rational::ceil() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
  return q;
}

std::string Rational::str() const {
  if (is_integer()) return num().get_str();
  return num().get_str() + "/" + den().get_str();
}

std::string Rational::decimal(int places) const {
  mpz_class scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  // round-half-up: floor(x*scale + 1/2)
  mpz_class n2 = num() * scale * 2 + den();
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), n2.get_mpz_t(), mpz_class(den() * 2).get_mpz_t());
  bool neg = q < 0;
  mpz_class a = neg ? mpz_class(-q) : q;
  mpz_class whole = a / scale;
  mpz_class frac = a % scale;
  std::string fs = frac.get_str();
  while (static_cast<int>(fs.size()) < places) fs.insert(fs.begin(), '0');
  std::string out = (neg ? "-" : "") + whole.get_str();
  if (places > 0) out += "." + fs;
  return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

namespace {

// gcd(a/b, c/d) = gcd(a*d, c*b) / (b*d), normalized by the Rational ctor.
Rational gcd2(const Rational& a, const Rational& b) {
  mpz_class g;
  mpz_class x = a.num() * b.den();
  mpz_class y = b.num() * a.den();
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return Rational(g, a.den() * b.den());
}

Rational lcm2(const Rational& a, const Rational& b) {
  return a * b / gcd2(a, b);
}

void check_positive_nonempty(const std::vector<Rational>& values, const char* op) {
  if (values.empty()) throw UsageError(std::string(op) + " of an empty set");
  for (const auto& v : values)
    if (!v.is_positive())
      throw UsageError(std::string(op) + " requires strictly positive values");
}

}  // namespace

Rational rational_gcd(const std::vector<Rational>& values) {
  check_positive_nonempty(values, "rational gcd");
  Rational g = values.front();
  for (size_t i = 1; i < values.size(); ++i) g = gcd2(g, values[i]);
  return g;
}

Rational rational_lcm(const std::vector<Rational>& values) {
  check_positive_nonempty(values, "rational lcm");
  Rational l = values.front();
  for (size_t i = 1; i < values.size(); ++i) l = lcm2(l, values[i]);
  return l;
}

}  // namespace rmdf
