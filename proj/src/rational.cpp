#include "umw/rational.hpp"

#include <numeric>
#include <ostream>

#include "umw/error.hpp"

namespace umw {

namespace {

using i128 = __int128;

long long checked(i128 v, const char* op) {
  if (v > i128(INT64_MAX) || v < i128(INT64_MIN))
    throw Error(ErrorClass::InvalidInput,
                std::string("rational overflow in ") + op);
  return static_cast<long long>(v);
}

}  // namespace

Rat::Rat(long long n, long long d) {
  if (d == 0) throw Error(ErrorClass::InvalidInput, "rational with zero denominator");
  if (d < 0) { n = -n; d = -d; }
  long long g = std::gcd(n < 0 ? -n : n, d);
  if (g == 0) g = 1;
  num_ = n / g;
  den_ = d / g;
}

Rat Rat::parse(const std::string& s) {
  auto bad = [&] {
    return Error(ErrorClass::ParseError, "not a rational: '" + s + "'");
  };
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  try {
    size_t used = 0;
    if (slash == std::string::npos) {
      long long n = std::stoll(s, &used);
      if (used != s.size()) throw bad();
      return Rat(n);
    }
    long long n = std::stoll(s.substr(0, slash), &used);
    if (used != slash) throw bad();
    std::string dens = s.substr(slash + 1);
    long long d = std::stoll(dens, &used);
    if (used != dens.size()) throw bad();
    return Rat(n, d);
  } catch (const Error&) {
    throw;
  } catch (...) {
    throw bad();
  }
}

std::string Rat::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rat Rat::operator+(const Rat& o) const {
  i128 n = i128(num_) * o.den_ + i128(o.num_) * den_;
  i128 d = i128(den_) * o.den_;
  return Rat(checked(n, "+"), checked(d, "+"));
}

Rat Rat::operator-(const Rat& o) const { return *this + (-o); }

Rat Rat::operator*(const Rat& o) const {
  i128 n = i128(num_) * o.num_;
  i128 d = i128(den_) * o.den_;
  return Rat(checked(n, "*"), checked(d, "*"));
}

Rat Rat::operator/(const Rat& o) const {
  if (o.num_ == 0) throw Error(ErrorClass::InvalidInput, "rational division by zero");
  i128 n = i128(num_) * o.den_;
  i128 d = i128(den_) * o.num_;
  return Rat(checked(n, "/"), checked(d, "/"));
}

bool Rat::operator<(const Rat& o) const {
  return i128(num_) * o.den_ < i128(o.num_) * den_;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace umw
