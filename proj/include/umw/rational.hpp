#ifndef UMW_RATIONAL_HPP
#define UMW_RATIONAL_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

namespace umw {

/// Exact rational number, always stored in lowest terms with positive
/// denominator. All distance and level arithmetic in the library goes
/// through this type; there is no floating point anywhere.
class Rat {
 public:
  Rat() : num_(0), den_(1) {}
  Rat(long long n) : num_(n), den_(1) {}
  Rat(long long n, long long d);

  static Rat parse(const std::string& s);  // "p/q" or integer string

  long long num() const { return num_; }
  long long den() const { return den_; }

  std::string str() const;

  Rat operator+(const Rat& o) const;
  Rat operator-(const Rat& o) const;
  Rat operator*(const Rat& o) const;
  Rat operator/(const Rat& o) const;
  Rat operator-() const { return Rat(-num_, den_); }

  bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rat& o) const { return !(*this == o); }
  bool operator<(const Rat& o) const;
  bool operator<=(const Rat& o) const { return *this < o || *this == o; }
  bool operator>(const Rat& o) const { return o < *this; }
  bool operator>=(const Rat& o) const { return o <= *this; }

 private:
  long long num_;
  long long den_;  // > 0
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

}  // namespace umw

#endif
