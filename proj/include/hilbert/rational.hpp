#ifndef HILBERT_RATIONAL_HPP
#define HILBERT_RATIONAL_HPP

#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <cstdint>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hilbert {

/// Exact rational number. Values that fit in 64-bit numerator/denominator are
/// kept inline; anything larger is promoted to a GMP rational. Always reduced,
/// denominator positive.
class Rational {
 public:
  Rational() = default;
  Rational(long long n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long long n, long long d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    set_reduced(static_cast<__int128>(n), static_cast<__int128>(d));
  }
  explicit Rational(const mpq_class& q) { set_big(q); }

  Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  /// Parses "p", "-p", "p/q" (optionally surrounded by whitespace).
  static Rational parse(std::string_view text) {
    auto trim = [](std::string_view s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
      return s;
    };
    text = trim(text);
    auto valid_int = [](std::string_view s) {
      if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
      if (s.empty()) return false;
      for (char c : s)
        if (c < '0' || c > '9') return false;
      return true;
    };
    auto slash = text.find('/');
    std::string_view num = trim(text.substr(0, slash));
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : trim(text.substr(slash + 1));
    if (!valid_int(num) || !valid_int(den) || den.front() == '-' || den.front() == '+')
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    std::string n(num);
    if (n.front() == '+') n.erase(0, 1);
    mpq_class q;
    q.get_num() = mpz_class(n, 10);
    q.get_den() = mpz_class(std::string(den), 10);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    q.canonicalize();
    return Rational(q);
  }

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }
  int sign() const { return big_ ? sgn(*big_) : (num_ > 0) - (num_ < 0); }

  mpq_class to_mpq() const {
    if (big_) return *big_;
    mpq_class q;
    q.get_num() = static_cast<long>(num_);
    q.get_den() = static_cast<long>(den_);
    return q;
  }

  std::string to_string() const {
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  Rational operator-() const {
    if (big_) return Rational(mpq_class(-*big_));
    Rational r;
    if (num_ == INT64_MIN) {
      r.set_reduced(-static_cast<__int128>(num_), den_);
    } else {
      r.num_ = -num_;
      r.den_ = den_;
    }
    return r;
  }

  Rational& operator+=(const Rational& o) {
    if (!big_ && !o.big_) {
      if (den_ == 1 && o.den_ == 1) {
        long long s;
        if (!__builtin_add_overflow(num_, o.num_, &s)) {
          num_ = s;
          return *this;
        }
      }
      set_reduced(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                  static_cast<__int128>(den_) * o.den_);
      return *this;
    }
    set_big(to_mpq() + o.to_mpq());
    return *this;
  }
  Rational& operator-=(const Rational& o) { return *this += -o; }
  Rational& operator*=(const Rational& o) {
    if (!big_ && !o.big_) {
      if (den_ == 1 && o.den_ == 1) {
        long long p;
        if (!__builtin_mul_overflow(num_, o.num_, &p)) {
          num_ = p;
          return *this;
        }
      }
      set_reduced(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
      return *this;
    }
    set_big(to_mpq() * o.to_mpq());
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("rational division by zero");
    if (!big_ && !o.big_) {
      set_reduced(static_cast<__int128>(num_) * o.den_, static_cast<__int128>(den_) * o.num_);
      return *this;
    }
    set_big(to_mpq() / o.to_mpq());
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // canonical form: a promoted value never fits inline
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      __int128 l = static_cast<__int128>(a.num_) * b.den_;
      __int128 r = static_cast<__int128>(b.num_) * a.den_;
      return l <=> r;
    }
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  static __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static mpz_class mpz_from(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    mpz_class hi = static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64));
    mpz_class lo = static_cast<unsigned long>(static_cast<std::uint64_t>(u));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
  }

  void set_reduced(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) {
      num_ = 0;
      den_ = 1;
      big_.reset();
      return;
    }
    __int128 g = gcd128(n, d);
    if (g != 1) {
      n /= g;
      d /= g;
    }
    if (n >= INT64_MIN && n <= INT64_MAX && d <= INT64_MAX) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      big_.reset();
      return;
    }
    mpq_class q;
    q.get_num() = mpz_from(n);
    q.get_den() = mpz_from(d);
    big_ = std::make_unique<mpq_class>(std::move(q));
    num_ = 0;
    den_ = 1;
  }

  void set_big(mpq_class q) {
    // q is canonical (GMP arithmetic keeps it so)
    if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
      num_ = q.get_num().get_si();
      den_ = q.get_den().get_si();
      big_.reset();
      return;
    }
    num_ = 0;
    den_ = 1;
    big_ = std::make_unique<mpq_class>(std::move(q));
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

inline Rational factorial(int n) {
  Rational r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

inline Rational binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Rational r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

}  // namespace hilbert

#endif  // HILBERT_RATIONAL_HPP
