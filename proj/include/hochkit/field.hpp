#pragma once

// Exact scalar fields: arbitrary-precision rationals (GMP) and prime fields F_p.
//
// Generic code in this library is templated on a Field type exposing
//   using value_type;
//   value_type zero() const, one() const, from_int(long) const;
//   value_type parse(std::string_view) const;   // "n" or "n/d"
//   std::string format(const value_type&) const;
//   std::uint64_t characteristic() const;       // 0 for Q
//   std::string name() const;                   // "Q" or "Fp:<p>"
// and element types supporting + - * / == and unary minus. Zero tests go
// through the free function is_zero().

#include <gmpxx.h>

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hochkit {

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Rationals

inline bool is_zero(const mpq_class& x) { return sgn(x) == 0; }

struct RationalField {
  using value_type = mpq_class;

  value_type zero() const { return value_type(0); }
  value_type one() const { return value_type(1); }
  value_type from_int(long v) const { return value_type(v); }

  value_type parse(std::string_view text) const {
    std::string s(text);
    if (s.empty()) throw FieldError("empty scalar literal");
    for (char c : s) {
      if (!(c == '-' || c == '+' || c == '/' || (c >= '0' && c <= '9')))
        throw FieldError("malformed scalar literal '" + s + "'");
    }
    if (s.front() == '+') s.erase(0, 1);
    value_type q;
    if (q.set_str(s, 10) != 0) throw FieldError("malformed scalar literal '" + s + "'");
    if (sgn(q.get_den()) == 0) throw FieldError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  }

  std::string format(const value_type& v) const { return v.get_str(10); }
  std::uint64_t characteristic() const { return 0; }
  std::string name() const { return "Q"; }
  bool operator==(const RationalField&) const = default;
};

// ---------------------------------------------------------------------------
// Prime fields. Each element carries its modulus; a default-constructed
// element is the zero of whatever field it is combined with.

class ModP {
 public:
  ModP() = default;
  ModP(std::uint64_t value, std::uint64_t modulus) : v_(value % modulus), p_(modulus) {}

  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return p_; }

  friend ModP operator+(const ModP& a, const ModP& b) {
    const auto p = common(a, b);
    if (p == 0) return {};
    std::uint64_t s = a.v_ + b.v_;
    if (s >= p) s -= p;
    return raw(s, p);
  }
  friend ModP operator-(const ModP& a) {
    if (a.v_ == 0) return a;
    return raw(a.p_ - a.v_, a.p_);
  }
  friend ModP operator-(const ModP& a, const ModP& b) { return a + (-b); }
  friend ModP operator*(const ModP& a, const ModP& b) {
    const auto p = common(a, b);
    if (p == 0) return {};
    return raw(static_cast<std::uint64_t>(static_cast<unsigned __int128>(a.v_) * b.v_ % p), p);
  }
  friend ModP operator/(const ModP& a, const ModP& b) { return a * b.inverse(); }
  ModP& operator+=(const ModP& o) { return *this = *this + o; }
  ModP& operator-=(const ModP& o) { return *this = *this - o; }
  ModP& operator*=(const ModP& o) { return *this = *this * o; }
  ModP& operator/=(const ModP& o) { return *this = *this / o; }

  friend bool operator==(const ModP& a, const ModP& b) { return a.v_ == b.v_; }

  ModP inverse() const {
    if (v_ == 0) throw FieldError("division by zero in F_p");
    // Fermat: v^(p-2)
    std::uint64_t result = 1, base = v_, e = p_ - 2;
    while (e) {
      if (e & 1) result = static_cast<std::uint64_t>(static_cast<unsigned __int128>(result) * base % p_);
      base = static_cast<std::uint64_t>(static_cast<unsigned __int128>(base) * base % p_);
      e >>= 1;
    }
    return raw(result, p_);
  }

 private:
  static ModP raw(std::uint64_t v, std::uint64_t p) {
    ModP r;
    r.v_ = v;
    r.p_ = p;
    return r;
  }
  static std::uint64_t common(const ModP& a, const ModP& b) {
    if (a.p_ == 0) return b.p_;
    if (b.p_ != 0 && b.p_ != a.p_) throw FieldError("mixed prime moduli");
    return a.p_;
  }

  std::uint64_t v_ = 0;
  std::uint64_t p_ = 0;
};

inline bool is_zero(const ModP& x) { return x.value() == 0; }

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

struct PrimeField {
  using value_type = ModP;

  explicit PrimeField(std::uint64_t prime) : p(prime) {
    if (!is_prime(p)) throw FieldError("Fp modulus " + std::to_string(p) + " is not prime");
    if (p >= (std::uint64_t{1} << 62)) throw FieldError("Fp modulus too large");
  }

  value_type zero() const { return {0, p}; }
  value_type one() const { return {1, p}; }
  value_type from_int(long v) const {
    const auto m = static_cast<long>(p);
    long r = v % m;
    if (r < 0) r += m;
    return {static_cast<std::uint64_t>(r), p};
  }

  value_type parse(std::string_view text) const {
    const RationalField q;
    const mpq_class x = q.parse(text);
    mpz_class num = x.get_num() % mpz_class(static_cast<unsigned long>(p));
    if (num < 0) num += static_cast<unsigned long>(p);
    mpz_class den = x.get_den() % mpz_class(static_cast<unsigned long>(p));
    if (den == 0)
      throw FieldError("denominator of '" + std::string(text) + "' vanishes mod " + std::to_string(p));
    return value_type(num.get_ui(), p) / value_type(den.get_ui(), p);
  }

  std::string format(const value_type& v) const { return std::to_string(v.value()); }
  std::uint64_t characteristic() const { return p; }
  std::string name() const { return "Fp:" + std::to_string(p); }
  bool operator==(const PrimeField&) const = default;

  std::uint64_t p;
};

// "Q" or "Fp:<p>".
struct FieldSpec {
  std::uint64_t prime = 0;  // 0 means rationals
  bool is_rational() const { return prime == 0; }

  static FieldSpec parse(std::string_view text) {
    if (text == "Q") return {};
    if (text.substr(0, 3) == "Fp:") {
      std::uint64_t p = 0;
      const auto digits = text.substr(3);
      const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
      if (ec != std::errc{} || ptr != digits.data() + digits.size())
        throw FieldError("malformed field '" + std::string(text) + "'");
      if (!is_prime(p)) throw FieldError("field modulus " + std::to_string(p) + " is not prime");
      return {p};
    }
    throw FieldError("unknown field '" + std::string(text) + "' (expected Q or Fp:<p>)");
  }
  std::string name() const { return is_rational() ? "Q" : "Fp:" + std::to_string(prime); }
};

// |G| must be a unit of the field for averaging over G.
template <class Field>
bool order_invertible(const Field& field, std::size_t group_order) {
  const auto c = field.characteristic();
  return c == 0 || group_order % c != 0;
}

}  // namespace hochkit
