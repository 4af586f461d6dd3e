#pragma once

// Exact scalars for the endoscopy combinatorics: half-integers, reduced
// rationals, sign vectors (the group mu_2^k and its self-dual pairing),
// eighth roots of unity, and the ring Z[mu_8, 1/2].

#include <array>
#include <bit>
#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mpendo {

/// Raised for malformed user-facing input (bad literals, wrong lengths,
/// inadmissible parameters). The CLI maps it to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in exact arithmetic");
  return r;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in exact arithmetic");
  return r;
}

inline std::int64_t parse_int(std::string_view s, std::string_view what) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw InputError("malformed " + std::string(what) + " literal '" + std::string(s) + "'");
  return v;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// HalfInt

/// An element x of (1/2)Z, stored as the integer 2x.
class HalfInt {
 public:
  constexpr HalfInt() = default;

  static constexpr HalfInt from_twice(std::int64_t twice) { return HalfInt(twice); }
  static constexpr HalfInt from_int(std::int64_t v) { return HalfInt(2 * v); }

  /// Accepts "p" or "p/q" with q in {1, 2}.
  static HalfInt parse(std::string_view s) {
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) return from_int(detail::parse_int(s, "half-integer"));
    const auto num = detail::parse_int(s.substr(0, slash), "half-integer");
    const auto den = detail::parse_int(s.substr(slash + 1), "half-integer");
    if (den == 1) return from_int(num);
    if (den == 2) return from_twice(num);
    throw InputError("'" + std::string(s) + "' is not a half-integer");
  }

  constexpr std::int64_t twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  /// True iff x lies in Z + 1/2.
  constexpr bool is_half_odd() const { return twice_ % 2 != 0; }
  constexpr bool is_zero() const { return twice_ == 0; }
  constexpr HalfInt abs() const { return HalfInt(twice_ < 0 ? -twice_ : twice_); }

  constexpr HalfInt operator-() const { return HalfInt(-twice_); }
  constexpr HalfInt operator+(HalfInt o) const { return HalfInt(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return HalfInt(twice_ - o.twice_); }
  constexpr auto operator<=>(const HalfInt&) const = default;

  /// "p/2" for proper half-integers, plain decimal otherwise.
  std::string to_string() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

 private:
  constexpr explicit HalfInt(std::int64_t twice) : twice_(twice) {}
  std::int64_t twice_ = 0;
};

// ---------------------------------------------------------------------------
// Rational

/// A reduced fraction with positive denominator.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t v) : num_(v), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) { normalize(); }

  /// Accepts "p" or "p/q".
  static Rational parse(std::string_view s) {
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(detail::parse_int(s, "rational"));
    const auto num = detail::parse_int(s.substr(0, slash), "rational");
    const auto den = detail::parse_int(s.substr(slash + 1), "rational");
    if (den == 0) throw InputError("zero denominator in '" + std::string(s) + "'");
    return Rational(num, den);
  }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }
  constexpr bool is_zero() const { return num_ == 0; }

  Rational inverse() const {
    if (num_ == 0) throw std::domain_error("inverse of zero");
    return Rational(den_, num_);
  }
  Rational abs() const { return Rational(num_ < 0 ? -num_ : num_, den_); }

  Rational operator-() const { return Rational(-num_, den_); }
  Rational operator+(const Rational& o) const {
    const auto g = std::gcd(den_, o.den_);
    return Rational(detail::checked_add(detail::checked_mul(num_, o.den_ / g),
                                        detail::checked_mul(o.num_, den_ / g)),
                    detail::checked_mul(den_ / g, o.den_));
  }
  Rational operator-(const Rational& o) const { return *this + (-o); }
  Rational operator*(const Rational& o) const {
    const auto g1 = std::gcd(num_, o.den_);
    const auto g2 = std::gcd(o.num_, den_);
    const auto a = g1 == 0 ? num_ : num_ / g1;
    const auto b = g2 == 0 ? o.num_ : o.num_ / g2;
    const auto c = g2 == 0 ? den_ : den_ / g2;
    const auto d = g1 == 0 ? o.den_ : o.den_ / g1;
    return Rational(detail::checked_mul(a, b), detail::checked_mul(c, d));
  }
  Rational operator/(const Rational& o) const { return *this * o.inverse(); }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  constexpr bool operator==(const Rational&) const = default;
  std::strong_ordering operator<=>(const Rational& o) const {
    // __int128 keeps cross-multiplication exact for all int64 inputs.
    const __int128 l = static_cast<__int128>(num_) * o.den_;
    const __int128 r = static_cast<__int128>(o.num_) * den_;
    return l < r ? std::strong_ordering::less : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  void normalize() {
    if (den_ == 0) throw std::domain_error("zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const auto g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// ---------------------------------------------------------------------------
// SignVector

/// An element of mu_2^k (k <= 63), stored as the mask of its -1 coordinates.
/// Enumeration "in binary order" means by increasing mask.
class SignVector {
 public:
  static constexpr std::size_t kMaxLength = 63;

  constexpr SignVector() = default;
  SignVector(std::size_t length, std::uint64_t negative_mask) : length_(length), mask_(negative_mask) {
    if (length > kMaxLength) throw InputError("sign vector too long");
    if (length < 64 && (mask_ >> length) != 0) throw InputError("sign mask exceeds vector length");
  }

  static SignVector identity(std::size_t length) { return SignVector(length, 0); }

  static SignVector from_signs(const std::vector<int>& signs) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < signs.size(); ++i) {
      if (signs[i] == -1)
        mask |= std::uint64_t{1} << i;
      else if (signs[i] != 1)
        throw InputError("sign vector entries must be +1 or -1");
    }
    return SignVector(signs.size(), mask);
  }

  /// All 2^k elements in binary order.
  static std::vector<SignVector> all(std::size_t length) {
    if (length > 24) throw InputError("refusing to enumerate mu_2^k for k > 24");
    std::vector<SignVector> out;
    out.reserve(std::size_t{1} << length);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << length); ++m) out.emplace_back(length, m);
    return out;
  }

  std::size_t size() const { return length_; }
  std::uint64_t negative_mask() const { return mask_; }
  bool is_identity() const { return mask_ == 0; }
  int at(std::size_t i) const {
    if (i >= length_) throw std::out_of_range("sign vector index");
    return ((mask_ >> i) & 1U) ? -1 : 1;
  }
  std::vector<int> signs() const {
    std::vector<int> out(length_);
    for (std::size_t i = 0; i < length_; ++i) out[i] = at(i);
    return out;
  }
  /// Product of all coordinates.
  int product() const { return (std::popcount(mask_) % 2) ? -1 : 1; }

  SignVector with_flipped(std::size_t i) const {
    if (i >= length_) throw std::out_of_range("sign vector index");
    return SignVector(length_, mask_ ^ (std::uint64_t{1} << i));
  }

  /// Coordinates [offset, offset + count).
  SignVector slice(std::size_t offset, std::size_t count) const {
    if (offset + count > length_) throw std::out_of_range("sign vector slice");
    const std::uint64_t keep = count == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << count) - 1);
    return SignVector(count, (mask_ >> offset) & keep);
  }

  /// Concatenation (this first).
  SignVector concat(const SignVector& tail) const {
    return SignVector(length_ + tail.length_, mask_ | (tail.mask_ << length_));
  }

  SignVector operator*(const SignVector& o) const {
    if (length_ != o.length_) throw InputError("sign vector length mismatch");
    return SignVector(length_, mask_ ^ o.mask_);
  }

  bool operator==(const SignVector&) const = default;

 private:
  std::size_t length_ = 0;
  std::uint64_t mask_ = 0;
};

inline SignVector sign_mul(const SignVector& u, const SignVector& v) { return u * v; }

/// Pairing mu_2^k x mu_2^k -> mu_2 identifying the group with its dual:
/// the product of x_i over the coordinates where chi_i = -1.
inline int character_eval(const SignVector& chi, const SignVector& x) {
  if (chi.size() != x.size()) throw InputError("character/element length mismatch");
  return (std::popcount(chi.negative_mask() & x.negative_mask()) % 2) ? -1 : 1;
}

/// Sum of all characters at x: 2^k if x is the identity, else 0.
inline std::int64_t fourier_delta(const SignVector& x) {
  std::int64_t total = 0;
  for (const auto& chi : SignVector::all(x.size())) total += character_eval(chi, x);
  return total;
}

// ---------------------------------------------------------------------------
// UnityRoot8

/// exp(2 pi i k / 8), stored as k mod 8.
class UnityRoot8 {
 public:
  constexpr UnityRoot8() = default;
  constexpr explicit UnityRoot8(std::int64_t exponent) : exp_(static_cast<int>(((exponent % 8) + 8) % 8)) {}

  constexpr int exponent() const { return exp_; }
  constexpr UnityRoot8 operator*(UnityRoot8 o) const { return UnityRoot8(exp_ + o.exp_); }
  constexpr UnityRoot8 conj() const { return UnityRoot8(-exp_); }
  constexpr bool operator==(const UnityRoot8&) const = default;

 private:
  int exp_ = 0;
};

// ---------------------------------------------------------------------------
// DyadicCyclotomic8

/// An element 2^{-shift} * sum_k c_k zeta^k of Z[mu_8, 1/2], zeta = e^{2 pi i/8},
/// reduced by zeta^4 = -1 on the Q-basis {1, zeta, zeta^2, zeta^3}. The
/// representation is normalized, so == is value equality.
class DyadicCyclotomic8 {
 public:
  using Coeffs = std::array<std::int64_t, 4>;

  constexpr DyadicCyclotomic8() = default;
  DyadicCyclotomic8(std::int64_t v) : c_{v, 0, 0, 0} {}  // NOLINT(google-explicit-constructor)
  DyadicCyclotomic8(Coeffs c, int shift) : c_(c), shift_(shift) { normalize(); }

  static DyadicCyclotomic8 root(UnityRoot8 z) {
    Coeffs c{0, 0, 0, 0};
    const int k = z.exponent();
    if (k < 4)
      c[k] = 1;
    else
      c[k - 4] = -1;
    return DyadicCyclotomic8(c, 0);
  }

  /// 2^{-k}
  static DyadicCyclotomic8 inverse_power_of_two(int k) { return DyadicCyclotomic8({1, 0, 0, 0}, k); }

  const Coeffs& coeffs() const { return c_; }
  int shift() const { return shift_; }
  bool is_zero() const { return c_ == Coeffs{0, 0, 0, 0}; }

  DyadicCyclotomic8 conj() const { return DyadicCyclotomic8({c_[0], -c_[3], -c_[2], -c_[1]}, shift_); }
  DyadicCyclotomic8 operator-() const { return DyadicCyclotomic8({-c_[0], -c_[1], -c_[2], -c_[3]}, shift_); }

  DyadicCyclotomic8 operator+(const DyadicCyclotomic8& o) const {
    const int s = std::max(shift_, o.shift_);
    Coeffs out{};
    for (int k = 0; k < 4; ++k)
      out[k] = detail::checked_add(scale_up(c_[k], s - shift_), scale_up(o.c_[k], s - o.shift_));
    return DyadicCyclotomic8(out, s);
  }
  DyadicCyclotomic8 operator-(const DyadicCyclotomic8& o) const { return *this + (-o); }

  DyadicCyclotomic8 operator*(const DyadicCyclotomic8& o) const {
    Coeffs out{0, 0, 0, 0};
    for (int i = 0; i < 4; ++i) {
      if (c_[i] == 0) continue;
      for (int j = 0; j < 4; ++j) {
        if (o.c_[j] == 0) continue;
        const auto p = detail::checked_mul(c_[i], o.c_[j]);
        const int k = i + j;
        if (k < 4)
          out[k] = detail::checked_add(out[k], p);
        else
          out[k - 4] = detail::checked_add(out[k - 4], -p);
      }
    }
    return DyadicCyclotomic8(out, shift_ + o.shift_);
  }
  DyadicCyclotomic8& operator+=(const DyadicCyclotomic8& o) { return *this = *this + o; }

  bool operator==(const DyadicCyclotomic8&) const = default;

  std::string to_string() const {
    std::string s = "(";
    for (int k = 0; k < 4; ++k) {
      if (k) s += ",";
      s += std::to_string(c_[k]);
    }
    return s + ")/2^" + std::to_string(shift_);
  }

 private:
  static std::int64_t scale_up(std::int64_t v, int bits) {
    for (int i = 0; i < bits; ++i) v = detail::checked_mul(v, 2);
    return v;
  }

  void normalize() {
    if (is_zero()) {
      shift_ = 0;
      return;
    }
    while (shift_ < 0) {
      for (auto& x : c_) x = detail::checked_mul(x, 2);
      ++shift_;
    }
    while (shift_ > 0 && ((c_[0] | c_[1] | c_[2] | c_[3]) & 1) == 0) {
      for (auto& x : c_) x /= 2;
      --shift_;
    }
  }

  Coeffs c_{0, 0, 0, 0};
  int shift_ = 0;
};

}  // namespace mpendo
