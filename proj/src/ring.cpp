#include "hoch/ring.hpp"

#include <charconv>

#include "hoch/errors.hpp"

namespace hoch {

bool is_prime(Scalar n) {
  if (n < 2) return false;
  for (Scalar d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Scalar checked_add(Scalar a, Scalar b) {
  Scalar r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

Scalar checked_mul(Scalar a, Scalar b) {
  Scalar r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

CoefficientRing CoefficientRing::prime_field(Scalar p) {
  if (!is_prime(p)) throw InvalidInput("ring: " + std::to_string(p) + " is not prime");
  // Products are formed in 128 bits, but keep p small enough for sums.
  if (p >= (Scalar{1} << 31)) throw InvalidInput("ring: prime too large");
  return CoefficientRing(RingKind::kPrimeField, p);
}

CoefficientRing CoefficientRing::integers() { return CoefficientRing(RingKind::kIntegers, 0); }

CoefficientRing CoefficientRing::parse(const std::string& text) {
  if (text == "z" || text == "Z" || text == "integers") return integers();
  for (const char* prefix : {"gfp:", "gf:", "fp:"}) {
    std::string pre(prefix);
    if (text.rfind(pre, 0) == 0) {
      Scalar p = 0;
      const char* first = text.data() + pre.size();
      const char* last = text.data() + text.size();
      auto [ptr, ec] = std::from_chars(first, last, p);
      if (ec != std::errc() || ptr != last) throw InvalidInput("ring: bad prime in '" + text + "'");
      return prime_field(p);
    }
  }
  throw InvalidInput("ring: expected gfp:P or integers, got '" + text + "'");
}

Scalar CoefficientRing::normalize(Scalar a) const {
  if (!is_field()) return a;
  Scalar r = a % p_;
  return r < 0 ? r + p_ : r;
}

Scalar CoefficientRing::add(Scalar a, Scalar b) const {
  if (is_field()) return normalize(a + b);
  return checked_add(a, b);
}

Scalar CoefficientRing::sub(Scalar a, Scalar b) const { return add(a, neg(b)); }

Scalar CoefficientRing::mul(Scalar a, Scalar b) const {
  if (is_field()) return static_cast<Scalar>((static_cast<__int128>(a) * b) % p_ + p_) % p_;
  return checked_mul(a, b);
}

Scalar CoefficientRing::neg(Scalar a) const {
  if (is_field()) return normalize(-a);
  if (a == INT64_MIN) throw OverflowError("integer overflow in negation");
  return -a;
}

bool CoefficientRing::is_unit(Scalar a) const {
  if (is_field()) return normalize(a) != 0;
  return a == 1 || a == -1;
}

Scalar CoefficientRing::inv(Scalar a) const {
  if (!is_unit(a)) throw InvalidInput("ring: element " + std::to_string(a) + " is not invertible");
  if (!is_field()) return a;
  // Extended Euclid on (a, p).
  Scalar t = 0, new_t = 1, r = p_, new_r = normalize(a);
  while (new_r != 0) {
    Scalar q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  return normalize(t);
}

std::string CoefficientRing::to_string() const {
  return is_field() ? "gfp:" + std::to_string(p_) : std::string("integers");
}

}  // namespace hoch
