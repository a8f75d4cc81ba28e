#pragma once

#include <cstdint>
#include <string>

namespace hoch {

using Scalar = std::int64_t;

enum class RingKind { kPrimeField, kIntegers };

// The ground ring: GF(p) or Z.
//
// Elements are stored as int64. Over GF(p) they are kept reduced into
// [0, p); over Z every operation is overflow-checked and throws
// OverflowError instead of wrapping.
class CoefficientRing {
 public:
  static CoefficientRing prime_field(Scalar p);
  static CoefficientRing integers();

  // Parses "gfp:P", "gf:P", "z" or "integers".
  static CoefficientRing parse(const std::string& text);

  RingKind kind() const { return kind_; }
  bool is_field() const { return kind_ == RingKind::kPrimeField; }
  // Characteristic; 0 for Z.
  Scalar p() const { return p_; }
  int global_dimension() const { return is_field() ? 0 : 1; }

  Scalar normalize(Scalar a) const;
  Scalar add(Scalar a, Scalar b) const;
  Scalar sub(Scalar a, Scalar b) const;
  Scalar mul(Scalar a, Scalar b) const;
  Scalar neg(Scalar a) const;
  // Multiplicative inverse; throws unless `a` is a unit.
  Scalar inv(Scalar a) const;
  bool is_unit(Scalar a) const;
  // (-1)^k as a ring element.
  Scalar sign(long long k) const { return (k & 1) ? neg(1) : 1; }

  std::string to_string() const;

  friend bool operator==(const CoefficientRing&, const CoefficientRing&) = default;

 private:
  CoefficientRing(RingKind kind, Scalar p) : kind_(kind), p_(p) {}

  RingKind kind_;
  Scalar p_;
};

bool is_prime(Scalar n);

Scalar checked_add(Scalar a, Scalar b);
Scalar checked_mul(Scalar a, Scalar b);

}  // namespace hoch
