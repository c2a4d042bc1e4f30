#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cess {

/// Residue modulo a prime q. The modulus travels with every value so that
/// elements from differently parameterized schemes cannot be mixed silently.
struct FieldElement {
  std::uint64_t value = 0;
  std::uint64_t modulus = 0;

  bool operator==(const FieldElement&) const = default;
  bool is_zero() const { return value == 0; }
};

/// The prime field F_q. Construction verifies primality by trial division;
/// q is limited to 32 bits so products fit in a machine word.
class PrimeField {
 public:
  static constexpr std::uint64_t kMaxModulus = (std::uint64_t{1} << 32) - 1;

  explicit PrimeField(std::uint64_t q);

  std::uint64_t modulus() const { return q_; }
  FieldElement zero() const { return {0, q_}; }
  FieldElement one() const { return {1 % q_, q_}; }

  /// Reduces an arbitrary integer into the field.
  FieldElement operator()(std::uint64_t v) const { return {v % q_, q_}; }
  FieldElement from_signed(std::int64_t v) const;

  std::vector<FieldElement> elements(std::span<const std::uint64_t> values) const;

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint64_t q_;
};

bool is_prime(std::uint64_t q);

FieldElement add(FieldElement a, FieldElement b);
FieldElement sub(FieldElement a, FieldElement b);
FieldElement neg(FieldElement a);
FieldElement mul(FieldElement a, FieldElement b);
FieldElement inv(FieldElement a);
FieldElement div(FieldElement a, FieldElement b);
// pow(a, 0) == 1, including a == 0.
FieldElement pow(FieldElement a, std::uint64_t e);

inline FieldElement operator+(FieldElement a, FieldElement b) { return add(a, b); }
inline FieldElement operator-(FieldElement a, FieldElement b) { return sub(a, b); }
inline FieldElement operator-(FieldElement a) { return neg(a); }
inline FieldElement operator*(FieldElement a, FieldElement b) { return mul(a, b); }
inline FieldElement operator/(FieldElement a, FieldElement b) { return div(a, b); }
inline FieldElement& operator+=(FieldElement& a, FieldElement b) { return a = add(a, b); }
inline FieldElement& operator-=(FieldElement& a, FieldElement b) { return a = sub(a, b); }
inline FieldElement& operator*=(FieldElement& a, FieldElement b) { return a = mul(a, b); }

/// Bytes per serialized element: ceil(log2(q) / 8), i.e. the smallest B
/// with 256^B >= q.
std::size_t element_byte_width(std::uint64_t q);

void write_element(FieldElement a, std::span<std::uint8_t> out);
FieldElement read_element(std::span<const std::uint8_t> in, const PrimeField& field);

std::vector<std::uint64_t> values_of(std::span<const FieldElement> xs);

}  // namespace cess
