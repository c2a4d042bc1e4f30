#include "cess/gf.hpp"

#include <string>

#include "cess/error.hpp"

namespace cess {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ModulusMismatch: return "ModulusMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::DuplicateAbscissa: return "DuplicateAbscissa";
    case ErrorCode::IncompleteTail: return "IncompleteTail";
    case ErrorCode::DuplicateAlpha: return "DuplicateAlpha";
    case ErrorCode::ZeroAlpha: return "ZeroAlpha";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::InconsistentSystem: return "InconsistentSystem";
    case ErrorCode::IndexOutOfBounds: return "IndexOutOfBounds";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::InvalidD: return "InvalidD";
    case ErrorCode::MissingMinimalD: return "MissingMinimalD";
    case ErrorCode::UnsupportedD: return "UnsupportedD";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::DuplicateNode: return "DuplicateNode";
    case ErrorCode::InconsistentShares: return "InconsistentShares";
    case ErrorCode::NotAuthorized: return "NotAuthorized";
    case ErrorCode::FieldTooSmall: return "FieldTooSmall";
    case ErrorCode::InvalidBeta: return "InvalidBeta";
    case ErrorCode::TooManyErasures: return "TooManyErasures";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::HeaderMismatch: return "HeaderMismatch";
    case ErrorCode::MalformedShare: return "MalformedShare";
    case ErrorCode::InputTooLarge: return "InputTooLarge";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

void check_same(FieldElement a, FieldElement b) {
  if (a.modulus != b.modulus || a.modulus == 0) {
    throw Error(ErrorCode::ModulusMismatch,
                "F_" + std::to_string(a.modulus) + " vs F_" + std::to_string(b.modulus));
  }
}

}  // namespace

bool is_prime(std::uint64_t q) {
  if (q < 2) return false;
  if (q % 2 == 0) return q == 2;
  for (std::uint64_t d = 3; d * d <= q; d += 2) {
    if (q % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t q) : q_(q) {
  if (q > kMaxModulus) {
    throw Error(ErrorCode::InvalidParams, "modulus exceeds 32 bits: " + std::to_string(q));
  }
  if (!is_prime(q)) {
    throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not prime");
  }
}

FieldElement PrimeField::from_signed(std::int64_t v) const {
  auto m = static_cast<std::int64_t>(q_);
  auto r = v % m;
  if (r < 0) r += m;
  return {static_cast<std::uint64_t>(r), q_};
}

std::vector<FieldElement> PrimeField::elements(std::span<const std::uint64_t> values) const {
  std::vector<FieldElement> out;
  out.reserve(values.size());
  for (auto v : values) out.push_back((*this)(v));
  return out;
}

FieldElement add(FieldElement a, FieldElement b) {
  check_same(a, b);
  auto s = a.value + b.value;
  if (s >= a.modulus) s -= a.modulus;
  return {s, a.modulus};
}

FieldElement sub(FieldElement a, FieldElement b) {
  check_same(a, b);
  auto s = a.value >= b.value ? a.value - b.value : a.value + a.modulus - b.value;
  return {s, a.modulus};
}

FieldElement neg(FieldElement a) {
  return {a.value == 0 ? 0 : a.modulus - a.value, a.modulus};
}

FieldElement mul(FieldElement a, FieldElement b) {
  check_same(a, b);
  return {(a.value * b.value) % a.modulus, a.modulus};
}

FieldElement pow(FieldElement a, std::uint64_t e) {
  FieldElement result{1 % a.modulus, a.modulus};
  FieldElement base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

FieldElement inv(FieldElement a) {
  if (a.value == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  // Fermat: a^(q-2) for prime q.
  return pow(a, a.modulus - 2);
}

FieldElement div(FieldElement a, FieldElement b) {
  check_same(a, b);
  return mul(a, inv(b));
}

std::size_t element_byte_width(std::uint64_t q) {
  std::size_t bytes = 1;
  // 256^bytes >= q
  while (bytes < 8 && (std::uint64_t{1} << (8 * bytes)) < q) ++bytes;
  return bytes;
}

void write_element(FieldElement a, std::span<std::uint8_t> out) {
  auto v = a.value;
  for (auto& byte : out) {
    byte = static_cast<std::uint8_t>(v & 0xff);
    v >>= 8;
  }
}

FieldElement read_element(std::span<const std::uint8_t> in, const PrimeField& field) {
  std::uint64_t v = 0;
  for (std::size_t i = in.size(); i-- > 0;) v = (v << 8) | in[i];
  if (v >= field.modulus()) {
    throw Error(ErrorCode::MalformedShare,
                "symbol " + std::to_string(v) + " out of range for F_" +
                    std::to_string(field.modulus()));
  }
  return field(v);
}

std::vector<std::uint64_t> values_of(std::span<const FieldElement> xs) {
  std::vector<std::uint64_t> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(x.value);
  return out;
}

}  // namespace cess
