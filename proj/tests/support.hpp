#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "cess/gf.hpp"
#include "cess/scheme.hpp"

namespace cess::test {

inline std::vector<FieldElement> elems(const PrimeField& f, std::initializer_list<std::uint64_t> vs) {
  std::vector<FieldElement> out;
  for (auto v : vs) out.push_back(f(v));
  return out;
}

inline std::vector<std::uint64_t> vals(const std::vector<FieldElement>& xs) {
  return values_of(xs);
}

inline std::vector<ShareBundle> pick(const std::vector<ShareBundle>& shares,
                                     const std::vector<std::uint32_t>& nodes) {
  std::vector<ShareBundle> out;
  for (auto j : nodes) out.push_back(shares.at(j - 1));
  return out;
}

}  // namespace cess::test
