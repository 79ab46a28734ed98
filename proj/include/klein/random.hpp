#pragma once

// Random unimodular matrices and affine maps from a seeded engine.

#include <cstddef>
#include <random>

#include "klein/core.hpp"

namespace klein {

inline IntegerMatrix randomUnimodular(std::size_t n, std::mt19937_64& rng, int steps = 8) {
  IntegerMatrix m = IntegerMatrix::identity(n);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  std::uniform_int_distribution<int> coin(0, 3);
  for (int s = 0; s < steps; ++s) {
    std::size_t a = pick(rng), b = pick(rng);
    switch (coin(rng)) {
      case 0:
        if (a != b) m.swapRows(a, b);
        break;
      case 1:
        m.negateRow(a);
        break;
      default:
        if (a != b) m.addRow(a, b, Integer(coef(rng)));
        break;
    }
  }
  return m;
}

inline IntegerAffineMap randomAffine(std::size_t n, std::mt19937_64& rng, int span = 5) {
  std::uniform_int_distribution<int> t(-span, span);
  LatticePoint shift(n);
  for (std::size_t i = 0; i < n; ++i) shift[i] = t(rng);
  return IntegerAffineMap(randomUnimodular(n, rng), shift);
}

}  // namespace klein
