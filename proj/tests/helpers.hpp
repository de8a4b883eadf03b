#pragma once

#include <random>

#include "darboux/hermitian.hpp"

namespace testing {

inline darboux::Matrix random_matrix(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  darboux::Matrix m(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = {g(rng), g(rng)};
  return m;
}

inline darboux::HermitianOperator random_hermitian(std::size_t n, std::mt19937_64& rng) {
  const auto m = random_matrix(n, rng);
  return darboux::HermitianOperator::symmetrized(m + m.adjoint());
}

inline darboux::Matrix pauli_x() { return {{0, 1}, {1, 0}}; }
inline darboux::Matrix pauli_y() { return {{0, {0, -1}}, {{0, 1}, 0}}; }
inline darboux::Matrix pauli_z() { return {{1, 0}, {0, -1}}; }

}  // namespace testing
