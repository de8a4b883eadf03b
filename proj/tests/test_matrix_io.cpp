#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"

#include "darboux/errors.hpp"
#include "darboux/matrix_io.hpp"

using namespace darboux;

TEST_CASE("complex scalar format") {
  CHECK(format_complex({1.5, 0.0}) == "1.5+0i");
  CHECK(format_complex({0.0, -0.5}) == "0-0.5i");
  CHECK(format_complex({-0.0, -0.0}) == "0+0i");
  CHECK(parse_complex("1.5+0i") == Complex(1.5, 0));
  CHECK(parse_complex("0-0.5i") == Complex(0, -0.5));
  CHECK(parse_complex("-1e-3+2.5e+2i") == Complex(-1e-3, 250));
  CHECK(parse_complex("2") == Complex(2, 0));
  CHECK_THROWS_AS(parse_complex("abc"), ParameterError);
  CHECK_THROWS_AS(parse_complex("1+2j"), ParameterError);
  CHECK_THROWS_AS(parse_complex("nan+0i"), ParameterError);
  CHECK_THROWS_AS(parse_complex("inf+0i"), ParameterError);
}

TEST_CASE("exact round trip") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int k = 0; k < 2000; ++k) {
    const Complex z(u(rng) * std::pow(10.0, (k % 40) - 20), u(rng));
    CHECK(parse_complex(format_complex(z)) == z);
  }
  const Complex tiny(std::numeric_limits<double>::denorm_min(), -std::numeric_limits<double>::max());
  CHECK(parse_complex(format_complex(tiny)) == tiny);
}

TEST_CASE("matrix block round trip") {
  std::mt19937_64 rng(43);
  const Matrix m = testing::random_matrix(4, rng);
  std::stringstream ss;
  write_matrix(ss, m);
  const Matrix back = read_matrix(ss);
  CHECK(distance(m, back) == 0.0);
}

TEST_CASE("malformed matrix blocks") {
  std::istringstream a("2\n1+0i 2+0i\n3+0i\n");
  CHECK_THROWS_AS(read_matrix(a), ParameterError);
  std::istringstream b("x\n");
  CHECK_THROWS_AS(read_matrix(b), ParameterError);
  std::istringstream c("2\n1+0i 2+0i\n");
  CHECK_THROWS_AS(read_matrix(c), ParameterError);
  CHECK_THROWS_AS(load_matrix("/nonexistent/file.txt"), ParameterError);
}

TEST_CASE("vectors") {
  const StateVector v{Complex(1, 2), Complex(-0.25, 0)};
  CHECK(format_vector(v) == "1+2i -0.25+0i");
  const auto back = parse_vector(format_vector(v));
  CHECK((back - v).norm() == 0.0);
}
