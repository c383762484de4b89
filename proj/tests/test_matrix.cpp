// Copyright 2026 The crossdim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <limits>
#include <random>

#include "crossdim/matrix.hpp"
#include "oracles.hpp"

using namespace crossdim;

TEST_SUITE_BEGIN("matrix");

TEST_CASE("lcm and gcd basics") {
  CHECK(lcm(2, 3) == 6);
  CHECK(lcm(6, 4) == 12);
  CHECK(lcm(7, 7) == 7);
  CHECK(gcd(6, 4) == 2);
  CHECK_THROWS_AS(lcm(0, 3), std::invalid_argument);
}

TEST_CASE("lcm is associative on random triples") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::size_t> d(1, 50);
  for (int k = 0; k < 300; ++k) {
    const std::size_t a = d(rng), b = d(rng), c = d(rng);
    CHECK(lcm(a, lcm(b, c)) == lcm(lcm(a, b), c));
  }
}

TEST_CASE("overflow is rejected, not wrapped") {
  // coprime pair whose product exceeds 64 bits
  const std::size_t a = (std::size_t{1} << 40) + 1;
  const std::size_t b = (std::size_t{1} << 41) + 1;
  CHECK_THROWS_AS(lcm(a, b), std::overflow_error);
  CHECK_THROWS_AS(Mat(std::numeric_limits<std::size_t>::max() / 2, 3), std::overflow_error);
}

TEST_CASE("constructors reject bad shapes and non-finite entries") {
  CHECK_THROWS_AS(Mat(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(Mat(2, 2, {1.0, 2.0, 3.0}), std::invalid_argument);
  CHECK_THROWS_AS(Mat(1, 2, {1.0, std::numeric_limits<double>::quiet_NaN()}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Mat(1, 1, {std::numeric_limits<double>::infinity()}), std::invalid_argument);
  CHECK_THROWS_AS(CrossVec(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(CrossVec({1.0, std::numeric_limits<double>::quiet_NaN()}),
                  std::invalid_argument);
}

TEST_CASE("ones and averaging blocks") {
  CHECK(mat_equal(j_mat(1), Mat::from_rows({{1.0}})));
  CHECK(mat_equal(j_mat(2), Mat::from_rows({{0.5, 0.5}, {0.5, 0.5}})));
  CHECK(mat_equal(ones_vec(3), Mat(3, 1, {1, 1, 1})));
  CHECK(mat_equal(ones_mat(2), Mat::from_rows({{1, 1}, {1, 1}})));
}

TEST_CASE("kron golden cases") {
  // averaging blocks compose multiplicatively under kron
  CHECK(max_abs_diff(kron(j_mat(2), j_mat(3)), j_mat(6)) <= 1e-15);
  CHECK(mat_equal(kron(j_mat(2), j_mat(3)), j_mat(6)));

  const Mat a = Mat::from_rows({{1, 2}, {3, 4}});
  CHECK(mat_equal(kron(a, Mat::identity(1)), a));

  const Mat i2_rep = kron(Mat::identity(2), ones_vec(3));
  CHECK(i2_rep.rows() == 6);
  CHECK(i2_rep.cols() == 2);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(i2_rep(i, 0) == (i < 3 ? 1.0 : 0.0));
    CHECK(i2_rep(i, 1) == (i < 3 ? 0.0 : 1.0));
  }
}

TEST_CASE("kron composition of averaging blocks on all small sizes") {
  for (std::size_t p = 1; p <= 5; ++p) {
    for (std::size_t q = 1; q <= 5; ++q) {
      CHECK(max_abs_diff(kron(j_mat(p), j_mat(q)), j_mat(p * q)) <= 1e-15);
    }
  }
}

TEST_CASE("kron matches the reference loops") {
  std::mt19937 rng(23);
  for (int k = 0; k < 30; ++k) {
    std::uniform_int_distribution<std::size_t> d(1, 4);
    const Mat a = oracle::rand_mat(rng, d(rng), d(rng));
    const Mat b = oracle::rand_mat(rng, d(rng), d(rng));
    CHECK(mat_equal(kron(a, b), oracle::naive_kron(a, b)));
  }
}

TEST_CASE("matrix product checks conformance") {
  const Mat a(2, 3);
  const Mat b(2, 3);
  CHECK_THROWS_AS(a * b, std::invalid_argument);
  CHECK_THROWS_AS(a + Mat(3, 3), std::invalid_argument);
}

TEST_CASE("transpose and product against reference") {
  std::mt19937 rng(29);
  const Mat a = oracle::rand_mat(rng, 4, 3);
  const Mat b = oracle::rand_mat(rng, 3, 5);
  CHECK(max_abs_diff(a * b, oracle::naive_mul(a, b)) <= 1e-14);
  const Mat at = a.transpose();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) CHECK(at(j, i) == a(i, j));
}

TEST_CASE("vector expansion copies entries") {
  const CrossVec x{1.0, 2.0};
  const CrossVec e = rep_expand(x, 3);
  CHECK(e.dim() == 6);
  CHECK(vec_equal(e, CrossVec{1, 1, 1, 2, 2, 2}));
}

TEST_SUITE_END();
