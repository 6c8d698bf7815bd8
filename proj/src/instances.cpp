// Copyright 2026 The Authors.
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

#include "ndpp/instances.hpp"

#include <algorithm>

#include "ndpp/error.hpp"
#include "ndpp/random.hpp"

namespace ndpp {
namespace {

Matrix gaussian(int rows, int cols, Rng& rng) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = rng.normal();
  }
  return m;
}

void check_size(int n, int d) {
  if (n < 1) throw DomainError("instance size n must be >= 1");
  if (d < 0) throw DomainError("instance rank d must be >= 0");
}

}  // namespace

Kernel random_npsd(int n, int d, std::uint64_t seed, double skew) {
  check_size(n, d);
  if (d == 0) d = n;
  Rng rng(seed);
  const Matrix g = gaussian(d, n, rng);
  const Matrix m = gaussian(n, n, rng);
  Matrix a = g.transpose() * g;
  a = 0.5 * (a + a.transpose()).eval();
  return Kernel(Matrix(a + skew * (m - m.transpose())));
}

Kernel random_sym_psd(int n, int d, std::uint64_t seed) {
  check_size(n, d);
  if (d == 0) d = n;
  Rng rng(seed);
  const Matrix g = gaussian(d, n, rng);
  Matrix a = g.transpose() * g;
  return Kernel(Matrix(0.5 * (a + a.transpose())));
}

Kernel identity_kernel(int n) {
  check_size(n, 0);
  return Kernel(Matrix(Matrix::Identity(n, n)));
}

Kernel random_lowrank_npsd(int n, int d, std::uint64_t seed) {
  check_size(n, d);
  if (d < 1) throw DomainError("low-rank instances need d >= 1");
  Rng rng(seed);
  Matrix b = gaussian(n, d, rng);
  const Matrix h = gaussian(d, d, rng);
  const Matrix m = gaussian(d, d, rng);
  Matrix c = h.transpose() * h + (m - m.transpose());
  return Kernel(std::move(b), std::move(c));
}

Kernel skew_block(const std::vector<double>& c, const std::vector<double>& x) {
  if (c.empty() || c.size() != x.size()) {
    throw DomainError("skew-block needs equally many c and x values (at least one)");
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!(c[i] > 1.0)) throw DomainError("skew-block needs every c_i > 1");
    if (i > 0 && !(c[i] < c[i - 1])) throw DomainError("skew-block needs c strictly decreasing");
    if (i > 0 && !(x[i] > x[i - 1])) throw DomainError("skew-block needs x strictly increasing");
  }
  const double max_c = *std::max_element(c.begin(), c.end());
  const double min_x = *std::min_element(x.begin(), x.end());
  if (!(min_x >= 10.0 * max_c)) throw DomainError("skew-block needs min x >= 10 max c");
  const int n = static_cast<int>(2 * c.size());
  Matrix l = Matrix::Zero(n, n);
  for (std::size_t b = 0; b < c.size(); ++b) {
    const int i = static_cast<int>(2 * b);
    l(i, i) = c[b];
    l(i + 1, i + 1) = c[b];
    l(i, i + 1) = x[b];
    l(i + 1, i) = -x[b];
  }
  return Kernel(std::move(l));
}

Kernel diagonal_kernel(const std::vector<double>& d) {
  if (d.empty()) throw DomainError("diagonal kernel needs at least one entry");
  Matrix l = Matrix::Zero(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) l(i, i) = d[i];
  return Kernel(std::move(l));
}

}  // namespace ndpp
