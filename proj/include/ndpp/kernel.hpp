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

#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "ndpp/combinatorics.hpp"

namespace ndpp {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// L = B C B^T with B (n x d) and C (d x d).
struct LowRankFactors {
  Matrix b;
  Matrix c;
};

/// The DPP parameter L: an n x n real matrix, optionally carried with a
/// low-rank factorization. Immutable after construction.
class Kernel {
 public:
  explicit Kernel(Matrix entries);
  /// Builds the dense entries as B C B^T.
  Kernel(Matrix b, Matrix c);
  /// Dense entries plus factors; rejects factors that do not reproduce the
  /// entries to 1e-8 * (1 + max|L|).
  Kernel(Matrix entries, Matrix b, Matrix c);

  int n() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }
  double operator()(int i, int j) const { return entries_(i, j); }

  bool has_low_rank() const { return low_rank_.has_value(); }
  const std::optional<LowRankFactors>& low_rank() const { return low_rank_; }

  /// max_{ij} |L_ij|
  double max_abs() const { return max_abs_; }

  /// L restricted to rows `rows` and columns `cols`.
  Matrix block(std::span<const int> rows, std::span<const int> cols) const;
  Matrix principal(std::span<const int> s) const { return block(s, s); }

 private:
  Matrix entries_;
  std::optional<LowRankFactors> low_rank_;
  double max_abs_ = 0.0;
};

/// Partial-pivot LU of a square matrix.
class Lu {
 public:
  explicit Lu(Matrix a);

  double determinant() const;
  /// True when a pivot is exactly zero.
  bool singular() const { return singular_; }
  /// Solves A X = rhs. Throws NumericalError when singular.
  Matrix solve(const Matrix& rhs) const;
  Matrix inverse() const;

 private:
  Matrix lu_;
  std::vector<int> perm_;
  int sign_ = 1;
  bool singular_ = false;
};

double determinant(const Matrix& a);

/// |det| below this is treated as zero for a size-`size` minor:
/// 1e-12 * (1 + max|L|)^size.
double zero_threshold(const Kernel& k, int size);

/// Returns 0 when |value| < threshold, value otherwise.
inline double snap_to_zero(double value, double threshold) {
  return (value < threshold && value > -threshold) ? 0.0 : value;
}

/// det(L_S); the empty minor is 1.
double principal_minor(const Kernel& k, std::span<const int> s);

/// det(B_S C B_S^T). Requires low-rank factors.
double lowrank_principal_minor(const Kernel& k, std::span<const int> s);

/// Smallest eigenvalue of (L + L^T) / 2.
double min_symmetric_eigenvalue(const Kernel& k);

double spectral_norm(const Kernel& k);

/// True iff the symmetric part has min eigenvalue >= -tol * (1 + ||L||_2).
bool is_npsd(const Kernel& k, double tol = 1e-9);

/// Kernel of the DPP conditioned on including Y: the Schur complement
/// L_R - L_{R,Y} L_Y^{-1} L_{Y,R} over the remaining indices R = [n] \ Y.
struct ConditionedKernel {
  std::optional<Kernel> kernel;  // empty when Y = [n]
  IndexSet remaining;
  double det = 1.0;  // det(L_Y)
};

/// Throws ConditioningError when det(L_Y) is below the zero threshold.
ConditionedKernel condition_on(const Kernel& k, std::span<const int> y);

/// A sorted index set with det(L_S) and, optionally, (L_S)^{-1} cached.
struct SubsetState {
  IndexSet indices;
  double det_value = 1.0;
  std::optional<Matrix> inv_cache;

  /// Computes the determinant; the inverse is cached only when requested and
  /// the minor is above the zero threshold.
  static SubsetState make(const Kernel& k, IndexSet indices, bool with_inverse);
};

struct IncrementalMinor {
  double value = 0.0;
  bool fell_back = false;  // no cache, computed directly
};

/// det(L_{S u D}) from the cached inverse of L_S via
/// det(L_S) * det(L_D - L_{D,S} L_S^{-1} L_{S,D}).
IncrementalMinor incremental_minor(const SubsetState& state, const Kernel& k,
                                   std::span<const int> d);

// Text formats.
//   dense:    "n" then n rows of n floats
//   low-rank: "n d" then n rows of d floats (B) then d rows of d floats (C)
Kernel read_kernel(std::istream& in);
Kernel read_kernel_file(const std::string& path);
/// Writes the low-rank format when factors are present and `dense` is false.
void write_kernel(std::ostream& out, const Kernel& k, bool dense = false);

}  // namespace ndpp
