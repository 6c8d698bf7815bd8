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

#include "ndpp/kernel.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "ndpp/error.hpp"
#include "ndpp/simd.hpp"

namespace ndpp {
namespace {

double compute_max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw DomainError(std::string(what) + " has non-finite entries");
}

}  // namespace

Kernel::Kernel(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() < 1 || entries_.rows() != entries_.cols()) {
    throw DomainError("kernel must be a non-empty square matrix");
  }
  require_finite(entries_, "kernel");
  max_abs_ = compute_max_abs(entries_);
}

Kernel::Kernel(Matrix b, Matrix c) {
  if (b.rows() < 1 || c.rows() != c.cols() || b.cols() != c.rows()) {
    throw DomainError("low-rank factors must be B (n x d) and C (d x d)");
  }
  require_finite(b, "B");
  require_finite(c, "C");
  entries_ = b * c * b.transpose();
  max_abs_ = compute_max_abs(entries_);
  low_rank_ = LowRankFactors{std::move(b), std::move(c)};
}

Kernel::Kernel(Matrix entries, Matrix b, Matrix c) : Kernel(std::move(b), std::move(c)) {
  if (entries.rows() != entries_.rows() || entries.cols() != entries_.cols()) {
    throw DomainError("dense entries do not match the low-rank factor shapes");
  }
  require_finite(entries, "kernel");
  const double err = (entries - entries_).cwiseAbs().maxCoeff();
  const double scale = 1.0 + compute_max_abs(entries);
  if (err > 1e-8 * scale) {
    throw DomainError("low-rank factors disagree with dense entries (max error " +
                      std::to_string(err) + ")");
  }
  entries_ = std::move(entries);
  max_abs_ = compute_max_abs(entries_);
}

Matrix Kernel::block(std::span<const int> rows, std::span<const int> cols) const {
  Matrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = entries_(rows[i], cols[j]);
  }
  return out;
}

Lu::Lu(Matrix a) : lu_(std::move(a)) {
  if (lu_.rows() != lu_.cols()) throw DomainError("LU needs a square matrix");
  const int n = static_cast<int>(lu_.rows());
  perm_.resize(n);
  for (int i = 0; i < n; ++i) perm_[i] = i;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double best = std::fabs(lu_(col, col));
    for (int r = col + 1; r < n; ++r) {
      const double v = std::fabs(lu_(r, col));
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best == 0.0) {
      singular_ = true;
      continue;
    }
    if (pivot != col) {
      lu_.row(pivot).swap(lu_.row(col));
      std::swap(perm_[pivot], perm_[col]);
      sign_ = -sign_;
    }
    const double inv_pivot = 1.0 / lu_(col, col);
    const std::size_t tail = static_cast<std::size_t>(n - col - 1);
    const double* pivot_row = lu_.data() + static_cast<std::ptrdiff_t>(col) * n + col + 1;
    for (int r = col + 1; r < n; ++r) {
      const double factor = lu_(r, col) * inv_pivot;
      lu_(r, col) = factor;
      if (factor != 0.0 && tail > 0) {
        double* row = lu_.data() + static_cast<std::ptrdiff_t>(r) * n + col + 1;
        simd::axpy(-factor, {pivot_row, tail}, {row, tail});
      }
    }
  }
}

double Lu::determinant() const {
  if (singular_) return 0.0;
  double det = sign_;
  for (Eigen::Index i = 0; i < lu_.rows(); ++i) det *= lu_(i, i);
  return det;
}

Matrix Lu::solve(const Matrix& rhs) const {
  if (singular_) throw NumericalError("LU solve on a singular matrix");
  const Eigen::Index n = lu_.rows();
  if (rhs.rows() != n) throw DomainError("LU solve: dimension mismatch");
  Matrix x(n, rhs.cols());
  for (Eigen::Index i = 0; i < n; ++i) x.row(i) = rhs.row(perm_[i]);
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      double acc = x(i, j);
      for (Eigen::Index p = 0; p < i; ++p) acc -= lu_(i, p) * x(p, j);
      x(i, j) = acc;
    }
    for (Eigen::Index i = n - 1; i >= 0; --i) {
      double acc = x(i, j);
      for (Eigen::Index p = i + 1; p < n; ++p) acc -= lu_(i, p) * x(p, j);
      x(i, j) = acc / lu_(i, i);
    }
  }
  return x;
}

Matrix Lu::inverse() const {
  return solve(Matrix::Identity(lu_.rows(), lu_.cols()));
}

double determinant(const Matrix& a) {
  if (a.rows() == 0) return 1.0;
  return Lu(a).determinant();
}

double zero_threshold(const Kernel& k, int size) {
  return 1e-12 * std::pow(1.0 + k.max_abs(), size);
}

double principal_minor(const Kernel& k, std::span<const int> s) {
  check_index_set(s, k.n());
  if (s.empty()) return 1.0;
  return determinant(k.principal(s));
}

double lowrank_principal_minor(const Kernel& k, std::span<const int> s) {
  if (!k.has_low_rank()) throw DomainError("kernel has no low-rank factors");
  check_index_set(s, k.n());
  if (s.empty()) return 1.0;
  const auto& f = *k.low_rank();
  Matrix bs(s.size(), f.b.cols());
  for (std::size_t i = 0; i < s.size(); ++i) bs.row(i) = f.b.row(s[i]);
  return determinant(bs * f.c * bs.transpose());
}

double min_symmetric_eigenvalue(const Kernel& k) {
  const Eigen::MatrixXd sym = 0.5 * (k.entries() + k.entries().transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double spectral_norm(const Kernel& k) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(k.entries()));
  return svd.singularValues()(0);
}

bool is_npsd(const Kernel& k, double tol) {
  if (tol < 0.0) throw DomainError("npsd tolerance must be nonnegative");
  return min_symmetric_eigenvalue(k) >= -tol * (1.0 + spectral_norm(k));
}

ConditionedKernel condition_on(const Kernel& k, std::span<const int> y_in) {
  check_index_set(y_in, k.n());
  const IndexSet y = normalized(y_in);
  ConditionedKernel out;
  out.remaining = complement(y, k.n());
  if (y.empty()) {
    out.kernel = k;
    out.det = 1.0;
    return out;
  }
  const Lu lu(k.principal(y));
  out.det = lu.determinant();
  if (std::fabs(out.det) < zero_threshold(k, static_cast<int>(y.size()))) {
    throw ConditioningError("cannot condition on " + to_string(y) +
                                ": det(L_Y) is numerically zero",
                            out.det);
  }
  if (out.remaining.empty()) return out;
  const Matrix l_ry = k.block(out.remaining, y);
  const Matrix l_yr = k.block(y, out.remaining);
  Matrix schur = k.principal(out.remaining) - l_ry * lu.solve(l_yr);
  if (k.has_low_rank()) {
    // L^Y = B_R (C - C D_Y C) B_R^T with D_Y = B_Y^T L_Y^{-1} B_Y.
    const auto& f = *k.low_rank();
    Matrix by(y.size(), f.b.cols());
    for (std::size_t i = 0; i < y.size(); ++i) by.row(i) = f.b.row(y[i]);
    Matrix br(out.remaining.size(), f.b.cols());
    for (std::size_t i = 0; i < out.remaining.size(); ++i) br.row(i) = f.b.row(out.remaining[i]);
    const Matrix dy = by.transpose() * lu.solve(by);
    Matrix c = f.c - f.c * dy * f.c;
    out.kernel = Kernel(std::move(schur), std::move(br), std::move(c));
  } else {
    out.kernel = Kernel(std::move(schur));
  }
  return out;
}

SubsetState SubsetState::make(const Kernel& k, IndexSet indices, bool with_inverse) {
  check_index_set(indices, k.n());
  indices = normalized(indices);
  SubsetState st;
  st.indices = std::move(indices);
  if (st.indices.empty()) {
    st.det_value = 1.0;
    if (with_inverse) st.inv_cache = Matrix(0, 0);
    return st;
  }
  const Lu lu(k.principal(st.indices));
  st.det_value = lu.determinant();
  const double thr = zero_threshold(k, static_cast<int>(st.indices.size()));
  if (with_inverse && std::fabs(st.det_value) >= thr) st.inv_cache = lu.inverse();
  return st;
}

IncrementalMinor incremental_minor(const SubsetState& state, const Kernel& k,
                                   std::span<const int> d) {
  check_index_set(d, k.n());
  if (!set_intersection(state.indices, normalized(d)).empty()) {
    throw DomainError("incremental_minor: D must be disjoint from S");
  }
  if (d.empty()) return {state.det_value, false};
  if (!state.inv_cache) {
    return {principal_minor(k, set_union(state.indices, normalized(d))), true};
  }
  const Matrix& inv = *state.inv_cache;
  const std::size_t s = state.indices.size();
  const std::size_t m = d.size();
  Matrix schur = k.principal(d);
  if (s > 0) {
    // schur -= L_{D,S} * (inv * L_{S,D}); rows of inv are contiguous.
    const Matrix l_ds = k.block(d, state.indices);
    const Matrix l_sd = k.block(state.indices, d);
    const Matrix w = inv * l_sd;  // s x m
    const Matrix wt = w.transpose();
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        schur(i, j) -= simd::dot({l_ds.data() + i * s, s}, {wt.data() + j * s, s});
      }
    }
  }
  return {state.det_value * determinant(schur), false};
}

namespace {

Matrix read_rows(std::istream& in, Eigen::Index rows, Eigen::Index cols, const char* what) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (!(in >> m(i, j))) {
        throw DomainError(std::string("kernel file: truncated ") + what + " block");
      }
    }
  }
  return m;
}

}  // namespace

Kernel read_kernel(std::istream& in) {
  std::string header;
  while (std::getline(in, header)) {
    if (header.find_first_not_of(" \t\r") != std::string::npos) break;
  }
  std::istringstream hs(header);
  long long n = 0;
  if (!(hs >> n) || n < 1) throw DomainError("kernel file: bad header '" + header + "'");
  long long d = 0;
  if (hs >> d) {
    if (d < 1) throw DomainError("kernel file: bad rank in header");
    Matrix b = read_rows(in, n, d, "B");
    Matrix c = read_rows(in, d, d, "C");
    return Kernel(std::move(b), std::move(c));
  }
  return Kernel(read_rows(in, n, n, "dense"));
}

Kernel read_kernel_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open kernel file " + path);
  return read_kernel(in);
}

void write_kernel(std::ostream& out, const Kernel& k, bool dense) {
  const auto old_precision = out.precision();
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  auto write_block = [&](const Matrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j);
      out << '\n';
    }
  };
  if (k.has_low_rank() && !dense) {
    const auto& f = *k.low_rank();
    out << k.n() << ' ' << f.b.cols() << '\n';
    write_block(f.b);
    write_block(f.c);
  } else {
    out << k.n() << '\n';
    write_block(k.entries());
  }
  out.precision(old_precision);
}

}  // namespace ndpp
