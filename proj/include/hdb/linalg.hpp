#pragma once

#include <optional>
#include <vector>

#include "hdb/graded.hpp"
#include "hdb/rational.hpp"

namespace hdb {

// Dense matrix over the rationals, row-major. Exact arithmetic throughout.
class RatMat {
 public:
  RatMat() : rows_(0), cols_(0) {}
  RatMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, Rat(0)) {}

  static RatMat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rat& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const Rat& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  RatMat mul(const RatMat& o) const;
  RatMat add(const RatMat& o) const;
  RatMat sub(const RatMat& o) const;
  RatMat scaled(const Rat& s) const;
  std::vector<Rat> apply(const std::vector<Rat>& v) const;
  bool is_zero() const;
  void canonicalize();  // normalize entries written through at()
  bool operator==(const RatMat& o) const;
  bool operator!=(const RatMat& o) const { return !(*this == o); }

 private:
  int rows_, cols_;
  std::vector<Rat> a_;
};

// Gauss-Jordan reduction in place; returns the pivot columns.
std::vector<int> rref(RatMat& m);
int rank(RatMat m);
// Columns span the kernel of m; deterministic (free variables in increasing
// column order, each set to 1 in turn).
RatMat kernel_basis(const RatMat& m);
// One solution of A x = b, or nullopt when inconsistent.
std::optional<std::vector<Rat>> solve(const RatMat& a, const std::vector<Rat>& b);

// Linear map between graded spaces, homogeneous of the stated parity:
// entry (r,c) may be nonzero only when parity(target r) = parity(source c) +
// parity(map) mod 2. Construction enforces this.
class GradedLinearMap {
 public:
  GradedLinearMap(SpacePtr source, SpacePtr target, int parity, RatMat entries);

  static GradedLinearMap zero(SpacePtr source, SpacePtr target, int parity);
  static GradedLinearMap identity(SpacePtr space);

  const SpacePtr& source() const { return source_; }
  const SpacePtr& target() const { return target_; }
  int parity() const { return parity_; }
  const RatMat& matrix() const { return m_; }

  std::vector<Rat> apply(const std::vector<Rat>& v) const { return m_.apply(v); }
  // (f.compose(g))(x) = f(g(x)); parities add mod 2.
  GradedLinearMap compose(const GradedLinearMap& g) const;
  GradedLinearMap add(const GradedLinearMap& o) const;
  GradedLinearMap sub(const GradedLinearMap& o) const;
  GradedLinearMap scaled(const Rat& s) const;

 private:
  SpacePtr source_, target_;
  int parity_;
  RatMat m_;
};

}  // namespace hdb
