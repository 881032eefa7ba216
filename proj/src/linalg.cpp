#include "hdb/linalg.hpp"

#include <stdexcept>

namespace hdb {

RatMat RatMat::identity(int n) {
  RatMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RatMat RatMat::mul(const RatMat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("RatMat::mul: shape mismatch");
  RatMat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rat& x = at(i, k);
      if (x == 0) continue;
      for (int j = 0; j < o.cols_; ++j)
        if (o.at(k, j) != 0) r.at(i, j) += x * o.at(k, j);
    }
  return r;
}

RatMat RatMat::add(const RatMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("RatMat::add: shape mismatch");
  RatMat r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

RatMat RatMat::sub(const RatMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("RatMat::sub: shape mismatch");
  RatMat r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

RatMat RatMat::scaled(const Rat& s) const {
  RatMat r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
  return r;
}

std::vector<Rat> RatMat::apply(const std::vector<Rat>& v) const {
  if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("RatMat::apply: size mismatch");
  std::vector<Rat> r(rows_, Rat(0));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != 0 && v[j] != 0) r[i] += at(i, j) * v[j];
  return r;
}

bool RatMat::is_zero() const {
  for (const Rat& x : a_)
    if (x != 0) return false;
  return true;
}

void RatMat::canonicalize() {
  for (Rat& x : a_) x.canonicalize();
}

bool RatMat::operator==(const RatMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  // cmp is safe on values that were never canonicalized (mpq_equal is not).
  for (size_t i = 0; i < a_.size(); ++i)
    if (cmp(a_[i], o.a_[i]) != 0) return false;
  return true;
}

std::vector<int> rref(RatMat& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int pr = -1;
    for (int r = row; r < m.rows(); ++r)
      if (m.at(r, col) != 0) { pr = r; break; }
    if (pr < 0) continue;
    if (pr != row)
      for (int c = 0; c < m.cols(); ++c) std::swap(m.at(pr, c), m.at(row, c));
    Rat inv = Rat(1) / m.at(row, col);
    for (int c = 0; c < m.cols(); ++c) m.at(row, c) *= inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || m.at(r, col) == 0) continue;
      Rat f = m.at(r, col);
      for (int c = 0; c < m.cols(); ++c) m.at(r, c) -= f * m.at(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int rank(RatMat m) { return static_cast<int>(rref(m).size()); }

RatMat kernel_basis(const RatMat& m) {
  RatMat r = m;
  std::vector<int> pivots = rref(r);
  std::vector<char> is_pivot(m.cols(), 0);
  for (int p : pivots) is_pivot[p] = 1;
  std::vector<int> free_cols;
  for (int c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  RatMat k(m.cols(), static_cast<int>(free_cols.size()));
  for (std::size_t fi = 0; fi < free_cols.size(); ++fi) {
    int fc = free_cols[fi];
    k.at(fc, static_cast<int>(fi)) = 1;
    for (std::size_t pi = 0; pi < pivots.size(); ++pi)
      k.at(pivots[pi], static_cast<int>(fi)) = -r.at(static_cast<int>(pi), fc);
  }
  return k;
}

std::optional<std::vector<Rat>> solve(const RatMat& a, const std::vector<Rat>& b) {
  if (static_cast<int>(b.size()) != a.rows()) throw std::invalid_argument("solve: size mismatch");
  RatMat aug(a.rows(), a.cols() + 1);
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
    aug.at(r, a.cols()) = b[r];
  }
  std::vector<int> pivots = rref(aug);
  for (int p : pivots)
    if (p == a.cols()) return std::nullopt;  // pivot in the constant column
  std::vector<Rat> x(a.cols(), Rat(0));
  for (std::size_t pi = 0; pi < pivots.size(); ++pi)
    x[pivots[pi]] = aug.at(static_cast<int>(pi), a.cols());
  return x;
}

GradedLinearMap::GradedLinearMap(SpacePtr source, SpacePtr target, int parity, RatMat entries)
    : source_(std::move(source)), target_(std::move(target)), parity_(parity), m_(std::move(entries)) {
  if (parity_ != 0 && parity_ != 1) throw std::invalid_argument("GradedLinearMap: parity must be 0 or 1");
  if (m_.rows() != target_->dim() || m_.cols() != source_->dim())
    throw std::invalid_argument("GradedLinearMap: matrix shape does not match spaces");
  m_.canonicalize();
  for (int r = 0; r < m_.rows(); ++r)
    for (int c = 0; c < m_.cols(); ++c)
      if (m_.at(r, c) != 0 &&
          target_->parity(r) != ((source_->parity(c) + parity_) & 1))
        throw std::invalid_argument(
            "GradedLinearMap: nonzero entry (" + std::to_string(r) + "," + std::to_string(c) +
            ") violates parity homogeneity");
}

GradedLinearMap GradedLinearMap::zero(SpacePtr source, SpacePtr target, int parity) {
  RatMat m(target->dim(), source->dim());
  return GradedLinearMap(std::move(source), std::move(target), parity, std::move(m));
}

GradedLinearMap GradedLinearMap::identity(SpacePtr space) {
  RatMat m = RatMat::identity(space->dim());
  SpacePtr s2 = space;
  return GradedLinearMap(std::move(space), std::move(s2), 0, std::move(m));
}

GradedLinearMap GradedLinearMap::compose(const GradedLinearMap& g) const {
  if (*g.target_ != *source_) throw std::invalid_argument("GradedLinearMap::compose: space mismatch");
  return GradedLinearMap(g.source_, target_, (parity_ + g.parity_) & 1, m_.mul(g.m_));
}

GradedLinearMap GradedLinearMap::add(const GradedLinearMap& o) const {
  if (*source_ != *o.source_ || *target_ != *o.target_ || parity_ != o.parity_)
    throw std::invalid_argument("GradedLinearMap::add: incompatible maps");
  return GradedLinearMap(source_, target_, parity_, m_.add(o.m_));
}

GradedLinearMap GradedLinearMap::sub(const GradedLinearMap& o) const {
  if (*source_ != *o.source_ || *target_ != *o.target_ || parity_ != o.parity_)
    throw std::invalid_argument("GradedLinearMap::sub: incompatible maps");
  return GradedLinearMap(source_, target_, parity_, m_.sub(o.m_));
}

GradedLinearMap GradedLinearMap::scaled(const Rat& s) const {
  return GradedLinearMap(source_, target_, parity_, m_.scaled(s));
}

}  // namespace hdb
