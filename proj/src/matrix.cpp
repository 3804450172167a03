#include "matrix.hpp"

#include <stdexcept>

namespace loccov {

RatMat::RatMat(std::size_t rows, std::size_t cols, std::initializer_list<Rat> vals)
    : rows_(rows), cols_(cols), a_(vals) {
  if (a_.size() != rows * cols) throw std::invalid_argument("matrix literal size mismatch");
}

RatMat RatMat::identity(std::size_t n) {
  RatMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RatMat RatMat::operator*(const RatMat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
  RatMat r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rat& aik = at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        if (o.at(k, j) == 0) continue;
        r.at(i, j) += aik * o.at(k, j);
      }
    }
  return r;
}

RatMat RatMat::operator+(const RatMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum shape mismatch");
  RatMat r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

RatMat RatMat::operator-(const RatMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix diff shape mismatch");
  RatMat r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

RatMat RatMat::operator*(const Rat& s) const {
  RatMat r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
  return r;
}

RatMat RatMat::transpose() const {
  RatMat r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool RatMat::is_zero() const {
  for (const auto& v : a_)
    if (v != 0) return false;
  return true;
}

bool RatMat::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

void RatMat::append_row(const std::vector<Rat>& row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw std::invalid_argument("append_row width mismatch");
  a_.insert(a_.end(), row.begin(), row.end());
  ++rows_;
}

std::vector<Rat> RatMat::row(std::size_t i) const {
  return std::vector<Rat>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
}

std::vector<Rat> RatMat::col(std::size_t j) const {
  std::vector<Rat> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

void RatMat::set_col(std::size_t j, const std::vector<Rat>& v) {
  if (v.size() != rows_) throw std::invalid_argument("set_col height mismatch");
  for (std::size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
}

std::vector<std::size_t> RatMat::rref() {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t sel = r;
    while (sel < rows_ && at(sel, c) == 0) ++sel;
    if (sel == rows_) continue;
    if (sel != r)
      for (std::size_t j = 0; j < cols_; ++j) std::swap(at(sel, j), at(r, j));
    Rat inv = 1 / at(r, c);
    for (std::size_t j = c; j < cols_; ++j) at(r, j) *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || at(i, c) == 0) continue;
      Rat f = at(i, c);
      for (std::size_t j = c; j < cols_; ++j) at(i, j) -= f * at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t RatMat::rank() const {
  RatMat m = *this;
  return m.rref().size();
}

RatMat RatMat::kernel() const {
  RatMat m = *this;
  auto pivots = m.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : pivots) is_pivot[p] = true;
  RatMat ker(0, cols_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Rat> v(cols_, Rat(0));
    v[c] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m.at(i, c);
    ker.append_row(v);
  }
  return ker;
}

std::optional<RatMat> RatMat::solve(const RatMat& b) const {
  if (b.rows() != rows_) throw std::invalid_argument("solve shape mismatch");
  RatMat aug(rows_, cols_ + b.cols());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) aug.at(i, cols_ + j) = b.at(i, j);
  }
  auto pivots = aug.rref();
  for (auto p : pivots)
    if (p >= cols_) return std::nullopt;  // pivot in the RHS block: inconsistent
  RatMat x(cols_, b.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x.at(pivots[i], j) = aug.at(i, cols_ + j);
  return x;
}

RatMat RatMat::vstack(const RatMat& top, const RatMat& bottom) {
  if (top.rows() == 0) return bottom;
  if (bottom.rows() == 0) return top;
  if (top.cols() != bottom.cols()) throw std::invalid_argument("vstack width mismatch");
  RatMat r(top.rows() + bottom.rows(), top.cols());
  for (std::size_t i = 0; i < top.rows(); ++i)
    for (std::size_t j = 0; j < top.cols(); ++j) r.at(i, j) = top.at(i, j);
  for (std::size_t i = 0; i < bottom.rows(); ++i)
    for (std::size_t j = 0; j < top.cols(); ++j) r.at(top.rows() + i, j) = bottom.at(i, j);
  return r;
}

Subspace Subspace::span(std::size_t ambient_dim, const RatMat& gens) {
  if (gens.rows() > 0 && gens.cols() != ambient_dim)
    throw std::invalid_argument("generator width != ambient dimension");
  Subspace s(ambient_dim);
  RatMat m = gens;
  auto pivots = m.rref();
  RatMat basis(0, ambient_dim);
  for (std::size_t i = 0; i < pivots.size(); ++i) basis.append_row(m.row(i));
  s.basis_ = basis;
  return s;
}

Subspace Subspace::full(std::size_t ambient_dim) {
  Subspace s(ambient_dim);
  s.basis_ = RatMat::identity(ambient_dim);
  return s;
}

bool Subspace::contains(const std::vector<Rat>& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("vector dim mismatch");
  // Reduce v against the echelon basis.
  std::vector<Rat> w = v;
  for (std::size_t i = 0; i < basis_.rows(); ++i) {
    std::size_t p = 0;
    while (p < ambient_ && basis_.at(i, p) == 0) ++p;
    if (p == ambient_) continue;
    if (w[p] == 0) continue;
    Rat f = w[p];  // pivot entries are 1
    for (std::size_t j = p; j < ambient_; ++j) w[j] -= f * basis_.at(i, j);
  }
  for (const auto& x : w)
    if (x != 0) return false;
  return true;
}

bool Subspace::leq(const Subspace& other) const {
  if (ambient_ != other.ambient_) throw std::invalid_argument("ambient mismatch");
  for (std::size_t i = 0; i < basis_.rows(); ++i)
    if (!other.contains(basis_.row(i))) return false;
  return true;
}

Subspace Subspace::sum(const Subspace& other) const {
  if (ambient_ != other.ambient_) throw std::invalid_argument("ambient mismatch");
  return span(ambient_, RatMat::vstack(basis_, other.basis_));
}

Subspace Subspace::annihilator() const {
  // Kernel of the basis matrix x |-> B x gives the dot-product complement.
  if (basis_.rows() == 0) return full(ambient_);
  return span(ambient_, basis_.kernel());
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (ambient_ != other.ambient_) throw std::invalid_argument("ambient mismatch");
  // Over Q the double annihilator is the identity, so
  // A cap B = ann(ann A + ann B).
  return annihilator().sum(other.annihilator()).annihilator();
}

std::vector<Rat> Subspace::witness_not_in(const Subspace& other) const {
  for (std::size_t i = 0; i < basis_.rows(); ++i) {
    auto r = basis_.row(i);
    if (!other.contains(r)) return r;
  }
  throw std::logic_error("witness_not_in: subspace is contained in other");
}

}  // namespace loccov
