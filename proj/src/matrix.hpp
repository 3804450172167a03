#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "rational.hpp"

namespace loccov {

// Dense rational matrix, row-major.
class RatMat {
 public:
  RatMat() : rows_(0), cols_(0) {}
  RatMat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}
  RatMat(std::size_t rows, std::size_t cols, std::initializer_list<Rat> vals);

  static RatMat identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rat& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool operator==(const RatMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const RatMat& o) const { return !(*this == o); }

  RatMat operator*(const RatMat& o) const;
  RatMat operator+(const RatMat& o) const;
  RatMat operator-(const RatMat& o) const;
  RatMat operator*(const Rat& s) const;
  RatMat transpose() const;

  bool is_zero() const;
  bool is_identity() const;

  void append_row(const std::vector<Rat>& row);
  std::vector<Rat> row(std::size_t i) const;
  std::vector<Rat> col(std::size_t j) const;
  void set_col(std::size_t j, const std::vector<Rat>& v);

  // In-place reduced row echelon form; returns pivot column indices.
  std::vector<std::size_t> rref();

  std::size_t rank() const;

  // Basis of {x : A x = 0}, one kernel vector per row of the result.
  RatMat kernel() const;

  // Least structure solve: find any X with A X = B. Returns nullopt if
  // inconsistent. X is cols(A) x cols(B).
  std::optional<RatMat> solve(const RatMat& b) const;

  // Vertical stack.
  static RatMat vstack(const RatMat& top, const RatMat& bottom);

 private:
  std::size_t rows_, cols_;
  std::vector<Rat> a_;
};

// A linear subspace of Q^n, stored as the unique reduced-echelon row basis.
// Equality of subspaces is equality of representations.
class Subspace {
 public:
  Subspace() : ambient_(0) {}
  explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim) {}

  // Span of the rows of `gens`.
  static Subspace span(std::size_t ambient_dim, const RatMat& gens);
  static Subspace full(std::size_t ambient_dim);
  static Subspace zero(std::size_t ambient_dim) { return Subspace(ambient_dim); }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const RatMat& basis() const { return basis_; }
  bool is_zero() const { return basis_.rows() == 0; }
  bool is_full() const { return basis_.rows() == ambient_; }

  bool contains(const std::vector<Rat>& v) const;
  bool leq(const Subspace& other) const;
  bool operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && basis_ == o.basis_;
  }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

  Subspace sum(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;

  // {y : <y, v> = 0 for all v in this} under the standard dot product.
  Subspace annihilator() const;

  // A vector in this subspace that is not in `other` (requires !leq(other)).
  std::vector<Rat> witness_not_in(const Subspace& other) const;

 private:
  std::size_t ambient_;
  RatMat basis_;  // dim x ambient, reduced echelon, no zero rows
};

}  // namespace loccov
