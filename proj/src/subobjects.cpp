#include "subobjects.hpp"

#include <stdexcept>

namespace loccov {

DataSpace::DataSpace(std::size_t d, RatMat f) : dim(d), form(std::move(f)) {
  if (form.rows() != dim || form.cols() != dim)
    throw std::invalid_argument("form shape mismatch");
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      if (form.at(i, j) != -form.at(j, i))
        throw std::invalid_argument("form is not antisymmetric");
}

LinearMorphism::LinearMorphism(DataSpace src, DataSpace tgt, RatMat m, bool check)
    : source(std::move(src)), target(std::move(tgt)), matrix(std::move(m)) {
  if (matrix.rows() != target.dim || matrix.cols() != source.dim)
    throw std::invalid_argument("morphism matrix shape mismatch");
  if (check) {
    if (matrix.rank() != source.dim)
      throw std::invalid_argument("morphism is not injective");
    RatMat pulled = matrix.transpose() * target.form * matrix;
    if (!(pulled == source.form))
      throw std::invalid_argument("morphism does not preserve the form");
  }
}

std::vector<Rat> LinearMorphism::apply(const std::vector<Rat>& v) const {
  if (v.size() != source.dim) throw std::invalid_argument("vector dim mismatch");
  std::vector<Rat> out(target.dim, Rat(0));
  for (std::size_t i = 0; i < target.dim; ++i)
    for (std::size_t j = 0; j < source.dim; ++j) out[i] += matrix.at(i, j) * v[j];
  return out;
}

LinearMorphism compose(const LinearMorphism& outer, const LinearMorphism& inner) {
  if (!(outer.source == inner.target))
    throw std::invalid_argument("morphisms are not composable");
  return LinearMorphism(inner.source, outer.target, outer.matrix * inner.matrix, false);
}

LinearMorphism identity_morphism(const DataSpace& a) {
  return LinearMorphism(a, a, RatMat::identity(a.dim), false);
}

Subspace equalizer(const RatMat& f, const RatMat& g) {
  if (f.rows() != g.rows() || f.cols() != g.cols())
    throw std::invalid_argument("equalizer shape mismatch");
  return Subspace::span(f.cols(), (f - g).kernel());
}

Subspace intersect_all(std::size_t ambient_dim, const std::vector<Subspace>& parts) {
  Subspace acc = Subspace::full(ambient_dim);
  for (const auto& p : parts) acc = acc.intersect(p);
  return acc;
}

Subspace union_all(std::size_t ambient_dim, const std::vector<Subspace>& parts) {
  Subspace acc = Subspace::zero(ambient_dim);
  for (const auto& p : parts) acc = acc.sum(p);
  return acc;
}

bool subobject_leq(const Subspace& a, const Subspace& b) { return a.leq(b); }
bool subobject_iso(const Subspace& a, const Subspace& b) { return a == b; }
bool is_trivial(const Subspace& a) { return a.is_zero(); }

Subspace push_subspace(const RatMat& m, const Subspace& s) {
  if (m.cols() != s.ambient_dim()) throw std::invalid_argument("push shape mismatch");
  RatMat rows(0, m.rows());
  for (std::size_t i = 0; i < s.basis().rows(); ++i) {
    RatMat v(s.ambient_dim(), 1);
    v.set_col(0, s.basis().row(i));
    rows.append_row((m * v).col(0));
  }
  return Subspace::span(m.rows(), rows);
}

}  // namespace loccov
