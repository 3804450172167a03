#pragma once

#include <vector>

#include "matrix.hpp"

namespace loccov {

// A finite-dimensional rational presymplectic data space. The form may be
// degenerate; the zero-dimensional space is the initial object.
struct DataSpace {
  std::size_t dim = 0;
  RatMat form;  // dim x dim, exactly antisymmetric

  DataSpace() : form(0, 0) {}
  DataSpace(std::size_t d, RatMat f);

  bool operator==(const DataSpace& o) const { return dim == o.dim && form == o.form; }
};

// An injective linear map pulling the target form back to the source form.
struct LinearMorphism {
  DataSpace source, target;
  RatMat matrix;  // target.dim x source.dim

  LinearMorphism(DataSpace src, DataSpace tgt, RatMat m, bool check = true);

  bool is_iso() const { return source.dim == target.dim; }  // injective + square
  std::vector<Rat> apply(const std::vector<Rat>& v) const;
};

LinearMorphism compose(const LinearMorphism& outer, const LinearMorphism& inner);
LinearMorphism identity_morphism(const DataSpace& a);

// ----- the subobject lattice of an ambient space -------------------------

// Equalizer of f and g (common source and target): the kernel of f - g as a
// canonical subspace of the source.
Subspace equalizer(const RatMat& f, const RatMat& g);

// Categorical intersection = linear intersection here. The intersection of
// an empty family of subobjects of A is all of A.
Subspace intersect_all(std::size_t ambient_dim, const std::vector<Subspace>& parts);

// Categorical union = linear span. The union of an empty family is zero.
Subspace union_all(std::size_t ambient_dim, const std::vector<Subspace>& parts);

bool subobject_leq(const Subspace& a, const Subspace& b);
bool subobject_iso(const Subspace& a, const Subspace& b);
bool is_trivial(const Subspace& a);

// Pushforward of a subspace along a matrix (rows of the basis map through m).
Subspace push_subspace(const RatMat& m, const Subspace& s);

}  // namespace loccov
