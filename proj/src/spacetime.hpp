#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rational.hpp"

namespace loccov {

struct Point {
  int t = 0;
  int x = 0;
  auto operator<=>(const Point&) const = default;
};

// Subset of the N x T grid, as a bitset. Carries its grid dimensions so
// mixing sets from different lattices is caught early.
class PointSet {
 public:
  PointSet() : n_(0), t_(0) {}
  PointSet(int n, int t) : n_(n), t_(t), bits_((std::size_t(n) * t + 63) / 64, 0) {}

  int grid_n() const { return n_; }
  int grid_t() const { return t_; }

  bool test(Point p) const { return test(idx(p)); }
  void set(Point p, bool v = true);
  bool empty() const;
  std::size_t count() const;

  bool operator==(const PointSet& o) const { return n_ == o.n_ && t_ == o.t_ && bits_ == o.bits_; }
  bool operator!=(const PointSet& o) const { return !(*this == o); }
  bool operator<(const PointSet& o) const;

  PointSet operator|(const PointSet& o) const;
  PointSet operator&(const PointSet& o) const;
  PointSet operator-(const PointSet& o) const;  // set difference
  bool subset_of(const PointSet& o) const;
  bool intersects(const PointSet& o) const;

  std::vector<Point> points() const;  // ordered by (t, x)

  static PointSet all(int n, int t);
  static PointSet of(int n, int t, const std::vector<Point>& pts);

 private:
  std::size_t idx(Point p) const;
  bool test(std::size_t i) const { return (bits_[i >> 6] >> (i & 63)) & 1; }
  void check_compat(const PointSet& o) const;

  int n_, t_;
  std::vector<uint64_t> bits_;
};

// A finite circle-lattice spacetime: sites Z_N x {0..T-1}, unit lightcone
// causal steps (t,x) -> (t+1, x-1|x|x+1), site couplings mu, and an optional
// carrier for region-spacetimes. Immutable after construction.
class LatticeSpacetime {
 public:
  // Full carrier, uniform coupling.
  LatticeSpacetime(int N, int T, const Rat& mu_uniform);
  // General form. mu is dense N*T (row-major by t), read only on the carrier
  // and implicitly zero outside it.
  LatticeSpacetime(int N, int T, std::vector<Rat> mu, std::optional<PointSet> carrier);

  int N() const { return n_; }
  int T() const { return t_; }
  const PointSet& carrier() const { return carrier_; }
  bool full_carrier() const { return full_; }
  Rat mu(Point p) const;
  const std::vector<Rat>& mu_dense() const { return mu_; }

  bool in_carrier(Point p) const { return carrier_.test(p); }
  int wrap_x(int x) const { return ((x % n_) + n_) % n_; }

  // Maximal groups of the carrier connected through the (undirected) step
  // relation. The carrier invariant demands these be pairwise causally
  // disjoint and each causally convex.
  const std::vector<PointSet>& components() const { return components_; }

  const std::string& key() const { return key_; }

  bool operator==(const LatticeSpacetime& o) const { return key_ == o.key_; }

 private:
  void validate();
  void build_key();

  int n_, t_;
  std::vector<Rat> mu_;
  PointSet carrier_;
  bool full_;
  std::vector<PointSet> components_;
  std::string key_;
};

using SpacetimePtr = std::shared_ptr<const LatticeSpacetime>;

// ----- causal structure -------------------------------------------------

// J^+/-_M(S): reachability along causal step chains inside the carrier;
// includes S itself. Throws std::domain_error if S leaves the carrier.
PointSet causal_future(const LatticeSpacetime& M, const PointSet& S);
PointSet causal_past(const LatticeSpacetime& M, const PointSet& S);
PointSet causal_hull(const LatticeSpacetime& M, const PointSet& S);  // J = J+ u J-

// S^perp = carrier \ J(S). On a finite lattice closure is trivial, so this
// single complement plays the role of both of the continuum ones.
PointSet causal_complement(const LatticeSpacetime& M, const PointSet& S);

// D_M(S): points p such that every inextendible causal chain through p
// (within the carrier) meets S.
PointSet domain_of_dependence(const LatticeSpacetime& M, const PointSet& S);

bool is_causally_convex(const LatticeSpacetime& M, const PointSet& O);

// Order-theoretic Cauchy set: met by every inextendible chain in the carrier.
bool is_cauchy_set(const LatticeSpacetime& M, const PointSet& S);

// Causally disjoint: no causal curve joins them.
bool causally_disjoint(const LatticeSpacetime& M, const PointSet& A, const PointSet& B);

// ----- Cauchy pairs (the dynamical Cauchy datum) -------------------------

// Two adjacent full rows {t0, t0+1} x Z_N inside the carrier.
struct CauchyPair {
  int t0 = 0;
};

bool has_full_row(const LatticeSpacetime& M, int t);
std::vector<CauchyPair> cauchy_pairs(const LatticeSpacetime& M);
bool contains_cauchy_pair(const LatticeSpacetime& M, const PointSet& S);
PointSet pair_rows(const LatticeSpacetime& M, CauchyPair cp);

// Full rows of the carrier (single-row order-theoretic Cauchy sets).
std::vector<int> full_rows(const LatticeSpacetime& M);

// ----- diamonds ----------------------------------------------------------

// Consecutive sites {x0, .., x0+width-1} (mod N) on one row.
struct BaseInterval {
  int row = 0;
  int x0 = 0;
  int width = 1;
};

PointSet interval_points(const LatticeSpacetime& M, const BaseInterval& b);

// D_M(B x {row}) for a base interval with nonempty complement in the row.
PointSet diamond(const LatticeSpacetime& M, const BaseInterval& b);

// Union of diamonds over bases with pairwise causally disjoint developments.
PointSet multi_diamond(const LatticeSpacetime& M, const std::vector<BaseInterval>& bases);

struct KbCaps {
  int max_width = 3;
  int max_components = 2;
  std::vector<int> rows;  // admissible base rows; empty = all carrier rows
};

// K_b(M;O): multi-interval base sets lying inside O whose interval
// developments are pairwise causally disjoint. Always contains the empty
// set; for O empty the result is exactly { {} }.
std::vector<PointSet> enumerate_Kb(const LatticeSpacetime& M, const PointSet& O,
                                   const KbCaps& caps);

}  // namespace loccov
