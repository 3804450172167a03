#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "morphism.hpp"
#include "subobjects.hpp"

namespace loccov {

// Field values on the full N x T grid, row-major by t.
using Grid = std::vector<Rat>;

inline Rat& grid_at(Grid& g, int N, Point p) { return g[std::size_t(p.t) * N + p.x]; }
inline const Rat& grid_at(const Grid& g, int N, Point p) {
  return g[std::size_t(p.t) * N + p.x];
}

// Compactly supported source, the smearing datum of the field.
struct TestFunction {
  SpacetimePtr host;
  std::map<Point, Rat> values;
};

// A compactly supported change of the site couplings. The lightcone is
// untouched: only mu moves.
struct Perturbation {
  SpacetimePtr host;
  std::map<Point, Rat> delta_mu;

  int min_row() const;
  int max_row() const;
  bool zero() const { return delta_mu.empty(); }
};

// The discrete Klein-Gordon theory with effective coupling
// mu_eff = xi * mu_M + mass2 on the carrier (zero-extended off it).
// All propagator solves are exact forward/backward leapfrog recursions on
// the full grid; data vectors live in Q^{2N}, read at the reference row
// pair (t_ref, t_ref + 1).
class KgModel {
 public:
  explicit KgModel(int margin = 2, Rat xi = Rat(1), Rat mass2 = Rat(0));

  int margin() const { return margin_; }
  const Rat& xi() const { return xi_; }
  const Rat& mass2() const { return mass2_; }

  static int reference_row(const LatticeSpacetime& M) { return (M.T() - 1) / 2; }

  // Carrier sites allowed to support test functions and perturbations:
  // rows [margin, T-1-margin].
  PointSet margin_interior(const LatticeSpacetime& M) const;

  Grid effective_mu(const LatticeSpacetime& M) const;

  // (P u)(t,x) = u(t+1,x)+u(t-1,x)-u(t,x-1)-u(t,x+1)+mu(t,x)u(t,x) on the
  // equation rows 1..T-2; rows 0 and T-1 carry no equation and are zeroed.
  static Grid apply_wave_operator(int N, int T, const Grid& mu, const Grid& u);
  Grid apply_wave_operator(const LatticeSpacetime& M, const Grid& u) const;

  // Retarded solve: P u = f, u = 0 on rows <= min supp row.
  static Grid retarded(int N, int T, const Grid& mu, const std::map<Point, Rat>& f);
  static Grid advanced(int N, int T, const Grid& mu, const std::map<Point, Rat>& f);
  Grid retarded(const TestFunction& f) const;
  Grid advanced(const TestFunction& f) const;
  Grid causal_propagator(const TestFunction& f) const;  // E = E^- - E^+

  // sigma(f, g) = sum_p f(p) (E g)(p); the presymplectic pairing of sources.
  Rat pairing(const TestFunction& f, const TestFunction& g) const;

  // Solution determined by data on rows (t0, t0+1).
  static Grid evolve_from_pair(int N, int T, const Grid& mu, int t0,
                               const std::vector<Rat>& data);
  static std::vector<Rat> data_at(int N, const Grid& u, int t0);

  // The conserved two-row form as a matrix on data vectors.
  static RatMat omega_matrix(int N);
  static Rat omega(int N, const std::vector<Rat>& a, const std::vector<Rat>& b);

  // Row (t,x) of the result expresses u(t,x) as a functional of reference
  // data; memoized per spacetime.
  const RatMat& value_matrix(const LatticeSpacetime& M) const;

  // A source supported on rows {band, band+1} with E f = u, for a solution
  // u of the full-carrier equation.
  static std::map<Point, Rat> solution_to_source(int N, const Grid& u, int band);

  // ----- the functor -----------------------------------------------------

  struct Object {
    SpacetimePtr host;
    std::vector<Point> gens;  // margin-interior carrier points
    RatMat gen_cols;          // 2N x #gens, data of E(delta_p)
    Subspace space;           // span inside Q^{2N}
    RatMat basis_cols;        // 2N x dim
    RatMat gen_coeff;         // #gens x dim with gen_cols * gen_coeff = basis_cols
    DataSpace ds;
  };

  const Object& object(const SpacetimePtr& M) const;

  // Coordinate matrix of the induced map object(source) -> object(target).
  RatMat morphism_matrix(const SpacetimeMorphism& psi) const;

  // Data-span of {E f : supp f inside O}; O nonempty, causally convex,
  // inside the margin interior.
  Subspace kinematic_subspace(const SpacetimePtr& M, const PointSet& O) const;

  // Data of E(delta_p) at the reference pair.
  std::vector<Rat> delta_solution_data(const LatticeSpacetime& M, Point p) const;

 private:
  Grid causal_propagator_delta(const LatticeSpacetime& M, Point p) const;

  int margin_;
  Rat xi_, mass2_;
  mutable std::mutex mu_lock_;
  mutable std::map<std::string, Object> objects_;
  mutable std::map<std::string, RatMat> value_mats_;
  mutable std::map<std::string, Grid> eff_mu_;
};

void validate_support(const KgModel& kg, const LatticeSpacetime& M,
                      const std::map<Point, Rat>& values);

}  // namespace loccov
