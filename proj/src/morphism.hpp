#pragma once

#include <vector>

#include "spacetime.hpp"

namespace loccov {

// An injective structure-preserving embedding between lattice spacetimes.
// Each carrier component moves rigidly: (t,x) -> (t + dt, x + dx mod N).
// Reflections and time reversal are excluded by construction, which is how
// orientation and time-orientation preservation are encoded here.
class SpacetimeMorphism {
 public:
  struct ComponentMap {
    PointSet component;  // a carrier component of the source
    int dt = 0;
    int dx = 0;
  };

  // Validates injectivity, carrier containment, coupling preservation,
  // causal convexity of the image and causal disjointness of component
  // images. Throws std::invalid_argument on violation.
  SpacetimeMorphism(SpacetimePtr source, SpacetimePtr target,
                    std::vector<ComponentMap> maps);

  // Whole-carrier rigid map.
  static SpacetimeMorphism rigid(SpacetimePtr source, SpacetimePtr target, int dt, int dx);
  static SpacetimeMorphism identity(SpacetimePtr m);
  // Inclusion of a region-spacetime into its host (same grid, dt = dx = 0).
  static SpacetimeMorphism inclusion(SpacetimePtr region, SpacetimePtr host);

  const SpacetimePtr& source() const { return source_; }
  const SpacetimePtr& target() const { return target_; }
  const std::vector<ComponentMap>& maps() const { return maps_; }

  Point apply(Point p) const;
  PointSet apply(const PointSet& s) const;
  const PointSet& image() const { return image_; }

  static SpacetimeMorphism compose(const SpacetimeMorphism& outer,
                                   const SpacetimeMorphism& inner);

 private:
  SpacetimePtr source_, target_;
  std::vector<ComponentMap> maps_;
  PointSet image_;
};

// Dynamical notion: the image contains a Cauchy pair of the target. This is
// the notion theories with a dynamical law turn into isomorphisms.
bool is_cauchy_morphism(const SpacetimeMorphism& psi);

// Order-theoretic notion: the image is met by every inextendible chain of
// the target. Identity morphisms are always Cauchy in this sense, including
// identities of region-spacetimes that contain no full row.
bool is_cauchy_set_morphism(const SpacetimeMorphism& psi);

// Interpolating chain M <- F -> I <- P -> M2 of Cauchy morphisms between
// full-circle spacetimes with equal N. I stacks M2's couplings below a
// rational ramp and a translated copy of M's couplings above it.
struct InterpolatingChain {
  SpacetimePtr future_slab;   // F, a copy of M
  SpacetimePtr interpolant;   // I
  SpacetimePtr past_slab;     // P, a copy of M2
  std::vector<SpacetimeMorphism> morphisms;  // F->M, F->I, P->I, P->M2
};

InterpolatingChain make_interpolating_chain(SpacetimePtr M, SpacetimePtr M2,
                                            int ramp_rows = 3);

}  // namespace loccov
