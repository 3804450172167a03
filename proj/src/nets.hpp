#pragma once

#include <random>

#include "rce.hpp"

namespace loccov {

// Builds the rce-fixed ("bullet") and dynamical subspaces of the theory
// value at a spacetime, with memoized per-site evolutions. All results are
// exact; the stabilization audit samples random multi-site perturbations
// and flags (never silently absorbs) any shrinkage beyond the single-site
// family.
class NetsEngine {
 public:
  NetsEngine(const KgModel& kg, uint64_t seed, int audit_rounds = 3)
      : kg_(kg), seed_(seed), audit_rounds_(audit_rounds) {}

  const KgModel& kg() const { return kg_; }

  const RatMat& site_rce(const SpacetimePtr& M, Point q);

  struct BulletResult {
    Subspace space;
    bool flagged = false;
    int single_sites = 0;
    int audits = 0;
  };

  // A^bullet(M;K): joint fixed space of rce[h] over h supported in the
  // admissible part of K^perp.
  const BulletResult& bullet(const SpacetimePtr& M, const PointSet& K);

  // Independent ground truth: solutions vanishing on K^perp within the
  // margin interior.
  Subspace vanishing_oracle(const SpacetimePtr& M, const PointSet& K);

  struct DynResult {
    Subspace space;
    std::size_t index_count = 0;
    bool flagged = false;
  };

  DynResult dynamical(const SpacetimePtr& M, const PointSet& O, const KbCaps& caps);

  struct LocalityVerdict {
    bool holds = false;
    Subspace kinematic;
    Subspace dynamical;
    std::vector<Rat> witness;  // in the symmetric difference when it fails
    bool flagged = false;
  };

  // Kinematic vs dynamical comparison at a nonempty causally convex region.
  LocalityVerdict check_dynamical_locality(const SpacetimePtr& M, const PointSet& O,
                                           const KbCaps& caps);

  struct ExtendedLocalityResult {
    bool intersection_trivial = false;
    bool empty_bullet_trivial = false;
  };

  ExtendedLocalityResult check_extended_locality(const SpacetimePtr& M, const PointSet& O1,
                                                 const PointSet& O2, const KbCaps& caps);

  // A^bullet(M;K) against the intersection of dynamical values over a
  // nested family shrinking onto K.
  bool outer_regular_check(const SpacetimePtr& M, const PointSet& K,
                           const std::vector<PointSet>& chain, const KbCaps& caps);

  // Union of dynamical values over a cover equals the full theory value.
  // Every enumerated compact index set must fit inside a cover element.
  bool additivity_check(const SpacetimePtr& M, const std::vector<PointSet>& cover,
                        const KbCaps& caps);

 private:
  uint64_t derived_seed(const std::string& tag) const;

  const KgModel& kg_;
  uint64_t seed_;
  int audit_rounds_;
  std::map<std::pair<std::string, Point>, RatMat> site_cache_;
  std::map<std::pair<std::string, PointSet>, BulletResult> bullet_cache_;
};

}  // namespace loccov
