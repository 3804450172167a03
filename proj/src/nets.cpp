#include "nets.hpp"

#include <stdexcept>

namespace loccov {

namespace {

uint64_t fnv1a(const std::string& s, uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

uint64_t NetsEngine::derived_seed(const std::string& tag) const {
  return fnv1a(tag, seed_ ^ 1469598103934665603ull);
}

const RatMat& NetsEngine::site_rce(const SpacetimePtr& M, Point q) {
  auto key = std::make_pair(M->key(), q);
  auto it = site_cache_.find(key);
  if (it != site_cache_.end()) return it->second;
  Perturbation h{M, {{q, Rat(1)}}};
  return site_cache_.emplace(key, rce_matrix(kg_, M, h)).first->second;
}

const NetsEngine::BulletResult& NetsEngine::bullet(const SpacetimePtr& M, const PointSet& K) {
  auto key = std::make_pair(M->key(), K);
  auto it = bullet_cache_.find(key);
  if (it != bullet_cache_.end()) return it->second;

  int n2 = 2 * M->N();
  PointSet perp = causal_complement(*M, K) & kg_.margin_interior(*M);
  auto sites = perp.points();

  BulletResult res;
  res.single_sites = int(sites.size());
  RatMat stacked(0, n2);
  RatMat eye = RatMat::identity(n2);
  for (auto q : sites) {
    RatMat d = site_rce(M, q) - eye;
    for (std::size_t i = 0; i < d.rows(); ++i) {
      auto r = d.row(i);
      bool zero = true;
      for (const auto& v : r)
        if (v != 0) {
          zero = false;
          break;
        }
      if (!zero) stacked.append_row(r);
    }
  }
  Subspace fixed = stacked.rows() == 0 ? Subspace::full(n2) : Subspace::span(n2, stacked.kernel());
  // Everything is computed inside the theory value A(M).
  fixed = fixed.intersect(kg_.object(M).space);

  // Stabilization audit: random multi-site perturbations in K^perp must not
  // shrink the single-site result.
  std::string ktag = "bullet|" + M->key() + "|";
  for (auto p : K.points()) ktag += std::to_string(p.t) + "," + std::to_string(p.x) + ";";
  std::mt19937_64 rng(derived_seed(ktag));
  if (!sites.empty()) {
    for (int round = 0; round < audit_rounds_; ++round) {
      ++res.audits;
      Perturbation h{M, {}};
      int k = 1 + int(rng() % 3);
      for (int i = 0; i < k; ++i) {
        Point q = sites[rng() % sites.size()];
        int num = 1 + int(rng() % 3);
        int den = 1 + int(rng() % 2);
        Rat amp = rat_of((rng() & 1) ? num : -num, den);
        h.delta_mu[q] = amp;
      }
      RatMat r = rce_matrix(kg_, M, h);
      bool fixed_ok = true;
      for (std::size_t i = 0; i < fixed.basis().rows() && fixed_ok; ++i) {
        RatMat v(n2, 1);
        v.set_col(0, fixed.basis().row(i));
        fixed_ok = ((r * v) - v).is_zero();
      }
      if (!fixed_ok) {
        res.flagged = true;
        RatMat extra = r - eye;
        RatMat again = RatMat::vstack(stacked, extra);
        fixed = Subspace::span(n2, again.kernel()).intersect(kg_.object(M).space);
        stacked = again;
      }
    }
  }
  res.space = fixed;
  return bullet_cache_.emplace(key, std::move(res)).first->second;
}

Subspace NetsEngine::vanishing_oracle(const SpacetimePtr& M, const PointSet& K) {
  int n2 = 2 * M->N();
  PointSet perp = causal_complement(*M, K) & kg_.margin_interior(*M);
  const RatMat& vals = kg_.value_matrix(*M);
  RatMat constraints(0, n2);
  for (auto p : perp.points())
    constraints.append_row(vals.row(std::size_t(p.t) * M->N() + p.x));
  Subspace z = constraints.rows() == 0 ? Subspace::full(n2)
                                       : Subspace::span(n2, constraints.kernel());
  return z.intersect(kg_.object(M).space);
}

NetsEngine::DynResult NetsEngine::dynamical(const SpacetimePtr& M, const PointSet& O,
                                            const KbCaps& caps) {
  if (!O.empty() && !is_causally_convex(*M, O))
    throw std::domain_error("dynamical net is indexed by causally convex regions");
  auto ks = enumerate_Kb(*M, O, caps);
  DynResult res;
  res.index_count = ks.size();
  Subspace acc = Subspace::zero(2 * M->N());
  for (const auto& K : ks) {
    const auto& b = bullet(M, K);
    if (b.flagged) res.flagged = true;
    acc = acc.sum(b.space);
  }
  res.space = acc;
  return res;
}

NetsEngine::LocalityVerdict NetsEngine::check_dynamical_locality(const SpacetimePtr& M,
                                                                 const PointSet& O,
                                                                 const KbCaps& caps) {
  LocalityVerdict v;
  v.kinematic = kg_.kinematic_subspace(M, O);
  auto dyn = dynamical(M, O, caps);
  v.dynamical = dyn.space;
  v.flagged = dyn.flagged;
  v.holds = (v.kinematic == v.dynamical);
  if (!v.holds) {
    if (!v.dynamical.leq(v.kinematic))
      v.witness = v.dynamical.witness_not_in(v.kinematic);
    else
      v.witness = v.kinematic.witness_not_in(v.dynamical);
  }
  return v;
}

NetsEngine::ExtendedLocalityResult NetsEngine::check_extended_locality(const SpacetimePtr& M,
                                                                       const PointSet& O1,
                                                                       const PointSet& O2,
                                                                       const KbCaps& caps) {
  if (O1.empty() || O2.empty()) throw std::domain_error("regions must be nonempty");
  if (!causally_disjoint(*M, O1, O2))
    throw std::domain_error("regions must be causally disjoint");
  (void)caps;
  ExtendedLocalityResult r;
  Subspace k1 = kg_.kinematic_subspace(M, O1);
  Subspace k2 = kg_.kinematic_subspace(M, O2);
  r.intersection_trivial = k1.intersect(k2).is_zero();
  r.empty_bullet_trivial = bullet(M, PointSet(M->N(), M->T())).space.is_zero();
  return r;
}

bool NetsEngine::outer_regular_check(const SpacetimePtr& M, const PointSet& K,
                                     const std::vector<PointSet>& chain, const KbCaps& caps) {
  for (std::size_t i = 1; i < chain.size(); ++i)
    if (!chain[i].subset_of(chain[i - 1]))
      throw std::domain_error("outer approximation must be nested");
  if (!chain.empty() && !K.subset_of(chain.back()))
    throw std::domain_error("K must lie inside the whole chain");
  Subspace lhs = bullet(M, K).space;
  Subspace acc = Subspace::full(2 * M->N());
  for (const auto& O : chain) acc = acc.intersect(dynamical(M, O, caps).space);
  return lhs == acc;
}

bool NetsEngine::additivity_check(const SpacetimePtr& M, const std::vector<PointSet>& cover,
                                  const KbCaps& caps) {
  auto all_k = enumerate_Kb(*M, kg_.margin_interior(*M), caps);
  for (const auto& K : all_k) {
    if (K.empty()) continue;
    bool covered = false;
    for (const auto& O : cover)
      if (K.subset_of(O)) {
        covered = true;
        break;
      }
    if (!covered) throw std::domain_error("cover misses an enumerated compact index set");
  }
  Subspace acc = Subspace::zero(2 * M->N());
  for (const auto& O : cover) acc = acc.sum(dynamical(M, O, caps).space);
  return acc == kg_.object(M).space;
}

}  // namespace loccov
