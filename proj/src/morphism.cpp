#include "morphism.hpp"

#include <stdexcept>

namespace loccov {

namespace {

bool component_wraps(const LatticeSpacetime& M, const PointSet& comp) {
  // A component wraps the spatial circle iff it contains a full row; the
  // unit-step order admits no other closed spatial circuits among the
  // causally convex carriers used here.
  for (int t = 0; t < M.T(); ++t) {
    bool fullrow = true;
    for (int x = 0; x < M.N() && fullrow; ++x) fullrow = comp.test(Point{t, x});
    if (fullrow) return true;
  }
  return false;
}

}  // namespace

SpacetimeMorphism::SpacetimeMorphism(SpacetimePtr source, SpacetimePtr target,
                                     std::vector<ComponentMap> maps)
    : source_(std::move(source)),
      target_(std::move(target)),
      maps_(std::move(maps)),
      image_(target_->N(), target_->T()) {
  const auto& comps = source_->components();
  if (maps_.size() != comps.size())
    throw std::invalid_argument("morphism needs exactly one map per source component");
  PointSet covered(source_->N(), source_->T());
  for (auto& m : maps_) covered = covered | m.component;
  if (covered != source_->carrier())
    throw std::invalid_argument("component maps do not partition the source carrier");

  std::vector<PointSet> images;
  for (const auto& m : maps_) {
    if (component_wraps(*source_, m.component) && source_->N() != target_->N())
      throw std::invalid_argument("a wrapping component requires equal spatial sizes");
    PointSet img(target_->N(), target_->T());
    for (auto p : m.component.points()) {
      Point q{p.t + m.dt, target_->wrap_x(p.x + m.dx)};
      if (q.t < 0 || q.t >= target_->T() || !target_->in_carrier(q))
        throw std::invalid_argument("image leaves the target carrier");
      if (img.test(q) || image_.test(q))
        throw std::invalid_argument("morphism is not injective");
      img.set(q);
      image_.set(q);
      if (source_->mu(p) != target_->mu(q))
        throw std::invalid_argument("couplings are not preserved");
    }
    images.push_back(img);
  }
  if (!is_causally_convex(*target_, image_))
    throw std::invalid_argument("image is not causally convex");
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j)
      if (!causally_disjoint(*target_, images[i], images[j]))
        throw std::invalid_argument("component images are not causally disjoint");
}

SpacetimeMorphism SpacetimeMorphism::rigid(SpacetimePtr source, SpacetimePtr target, int dt,
                                           int dx) {
  std::vector<ComponentMap> maps;
  for (const auto& c : source->components()) maps.push_back({c, dt, dx});
  return SpacetimeMorphism(std::move(source), std::move(target), std::move(maps));
}

SpacetimeMorphism SpacetimeMorphism::identity(SpacetimePtr m) {
  auto c = m;
  return rigid(std::move(c), std::move(m), 0, 0);
}

SpacetimeMorphism SpacetimeMorphism::inclusion(SpacetimePtr region, SpacetimePtr host) {
  if (region->N() != host->N() || region->T() != host->T())
    throw std::invalid_argument("inclusion requires matching grids");
  return rigid(std::move(region), std::move(host), 0, 0);
}

Point SpacetimeMorphism::apply(Point p) const {
  for (const auto& m : maps_)
    if (m.component.test(p)) return Point{p.t + m.dt, target_->wrap_x(p.x + m.dx)};
  throw std::domain_error("point outside the source carrier");
}

PointSet SpacetimeMorphism::apply(const PointSet& s) const {
  PointSet out(target_->N(), target_->T());
  for (auto p : s.points()) out.set(apply(p));
  return out;
}

SpacetimeMorphism SpacetimeMorphism::compose(const SpacetimeMorphism& outer,
                                             const SpacetimeMorphism& inner) {
  if (!(*outer.source() == *inner.target()))
    throw std::invalid_argument("morphisms are not composable");
  std::vector<ComponentMap> maps;
  for (const auto& c : inner.source()->components()) {
    Point rep = c.points().front();
    Point mid = inner.apply(rep);
    Point end = outer.apply(mid);
    // Rigid maps compose to rigid maps; recover the offsets from one point.
    int dt = end.t - rep.t;
    int dx = outer.target()->wrap_x(end.x - rep.x);
    maps.push_back({c, dt, dx});
  }
  return SpacetimeMorphism(inner.source(), outer.target(), std::move(maps));
}

bool is_cauchy_morphism(const SpacetimeMorphism& psi) {
  return contains_cauchy_pair(*psi.target(), psi.image());
}

bool is_cauchy_set_morphism(const SpacetimeMorphism& psi) {
  return is_cauchy_set(*psi.target(), psi.image());
}

InterpolatingChain make_interpolating_chain(SpacetimePtr M, SpacetimePtr M2, int ramp_rows) {
  if (!M->full_carrier() || !M2->full_carrier())
    throw std::invalid_argument("interpolating chain needs full-circle spacetimes");
  if (M->N() != M2->N())
    throw std::invalid_argument("interpolating chain needs equal spatial sizes");
  if (ramp_rows < 1) throw std::invalid_argument("ramp_rows must be positive");

  int N = M->N();
  int T2 = M2->T(), T1 = M->T();
  int TI = T2 + ramp_rows + T1;
  int top_offset = T2 + ramp_rows;  // row of I where the copy of M starts

  // chi ramps 0 -> 1 across the gap; couplings blend the adjacent boundary
  // rows of the two spacetimes.
  std::vector<Rat> mu(std::size_t(N) * TI, Rat(0));
  for (int t = 0; t < TI; ++t)
    for (int x = 0; x < N; ++x) {
      Rat v;
      if (t < T2) {
        v = M2->mu(Point{t, x});
      } else if (t >= top_offset) {
        v = M->mu(Point{t - top_offset, x});
      } else {
        Rat chi(t - T2 + 1, ramp_rows + 1);
        v = (1 - chi) * M2->mu(Point{T2 - 1, x}) + chi * M->mu(Point{0, x});
      }
      mu[std::size_t(t) * N + x] = v;
    }
  auto I = std::make_shared<const LatticeSpacetime>(N, TI, std::move(mu), std::nullopt);

  auto F = M;   // the future slab is a verbatim copy of M
  auto P = M2;  // the past slab is a verbatim copy of M2

  std::vector<SpacetimeMorphism> ms;
  ms.push_back(SpacetimeMorphism::identity(F));                  // F -> M
  ms.push_back(SpacetimeMorphism::rigid(F, I, top_offset, 0));   // F -> I
  ms.push_back(SpacetimeMorphism::rigid(P, I, 0, 0));            // P -> I
  ms.push_back(SpacetimeMorphism::identity(P));                  // P -> M2
  for (const auto& m : ms)
    if (!is_cauchy_morphism(m)) throw std::logic_error("interpolating chain arm not Cauchy");
  return InterpolatingChain{F, I, P, std::move(ms)};
}

}  // namespace loccov
