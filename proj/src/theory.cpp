#include "theory.hpp"

#include <sstream>
#include <stdexcept>

namespace loccov {

RatMat block_diag(const RatMat& m, int copies) {
  RatMat r(m.rows() * copies, m.cols() * copies);
  for (int c = 0; c < copies; ++c)
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        r.at(c * m.rows() + i, c * m.cols() + j) = m.at(i, j);
  return r;
}

RatMat pad_matrix(std::size_t dim, int k, int kprime) {
  if (k > kprime) throw std::invalid_argument("pad requires k <= k'");
  RatMat r(dim * kprime, dim * k);
  for (std::size_t i = 0; i < dim * k; ++i) r.at(i, i) = 1;
  return r;
}

TheoryPtr trivial_theory() {
  auto th = std::make_shared<Theory>();
  th->name = "trivial";
  th->object = [](const SpacetimePtr&) { return DataSpace(0, RatMat(0, 0)); };
  th->morphism = [](const SpacetimeMorphism&) { return RatMat(0, 0); };
  th->rce = [](const SpacetimePtr&, const Perturbation&) { return RatMat(0, 0); };
  th->kinematic = [](const SpacetimePtr&, const PointSet&) { return Subspace::zero(0); };
  return th;
}

TheoryPtr kg_theory(std::shared_ptr<const KgModel> kg) {
  auto th = std::make_shared<Theory>();
  th->name = "kg";
  th->object = [kg](const SpacetimePtr& m) { return kg->object(m).ds; };
  th->morphism = [kg](const SpacetimeMorphism& psi) { return kg->morphism_matrix(psi); };
  th->rce = [kg](const SpacetimePtr& m, const Perturbation& h) { return rce_coords(*kg, m, h); };
  th->kinematic = [kg](const SpacetimePtr& m, const PointSet& o) {
    Subspace amb = kg->kinematic_subspace(m, o);
    const auto& obj = kg->object(m);
    if (obj.basis_cols.is_identity()) return amb;
    RatMat rows(0, obj.ds.dim);
    for (std::size_t i = 0; i < amb.basis().rows(); ++i) {
      RatMat v(amb.ambient_dim(), 1);
      v.set_col(0, amb.basis().row(i));
      auto c = obj.basis_cols.solve(v);
      if (!c) throw std::logic_error("kinematic subspace leaves the theory object");
      rows.append_row(c->col(0));
    }
    return Subspace::span(obj.ds.dim, rows);
  };
  return th;
}

TheoryPtr power_theory(const TheoryPtr& base, int k) {
  if (k < 1) throw std::invalid_argument("power requires k >= 1");
  if (k == 1) return base;
  auto th = std::make_shared<Theory>();
  th->name = base->name + "^" + std::to_string(k);
  th->object = [base, k](const SpacetimePtr& m) {
    DataSpace d = base->object(m);
    return DataSpace(d.dim * k, block_diag(d.form, k));
  };
  th->morphism = [base, k](const SpacetimeMorphism& psi) {
    return block_diag(base->morphism(psi), k);
  };
  th->rce = [base, k](const SpacetimePtr& m, const Perturbation& h) {
    return block_diag(base->rce(m, h), k);
  };
  th->kinematic = [base, k](const SpacetimePtr& m, const PointSet& o) {
    Subspace s = base->kinematic(m, o);
    std::size_t d = base->object(m).dim;
    RatMat rows(0, d * k);
    for (int c = 0; c < k; ++c)
      for (std::size_t i = 0; i < s.basis().rows(); ++i) {
        std::vector<Rat> row(d * k, Rat(0));
        for (std::size_t j = 0; j < d; ++j) row[c * d + j] = s.basis().at(i, j);
        rows.append_row(row);
      }
    return Subspace::span(d * k, rows);
  };
  return th;
}

NaturalTransformation pad_natural(const TheoryPtr& base, const TheoryPtr& from,
                                  const TheoryPtr& to, int k, int kprime) {
  NaturalTransformation z;
  z.name = "pad(" + std::to_string(k) + "," + std::to_string(kprime) + ")";
  z.source = from;
  z.target = to;
  z.component = [base, k, kprime](const SpacetimePtr& m) {
    return pad_matrix(base->object(m).dim, k, kprime);
  };
  return z;
}

LabelFunctor label_threshold(const Rat& mu0) {
  LabelFunctor l;
  l.name = "threshold";
  l.eval = [mu0](const SpacetimePtr& m) {
    for (auto p : m->carrier().points())
      if (m->mu(p) > mu0) return 2;
    return 1;
  };
  return l;
}

LabelFunctor label_wrap(std::map<int, int> g, int g_default) {
  LabelFunctor l;
  l.name = "wrap";
  l.eval = [g = std::move(g), g_default](const SpacetimePtr& m) {
    bool wraps = !full_rows(*m).empty();
    if (!wraps) return 1;
    auto it = g.find(m->N());
    return it != g.end() ? it->second : g_default;
  };
  return l;
}

SpacetimePtr restrict_spacetime(const SpacetimePtr& M, const PointSet& O) {
  return std::make_shared<const LatticeSpacetime>(M->N(), M->T(), M->mu_dense(), O);
}

TheoryPtr diagonal_theory(const TheoryPtr& base, const LabelFunctor& lambda) {
  auto th = std::make_shared<Theory>();
  th->name = base->name + "~[" + lambda.name + "]";
  auto lam = lambda.eval;
  th->object = [base, lam](const SpacetimePtr& m) {
    DataSpace d = base->object(m);
    int k = lam(m);
    return DataSpace(d.dim * k, block_diag(d.form, k));
  };
  th->morphism = [base, lam](const SpacetimeMorphism& psi) {
    int km = lam(psi.source()), kn = lam(psi.target());
    if (km > kn) throw std::logic_error("label functor is not monotone on this morphism");
    RatMat a = base->morphism(psi);
    RatMat r(a.rows() * kn, a.cols() * km);
    for (int c = 0; c < km; ++c)
      for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
          r.at(c * a.rows() + i, c * a.cols() + j) = a.at(i, j);
    return r;
  };
  // Ordinary diagonal: the label is constant across Cauchy wedges, so the
  // evolution acts blockwise.
  th->rce = [base, lam](const SpacetimePtr& m, const Perturbation& h) {
    return block_diag(base->rce(m, h), lam(m));
  };
  th->kinematic = [base, lam](const SpacetimePtr& m, const PointSet& o) {
    int km = lam(m);
    int ko = lam(restrict_spacetime(m, o));
    Subspace s = base->kinematic(m, o);
    std::size_t d = base->object(m).dim;
    RatMat rows(0, d * km);
    for (int c = 0; c < ko; ++c)
      for (std::size_t i = 0; i < s.basis().rows(); ++i) {
        std::vector<Rat> row(d * km, Rat(0));
        for (std::size_t j = 0; j < d; ++j) row[c * d + j] = s.basis().at(i, j);
        rows.append_row(row);
      }
    return Subspace::span(d * km, rows);
  };
  return th;
}

// ----- probe family ---------------------------------------------------------

ProbeFamily build_probe_family(const ProbeParams& params) {
  ProbeFamily pf;
  int T = params.T;

  std::vector<SpacetimePtr> fulls;
  for (int N : params.Ns)
    for (const Rat& mu : params.mu_values)
      fulls.push_back(std::make_shared<const LatticeSpacetime>(N, T, mu));
  for (auto& m : fulls) pf.objects.push_back(m);

  SpacetimePtr hot;
  if (params.hot_site && !fulls.empty()) {
    int N = params.Ns.front();
    std::vector<Rat> mu(std::size_t(N) * T, Rat(0));
    mu[std::size_t(T / 2) * N + 0] = params.hot_value;
    hot = std::make_shared<const LatticeSpacetime>(N, T, std::move(mu), std::nullopt);
    pf.objects.push_back(hot);
  }

  auto base = fulls.front();
  int N0 = base->N();

  // Region-spacetimes of the first full object: a slab, a diamond, a
  // two-component multi-diamond.
  PointSet slab(N0, T);
  for (int t = 3; t <= T - 4; ++t)
    for (int x = 0; x < N0; ++x) slab.set(Point{t, x});
  auto slab_st = restrict_spacetime(base, slab);
  pf.objects.push_back(slab_st);

  int mid = T / 2;
  PointSet dia = diamond(*base, BaseInterval{mid, 1, 3});
  auto dia_st = restrict_spacetime(base, dia);
  pf.objects.push_back(dia_st);

  PointSet multi = multi_diamond(
      *base, {BaseInterval{mid, 0, 1}, BaseInterval{mid, 2, 1}});
  auto multi_st = restrict_spacetime(base, multi);
  pf.objects.push_back(multi_st);

  // A cold slab inside the hot spacetime, missing the hot site.
  SpacetimePtr hot_slab;
  if (hot) {
    PointSet hs(N0, T);
    for (int t = 2; t <= T / 2 - 1; ++t)
      for (int x = 0; x < N0; ++x) hs.set(Point{t, x});
    hot_slab = restrict_spacetime(hot, hs);
    pf.objects.push_back(hot_slab);
  }

  // Interpolating chain between the first two coupling profiles at N0.
  SpacetimePtr chain_m, chain_m2;
  for (auto& m : fulls)
    if (m->N() == N0) {
      if (!chain_m)
        chain_m = m;
      else if (!chain_m2)
        chain_m2 = m;
    }

  // Morphisms: identities first.
  for (auto& m : pf.objects) pf.morphisms.push_back(SpacetimeMorphism::identity(m));

  std::size_t id_slab = 0, id_dia = 0;
  auto add = [&](SpacetimeMorphism m) {
    pf.morphisms.push_back(std::move(m));
    return pf.morphisms.size() - 1;
  };

  std::size_t rot = add(SpacetimeMorphism::rigid(base, base, 0, 1));       // rotation
  id_slab = add(SpacetimeMorphism::inclusion(slab_st, base));              // Cauchy
  id_dia = add(SpacetimeMorphism::inclusion(dia_st, base));                // diamond
  add(SpacetimeMorphism::inclusion(multi_st, base));                       // multi-diamond
  std::size_t trans = add(SpacetimeMorphism::rigid(slab_st, base, 2, 0));  // time translation
  add(SpacetimeMorphism::rigid(dia_st, base, 1, 2));  // moved diamond
  if (hot_slab) add(SpacetimeMorphism::inclusion(hot_slab, hot));

  if (chain_m && chain_m2) {
    auto chain = make_interpolating_chain(chain_m, chain_m2);
    pf.objects.push_back(chain.future_slab);
    pf.objects.push_back(chain.interpolant);
    pf.objects.push_back(chain.past_slab);
    for (auto& m : chain.morphisms) pf.morphisms.push_back(m);
    pf.morphisms.push_back(SpacetimeMorphism::identity(chain.interpolant));
  }
  if (hot) {
    // A Cauchy chain crossing the label jump of the threshold functor.
    auto cold = std::make_shared<const LatticeSpacetime>(N0, T, Rat(0));
    bool have_cold = false;
    for (auto& m : pf.objects)
      if (*m == *cold) have_cold = true;
    auto chain = make_interpolating_chain(hot, have_cold ? fulls.front() : cold);
    pf.objects.push_back(chain.future_slab);
    pf.objects.push_back(chain.interpolant);
    pf.objects.push_back(chain.past_slab);
    for (auto& m : chain.morphisms) pf.morphisms.push_back(m);
  }

  // Composable pairs: rotation after inclusions; translation after nothing.
  pf.composable.push_back({rot, id_slab});
  pf.composable.push_back({rot, id_dia});
  pf.composable.push_back({rot, rot});
  (void)trans;
  return pf;
}

// ----- law checks -----------------------------------------------------------

namespace {

bool matrix_iso(const RatMat& m) { return m.rows() == m.cols() && m.rank() == m.rows(); }

}  // namespace

std::optional<LawFailure> check_functor_laws(const Theory& th, const ProbeFamily& probes) {
  for (std::size_t i = 0; i < probes.objects.size(); ++i) {
    RatMat id = th.morphism(SpacetimeMorphism::identity(probes.objects[i]));
    if (!id.is_identity())
      return LawFailure{"identity morphism not mapped to identity at object " +
                        std::to_string(i)};
  }
  for (auto [oi, ii] : probes.composable) {
    const auto& outer = probes.morphisms[oi];
    const auto& inner = probes.morphisms[ii];
    if (!(*outer.source() == *inner.target())) continue;
    auto comp = SpacetimeMorphism::compose(outer, inner);
    if (!(th.morphism(comp) == th.morphism(outer) * th.morphism(inner)))
      return LawFailure{"composition law fails at pair (" + std::to_string(oi) + "," +
                        std::to_string(ii) + ")"};
  }
  return std::nullopt;
}

std::optional<LawFailure> check_timeslice(const Theory& th, const ProbeFamily& probes) {
  for (std::size_t i = 0; i < probes.morphisms.size(); ++i) {
    const auto& psi = probes.morphisms[i];
    if (!is_cauchy_morphism(psi)) continue;
    if (!matrix_iso(th.morphism(psi)))
      return LawFailure{"Cauchy probe morphism " + std::to_string(i) +
                        " is not mapped to an isomorphism"};
  }
  return std::nullopt;
}

std::optional<LawFailure> check_naturality(const NaturalTransformation& z,
                                           const ProbeFamily& probes) {
  for (std::size_t i = 0; i < probes.morphisms.size(); ++i) {
    const auto& psi = probes.morphisms[i];
    RatMat lhs = z.target->morphism(psi) * z.component(psi.source());
    RatMat rhs = z.component(psi.target()) * z.source->morphism(psi);
    if (!(lhs == rhs))
      return LawFailure{"naturality square fails at morphism " + std::to_string(i)};
  }
  return std::nullopt;
}

std::vector<bool> iso_components(const NaturalTransformation& z, const ProbeFamily& probes) {
  std::vector<bool> out;
  for (const auto& m : probes.objects) out.push_back(matrix_iso(z.component(m)));
  return out;
}

std::optional<LawFailure> check_label_monotone(const LabelFunctor& lambda,
                                               const ProbeFamily& probes) {
  for (std::size_t i = 0; i < probes.morphisms.size(); ++i) {
    const auto& psi = probes.morphisms[i];
    if (lambda.eval(psi.source()) > lambda.eval(psi.target()))
      return LawFailure{"label decreases along morphism " + std::to_string(i)};
  }
  return std::nullopt;
}

SpassOutcome spass_counterexample(const TheoryPtr& base, const LabelFunctor& lambda,
                                  const ProbeFamily& probes) {
  SpassOutcome out;
  auto fail = [&](const std::string& s) {
    out.ok = false;
    out.failures.push_back(s);
  };

  int lmin = 1 << 30, lmax = 0;
  for (const auto& m : probes.objects) {
    int l = lambda.eval(m);
    out.labels.push_back(l);
    lmin = std::min(lmin, l);
    lmax = std::max(lmax, l);
  }
  if (lmin == lmax) throw std::domain_error("label functor is constant on the probe family");

  if (auto f = check_label_monotone(lambda, probes)) fail("label: " + f->what);

  auto diag = diagonal_theory(base, lambda);
  auto top = power_theory(base, lmax);

  if (auto f = check_functor_laws(*diag, probes)) fail("diagonal functor: " + f->what);

  auto lam = lambda.eval;
  NaturalTransformation first;
  first.name = "into-diagonal";
  first.source = base;
  first.target = diag;
  first.component = [base, lam](const SpacetimePtr& m) {
    return pad_matrix(base->object(m).dim, 1, lam(m));
  };
  NaturalTransformation second;
  second.name = "diagonal-into-top";
  second.source = diag;
  second.target = top;
  second.component = [base, lam, lmax](const SpacetimePtr& m) {
    return pad_matrix(base->object(m).dim, lam(m), lmax);
  };

  if (auto f = check_naturality(first, probes)) fail("first arm: " + f->what);
  if (auto f = check_naturality(second, probes)) fail("second arm: " + f->what);

  out.first_iso_at = iso_components(first, probes);
  out.second_iso_at = iso_components(second, probes);

  bool first_partial = false, second_partial = false;
  for (std::size_t i = 0; i < probes.objects.size(); ++i) {
    std::size_t d = base->object(probes.objects[i]).dim;
    bool expect_first = (out.labels[i] == 1) || d == 0;
    bool expect_second = (out.labels[i] == lmax) || d == 0;
    if (out.first_iso_at[i] != expect_first)
      fail("first arm iso pattern unexpected at object " + std::to_string(i));
    if (out.second_iso_at[i] != expect_second)
      fail("second arm iso pattern unexpected at object " + std::to_string(i));
    first_partial = first_partial || out.first_iso_at[i];
    second_partial = second_partial || out.second_iso_at[i];
  }
  if (!first_partial) fail("first arm is not a partial isomorphism on these probes");
  if (!second_partial) fail("second arm is not a partial isomorphism on these probes");

  for (std::size_t i = 0; i < probes.objects.size(); ++i) {
    const auto& m = probes.objects[i];
    std::size_t d = base->object(m).dim;
    RatMat comp = second.component(m) * first.component(m);
    if (!(comp == pad_matrix(d, 1, lmax))) fail("composite is not pad(1,max)");
    if (d > 0 && matrix_iso(comp))
      fail("composite is an isomorphism at a nontrivial object " + std::to_string(i));
  }
  out.notes.push_back("labels span [" + std::to_string(lmin) + "," + std::to_string(lmax) +
                      "] across " + std::to_string(probes.objects.size()) + " probe objects");
  return out;
}

}  // namespace loccov
