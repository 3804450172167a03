#include <random>

#include "suites_detail.hpp"

namespace loccov::detail {

namespace {

TestFunction rand_testfn(std::mt19937_64& rng, const KgModel& kg, const SpacetimePtr& M,
                         int max_sites = 3) {
  TestFunction f{M, {}};
  auto pts = kg.margin_interior(*M).points();
  int k = 1 + int(rng() % max_sites);
  for (int i = 0; i < k; ++i) {
    int num = 1 + int(rng() % 4);
    f.values[pts[rng() % pts.size()]] = rat_of((rng() & 1) ? num : -num, 1 + int(rng() % 2));
  }
  return f;
}

}  // namespace

Checks suite_kg_functor(const ExperimentConfig& cfg) {
  Checks checks;
  auto kg = std::make_shared<const KgModel>(cfg.margin, cfg.xi, cfg.mass2);

  checks.push_back(Check{"kg/functor-laws", "functor-identity-and-composition", [=] {
                           auto probes = build_probe_family(cfg.probes);
                           auto th = kg_theory(kg);
                           if (auto f = check_functor_laws(*th, probes))
                             return fail({{"what", f->what}});
                           return pass({{"objects", probes.objects.size()},
                                        {"morphisms", probes.morphisms.size()}});
                         }});

  checks.push_back(Check{
      "kg/timeslice", "cauchy-morphisms-become-isomorphisms", [=] {
        auto probes = build_probe_family(cfg.probes);
        auto th = kg_theory(kg);
        if (auto f = check_timeslice(*th, probes)) return fail({{"what", f->what}});
        // Every full-circle probe object must carry the full 2N-dimensional
        // value, so Cauchy arms are rank-2N isomorphisms.
        Tally tally;
        for (const auto& m : probes.objects) {
          if (!m->full_carrier()) continue;
          tally.count(th->object(m).dim == std::size_t(2) * m->N(), [&] {
            return nlohmann::json{{"N", m->N()}, {"dim", th->object(m).dim}};
          });
        }
        return tally.outcome();
      }});

  checks.push_back(Check{
      "kg/isotony", "kinematic-net-isotony", [=] {
        Tally tally;
        auto M = std::make_shared<const LatticeSpacetime>(cfg.kg_N, cfg.kg_T, Rat(1));
        int mid = cfg.kg_T / 2;
        for (int w = 1; w <= 3; ++w)
          for (int x0 = 0; x0 < cfg.kg_N; ++x0) {
            PointSet o1 = diamond(*M, BaseInterval{mid, x0, w});
            PointSet o2 = diamond(*M, BaseInterval{mid, x0, std::min(w + 2, cfg.kg_N - 1)});
            if (!o1.subset_of(o2)) continue;
            tally.count(
                kg->kinematic_subspace(M, o1).leq(kg->kinematic_subspace(M, o2)),
                [&] { return nlohmann::json{{"x0", x0}, {"w", w}}; });
          }
        PointSet slab(cfg.kg_N, cfg.kg_T);
        for (int t = mid - 2; t <= mid + 2; ++t)
          for (int x = 0; x < cfg.kg_N; ++x) slab.set(Point{t, x});
        for (int w = 1; w <= 3; ++w) {
          PointSet o1 = diamond(*M, BaseInterval{mid, 0, w});
          tally.count(kg->kinematic_subspace(M, o1).leq(kg->kinematic_subspace(M, slab)),
                      [&] { return nlohmann::json{{"w", w}, {"outer", "slab"}}; });
        }
        return tally.outcome();
      }});

  checks.push_back(Check{
      "kg/kinematic-covariance", "kinematic-net-covariance", [=] {
        Tally tally;
        auto probes = build_probe_family(cfg.probes);
        auto th = kg_theory(kg);
        for (const auto& psi : probes.morphisms) {
          const auto& src = psi.source();
          PointSet inside = kg->margin_interior(*src);
          // Probe regions: diamonds around the middle of the source.
          for (int w = 1; w <= 2; ++w) {
            BaseInterval b{src->T() / 2, 1, w};
            PointSet O(src->N(), src->T());
            bool ok_region = true;
            try {
              O = diamond(*src, b);
            } catch (const std::exception&) {
              ok_region = false;
            }
            if (!ok_region || O.empty() || !O.subset_of(inside)) continue;
            PointSet img = psi.apply(O);
            if (!img.subset_of(kg->margin_interior(*psi.target()))) continue;
            auto lhs = push_subspace(kg->morphism_matrix(psi), th->kinematic(src, O));
            auto rhs = th->kinematic(psi.target(), img);
            tally.count(lhs == rhs, [&] {
              return nlohmann::json{{"w", w}, {"tgt", psi.target()->N()}};
            });
          }
        }
        return tally.outcome();
      }});

  checks.push_back(Check{
      "kg/sigma-disjoint", "pairing-vanishes-at-causal-disjointness", [=] {
        Tally tally;
        auto M = std::make_shared<const LatticeSpacetime>(cfg.kg_N, cfg.kg_T, Rat(1));
        auto pts = kg->margin_interior(*M).points();
        for (std::size_t i = 0; i < pts.size(); ++i) {
          PointSet pi = PointSet::of(M->N(), M->T(), {pts[i]});
          PointSet hull = causal_hull(*M, pi);
          TestFunction fi{M, {{pts[i], Rat(1)}}};
          for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (hull.test(pts[j])) continue;
            TestFunction fj{M, {{pts[j], Rat(1)}}};
            tally.count(kg->pairing(fi, fj) == 0 && kg->pairing(fj, fi) == 0, [&] {
              return nlohmann::json{{"p", {pts[i].t, pts[i].x}}, {"q", {pts[j].t, pts[j].x}}};
            });
          }
        }
        return tally.outcome();
      }});

  checks.push_back(Check{
      "kg/sigma-structure", "pairing-antisymmetry-and-two-row-form", [=] {
        Tally tally;
        std::mt19937_64 rng(cfg.seed ^ 0x2001);
        for (const Rat& mu : {Rat(0), Rat(1), rat_of(1, 3)}) {
          auto M = std::make_shared<const LatticeSpacetime>(cfg.kg_N, cfg.kg_T, mu);
          for (int i = 0; i < 25; ++i) {
            TestFunction f = rand_testfn(rng, *kg, M), g = rand_testfn(rng, *kg, M);
            Rat s = kg->pairing(f, g);
            tally.count(s == -kg->pairing(g, f),
                        [&] { return nlohmann::json{{"part", "antisymmetry"}}; });
            auto ef = KgModel::data_at(M->N(), kg->causal_propagator(f),
                                       KgModel::reference_row(*M));
            auto eg = KgModel::data_at(M->N(), kg->causal_propagator(g),
                                       KgModel::reference_row(*M));
            tally.count(s == KgModel::omega(M->N(), ef, eg),
                        [&] { return nlohmann::json{{"part", "two-row-form"}}; });
          }
        }
        return tally.outcome();
      }});

  checks.push_back(Check{
      "kg/conservation", "two-row-form-row-independence", [=] {
        Tally tally;
        std::mt19937_64 rng(cfg.seed ^ 0x2002);
        auto M = std::make_shared<const LatticeSpacetime>(cfg.kg_N, cfg.kg_T, rat_of(2, 3));
        int N = M->N();
        Grid mu = kg->effective_mu(*M);
        for (int i = 0; i < 20; ++i) {
          std::vector<Rat> da(2 * N), db(2 * N);
          for (auto* d : {&da, &db})
            for (auto& v : *d) v = rat_of(int(rng() % 7) - 3, 1 + int(rng() % 2));
          Grid u = KgModel::evolve_from_pair(N, M->T(), mu, KgModel::reference_row(*M), da);
          Grid v = KgModel::evolve_from_pair(N, M->T(), mu, KgModel::reference_row(*M), db);
          Rat w0 = KgModel::omega(N, da, db);
          for (int t = 0; t + 1 < M->T(); ++t) {
            Rat wt = KgModel::omega(N, KgModel::data_at(N, u, t), KgModel::data_at(N, v, t));
            tally.count(wt == w0, [&] { return nlohmann::json{{"row", t}}; });
          }
        }
        return tally.outcome();
      }});

  checks.push_back(Check{
      "kg/propagation-supports", "green-function-support-cones", [=] {
        Tally tally;
        for (const Rat& mu : {Rat(0), Rat(1)}) {
          auto M = std::make_shared<const LatticeSpacetime>(6, 10, mu);
          for (auto p : kg->margin_interior(*M).points()) {
            TestFunction f{M, {{p, Rat(1)}}};
            Grid ret = kg->retarded(f), adv = kg->advanced(f);
            PointSet jp = causal_future(*M, PointSet::of(6, 10, {p}));
            PointSet jm = causal_past(*M, PointSet::of(6, 10, {p}));
            bool ok = true;
            for (int t = 0; t < 10 && ok; ++t)
              for (int x = 0; x < 6 && ok; ++x) {
                Point q{t, x};
                if (grid_at(ret, 6, q) != 0 && !jp.test(q)) ok = false;
                if (grid_at(adv, 6, q) != 0 && !jm.test(q)) ok = false;
              }
            tally.count(ok, [&] { return nlohmann::json{{"p", {p.t, p.x}}}; });
          }
        }
        return tally.outcome();
      }});

  checks.push_back(Check{
      "kg/propagator-identities", "wave-operator-and-propagator-identities", [=] {
        Tally tally;
        std::mt19937_64 rng(cfg.seed ^ 0x2003);
        auto M = std::make_shared<const LatticeSpacetime>(cfg.kg_N, cfg.kg_T, Rat(1));
        int N = M->N(), T = M->T();
        Grid mu = kg->effective_mu(*M);
        for (int i = 0; i < 20; ++i) {
          TestFunction f = rand_testfn(rng, *kg, M);
          Grid ef = kg->causal_propagator(f);
          Grid pef = kg->apply_wave_operator(*M, ef);
          bool solves = true;
          for (int t = 1; t <= T - 2 && solves; ++t)
            for (int x = 0; x < N && solves; ++x)
              if (grid_at(pef, N, Point{t, x}) != 0) solves = false;
          tally.count(solves, [&] { return nlohmann::json{{"part", "E-solves"}}; });

          // g interior away from the margins: E(P g) = 0.
          Grid g(std::size_t(N) * T, Rat(0));
          for (int k = 0; k < 4; ++k) {
            int t = cfg.margin + 1 + int(rng() % (T - 2 * cfg.margin - 2));
            int x = int(rng() % N);
            grid_at(g, N, Point{t, x}) = rat_of(int(rng() % 5) - 2);
          }
          Grid pg = kg->apply_wave_operator(*M, g);
          std::map<Point, Rat> pg_sparse;
          for (int t = 0; t < T; ++t)
            for (int x = 0; x < N; ++x)
              if (grid_at(pg, N, Point{t, x}) != 0) pg_sparse[Point{t, x}] = grid_at(pg, N, Point{t, x});
          Grid epg = KgModel::retarded(N, T, mu, pg_sparse);
          Grid eadv = KgModel::advanced(N, T, mu, pg_sparse);
          bool zero = true;
          for (std::size_t k = 0; k < epg.size(); ++k)
            if (epg[k] - eadv[k] != 0) zero = false;
          tally.count(zero, [&] { return nlohmann::json{{"part", "E-after-P"}}; });
        }
        // Surjectivity onto solutions: a two-row source reproduces any
        // solution.
        for (int i = 0; i < 10; ++i) {
          std::vector<Rat> d(2 * N);
          for (auto& v : d) v = rat_of(int(rng() % 5) - 2);
          Grid u = KgModel::evolve_from_pair(N, T, mu, KgModel::reference_row(*M), d);
          auto f = KgModel::solution_to_source(N, u, cfg.margin);
          Grid ret = KgModel::retarded(N, T, mu, f);
          Grid adv = KgModel::advanced(N, T, mu, f);
          bool equal = true;
          for (std::size_t k = 0; k < u.size(); ++k)
            if (ret[k] - adv[k] != u[k]) equal = false;
          tally.count(equal, [&] { return nlohmann::json{{"part", "surjectivity"}}; });
        }
        return tally.outcome();
      }});

  return checks;
}

}  // namespace loccov::detail
