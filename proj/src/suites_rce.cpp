#include <random>

#include "suites_detail.hpp"
#include "theory.hpp"

namespace loccov::detail {

namespace {

Perturbation rand_pert(std::mt19937_64& rng, const SpacetimePtr& M, int row_lo, int row_hi,
                       int max_sites) {
  Perturbation h{M, {}};
  int k = 1 + int(rng() % max_sites);
  for (int i = 0; i < k; ++i) {
    Point p{row_lo + int(rng() % (row_hi - row_lo + 1)), int(rng() % M->N())};
    int num = 1 + int(rng() % 3);
    h.delta_mu[p] = rat_of((rng() & 1) ? num : -num, 1 + int(rng() % 2));
  }
  return h;
}

// Shared precomputation for the locality sweep: all admissible diamonds
// with their kinematic generators and complements.
struct LocalityTable {
  SpacetimePtr M;
  std::shared_ptr<const KgModel> kg;
  std::vector<PointSet> regions;
  std::vector<RatMat> gens;       // 2N x |O|
  std::vector<PointSet> perps;    // O^perp within the margin interior
  std::vector<Point> sites;       // admissible single sites
};

std::shared_ptr<LocalityTable> build_locality_table(const ExperimentConfig& cfg,
                                                    std::shared_ptr<const KgModel> kg) {
  auto tab = std::make_shared<LocalityTable>();
  tab->kg = kg;
  tab->M = std::make_shared<const LatticeSpacetime>(cfg.rce_N, cfg.rce_T, Rat(1));
  const auto& M = tab->M;
  PointSet inside = kg->margin_interior(*M);
  tab->sites = inside.points();
  for (int row = cfg.margin + 1; row <= cfg.rce_T - 2 - cfg.margin; ++row)
    for (int w = 1; w <= std::min(3, cfg.rce_N - 1); ++w)
      for (int x0 = 0; x0 < cfg.rce_N; ++x0) {
        PointSet O = diamond(*M, BaseInterval{row, x0, w});
        if (!O.subset_of(inside)) continue;
        RatMat g(std::size_t(2) * cfg.rce_N, O.count());
        std::size_t j = 0;
        for (auto p : O.points()) g.set_col(j++, kg->delta_solution_data(*M, p));
        tab->regions.push_back(O);
        tab->gens.push_back(std::move(g));
        tab->perps.push_back(causal_complement(*M, O) & inside);
      }
  return tab;
}

bool fixes_generators(const RatMat& r, const RatMat& g) {
  return ((r * g) - g).is_zero();
}

}  // namespace

Checks suite_rce_laws(const ExperimentConfig& cfg) {
  Checks checks;
  auto kg = std::make_shared<const KgModel>(cfg.margin, cfg.xi, cfg.mass2);

  checks.push_back(Check{
      "rce/independence", "evolution-independent-of-pair-choice", [=] {
        Tally tally;
        std::mt19937_64 rng(cfg.seed ^ 0x3001);
        for (const Rat& mu : {Rat(1), Rat(0)}) {
          auto M = std::make_shared<const LatticeSpacetime>(cfg.rce_N, cfg.rce_T, mu);
          int lo = cfg.margin + 1, hi = cfg.rce_T - cfg.margin - 3;
          for (int i = 0; i < cfg.rce_independence_samples / 2 + 1; ++i) {
            Perturbation h = rand_pert(rng, M, lo, hi, 3);
            auto ups = admissible_pairs(*kg, h, +1);
            auto downs = admissible_pairs(*kg, h, -1);
            if (ups.size() < 2 || downs.size() < 2) continue;
            tally.count(rce_independence_check(*kg, M, h, ups.front(), downs.back(),
                                               ups.back(), downs.front()),
                        [&] { return nlohmann::json{{"sample", i}}; });
          }
        }
        return tally.outcome();
      }});

  checks.push_back(Check{"rce/pair-precondition", "straddling-pair-rejected", [=] {
                           auto M = std::make_shared<const LatticeSpacetime>(
                               cfg.rce_N, cfg.rce_T, Rat(1));
                           Perturbation h{M, {{Point{cfg.rce_T / 2, 0}, Rat(1)}}};
                           try {
                             rce_matrix(*kg, M, h, cfg.rce_T / 2 - 1, 0);
                             return fail({{"what", "straddling pair was accepted"}});
                           } catch (const std::domain_error&) {
                             return pass();
                           }
                         }});

  // Locality sweep, split by perturbation shape for parallelism.
  auto table = build_locality_table(cfg, kg);
  checks.push_back(Check{
      "rce/locality-single", "kinematic-values-fixed-by-complement-single-site", [=] {
        Tally tally;
        for (auto q : table->sites) {
          Perturbation h{table->M, {{q, Rat(1)}}};
          RatMat r = rce_matrix(*kg, table->M, h);
          for (std::size_t i = 0; i < table->regions.size(); ++i) {
            if (!table->perps[i].test(q)) continue;
            tally.count(fixes_generators(r, table->gens[i]), [&] {
              return nlohmann::json{{"q", {q.t, q.x}},
                                    {"O", points_str(table->regions[i])}};
            });
          }
        }
        return tally.outcome();
      }});
  for (int band = 0; band < 4; ++band)
    checks.push_back(Check{
        "rce/locality-double-" + std::to_string(band),
        "kinematic-values-fixed-by-complement-double-site", [=] {
          Tally tally;
          const auto& sites = table->sites;
          for (std::size_t a = band; a < sites.size(); a += 4)
            for (std::size_t b = a + 1; b < sites.size(); ++b) {
              Perturbation h{table->M, {{sites[a], Rat(1)}, {sites[b], Rat(1)}}};
              RatMat r = rce_matrix(*kg, table->M, h);
              for (std::size_t i = 0; i < table->regions.size(); ++i) {
                if (!table->perps[i].test(sites[a]) || !table->perps[i].test(sites[b]))
                  continue;
                tally.count(fixes_generators(r, table->gens[i]), [&] {
                  return nlohmann::json{{"q1", {sites[a].t, sites[a].x}},
                                        {"q2", {sites[b].t, sites[b].x}},
                                        {"O", points_str(table->regions[i])}};
                });
              }
            }
          return tally.outcome();
        }});

  checks.push_back(Check{
      "rce/covariance", "evolution-commutes-with-embeddings", [=] {
        Tally tally;
        std::mt19937_64 rng(cfg.seed ^ 0x3002);
        int N = cfg.rce_N, T = cfg.rce_T;
        auto M = std::make_shared<const LatticeSpacetime>(N, T, Rat(1));
        PointSet slab(N, T);
        for (int t = 2; t <= T - 3; ++t)
          for (int x = 0; x < N; ++x) slab.set(Point{t, x});
        auto slab_st = restrict_spacetime(M, slab);
        std::vector<SpacetimeMorphism> probes;
        probes.push_back(SpacetimeMorphism::rigid(M, M, 0, 1));
        probes.push_back(SpacetimeMorphism::rigid(M, M, 0, 3));
        probes.push_back(SpacetimeMorphism::inclusion(slab_st, M));
        PointSet slab2(N, T);
        for (int t = 2; t <= T - 5; ++t)
          for (int x = 0; x < N; ++x) slab2.set(Point{t, x});
        probes.push_back(SpacetimeMorphism::rigid(restrict_spacetime(M, slab2), M, 2, 1));
        for (const auto& psi : probes) {
          for (int i = 0; i < 4; ++i) {
            Perturbation h =
                rand_pert(rng, psi.source(), cfg.margin + 2, T - cfg.margin - 5, 2);
            tally.count(rce_covariance_check(*kg, psi, h),
                        [&] { return nlohmann::json{{"probe_target_N", psi.target()->N()}}; });
          }
        }
        return tally.outcome();
      }});

  checks.push_back(Check{
      "rce/relabeling", "coupling-translation-acts-trivially", [=] {
        // The time-relabelled couplings induce a compactly supported
        // perturbation; the evolution it generates is compared with the
        // identity exactly.
        int N = cfg.rce_N, T = cfg.rce_T;
        std::vector<Rat> mu(std::size_t(N) * T, Rat(1));
        for (int x = 0; x < N; ++x) mu[std::size_t(T / 2) * N + x] = rat_of(3, 2);
        auto M = std::make_shared<const LatticeSpacetime>(N, T, std::move(mu), std::nullopt);
        Perturbation h = relabeling_perturbation(M);
        RatMat r = rce_matrix(*kg, M, h);
        if (r.is_identity()) return pass({{"note", "identity"}});
        nlohmann::json w;
        w["note"] =
            "the relabelled presentation evolves differently: on the fixed "
            "finite lattice no coupling translation is induced by a "
            "boundary-fixing automorphism, so triviality fails";
        for (std::size_t i = 0; i < r.rows(); ++i)
          for (std::size_t j = 0; j < r.cols(); ++j)
            if (r.at(i, j) != (i == j ? 1 : 0)) {
              w["first_divergence"] = {{"row", i}, {"col", j}, {"value", rat_str(r.at(i, j))}};
              return fail(w);
            }
        return fail(w);
      }});

  checks.push_back(Check{
      "rce/generator", "evolution-derivative-structure", [=] {
        Tally tally;
        for (const Rat& mu : {Rat(0), Rat(1)}) {
          auto M = std::make_shared<const LatticeSpacetime>(cfg.rce_N, cfg.rce_T, mu);
          Point p{cfg.rce_T / 2, 1}, q{cfg.rce_T / 2 - 2, 3};
          // Affine dependence and interpolation agreement.
          RatMat gp = rce_generator(*kg, M, p);
          RatMat gp2 = rce_generator_of(*kg, M, Perturbation{M, {{p, Rat(1)}}});
          tally.count(gp == gp2, [&] { return nlohmann::json{{"part", "interpolation"}}; });
          // Superposition of sites on distinct rows: outcome recorded.
          RatMat gq = rce_generator(*kg, M, q);
          RatMat gpq =
              rce_generator_of(*kg, M, Perturbation{M, {{p, Rat(1)}, {q, Rat(1)}}});
          tally.extra["superposition_linear_mu_" + rat_str(mu)] = (gpq == gp + gq);
          if (mu == 0) {
            // Action on constant data, recorded for the massless background.
            std::vector<Rat> cst(std::size_t(2) * cfg.rce_N, Rat(1));
            RatMat v(std::size_t(2) * cfg.rce_N, 1);
            v.set_col(0, cst);
            RatMat gv = gp * v;
            tally.extra["massless_generator_on_constants_nonzero"] = !gv.is_zero();
          }
        }
        return tally.outcome();
      }});

  checks.push_back(Check{
      "rce/wedges", "cauchy-wedges-well-formed", [=] {
        Tally tally;
        std::mt19937_64 rng(cfg.seed ^ 0x3003);
        auto M = std::make_shared<const LatticeSpacetime>(cfg.rce_N, cfg.rce_T, Rat(1));
        for (int i = 0; i < 12; ++i) {
          Perturbation h =
              rand_pert(rng, M, cfg.margin + 1, cfg.rce_T - cfg.margin - 3, 2);
          auto w = wedge_regions(*kg, h);
          PointSet supp(M->N(), M->T());
          for (const auto& [p, v] : h.delta_mu)
            if (v != 0) supp.set(p);
          tally.count(w.plus == M->carrier() - causal_past(*M, supp) &&
                          w.minus == M->carrier() - causal_future(*M, supp),
                      [&] { return nlohmann::json{{"sample", i}}; });
        }
        Perturbation h0{M, {}};
        auto w0 = wedge_regions(*kg, h0);
        tally.count(w0.plus == M->carrier() && w0.minus == M->carrier(),
                    [] { return nlohmann::json{{"part", "zero"}}; });
        // A support at the temporal boundary margin must be rejected.
        Perturbation bad{M, {{Point{1, 0}, Rat(1)}}};
        bool rejected = false;
        try {
          wedge_regions(*kg, bad);
        } catch (const std::domain_error&) {
          rejected = true;
        }
        tally.count(rejected, [] { return nlohmann::json{{"part", "margin"}}; });
        return tally.outcome();
      }});

  checks.push_back(Check{
      "rce/intertwine", "subtheory-embeddings-intertwine-the-evolution", [=] {
        Tally tally;
        auto M = std::make_shared<const LatticeSpacetime>(cfg.rce_N, cfg.rce_T, Rat(0));
        Perturbation h{M, {{Point{cfg.rce_T / 2, 2}, Rat(1)}}};

        // Identity and padding intertwine.
        auto base = kg_theory(kg);
        auto sq = power_theory(base, 2);
        RatMat ra = base->rce(M, h);
        RatMat rb = sq->rce(M, h);
        std::size_t d = base->object(M).dim;
        RatMat padm = pad_matrix(d, 1, 2);
        tally.count(rb * padm == padm * ra,
                    [] { return nlohmann::json{{"part", "padding"}}; });
        tally.count(ra * RatMat::identity(d) == RatMat::identity(d) * ra,
                    [] { return nlohmann::json{{"part", "identity"}}; });

        // Two coupling variants agree on the unperturbed background, but the
        // identity map fails to intertwine their evolutions: the derivative
        // couplings differ.
        KgModel kgA(cfg.margin, Rat(1), Rat(1));
        KgModel kgB(cfg.margin, Rat(2), Rat(1));
        RatMat evA = rce_matrix(kgA, M, h);
        RatMat evB = rce_matrix(kgB, M, h);
        tally.count(kgA.object(M).ds == kgB.object(M).ds,
                    [] { return nlohmann::json{{"part", "same-object"}}; });
        tally.count(!(evA == evB),
                    [] { return nlohmann::json{{"part", "obvious-iso-fails"}}; });
        RatMat gA = rce_generator(kgA, M, Point{cfg.rce_T / 2, 2});
        RatMat gB = rce_generator(kgB, M, Point{cfg.rce_T / 2, 2});
        tally.count(gB == gA * Rat(2),
                    [] { return nlohmann::json{{"part", "generator-scales"}}; });
        return tally.outcome();
      }});

  checks.push_back(Check{"rce/omega-preservation", "every-evolution-preserves-the-form", [] {
                           auto s = rce_stats();
                           nlohmann::json w{{"computed", s.computed},
                                            {"verified", s.omega_verified}};
                           return (s.computed == s.omega_verified) ? pass(w) : fail(w);
                         }});

  return checks;
}

}  // namespace loccov::detail
