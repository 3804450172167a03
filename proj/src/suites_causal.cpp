#include <random>
#include <sstream>

#include "suites_detail.hpp"

namespace loccov::detail {

std::string points_str(const PointSet& s) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (auto p : s.points()) {
    if (!first) os << " ";
    first = false;
    os << "(" << p.t << "," << p.x << ")";
  }
  os << "}";
  return os.str();
}

nlohmann::json vec_json(const std::vector<Rat>& v) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& x : v) j.push_back(rat_str(x));
  return j;
}

namespace {

std::vector<PointSet> region_family(const LatticeSpacetime& M, int random_count,
                                    uint64_t seed) {
  std::vector<PointSet> fam;
  auto pts = M.carrier().points();
  int N = M.N(), T = M.T();
  for (auto p : pts) fam.push_back(PointSet::of(N, T, {p}));
  if (M.full_carrier()) {
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        fam.push_back(PointSet::of(N, T, {pts[i], pts[j]}));
    for (int t = 0; t < T; ++t)
      for (int w = 1; w < N; ++w) fam.push_back(interval_points(M, BaseInterval{t, 0, w}));
  } else {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        if (rng() % 4 == 0) fam.push_back(PointSet::of(N, T, {pts[i], pts[j]}));
  }
  std::mt19937_64 rng(seed);
  for (int k = 0; k < random_count; ++k) {
    PointSet s(N, T);
    int size = 1 + int(rng() % 5);
    for (int i = 0; i < size; ++i) s.set(pts[rng() % pts.size()]);
    fam.push_back(s);
  }
  return fam;
}

std::vector<BaseInterval> base_family(const LatticeSpacetime& M, int max_width) {
  std::vector<BaseInterval> bases;
  for (int t = 1; t <= M.T() - 2; ++t)
    for (int w = 1; w <= std::min(max_width, M.N() - 1); ++w)
      for (int x0 = 0; x0 < M.N(); ++x0) {
        BaseInterval b{t, x0, w};
        if (interval_points(M, b).subset_of(M.carrier())) bases.push_back(b);
      }
  return bases;
}

struct Battery {
  Tally perp_idem, perp_ext, perpperp_convex, dev_in_perpperp, dev_row_equal;
  Tally diamond_complete, diamond_convex, exhaustion, cauchy_rows;
};

void run_battery(const LatticeSpacetime& M, int random_regions, uint64_t seed, Battery& b) {
  auto fam = region_family(M, random_regions, seed);
  for (const auto& S : fam) {
    PointSet perp = causal_complement(M, S);
    PointSet perp2 = causal_complement(M, perp);
    PointSet perp3 = causal_complement(M, perp2);
    b.perp_idem.count(perp == perp3,
                      [&] { return nlohmann::json{{"S", points_str(S)}}; });
    b.perp_ext.count(S.subset_of(perp2),
                     [&] { return nlohmann::json{{"S", points_str(S)}}; });
    b.perpperp_convex.count(is_causally_convex(M, perp2),
                            [&] { return nlohmann::json{{"S", points_str(S)}}; });
    PointSet dev = domain_of_dependence(M, S);
    b.dev_in_perpperp.count(dev.subset_of(perp2),
                            [&] { return nlohmann::json{{"S", points_str(S)}}; });
  }
  // Equality of the development with the double complement for proper
  // subsets of a single full row.
  for (int t : full_rows(M))
    for (int w = 1; w < M.N(); ++w)
      for (int x0 = 0; x0 < M.N(); x0 += std::max(1, M.N() / 4)) {
        PointSet S = interval_points(M, BaseInterval{t, x0, w});
        PointSet dd = causal_complement(M, causal_complement(M, S));
        b.dev_row_equal.count(domain_of_dependence(M, S) == dd, [&] {
          return nlohmann::json{{"row", t}, {"x0", x0}, {"w", w}};
        });
      }

  auto bases = base_family(M, 3);
  std::mt19937_64 rng(seed ^ 0xabcdefull);
  for (const auto& base : bases) {
    PointSet D = diamond(M, base);
    PointSet dd = causal_complement(M, causal_complement(M, D));
    b.diamond_complete.count(D == dd, [&] {
      return nlohmann::json{{"row", base.row}, {"x0", base.x0}, {"w", base.width}};
    });
    b.diamond_convex.count(is_causally_convex(M, D), [&] {
      return nlohmann::json{{"row", base.row}, {"x0", base.x0}, {"w", base.width}};
    });
    // Exhaustion: any subset of the diamond is trapped by a compact part of
    // the base.
    PointSet B = interval_points(M, base);
    PointSet K(M.N(), M.T());
    auto dpts = D.points();
    for (auto p : dpts)
      if (rng() & 1) K.set(p);
    if (!K.empty()) {
      PointSet ktilde = causal_hull(M, K) & B;
      PointSet trap = causal_complement(M, causal_complement(M, ktilde));
      b.exhaustion.count(K.subset_of(trap), [&] {
        return nlohmann::json{{"K", points_str(K)}, {"base_row", base.row}};
      });
    }
  }
  // Two-component multi-diamonds, where the row has room.
  for (std::size_t i = 0; i < bases.size(); i += 3)
    for (std::size_t j = i + 1; j < bases.size(); j += 5) {
      if (bases[i].row != bases[j].row) continue;
      PointSet D(M.N(), M.T());
      try {
        D = multi_diamond(M, {bases[i], bases[j]});
      } catch (const std::invalid_argument&) {
        continue;
      }
      PointSet dd = causal_complement(M, causal_complement(M, D));
      b.diamond_complete.count(D == dd, [&] {
        return nlohmann::json{{"multi", points_str(D)}};
      });
    }

  for (int t : full_rows(M)) {
    PointSet row = interval_points(M, BaseInterval{t, 0, M.N()});
    b.cauchy_rows.count(is_cauchy_set(M, row), [&] { return nlohmann::json{{"row", t}}; });
  }
}

Outcome nested_chain_check(const LatticeSpacetime& M) {
  Tally tally;
  for (int w = 3; w <= std::min(5, M.N() - 1); ++w) {
    int row = M.T() / 2;
    std::vector<PointSet> chain;
    for (int wi = w; wi >= 1; wi -= 2) {
      int x0 = (w - wi) / 2;
      chain.push_back(diamond(M, BaseInterval{row, x0, wi}));
    }
    PointSet K = chain.back();
    PointSet hullK = causal_hull(M, K);
    PointSet hull_cap = M.carrier();
    PointSet perp_union(M.N(), M.T());
    for (const auto& O : chain) {
      hull_cap = hull_cap & causal_hull(M, O);
      perp_union = perp_union | causal_complement(M, O);
    }
    tally.count(hullK == hull_cap, [&] { return nlohmann::json{{"w", w}, {"part", "hull"}}; });
    tally.count(causal_complement(M, K) == perp_union,
                [&] { return nlohmann::json{{"w", w}, {"part", "perp"}}; });
  }
  return tally.outcome();
}

Outcome pushforward_perpperp_check(const ExperimentConfig& cfg) {
  Tally tally;
  for (int N : {cfg.appendix_Ns.front(), cfg.appendix_Ns.back()}) {
    int T = cfg.appendix_Ts.back();
    auto M = std::make_shared<const LatticeSpacetime>(N, T, Rat(0));
    // A rotation, a time-translated slab, and a diamond inclusion.
    std::vector<SpacetimeMorphism> probes;
    probes.push_back(SpacetimeMorphism::rigid(M, M, 0, 1));
    PointSet slab(N, T);
    for (int t = 1; t <= T - 4; ++t)
      for (int x = 0; x < N; ++x) slab.set(Point{t, x});
    auto slab_st = std::make_shared<const LatticeSpacetime>(N, T, M->mu_dense(), slab);
    probes.push_back(SpacetimeMorphism::rigid(slab_st, M, 2, 1));
    PointSet dia = diamond(*M, BaseInterval{T / 2, 0, std::min(3, N - 1)});
    auto dia_st = std::make_shared<const LatticeSpacetime>(N, T, M->mu_dense(), dia);
    probes.push_back(SpacetimeMorphism::inclusion(dia_st, M));

    for (const auto& psi : probes) {
      const auto& src = *psi.source();
      for (const auto& base : base_family(src, 2)) {
        PointSet K = interval_points(src, base);
        if (!K.subset_of(src.carrier())) continue;
        // The statement needs the multi-diamond hypothesis: a nonempty
        // causal complement in the source.
        if (causal_complement(src, K).empty()) continue;
        PointSet lhs = psi.apply(causal_complement(src, causal_complement(src, K)));
        PointSet img = psi.apply(K);
        const auto& tgt = *psi.target();
        PointSet rhs = causal_complement(tgt, causal_complement(tgt, img));
        tally.count(lhs == rhs, [&] {
          return nlohmann::json{{"N", N},
                                {"base", nlohmann::json{base.row, base.x0, base.width}}};
        });
      }
    }
  }
  return tally.outcome();
}

Outcome cauchy_morphism_checks(const ExperimentConfig& cfg) {
  Tally tally;
  int N = cfg.appendix_Ns.front(), T = cfg.appendix_Ts.back();
  auto M = std::make_shared<const LatticeSpacetime>(N, T, Rat(0));
  PointSet slab(N, T);
  for (int t = 1; t <= T - 2; ++t)
    for (int x = 0; x < N; ++x) slab.set(Point{t, x});
  auto slab_st = std::make_shared<const LatticeSpacetime>(N, T, M->mu_dense(), slab);
  PointSet inner(N, T);
  for (int t = 2; t <= T - 3; ++t)
    for (int x = 0; x < N; ++x) inner.set(Point{t, x});
  auto inner_st = std::make_shared<const LatticeSpacetime>(N, T, M->mu_dense(), inner);

  auto inc1 = SpacetimeMorphism::inclusion(inner_st, slab_st);
  auto inc2 = SpacetimeMorphism::inclusion(slab_st, M);
  tally.count(is_cauchy_morphism(inc1), [] { return nlohmann::json("inner slab"); });
  tally.count(is_cauchy_morphism(inc2), [] { return nlohmann::json("outer slab"); });
  auto comp = SpacetimeMorphism::compose(inc2, inc1);
  tally.count(is_cauchy_morphism(comp), [] { return nlohmann::json("composite"); });
  tally.count(is_cauchy_morphism(SpacetimeMorphism::identity(M)),
              [] { return nlohmann::json("identity"); });
  // Wrapping source (a full-row carrier) forces the order-theoretic Cauchy
  // property; with a full pair it forces the dynamical one too.
  tally.count(is_cauchy_set_morphism(inc2), [] { return nlohmann::json("order-cauchy"); });
  PointSet dia = diamond(*M, BaseInterval{T / 2, 0, 3});
  auto dia_st = std::make_shared<const LatticeSpacetime>(N, T, M->mu_dense(), dia);
  auto dinc = SpacetimeMorphism::inclusion(dia_st, M);
  tally.count(!is_cauchy_morphism(dinc), [] { return nlohmann::json("diamond not cauchy"); });
  tally.count(is_cauchy_set_morphism(SpacetimeMorphism::identity(dia_st)),
              [] { return nlohmann::json("region identity order-cauchy"); });
  // Prop-style consequence: a pair-Cauchy image contains an acausal
  // order-theoretic Cauchy set (a full row).
  tally.count(contains_cauchy_pair(*M, inc2.image()) &&
                  is_cauchy_set(*M, interval_points(*M, BaseInterval{1, 0, N})),
              [] { return nlohmann::json("acausal surface inside image"); });
  return tally.outcome();
}

}  // namespace

Checks suite_causal_appendix(const ExperimentConfig& cfg) {
  Checks checks;
  for (int N : cfg.appendix_Ns)
    for (int T : cfg.appendix_Ts) {
      std::string tag = "n" + std::to_string(N) + "t" + std::to_string(T);
      checks.push_back(Check{
          "causal/" + tag + "/battery", "causal-complement-and-development-laws", [=] {
            auto M = std::make_shared<const LatticeSpacetime>(N, T, Rat(0));
            Battery b;
            run_battery(*M, cfg.appendix_random_regions, cfg.seed ^ (N * 131 + T), b);
            nlohmann::json parts;
            long fails = 0;
            const std::pair<const char*, const Tally*> named[] = {
                {"perp_idempotent", &b.perp_idem},
                {"perp_extensive", &b.perp_ext},
                {"perpperp_convex", &b.perpperp_convex},
                {"development_in_perpperp", &b.dev_in_perpperp},
                {"development_row_equality", &b.dev_row_equal},
                {"multidiamond_complete", &b.diamond_complete},
                {"diamond_convex", &b.diamond_convex},
                {"exhaustion", &b.exhaustion},
                {"full_row_cauchy", &b.cauchy_rows}};
            for (const auto& [name, t] : named) {
              parts[name] = t->outcome().witness;
              fails += t->failed;
            }
            return fails == 0 ? pass(parts) : fail(parts);
          }});
      checks.push_back(Check{"causal/" + tag + "/nested", "nested-region-complement-union",
                             [=] {
                               auto M = std::make_shared<const LatticeSpacetime>(N, T, Rat(0));
                               return nested_chain_check(*M);
                             }});
    }

  // Sampled region-spacetimes: diamond, slab, two components.
  {
    int N = cfg.appendix_Ns.back(), T = cfg.appendix_Ts.back();
    checks.push_back(Check{
        "causal/regions/battery", "causal-laws-on-region-spacetimes", [=] {
          auto full = std::make_shared<const LatticeSpacetime>(N, T, Rat(0));
          std::vector<PointSet> carriers;
          carriers.push_back(diamond(*full, BaseInterval{T / 2, 0, std::min(4, N - 1)}));
          PointSet slab(N, T);
          for (int t = 2; t <= T - 3; ++t)
            for (int x = 0; x < N; ++x) slab.set(Point{t, x});
          carriers.push_back(slab);
          carriers.push_back(multi_diamond(
              *full, {BaseInterval{T / 2, 0, 1}, BaseInterval{T / 2, 2, 1}}));
          long fails = 0;
          nlohmann::json parts = nlohmann::json::array();
          for (const auto& c : carriers) {
            auto Ms = std::make_shared<const LatticeSpacetime>(N, T, full->mu_dense(), c);
            Battery b;
            run_battery(*Ms, cfg.appendix_random_regions, cfg.seed ^ c.count(), b);
            nlohmann::json entry{{"carrier_size", c.count()}};
            const std::pair<const char*, const Tally*> named[] = {
                {"perp_idempotent", &b.perp_idem},
                {"perp_extensive", &b.perp_ext},
                {"perpperp_convex", &b.perpperp_convex},
                {"development_in_perpperp", &b.dev_in_perpperp},
                {"multidiamond_complete", &b.diamond_complete},
                {"exhaustion", &b.exhaustion}};
            for (const auto& [name, t] : named) {
              fails += t->failed;
              entry[name] = t->outcome().witness;
            }
            parts.push_back(entry);
          }
          return fails == 0 ? pass(parts) : fail(parts);
        }});
  }

  checks.push_back(Check{"causal/pushforward", "pushforward-commutes-with-double-complement",
                         [=] { return pushforward_perpperp_check(cfg); }});
  checks.push_back(
      Check{"causal/cauchy-morphisms", "cauchy-morphism-composition-and-detection",
            [=] { return cauchy_morphism_checks(cfg); }});
  return checks;
}

}  // namespace loccov::detail
