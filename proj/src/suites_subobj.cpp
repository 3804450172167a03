#include <random>

#include "subobjects.hpp"
#include "suites_detail.hpp"

namespace loccov::detail {

namespace {

Rat rand_rat(std::mt19937_64& rng) {
  int num = int(rng() % 9) - 4;
  int den = 1 + int(rng() % 3);
  return rat_of(num, den);
}

RatMat rand_mat(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  RatMat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rand_rat(rng);
  return m;
}

Subspace rand_subspace(std::mt19937_64& rng, std::size_t ambient, std::size_t maxdim) {
  std::size_t gens = rng() % (maxdim + 1);
  return Subspace::span(ambient, rand_mat(rng, gens, ambient));
}

RatMat rand_injective(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  while (true) {
    RatMat m = rand_mat(rng, rows, cols);
    if (m.rank() == cols) return m;
  }
}

RatMat rand_invertible(std::mt19937_64& rng, std::size_t n) {
  return rand_injective(rng, n, n);
}

using LawFn = std::function<bool(std::mt19937_64&, std::size_t, nlohmann::json&)>;

Check law_check(const ExperimentConfig& cfg, const std::string& id, const std::string& law,
                uint64_t salt, LawFn fn) {
  int instances = cfg.subobject_instances;
  std::size_t maxd = cfg.subobject_max_dim;
  uint64_t seed = cfg.seed ^ salt;
  return Check{id, law, [=] {
                 Tally tally;
                 std::mt19937_64 rng(seed);
                 for (int i = 0; i < instances; ++i) {
                   std::size_t ambient = 2 + rng() % (maxd - 1);
                   nlohmann::json note;
                   bool ok = fn(rng, ambient, note);
                   tally.count(ok, [&] {
                     return nlohmann::json{{"instance", i}, {"note", note}};
                   });
                 }
                 return tally.outcome();
               }};
}

}  // namespace

Checks suite_subobject_laws(const ExperimentConfig& cfg) {
  Checks checks;

  checks.push_back(law_check(
      cfg, "subobj/fubini", "union-fubini", 0x1001,
      [](std::mt19937_64& rng, std::size_t a, nlohmann::json&) {
        std::size_t ni = 1 + rng() % 3, nj = 1 + rng() % 3;
        std::vector<std::vector<Subspace>> m(ni);
        std::vector<Subspace> flat;
        for (auto& row : m)
          for (std::size_t j = 0; j < nj; ++j) {
            row.push_back(rand_subspace(rng, a, 3));
            flat.push_back(row.back());
          }
        std::vector<Subspace> row_unions, col_unions;
        for (std::size_t i = 0; i < ni; ++i) row_unions.push_back(union_all(a, m[i]));
        for (std::size_t j = 0; j < nj; ++j) {
          std::vector<Subspace> col;
          for (std::size_t i = 0; i < ni; ++i) col.push_back(m[i][j]);
          col_unions.push_back(union_all(a, col));
        }
        Subspace u1 = union_all(a, row_unions);
        Subspace u2 = union_all(a, flat);
        Subspace u3 = union_all(a, col_unions);
        return u1 == u2 && u2 == u3;
      }));

  checks.push_back(law_check(
      cfg, "subobj/union-refine", "union-refinement-and-equality", 0x1002,
      [](std::mt19937_64& rng, std::size_t a, nlohmann::json&) {
        std::size_t nn = 1 + rng() % 3;
        std::vector<Subspace> n;
        for (std::size_t j = 0; j < nn; ++j) n.push_back(rand_subspace(rng, a, 4));
        // Each m_i factors through some n_j: take random subspaces of them.
        std::vector<Subspace> m;
        for (std::size_t i = 0; i < nn + 1; ++i) {
          const Subspace& host = n[rng() % nn];
          RatMat gens(0, a);
          for (std::size_t g = 0; g < 2 && host.dim() > 0; ++g) {
            std::vector<Rat> v(a, Rat(0));
            for (std::size_t r = 0; r < host.dim(); ++r) {
              Rat c = rand_rat(rng);
              for (std::size_t jx = 0; jx < a; ++jx) v[jx] += c * host.basis().at(r, jx);
            }
            gens.append_row(v);
          }
          m.push_back(Subspace::span(a, gens));
        }
        if (!union_all(a, m).leq(union_all(a, n))) return false;
        // With the refined family containing the n_j themselves, the unions
        // agree exactly.
        std::vector<Subspace> m2 = m;
        for (const auto& s : n) m2.push_back(s);
        return union_all(a, m2) == union_all(a, n);
      }));

  checks.push_back(law_check(
      cfg, "subobj/union-invariance", "pointwise-fixing-extends-to-union", 0x1003,
      [](std::mt19937_64& rng, std::size_t a, nlohmann::json&) {
        std::size_t k = 1 + rng() % 3;
        std::vector<Subspace> m;
        for (std::size_t i = 0; i < k; ++i) m.push_back(rand_subspace(rng, a, 3));
        Subspace u = union_all(a, m);
        // Build h = identity on the union, arbitrary on a complement.
        RatMat ext = u.basis();
        for (std::size_t j = 0; j < a && ext.rows() < a; ++j) {
          std::vector<Rat> e(a, Rat(0));
          e[j] = 1;
          RatMat probe = ext;
          probe.append_row(e);
          if (probe.rank() == probe.rows()) ext = probe;
        }
        RatMat basis_inv_target(a, a);
        for (std::size_t i = 0; i < a; ++i) {
          std::vector<Rat> img(a, Rat(0));
          if (i < u.dim()) {
            img = ext.row(i);  // fixed
          } else {
            for (std::size_t j = 0; j < a; ++j) img[j] = rand_rat(rng);
          }
          basis_inv_target.set_col(i, img);
        }
        RatMat basis_cols(a, a);
        for (std::size_t i = 0; i < a; ++i) basis_cols.set_col(i, ext.row(i));
        auto h = basis_inv_target * *basis_cols.solve(RatMat::identity(a));
        // h fixes each m_i pointwise by construction; it must fix the union.
        for (const auto& s : m)
          for (std::size_t r = 0; r < s.dim(); ++r) {
            RatMat v(a, 1);
            v.set_col(0, s.basis().row(r));
            if (!((h * v) == v)) return false;
          }
        for (std::size_t r = 0; r < u.dim(); ++r) {
          RatMat v(a, 1);
          v.set_col(0, u.basis().row(r));
          if (!((h * v) == v)) return false;
        }
        return true;
      }));

  checks.push_back(law_check(
      cfg, "subobj/intersection-reparam", "intersection-invariant-under-reparametrization",
      0x1004, [](std::mt19937_64& rng, std::size_t a, nlohmann::json&) {
        std::size_t k = 2 + rng() % 2;
        std::vector<Subspace> m, m_re;
        for (std::size_t i = 0; i < k; ++i) {
          std::size_t d = 1 + rng() % 3;
          RatMat gens = rand_mat(rng, d, a);
          Subspace s = Subspace::span(a, gens);
          m.push_back(s);
          // Reparametrize the same generators by an invertible change.
          RatMat v = rand_invertible(rng, d);
          m_re.push_back(Subspace::span(a, v * gens));
        }
        return intersect_all(a, m) == intersect_all(a, m_re);
      }));

  checks.push_back(law_check(
      cfg, "subobj/mono-intersection", "monomorphism-commutes-with-intersection", 0x1005,
      [](std::mt19937_64& rng, std::size_t a, nlohmann::json&) {
        std::size_t b = a + rng() % 3;
        RatMat k = rand_injective(rng, b, a);
        std::size_t cnt = 1 + rng() % 3;
        std::vector<Subspace> m, km;
        for (std::size_t i = 0; i < cnt; ++i) {
          m.push_back(rand_subspace(rng, a, 3));
          km.push_back(push_subspace(k, m.back()));
        }
        return push_subspace(k, intersect_all(a, m)) == intersect_all(b, km);
      }));

  checks.push_back(law_check(
      cfg, "subobj/union-universal", "union-universal-property", 0x1006,
      [](std::mt19937_64& rng, std::size_t a, nlohmann::json&) {
        std::size_t cnt = 1 + rng() % 3;
        std::vector<Subspace> m;
        for (std::size_t i = 0; i < cnt; ++i) m.push_back(rand_subspace(rng, a, 3));
        Subspace u = union_all(a, m);
        std::size_t b = a + 1 + rng() % 2;
        RatMat f = rand_injective(rng, b, a);
        // n contains f(u) plus random extra directions.
        Subspace n = push_subspace(f, u).sum(rand_subspace(rng, b, 2));
        // Factorization: a matrix X with n_basis . X = f . u_basis exists
        // and reproduces f on the union exactly; injectivity of the basis
        // makes it unique.
        if (u.dim() == 0) return true;
        RatMat nb(b, n.dim());
        for (std::size_t i = 0; i < n.dim(); ++i) nb.set_col(i, n.basis().row(i));
        RatMat fu(b, u.dim());
        for (std::size_t i = 0; i < u.dim(); ++i) {
          RatMat v(a, 1);
          v.set_col(0, u.basis().row(i));
          fu.set_col(i, (f * v).col(0));
        }
        auto x = nb.solve(fu);
        if (!x) return false;
        return (nb * *x) == fu;
      }));

  checks.push_back(law_check(
      cfg, "subobj/equalizer-universal", "equalizer-universal-property", 0x1007,
      [](std::mt19937_64& rng, std::size_t a, nlohmann::json&) {
        std::size_t b = a + rng() % 3;
        RatMat f = rand_mat(rng, b, a), g = rand_mat(rng, b, a);
        Subspace e = equalizer(f, g);
        // Vectors equalizing f and g are exactly the members of e.
        for (std::size_t i = 0; i < e.dim(); ++i) {
          RatMat v(a, 1);
          v.set_col(0, e.basis().row(i));
          if (!((f * v) == (g * v))) return false;
        }
        // A random combination k of equalizing vectors factors through e.
        if (e.dim() > 0) {
          std::vector<Rat> k(a, Rat(0));
          for (std::size_t i = 0; i < e.dim(); ++i) {
            Rat c = rand_rat(rng);
            for (std::size_t j = 0; j < a; ++j) k[j] += c * e.basis().at(i, j);
          }
          if (!e.contains(k)) return false;
        }
        // And nothing outside e equalizes: check on a random vector.
        std::vector<Rat> w(a, Rat(0));
        for (std::size_t j = 0; j < a; ++j) w[j] = rand_rat(rng);
        RatMat wv(a, 1);
        wv.set_col(0, w);
        bool equalizes = (f * wv) == (g * wv);
        return equalizes == e.contains(w);
      }));

  checks.push_back(Check{"subobj/lattice-basics", "subobject-order-basics", [cfg] {
                           Tally tally;
                           std::mt19937_64 rng(cfg.seed ^ 0x1008);
                           for (int i = 0; i < 200; ++i) {
                             std::size_t a = 2 + rng() % 10;
                             Subspace x = rand_subspace(rng, a, 4);
                             tally.count(Subspace::zero(a).leq(x) && x.leq(Subspace::full(a)),
                                         [&] { return nlohmann::json{{"instance", i}}; });
                             tally.count(x.sum(x) == x && x.intersect(x) == x,
                                         [&] { return nlohmann::json{{"instance", i}}; });
                             Subspace y = rand_subspace(rng, a, 4);
                             tally.count(!(x.leq(y) && y.leq(x)) || x == y,
                                         [&] { return nlohmann::json{{"instance", i}}; });
                             tally.count(intersect_all(a, {}) == Subspace::full(a) &&
                                             union_all(a, {}) == Subspace::zero(a),
                                         [&] { return nlohmann::json{{"instance", i}}; });
                           }
                           return tally.outcome();
                         }});

  return checks;
}

}  // namespace loccov::detail
