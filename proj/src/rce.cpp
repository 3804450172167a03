#include "rce.hpp"

#include <atomic>
#include <stdexcept>

namespace loccov {

namespace {
std::atomic<long> g_rce_computed{0};
std::atomic<long> g_rce_omega_ok{0};
}  // namespace

RceStats rce_stats() { return RceStats{g_rce_computed.load(), g_rce_omega_ok.load()}; }
void reset_rce_stats() {
  g_rce_computed = 0;
  g_rce_omega_ok = 0;
}

void validate_perturbation(const KgModel& kg, const Perturbation& h) {
  validate_support(kg, *h.host, h.delta_mu);
  if (h.zero()) return;
  // Room for a full identification pair on each side of the support.
  if (h.max_row() + 2 > h.host->T() - 1 || h.min_row() - 2 < 0)
    throw std::domain_error("perturbation leaves no room for Cauchy pairs");
  for (int t = h.min_row(); t <= h.max_row() + 1; ++t)
    if (!has_full_row(*h.host, t))
      throw std::domain_error("perturbation rows must be full carrier rows");
}

SpacetimePtr perturbed_spacetime(const Perturbation& h) {
  const auto& M = *h.host;
  std::vector<Rat> mu = M.mu_dense();
  for (const auto& [p, v] : h.delta_mu) mu[std::size_t(p.t) * M.N() + p.x] += v;
  std::optional<PointSet> carrier;
  if (!M.full_carrier()) carrier = M.carrier();
  return std::make_shared<const LatticeSpacetime>(M.N(), M.T(), std::move(mu), carrier);
}

WedgeRegions wedge_regions(const KgModel& kg, const Perturbation& h) {
  validate_perturbation(kg, h);
  const auto& M = *h.host;
  PointSet supp(M.N(), M.T());
  for (const auto& [p, v] : h.delta_mu)
    if (v != 0) supp.set(p);
  WedgeRegions w{M.carrier() - causal_past(M, supp), M.carrier() - causal_future(M, supp)};
  for (const PointSet* s : {&w.plus, &w.minus}) {
    if (!is_causally_convex(M, *s)) throw std::logic_error("wedge is not causally convex");
    if (!contains_cauchy_pair(M, *s)) throw std::logic_error("wedge lost its Cauchy pair");
  }
  return w;
}

std::vector<int> admissible_pairs(const KgModel& kg, const Perturbation& h, int sign) {
  validate_perturbation(kg, h);
  const auto& M = *h.host;
  std::vector<int> v;
  if (h.zero()) {
    for (int t = 0; t + 1 < M.T(); ++t)
      if (has_full_row(M, t) && has_full_row(M, t + 1)) v.push_back(t);
    return v;
  }
  if (sign > 0) {
    for (int t = h.max_row() + 1; t + 1 < M.T(); ++t)
      if (has_full_row(M, t) && has_full_row(M, t + 1)) v.push_back(t);
  } else {
    for (int t = 0; t + 1 <= h.min_row() - 1; ++t)
      if (has_full_row(M, t) && has_full_row(M, t + 1)) v.push_back(t);
  }
  if (v.empty()) throw std::domain_error("no admissible Cauchy pair on this side");
  return v;
}

namespace {

std::vector<Rat> transport(const KgModel& kg, int N, int T, const Grid& mu, int from_pair,
                           const std::vector<Rat>& data, int to_pair) {
  Grid u = KgModel::evolve_from_pair(N, T, mu, from_pair, data);
  return KgModel::data_at(N, u, to_pair);
}

}  // namespace

namespace {

void require_admissible(const KgModel& kg, const Perturbation& h, int sign, int pair_row) {
  auto ok = admissible_pairs(kg, h, sign);
  for (int t : ok)
    if (t == pair_row) return;
  throw std::domain_error("identification pair straddles the perturbation support");
}

}  // namespace

RatMat tau_matrix(const KgModel& kg, const SpacetimePtr& M, const Perturbation& h, int sign,
                  int pair_row) {
  validate_perturbation(kg, h);
  if (!h.zero()) require_admissible(kg, h, sign, pair_row);
  auto Mh = perturbed_spacetime(h);
  int N = M->N(), T = M->T();
  Grid mu0 = kg.effective_mu(*M), mu1 = kg.effective_mu(*Mh);
  int ref = KgModel::reference_row(*M);
  RatMat tau(std::size_t(2) * N, std::size_t(2) * N);
  for (int j = 0; j < 2 * N; ++j) {
    std::vector<Rat> e(std::size_t(2) * N, Rat(0));
    e[j] = 1;
    auto at_pair = transport(kg, N, T, mu0, ref, e, pair_row);
    auto back = transport(kg, N, T, mu1, pair_row, at_pair, ref);
    tau.set_col(j, back);
  }
  return tau;
}

RatMat rce_matrix(const KgModel& kg, const SpacetimePtr& M, const Perturbation& h, int up_pair,
                  int down_pair) {
  validate_perturbation(kg, h);
  int N = M->N(), T = M->T();
  if (h.zero()) {
    ++g_rce_computed;
    ++g_rce_omega_ok;
    return RatMat::identity(std::size_t(2) * N);
  }
  require_admissible(kg, h, +1, up_pair);
  require_admissible(kg, h, -1, down_pair);
  auto Mh = perturbed_spacetime(h);
  Grid mu0 = kg.effective_mu(*M), mu1 = kg.effective_mu(*Mh);
  int ref = KgModel::reference_row(*M);
  RatMat r(std::size_t(2) * N, std::size_t(2) * N);
  for (int j = 0; j < 2 * N; ++j) {
    std::vector<Rat> e(std::size_t(2) * N, Rat(0));
    e[j] = 1;
    auto up = transport(kg, N, T, mu0, ref, e, up_pair);
    auto down = transport(kg, N, T, mu1, up_pair, up, down_pair);
    auto back = transport(kg, N, T, mu0, down_pair, down, ref);
    r.set_col(j, back);
  }
  ++g_rce_computed;
  RatMat w = KgModel::omega_matrix(N);
  if (!(r.transpose() * w * r == w)) throw std::logic_error("rce does not preserve omega");
  ++g_rce_omega_ok;
  return r;
}

RatMat rce_matrix(const KgModel& kg, const SpacetimePtr& M, const Perturbation& h) {
  if (h.zero()) return rce_matrix(kg, M, h, 0, 0);
  int up = admissible_pairs(kg, h, +1).front();
  int down = admissible_pairs(kg, h, -1).back();
  return rce_matrix(kg, M, h, up, down);
}

std::vector<Rat> rce_apply(const KgModel& kg, const SpacetimePtr& M, const Perturbation& h,
                           const std::vector<Rat>& data) {
  validate_perturbation(kg, h);
  if (h.zero()) return data;
  int N = M->N(), T = M->T();
  auto Mh = perturbed_spacetime(h);
  Grid mu0 = kg.effective_mu(*M), mu1 = kg.effective_mu(*Mh);
  int ref = KgModel::reference_row(*M);
  int up = admissible_pairs(kg, h, +1).front();
  int down = admissible_pairs(kg, h, -1).back();
  auto a = transport(kg, N, T, mu0, ref, data, up);
  auto b = transport(kg, N, T, mu1, up, a, down);
  return transport(kg, N, T, mu0, down, b, ref);
}

bool rce_independence_check(const KgModel& kg, const SpacetimePtr& M, const Perturbation& h,
                            int up_a, int down_a, int up_b, int down_b) {
  return rce_matrix(kg, M, h, up_a, down_a) == rce_matrix(kg, M, h, up_b, down_b);
}

Perturbation pushforward(const SpacetimeMorphism& psi, const Perturbation& h) {
  if (!(*psi.source() == *h.host)) throw std::invalid_argument("perturbation host mismatch");
  Perturbation out{psi.target(), {}};
  for (const auto& [p, v] : h.delta_mu)
    if (v != 0) out.delta_mu[psi.apply(p)] = v;
  return out;
}

bool rce_covariance_check(const KgModel& kg, const SpacetimeMorphism& psi,
                          const Perturbation& h) {
  Perturbation hn = pushforward(psi, h);
  RatMat a_psi = kg.morphism_matrix(psi);
  RatMat lhs = rce_coords(kg, psi.target(), hn) * a_psi;
  RatMat rhs = a_psi * rce_coords(kg, psi.source(), h);
  return lhs == rhs;
}

RatMat rce_coords(const KgModel& kg, const SpacetimePtr& M, const Perturbation& h) {
  const auto& obj = kg.object(M);
  RatMat amb = rce_matrix(kg, M, h);
  auto y = obj.basis_cols.solve(amb * obj.basis_cols);
  if (!y) throw std::logic_error("rce does not restrict to the theory object");
  return *y;
}

RatMat rce_generator_of(const KgModel& kg, const SpacetimePtr& M, const Perturbation& h) {
  validate_perturbation(kg, h);
  std::vector<int> rows;
  for (const auto& [p, v] : h.delta_mu)
    if (v != 0 && (rows.empty() || rows.back() != p.t)) rows.push_back(p.t);
  int deg = int(rows.size());
  if (deg == 0) return RatMat(std::size_t(2) * M->N(), std::size_t(2) * M->N());
  // rce[s h] has polynomial entries of degree <= deg in s; interpolate at
  // s = 0..deg and read the linear coefficient.
  std::vector<RatMat> samples;
  for (int s = 0; s <= deg; ++s) {
    Perturbation hs{h.host, {}};
    for (const auto& [p, v] : h.delta_mu) hs.delta_mu[p] = Rat(s) * v;
    samples.push_back(rce_matrix(kg, M, hs));
  }
  // Solve the Vandermonde system for the degree-1 coefficient.
  std::size_t n = samples[0].rows();
  RatMat vand(deg + 1, deg + 1);
  for (int i = 0; i <= deg; ++i) {
    Rat p(1);
    for (int j = 0; j <= deg; ++j) {
      vand.at(i, j) = p;
      p *= i;
    }
  }
  RatMat rhs(deg + 1, n * n);
  for (int i = 0; i <= deg; ++i)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) rhs.at(i, a * n + b) = samples[i].at(a, b);
  auto coef = vand.solve(rhs);
  if (!coef) throw std::logic_error("interpolation failed");
  RatMat gen(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) gen.at(a, b) = coef->at(1, a * n + b);
  return gen;
}

RatMat rce_generator(const KgModel& kg, const SpacetimePtr& M, Point p) {
  Perturbation h{M, {{p, Rat(1)}}};
  validate_perturbation(kg, h);
  // Single perturbed row: the evolution is affine in the amplitude.
  RatMat r0 = RatMat::identity(std::size_t(2) * M->N());
  Perturbation h1{M, {{p, Rat(1)}}}, h2{M, {{p, Rat(2)}}};
  RatMat g = rce_matrix(kg, M, h1) - r0;
  RatMat r2 = rce_matrix(kg, M, h2);
  if (!(r2 == r0 + g * Rat(2)))
    throw std::logic_error("single-site evolution is not affine in the amplitude");
  return g;
}

Perturbation relabeling_perturbation(const SpacetimePtr& M) {
  Perturbation h{M, {}};
  for (int t = 0; t + 1 < M->T(); ++t)
    for (int x = 0; x < M->N(); ++x) {
      Point p{t, x}, q{t + 1, x};
      if (!M->in_carrier(p) || !M->in_carrier(q)) continue;
      Rat d = M->mu(q) - M->mu(p);
      if (d != 0) h.delta_mu[p] = d;
    }
  return h;
}

}  // namespace loccov
