#include "kg.hpp"

#include <stdexcept>

namespace loccov {

int Perturbation::min_row() const {
  int r = host->T();
  for (const auto& [p, v] : delta_mu)
    if (v != 0 && p.t < r) r = p.t;
  return r;
}

int Perturbation::max_row() const {
  int r = -1;
  for (const auto& [p, v] : delta_mu)
    if (v != 0 && p.t > r) r = p.t;
  return r;
}

KgModel::KgModel(int margin, Rat xi, Rat mass2)
    : margin_(margin), xi_(std::move(xi)), mass2_(std::move(mass2)) {
  if (margin_ < 1) throw std::invalid_argument("margin must be >= 1");
}

PointSet KgModel::margin_interior(const LatticeSpacetime& M) const {
  PointSet s(M.N(), M.T());
  for (int t = margin_; t <= M.T() - 1 - margin_; ++t)
    for (int x = 0; x < M.N(); ++x) {
      Point p{t, x};
      if (M.in_carrier(p)) s.set(p);
    }
  return s;
}

Grid KgModel::effective_mu(const LatticeSpacetime& M) const {
  {
    std::lock_guard<std::mutex> lk(mu_lock_);
    auto it = eff_mu_.find(M.key());
    if (it != eff_mu_.end()) return it->second;
  }
  Grid g(std::size_t(M.N()) * M.T(), Rat(0));
  for (auto p : M.carrier().points())
    grid_at(g, M.N(), p) = xi_ * M.mu(p) + mass2_;
  std::lock_guard<std::mutex> lk(mu_lock_);
  eff_mu_.emplace(M.key(), g);
  return g;
}

Grid KgModel::apply_wave_operator(int N, int T, const Grid& mu, const Grid& u) {
  Grid out(std::size_t(N) * T, Rat(0));
  for (int t = 1; t <= T - 2; ++t)
    for (int x = 0; x < N; ++x) {
      int xm = (x + N - 1) % N, xp = (x + 1) % N;
      out[std::size_t(t) * N + x] = u[std::size_t(t + 1) * N + x] + u[std::size_t(t - 1) * N + x] -
                                    u[std::size_t(t) * N + xm] - u[std::size_t(t) * N + xp] +
                                    mu[std::size_t(t) * N + x] * u[std::size_t(t) * N + x];
    }
  return out;
}

Grid KgModel::apply_wave_operator(const LatticeSpacetime& M, const Grid& u) const {
  return apply_wave_operator(M.N(), M.T(), effective_mu(M), u);
}

Grid KgModel::retarded(int N, int T, const Grid& mu, const std::map<Point, Rat>& f) {
  int r = T;
  for (const auto& [p, v] : f)
    if (v != 0 && p.t < r) r = p.t;
  Grid u(std::size_t(N) * T, Rat(0));
  if (r >= T) return u;  // zero source
  if (r < 1) throw std::domain_error("source touches the initial row");
  // u = 0 on rows <= r; equation at row t determines row t+1.
  for (int t = r; t <= T - 2; ++t)
    for (int x = 0; x < N; ++x) {
      int xm = (x + N - 1) % N, xp = (x + 1) % N;
      Rat fv(0);
      auto it = f.find(Point{t, x});
      if (it != f.end()) fv = it->second;
      u[std::size_t(t + 1) * N + x] = u[std::size_t(t) * N + xm] + u[std::size_t(t) * N + xp] -
                                      u[std::size_t(t - 1) * N + x] -
                                      mu[std::size_t(t) * N + x] * u[std::size_t(t) * N + x] + fv;
    }
  return u;
}

Grid KgModel::advanced(int N, int T, const Grid& mu, const std::map<Point, Rat>& f) {
  int r = -1;
  for (const auto& [p, v] : f)
    if (v != 0 && p.t > r) r = p.t;
  Grid u(std::size_t(N) * T, Rat(0));
  if (r < 0) return u;
  if (r > T - 2) throw std::domain_error("source touches the final row");
  // u = 0 on rows >= r; equation at row t determines row t-1.
  for (int t = r; t >= 1; --t)
    for (int x = 0; x < N; ++x) {
      int xm = (x + N - 1) % N, xp = (x + 1) % N;
      Rat fv(0);
      auto it = f.find(Point{t, x});
      if (it != f.end()) fv = it->second;
      u[std::size_t(t - 1) * N + x] = u[std::size_t(t) * N + xm] + u[std::size_t(t) * N + xp] -
                                      u[std::size_t(t + 1) * N + x] -
                                      mu[std::size_t(t) * N + x] * u[std::size_t(t) * N + x] + fv;
    }
  return u;
}

void validate_support(const KgModel& kg, const LatticeSpacetime& M,
                      const std::map<Point, Rat>& values) {
  PointSet ok = kg.margin_interior(M);
  for (const auto& [p, v] : values)
    if (v != 0 && !ok.test(p))
      throw std::domain_error("support leaves the margin interior of the carrier");
}

Grid KgModel::retarded(const TestFunction& f) const {
  validate_support(*this, *f.host, f.values);
  return retarded(f.host->N(), f.host->T(), effective_mu(*f.host), f.values);
}

Grid KgModel::advanced(const TestFunction& f) const {
  validate_support(*this, *f.host, f.values);
  return advanced(f.host->N(), f.host->T(), effective_mu(*f.host), f.values);
}

Grid KgModel::causal_propagator(const TestFunction& f) const {
  Grid rm = retarded(f), av = advanced(f);
  for (std::size_t i = 0; i < rm.size(); ++i) rm[i] -= av[i];
  return rm;
}

Rat KgModel::pairing(const TestFunction& f, const TestFunction& g) const {
  if (!(*f.host == *g.host)) throw std::invalid_argument("pairing across spacetimes");
  Grid eg = causal_propagator(g);
  Rat s(0);
  for (const auto& [p, v] : f.values) s += v * grid_at(eg, f.host->N(), p);
  return s;
}

Grid KgModel::evolve_from_pair(int N, int T, const Grid& mu, int t0,
                               const std::vector<Rat>& data) {
  if (t0 < 0 || t0 + 1 >= T) throw std::invalid_argument("pair rows out of range");
  if (data.size() != std::size_t(2) * N) throw std::invalid_argument("data size != 2N");
  Grid u(std::size_t(N) * T, Rat(0));
  for (int x = 0; x < N; ++x) {
    u[std::size_t(t0) * N + x] = data[x];
    u[std::size_t(t0 + 1) * N + x] = data[N + x];
  }
  for (int t = t0 + 1; t <= T - 2; ++t)
    for (int x = 0; x < N; ++x) {
      int xm = (x + N - 1) % N, xp = (x + 1) % N;
      u[std::size_t(t + 1) * N + x] = u[std::size_t(t) * N + xm] + u[std::size_t(t) * N + xp] -
                                      u[std::size_t(t - 1) * N + x] -
                                      mu[std::size_t(t) * N + x] * u[std::size_t(t) * N + x];
    }
  for (int t = t0; t >= 1; --t)
    for (int x = 0; x < N; ++x) {
      int xm = (x + N - 1) % N, xp = (x + 1) % N;
      u[std::size_t(t - 1) * N + x] = u[std::size_t(t) * N + xm] + u[std::size_t(t) * N + xp] -
                                      u[std::size_t(t + 1) * N + x] -
                                      mu[std::size_t(t) * N + x] * u[std::size_t(t) * N + x];
    }
  return u;
}

std::vector<Rat> KgModel::data_at(int N, const Grid& u, int t0) {
  std::vector<Rat> d(std::size_t(2) * N);
  for (int x = 0; x < N; ++x) {
    d[x] = u[std::size_t(t0) * N + x];
    d[N + x] = u[std::size_t(t0 + 1) * N + x];
  }
  return d;
}

RatMat KgModel::omega_matrix(int N) {
  RatMat w(std::size_t(2) * N, std::size_t(2) * N);
  for (int x = 0; x < N; ++x) {
    w.at(N + x, x) = 1;
    w.at(x, N + x) = -1;
  }
  return w;
}

Rat KgModel::omega(int N, const std::vector<Rat>& a, const std::vector<Rat>& b) {
  Rat s(0);
  for (int x = 0; x < N; ++x) s += a[N + x] * b[x] - a[x] * b[N + x];
  return s;
}

const RatMat& KgModel::value_matrix(const LatticeSpacetime& M) const {
  {
    std::lock_guard<std::mutex> lk(mu_lock_);
    auto it = value_mats_.find(M.key());
    if (it != value_mats_.end()) return it->second;
  }
  int N = M.N(), T = M.T();
  Grid mu = effective_mu(M);
  int ref = reference_row(M);
  RatMat vals(std::size_t(N) * T, std::size_t(2) * N);
  for (int j = 0; j < 2 * N; ++j) {
    std::vector<Rat> e(std::size_t(2) * N, Rat(0));
    e[j] = 1;
    Grid u = evolve_from_pair(N, T, mu, ref, e);
    for (std::size_t i = 0; i < u.size(); ++i) vals.at(i, j) = u[i];
  }
  std::lock_guard<std::mutex> lk(mu_lock_);
  return value_mats_.emplace(M.key(), std::move(vals)).first->second;
}

std::map<Point, Rat> KgModel::solution_to_source(int N, const Grid& u, int band) {
  std::map<Point, Rat> f;
  for (int x = 0; x < N; ++x) {
    Rat a = u[std::size_t(band + 1) * N + x];
    Rat b = -u[std::size_t(band) * N + x];
    if (a != 0) f[Point{band, x}] = a;
    if (b != 0) f[Point{band + 1, x}] = b;
  }
  return f;
}

Grid KgModel::causal_propagator_delta(const LatticeSpacetime& M, Point p) const {
  std::map<Point, Rat> f{{p, Rat(1)}};
  Grid rm = retarded(M.N(), M.T(), effective_mu(M), f);
  Grid av = advanced(M.N(), M.T(), effective_mu(M), f);
  for (std::size_t i = 0; i < rm.size(); ++i) rm[i] -= av[i];
  return rm;
}

std::vector<Rat> KgModel::delta_solution_data(const LatticeSpacetime& M, Point p) const {
  return data_at(M.N(), causal_propagator_delta(M, p), reference_row(M));
}

const KgModel::Object& KgModel::object(const SpacetimePtr& M) const {
  {
    std::lock_guard<std::mutex> lk(mu_lock_);
    auto it = objects_.find(M->key());
    if (it != objects_.end()) return it->second;
  }
  Object o;
  o.host = M;
  int N = M->N();
  o.gens = margin_interior(*M).points();
  o.gen_cols = RatMat(std::size_t(2) * N, o.gens.size());
  RatMat rows(0, std::size_t(2) * N);
  for (std::size_t j = 0; j < o.gens.size(); ++j) {
    auto d = delta_solution_data(*M, o.gens[j]);
    o.gen_cols.set_col(j, d);
    rows.append_row(d);
  }
  o.space = Subspace::span(std::size_t(2) * N, rows);
  std::size_t dim = o.space.dim();
  o.basis_cols = RatMat(std::size_t(2) * N, dim);
  for (std::size_t i = 0; i < dim; ++i) o.basis_cols.set_col(i, o.space.basis().row(i));
  if (dim > 0) {
    auto coeff = o.gen_cols.solve(o.basis_cols);
    if (!coeff) throw std::logic_error("object basis not in generator span");
    o.gen_coeff = *coeff;
  } else {
    o.gen_coeff = RatMat(o.gens.size(), 0);
  }
  RatMat form = o.basis_cols.transpose() * omega_matrix(N) * o.basis_cols;
  o.ds = DataSpace(dim, form);
  std::lock_guard<std::mutex> lk(mu_lock_);
  return objects_.emplace(M->key(), std::move(o)).first->second;
}

RatMat KgModel::morphism_matrix(const SpacetimeMorphism& psi) const {
  const Object src = object(psi.source());
  const Object tgt = object(psi.target());
  int Nt = psi.target()->N();
  RatMat pushed(std::size_t(2) * Nt, src.gens.size());
  for (std::size_t j = 0; j < src.gens.size(); ++j)
    pushed.set_col(j, delta_solution_data(*psi.target(), psi.apply(src.gens[j])));

  // Well-definedness: relations among source generators must push to
  // relations among their images.
  RatMat ker = src.gen_cols.kernel();
  for (std::size_t i = 0; i < ker.rows(); ++i) {
    RatMat c(src.gens.size(), 1);
    c.set_col(0, ker.row(i));
    if (!(pushed * c).is_zero())
      throw std::logic_error("pushforward does not respect generator relations");
  }

  RatMat images = pushed * src.gen_coeff;  // 2Nt x dim_src
  auto coords = tgt.basis_cols.solve(images);
  if (!coords) throw std::logic_error("pushforward leaves the target object");
  RatMat y = *coords;
  if (y.rank() != src.ds.dim) throw std::logic_error("induced map is not injective");
  if (!(y.transpose() * tgt.ds.form * y == src.ds.form))
    throw std::logic_error("induced map does not preserve the form");
  return y;
}

Subspace KgModel::kinematic_subspace(const SpacetimePtr& M, const PointSet& O) const {
  if (O.empty()) throw std::domain_error("kinematic net is indexed by nonempty regions");
  if (!O.subset_of(margin_interior(*M)))
    throw std::domain_error("region leaves the margin interior");
  if (!is_causally_convex(*M, O)) throw std::domain_error("region is not causally convex");
  RatMat rows(0, std::size_t(2) * M->N());
  for (auto p : O.points()) rows.append_row(delta_solution_data(*M, p));
  return Subspace::span(std::size_t(2) * M->N(), rows);
}

}  // namespace loccov
