#include "spacetime.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace loccov {

void PointSet::set(Point p, bool v) {
  std::size_t i = idx(p);
  if (v)
    bits_[i >> 6] |= (uint64_t(1) << (i & 63));
  else
    bits_[i >> 6] &= ~(uint64_t(1) << (i & 63));
}

std::size_t PointSet::idx(Point p) const {
  if (p.t < 0 || p.t >= t_ || p.x < 0 || p.x >= n_)
    throw std::domain_error("point outside grid");
  return std::size_t(p.t) * n_ + p.x;
}

bool PointSet::empty() const {
  for (auto w : bits_)
    if (w) return false;
  return true;
}

std::size_t PointSet::count() const {
  std::size_t c = 0;
  for (auto w : bits_) c += __builtin_popcountll(w);
  return c;
}

bool PointSet::operator<(const PointSet& o) const {
  if (n_ != o.n_) return n_ < o.n_;
  if (t_ != o.t_) return t_ < o.t_;
  return bits_ < o.bits_;
}

void PointSet::check_compat(const PointSet& o) const {
  if (n_ != o.n_ || t_ != o.t_) throw std::invalid_argument("point sets from different grids");
}

PointSet PointSet::operator|(const PointSet& o) const {
  check_compat(o);
  PointSet r = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] |= o.bits_[i];
  return r;
}

PointSet PointSet::operator&(const PointSet& o) const {
  check_compat(o);
  PointSet r = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] &= o.bits_[i];
  return r;
}

PointSet PointSet::operator-(const PointSet& o) const {
  check_compat(o);
  PointSet r = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] &= ~o.bits_[i];
  return r;
}

bool PointSet::subset_of(const PointSet& o) const {
  check_compat(o);
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] & ~o.bits_[i]) return false;
  return true;
}

bool PointSet::intersects(const PointSet& o) const {
  check_compat(o);
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] & o.bits_[i]) return true;
  return false;
}

std::vector<Point> PointSet::points() const {
  std::vector<Point> v;
  for (int t = 0; t < t_; ++t)
    for (int x = 0; x < n_; ++x)
      if (test(Point{t, x})) v.push_back(Point{t, x});
  return v;
}

PointSet PointSet::all(int n, int t) {
  PointSet s(n, t);
  for (int tt = 0; tt < t; ++tt)
    for (int xx = 0; xx < n; ++xx) s.set(Point{tt, xx});
  return s;
}

PointSet PointSet::of(int n, int t, const std::vector<Point>& pts) {
  PointSet s(n, t);
  for (auto p : pts) s.set(p);
  return s;
}

// ----- LatticeSpacetime ---------------------------------------------------

LatticeSpacetime::LatticeSpacetime(int N, int T, const Rat& mu_uniform)
    : LatticeSpacetime(N, T, std::vector<Rat>(std::size_t(N) * T, mu_uniform), std::nullopt) {}

LatticeSpacetime::LatticeSpacetime(int N, int T, std::vector<Rat> mu,
                                   std::optional<PointSet> carrier)
    : n_(N), t_(T), mu_(std::move(mu)), carrier_(carrier ? *carrier : PointSet::all(N, T)) {
  if (n_ < 3) throw std::invalid_argument("spatial size N must be >= 3");
  if (t_ < 5) throw std::invalid_argument("time extent T must be >= 5");
  if (mu_.size() != std::size_t(n_) * t_) throw std::invalid_argument("mu size != N*T");
  if (carrier_.grid_n() != n_ || carrier_.grid_t() != t_)
    throw std::invalid_argument("carrier grid mismatch");
  full_ = (carrier_ == PointSet::all(n_, t_));
  if (!full_) {
    // Couplings are zero-extended off the carrier; propagator solves run on
    // the whole grid and causal convexity keeps the extension invisible.
    for (int t = 0; t < t_; ++t)
      for (int x = 0; x < n_; ++x)
        if (!carrier_.test(Point{t, x})) mu_[std::size_t(t) * n_ + x] = 0;
  }
  validate();
  build_key();
}

Rat LatticeSpacetime::mu(Point p) const {
  if (!in_carrier(p)) throw std::domain_error("mu queried outside carrier");
  return mu_[std::size_t(p.t) * n_ + p.x];
}

namespace {

// One causal step up from `s`, staying inside `within`.
PointSet step_future(const PointSet& within, const PointSet& s) {
  int N = within.grid_n(), T = within.grid_t();
  PointSet out(N, T);
  for (auto p : s.points()) {
    if (p.t + 1 >= T) continue;
    for (int dx = -1; dx <= 1; ++dx) {
      Point q{p.t + 1, (p.x + dx % N + N) % N};
      if (within.test(q)) out.set(q);
    }
  }
  return out;
}

PointSet step_past(const PointSet& within, const PointSet& s) {
  int N = within.grid_n(), T = within.grid_t();
  PointSet out(N, T);
  for (auto p : s.points()) {
    if (p.t - 1 < 0) continue;
    for (int dx = -1; dx <= 1; ++dx) {
      Point q{p.t - 1, (p.x + dx % N + N) % N};
      if (within.test(q)) out.set(q);
    }
  }
  return out;
}

void require_inside(const LatticeSpacetime& M, const PointSet& S) {
  if (!S.subset_of(M.carrier())) throw std::domain_error("region leaves the carrier");
}

}  // namespace

PointSet causal_future(const LatticeSpacetime& M, const PointSet& S) {
  require_inside(M, S);
  PointSet acc = S;
  PointSet frontier = S;
  while (true) {
    PointSet next = step_future(M.carrier(), frontier) - acc;
    if (next.empty()) break;
    acc = acc | next;
    frontier = next;
  }
  return acc;
}

PointSet causal_past(const LatticeSpacetime& M, const PointSet& S) {
  require_inside(M, S);
  PointSet acc = S;
  PointSet frontier = S;
  while (true) {
    PointSet next = step_past(M.carrier(), frontier) - acc;
    if (next.empty()) break;
    acc = acc | next;
    frontier = next;
  }
  return acc;
}

PointSet causal_hull(const LatticeSpacetime& M, const PointSet& S) {
  return causal_future(M, S) | causal_past(M, S);
}

PointSet causal_complement(const LatticeSpacetime& M, const PointSet& S) {
  return M.carrier() - causal_hull(M, S);
}

PointSet domain_of_dependence(const LatticeSpacetime& M, const PointSet& S) {
  require_inside(M, S);
  int N = M.N(), T = M.T();
  const PointSet& C = M.carrier();
  // dplus[p]: every past-inextendible chain through p meets S. Rows ascending.
  PointSet dplus(N, T), dminus(N, T);
  for (int t = 0; t < T; ++t)
    for (int x = 0; x < N; ++x) {
      Point p{t, x};
      if (!C.test(p)) continue;
      if (S.test(p)) {
        dplus.set(p);
        continue;
      }
      bool any = false, all = true;
      if (t > 0)
        for (int dx = -1; dx <= 1; ++dx) {
          Point q{t - 1, M.wrap_x(x + dx)};
          if (!C.test(q)) continue;
          any = true;
          if (!dplus.test(q)) all = false;
        }
      if (any && all) dplus.set(p);
    }
  for (int t = T - 1; t >= 0; --t)
    for (int x = 0; x < N; ++x) {
      Point p{t, x};
      if (!C.test(p)) continue;
      if (S.test(p)) {
        dminus.set(p);
        continue;
      }
      bool any = false, all = true;
      if (t + 1 < T)
        for (int dx = -1; dx <= 1; ++dx) {
          Point q{t + 1, M.wrap_x(x + dx)};
          if (!C.test(q)) continue;
          any = true;
          if (!dminus.test(q)) all = false;
        }
      if (any && all) dminus.set(p);
    }
  return dplus | dminus;
}

bool is_causally_convex(const LatticeSpacetime& M, const PointSet& O) {
  require_inside(M, O);
  if (O.empty()) return true;
  return (causal_future(M, O) & causal_past(M, O)).subset_of(O);
}

bool is_cauchy_set(const LatticeSpacetime& M, const PointSet& S) {
  require_inside(M, S);
  return domain_of_dependence(M, S) == M.carrier();
}

bool causally_disjoint(const LatticeSpacetime& M, const PointSet& A, const PointSet& B) {
  return !causal_hull(M, A).intersects(B);
}

bool has_full_row(const LatticeSpacetime& M, int t) {
  if (t < 0 || t >= M.T()) return false;
  for (int x = 0; x < M.N(); ++x)
    if (!M.in_carrier(Point{t, x})) return false;
  return true;
}

std::vector<CauchyPair> cauchy_pairs(const LatticeSpacetime& M) {
  std::vector<CauchyPair> v;
  for (int t = 0; t + 1 < M.T(); ++t)
    if (has_full_row(M, t) && has_full_row(M, t + 1)) v.push_back(CauchyPair{t});
  return v;
}

PointSet pair_rows(const LatticeSpacetime& M, CauchyPair cp) {
  PointSet s(M.N(), M.T());
  for (int x = 0; x < M.N(); ++x) {
    s.set(Point{cp.t0, x});
    s.set(Point{cp.t0 + 1, x});
  }
  return s;
}

bool contains_cauchy_pair(const LatticeSpacetime& M, const PointSet& S) {
  for (int t = 0; t + 1 < M.T(); ++t) {
    bool ok = true;
    for (int x = 0; x < M.N() && ok; ++x)
      ok = S.test(Point{t, x}) && S.test(Point{t + 1, x});
    if (ok) return true;
  }
  return false;
}

std::vector<int> full_rows(const LatticeSpacetime& M) {
  std::vector<int> v;
  for (int t = 0; t < M.T(); ++t)
    if (has_full_row(M, t)) v.push_back(t);
  return v;
}

void LatticeSpacetime::validate() {
  if (carrier_.empty()) throw std::invalid_argument("empty carrier");
  // Components via undirected step adjacency.
  PointSet seen(n_, t_);
  for (auto p : carrier_.points()) {
    if (seen.test(p)) continue;
    PointSet comp(n_, t_);
    std::vector<Point> stack{p};
    comp.set(p);
    while (!stack.empty()) {
      Point q = stack.back();
      stack.pop_back();
      for (int dt = -1; dt <= 1; dt += 2)
        for (int dx = -1; dx <= 1; ++dx) {
          Point r{q.t + dt, wrap_x(q.x + dx)};
          if (r.t < 0 || r.t >= t_) continue;
          if (!carrier_.test(r) || comp.test(r)) continue;
          comp.set(r);
          stack.push_back(r);
        }
    }
    components_.push_back(comp);
    seen = seen | comp;
  }
  if (!full_) {
    if (!is_causally_convex(*this, carrier_))
      throw std::invalid_argument("carrier is not causally convex");
    for (std::size_t i = 0; i < components_.size(); ++i)
      for (std::size_t j = i + 1; j < components_.size(); ++j)
        if (!causally_disjoint(*this, components_[i], components_[j]))
          throw std::invalid_argument("carrier components are not causally disjoint");
  }
}

void LatticeSpacetime::build_key() {
  std::ostringstream os;
  os << n_ << "x" << t_ << ";";
  for (auto p : carrier_.points())
    os << p.t << "," << p.x << ":" << mu_[std::size_t(p.t) * n_ + p.x].get_str() << ";";
  key_ = os.str();
}

// ----- diamonds -----------------------------------------------------------

PointSet interval_points(const LatticeSpacetime& M, const BaseInterval& b) {
  if (b.width < 1 || b.width > M.N()) throw std::invalid_argument("bad interval width");
  PointSet s(M.N(), M.T());
  for (int k = 0; k < b.width; ++k) s.set(Point{b.row, M.wrap_x(b.x0 + k)});
  return s;
}

PointSet diamond(const LatticeSpacetime& M, const BaseInterval& b) {
  if (b.width >= M.N())
    throw std::invalid_argument("diamond base must have nonempty complement in its row");
  PointSet base = interval_points(M, b);
  require_inside(M, base);
  return domain_of_dependence(M, base);
}

PointSet multi_diamond(const LatticeSpacetime& M, const std::vector<BaseInterval>& bases) {
  if (bases.empty()) throw std::invalid_argument("multi-diamond needs at least one base");
  // A multi-ball lives inside one Cauchy surface; on this lattice the
  // acausal Cauchy sets are exactly the full rows, so the bases must share
  // a row.
  for (const auto& b : bases)
    if (b.row != bases.front().row)
      throw std::invalid_argument("multi-diamond bases must share a row");
  std::vector<PointSet> ds;
  PointSet base_union(M.N(), M.T());
  std::size_t width = 0;
  for (const auto& b : bases) {
    ds.push_back(diamond(M, b));
    base_union = base_union | interval_points(M, b);
    width += b.width;
  }
  if (width >= std::size_t(M.N()))
    throw std::invalid_argument("multi-diamond base must have nonempty complement in its row");
  for (std::size_t i = 0; i < ds.size(); ++i)
    for (std::size_t j = i + 1; j < ds.size(); ++j)
      if (!causally_disjoint(M, ds[i], ds[j]))
        throw std::invalid_argument("multi-diamond components are not causally disjoint");
  return domain_of_dependence(M, base_union);
}

std::vector<PointSet> enumerate_Kb(const LatticeSpacetime& M, const PointSet& O,
                                   const KbCaps& caps) {
  require_inside(M, O);
  std::vector<PointSet> out;
  out.push_back(PointSet(M.N(), M.T()));  // the empty set, always admissible
  if (O.empty()) return out;

  std::vector<int> rows = caps.rows;
  if (rows.empty())
    for (int t = 0; t < M.T(); ++t) rows.push_back(t);

  // Single intervals inside O.
  std::vector<BaseInterval> singles;
  for (int row : rows)
    for (int w = 1; w <= std::min(caps.max_width, M.N() - 1); ++w)
      for (int x0 = 0; x0 < M.N(); ++x0) {
        BaseInterval b{row, x0, w};
        if (interval_points(M, b).subset_of(O)) singles.push_back(b);
      }

  std::vector<std::pair<std::vector<BaseInterval>, PointSet>> frontier;
  for (const auto& b : singles) {
    out.push_back(interval_points(M, b));
    frontier.push_back({{b}, interval_points(M, b)});
  }

  // Multi-component sets: intervals sharing a row (a multi-ball lives in
  // one Cauchy surface), components pairwise causally disjoint as
  // developments, de-duplicated as point sets.
  for (int comps = 2; comps <= caps.max_components; ++comps) {
    std::vector<std::pair<std::vector<BaseInterval>, PointSet>> next;
    for (const auto& [bs, pts] : frontier)
      for (const auto& b : singles) {
        if (b.row != bs.front().row) continue;
        PointSet bp = interval_points(M, b);
        if (bp.subset_of(pts) || bp.intersects(pts)) continue;
        bool disjoint = true;
        for (const auto& prev : bs)
          if (!causally_disjoint(M, diamond(M, prev), diamond(M, b))) {
            disjoint = false;
            break;
          }
        if (!disjoint) continue;
        auto bs2 = bs;
        bs2.push_back(b);
        next.push_back({bs2, pts | bp});
      }
    for (auto& [bs, pts] : next) out.push_back(pts);
    frontier = std::move(next);
  }

  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace loccov
