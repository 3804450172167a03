#pragma once

#include <functional>
#include <memory>

#include "nets.hpp"

namespace loccov {

// A locally covariant theory as a pair of maps: spacetimes to presymplectic
// data spaces and spacetime embeddings to injective form-preserving
// matrices (written in object coordinates). The rce and kinematic closures
// give the dynamical structure where the theory has one.
struct Theory {
  std::string name;
  std::function<DataSpace(const SpacetimePtr&)> object;
  std::function<RatMat(const SpacetimeMorphism&)> morphism;
  std::function<RatMat(const SpacetimePtr&, const Perturbation&)> rce;
  std::function<Subspace(const SpacetimePtr&, const PointSet&)> kinematic;
};

using TheoryPtr = std::shared_ptr<const Theory>;

struct NaturalTransformation {
  std::string name;
  TheoryPtr source;
  TheoryPtr target;
  std::function<RatMat(const SpacetimePtr&)> component;
};

// Monotone spacetime label: any morphism M -> N must give
// eval(M) <= eval(N).
struct LabelFunctor {
  std::string name;
  std::function<int(const SpacetimePtr&)> eval;
};

TheoryPtr trivial_theory();
TheoryPtr kg_theory(std::shared_ptr<const KgModel> kg);

// Direct-sum power A^k with blockwise morphisms; the classical analog of
// the monoidal power.
TheoryPtr power_theory(const TheoryPtr& base, int k);

// pad(k,k'): A^k -> A^k' embedding as the first k blocks.
NaturalTransformation pad_natural(const TheoryPtr& base, const TheoryPtr& from,
                                  const TheoryPtr& to, int k, int kprime);

// lambda(M) = 2 when max mu on the carrier exceeds mu0, else 1.
LabelFunctor label_threshold(const Rat& mu0);

// lambda(M) = g(N) when the carrier wraps the circle (contains a full row),
// else 1.
LabelFunctor label_wrap(std::map<int, int> g, int g_default = 2);

// The diagonal theory M |-> A(M)^{lambda(M)} with padded morphisms.
TheoryPtr diagonal_theory(const TheoryPtr& base, const LabelFunctor& lambda);

// Region-spacetime M|_O: same grid and couplings, carrier O.
SpacetimePtr restrict_spacetime(const SpacetimePtr& M, const PointSet& O);

RatMat block_diag(const RatMat& m, int copies);
RatMat pad_matrix(std::size_t dim, int k, int kprime);

// ----- probe family -------------------------------------------------------

struct ProbeFamily {
  std::vector<SpacetimePtr> objects;
  std::vector<SpacetimeMorphism> morphisms;  // identities included
  std::vector<std::pair<std::size_t, std::size_t>> composable;  // (outer, inner)
};

struct ProbeParams {
  std::vector<int> Ns{5, 6};
  int T = 12;
  std::vector<Rat> mu_values{Rat(0), Rat(1)};
  bool hot_site = true;  // one spacetime with a single high-coupling site
  Rat hot_value = Rat(2);
};

ProbeFamily build_probe_family(const ProbeParams& params);

// ----- law checks ---------------------------------------------------------

struct LawFailure {
  std::string what;
};

// Identity preservation and composition on every probed composable pair.
std::optional<LawFailure> check_functor_laws(const Theory& th, const ProbeFamily& probes);

// Pair-Cauchy probe morphisms must map to isomorphisms.
std::optional<LawFailure> check_timeslice(const Theory& th, const ProbeFamily& probes);

std::optional<LawFailure> check_naturality(const NaturalTransformation& z,
                                           const ProbeFamily& probes);

// Which probe objects carry an isomorphism component.
std::vector<bool> iso_components(const NaturalTransformation& z, const ProbeFamily& probes);

std::optional<LawFailure> check_label_monotone(const LabelFunctor& lambda,
                                               const ProbeFamily& probes);

// ----- the SPASs counterexample -------------------------------------------

struct SpassOutcome {
  bool ok = true;
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  std::vector<int> labels;            // lambda per probe object
  std::vector<bool> first_iso_at;     // A -> A~ component iso flags
  std::vector<bool> second_iso_at;    // A~ -> A^l component iso flags
};

// Builds A -> A~ -> A^l for l = max lambda, verifies both arms are natural
// partial isomorphisms with the expected iso pattern, and that the
// composite is pad(1,l) and nowhere an isomorphism on probes with
// nontrivial objects.
SpassOutcome spass_counterexample(const TheoryPtr& base, const LabelFunctor& lambda,
                                  const ProbeFamily& probes);

}  // namespace loccov
