#pragma once

#include "kg.hpp"

namespace loccov {

// Past/future Cauchy wedges of a perturbation: M^± = carrier \ J^∓(supp h).
struct WedgeRegions {
  PointSet plus;
  PointSet minus;
};

void validate_perturbation(const KgModel& kg, const Perturbation& h);

SpacetimePtr perturbed_spacetime(const Perturbation& h);

WedgeRegions wedge_regions(const KgModel& kg, const Perturbation& h);

// Row pairs usable for the tau identifications: (t, t+1) strictly above
// (sign +) or below (sign -) the support of h.
std::vector<int> admissible_pairs(const KgModel& kg, const Perturbation& h, int sign);

// tau^±: data of a background solution at the reference pair |-> data of
// the matched perturbed solution at the reference pair of M[h].
RatMat tau_matrix(const KgModel& kg, const SpacetimePtr& M, const Perturbation& h, int sign,
                  int pair_row);

// The relative Cauchy evolution on reference-pair data. Exactly
// omega-preserving; throws if that fails (it cannot, but the check is
// part of the contract). Every call is counted for the suite-level
// preservation tally.
RatMat rce_matrix(const KgModel& kg, const SpacetimePtr& M, const Perturbation& h);
RatMat rce_matrix(const KgModel& kg, const SpacetimePtr& M, const Perturbation& h,
                  int up_pair, int down_pair);

struct RceStats {
  long computed = 0;
  long omega_verified = 0;
};
RceStats rce_stats();
void reset_rce_stats();

// Apply rce to a single data vector without forming the matrix.
std::vector<Rat> rce_apply(const KgModel& kg, const SpacetimePtr& M, const Perturbation& h,
                           const std::vector<Rat>& data);

// Exact equality of the evolutions computed at two distinct admissible
// pair choices.
bool rce_independence_check(const KgModel& kg, const SpacetimePtr& M, const Perturbation& h,
                            int up_a, int down_a, int up_b, int down_b);

// rce_N[psi_* h] . A(psi) = A(psi) . rce_M[h] in object coordinates.
bool rce_covariance_check(const KgModel& kg, const SpacetimeMorphism& psi,
                          const Perturbation& h);

Perturbation pushforward(const SpacetimeMorphism& psi, const Perturbation& h);

// d/ds rce[s delta_p] at s = 0. For a single perturbed row the evolution is
// affine in s, so the derivative is exact; cross-validated by polynomial
// interpolation through s = 0, 1, 2.
RatMat rce_generator(const KgModel& kg, const SpacetimePtr& M, Point p);

// Exact derivative of s |-> rce[s h] at 0 for a general h, by polynomial
// interpolation at s = 0..deg where deg = number of perturbed rows.
RatMat rce_generator_of(const KgModel& kg, const SpacetimePtr& M, const Perturbation& h);

// rce in object coordinates of the theory value A(M).
RatMat rce_coords(const KgModel& kg, const SpacetimePtr& M, const Perturbation& h);

// The coupling-translation perturbation mu(t+1,.) - mu(t,.). For couplings
// that vary in time only inside a compact band this is compactly supported;
// M[h] is the time-relabelled presentation of M.
Perturbation relabeling_perturbation(const SpacetimePtr& M);

}  // namespace loccov
