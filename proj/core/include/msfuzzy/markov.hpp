#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "msfuzzy/types.hpp"

namespace msfuzzy {

// Stationary distribution pi with pi' P = pi', sum(pi) = 1, all entries
// positive. Ergodicity is checked first by looking for a strictly positive
// power of P (up to P^(k^2)); throws NonErgodicChain otherwise.
std::vector<double> ergodic_probabilities(const TransitionMatrix& P);

// Expected sojourn length 1/(1 - p_ii). Throws AbsorbingState at p_ii = 1.
double mean_duration(double p_ii);

// mean_duration applied to every diagonal entry of the spec's transition.
std::vector<double> state_durations(const MSModelSpec& spec);

// Chain realization of length T; the initial state is drawn from the
// ergodic distribution. Fully reproducible from the seed.
StatePath simulate_chain(const TransitionMatrix& P, std::size_t T,
                         std::uint64_t rng_seed);

// Draws a length-T sample of the model together with its true state path.
// For AR specifications, 200 burn-in observations initialize the pre-sample
// values and are discarded.
std::pair<TimeSeries, StatePath> simulate_ms(const MSModelSpec& spec,
                                             std::size_t T,
                                             std::uint64_t rng_seed);

// Stationary mixture density evaluated on a grid. For p = 0 the components
// are Normal(mu_j, sigma^2) weighted by the ergodic probabilities; for p = 1
// they are indexed by state pairs (i, j) with weights pi_i p_ij and centres
// (mu_j - phi mu_i) / (1 - phi), the level the AR recursion settles at while
// the pair persists. Orders p > 1 are not supported.
std::vector<double> ergodic_mixture_density(const MSModelSpec& spec,
                                            const std::vector<double>& grid);

} // namespace msfuzzy
