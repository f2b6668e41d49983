#pragma once

#include "levy/models.hpp"
#include "levy/rng.hpp"

namespace levy {

// n i.i.d. increments of the model over step delta, bit-reproducible from the seed.
SampleIncrements simulate_increments(const ModelSpec& model, Eigen::Index n,
                                     double delta, SeedSpec seed);

// One Gamma(shape, rate) variate; shape may be far below 1.
double sample_gamma_increment(double shape, double rate, StreamRng& rng);

// sqrt(gamma) * N(0,1) for a realized subordinator increment gamma >= 0.
double sample_subordinated_bm_increment(double subordinator_increment, StreamRng& rng);

// One jump-part increment over step delta (helper shared with simulate_increments).
double sample_jump_increment(const JumpPart& jumps, double delta, StreamRng& rng);

double sample_jump_law(const JumpLaw& law, StreamRng& rng);

} // namespace levy
