// Seeded randomized checks that drive the `verify` subcommand and the
// acceptance suite. Every outcome records the seed of the instance that
// produced it.

#pragma once

#include "aflaz/oracle.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace aflaz {

using Rng = std::mt19937_64;

Sequence random_unimodular(Rng& rng, Index n);
SequenceSet random_set(Rng& rng, Index n, Index m);

/// Uniform sample from the probability simplex of the given dimension.
Eigen::VectorXd random_simplex(Rng& rng, Index dim);

/// Zero-delay nulling and the per-delay energy identity for one random sequence.
std::vector<CheckOutcome> zero_delay_checks(std::uint64_t seed, Index n);

/// Gram sandwich on one random instance (N in [2, max_n], M in [1, max_m]):
/// Frobenius equality, AF expansion, lower bound, both upper-bound forms and
/// uniform-p dominance. Every LAZ is covered when all_lazs is set, otherwise
/// one random LAZ.
std::vector<CheckOutcome> gram_chain_checks(std::uint64_t seed, Index max_n, Index max_m, bool all_lazs);

/// Exhaustive PSK minima against every usable bound, one outcome per LAZ
/// (rhs is the largest usable bound), plus witness reproduction.
std::vector<CheckOutcome> search_floor_checks(int alphabet, long long n, long long m);

}  // namespace aflaz
