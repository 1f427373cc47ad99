// Brute-force checks of the bounding chain: the weighted matrix U built from
// Doppler-modulated, zero-padded circulant rows, both Gram Frobenius norms,
// the AF expansion of ||U U^H||_F^2, and exhaustive phase-alphabet search.

#pragma once

#include "aflaz/af.hpp"
#include "aflaz/bounds.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace aflaz {

/// M Z_y Z_x rows of length 2N-1; row (m, r, i) sits at (m Z_y + r) Z_x + i and
/// equals sqrt(p_r w_i) times the i-th cyclic right shift of
/// [x^m_t exp(j 2 pi t r / N)]_t padded with N-1 zeros.
struct WeightedMatrixU {
    Eigen::MatrixXcd rows;
    Index n = 0;
    Index m = 0;
    LazSpec laz;

    Index row_index(Index member, Index r, Index i) const { return (member * laz.zy + r) * laz.zx + i; }
};

WeightedMatrixU build_weighted_matrix(const SequenceSet& set, const WeightVector& w, const DopplerWeight& p,
                                      const LazSpec& laz);

struct FrobeniusPair {
    double gram_cols = 0;  // ||U^H U||_F^2
    double gram_rows = 0;  // ||U U^H||_F^2
};

FrobeniusPair frobenius_pair(const WeightedMatrixU& u);

/// sum_{m,m',r,r',i,i'} |A_{x^m,x^m'}(i' - i, r - r')|^2 p_r p_r' w_i w_i', from af-core.
double af_expansion(const WeightedMatrixU& u, const SequenceSet& set, const WeightVector& w,
                    const DopplerWeight& p);

/// One verification outcome.
struct CheckOutcome {
    std::string check;
    std::vector<std::pair<std::string, double>> params;
    double lhs = 0;
    double rhs = 0;
    bool pass = false;
    std::uint64_t seed = 0;
};

/// ||U^H U||_F^2 >= M^2 (N - w' L w).
double gram_lower_rhs(const WeightVector& w, long long n, long long m);
CheckOutcome gram_lower_check(const WeightedMatrixU& u, const WeightVector& w);

enum class UpperVariant { split, max };

/// Upper bound on ||U U^H||_F^2 in terms of the set's true theta values.
/// split keeps theta_a and theta_c apart; max uses theta_max for both.
double gram_upper_rhs(const ThetaReport& theta, const BoundParams& params, const WeightVector& w,
                      const DopplerWeight& p, UpperVariant variant);
CheckOutcome gram_upper_check(const WeightedMatrixU& u, const SequenceSet& set, const BoundParams& params,
                              const WeightVector& w, const DopplerWeight& p, UpperVariant variant);

struct SearchResult {
    LazSpec laz;
    double best_theta_max_sq = 0;
    std::vector<std::vector<int>> witness;  // symbol indices per member
    int alphabet = 0;
    std::uint64_t explored = 0;

    SequenceSet witness_set() const;
};

/// Sequence with entries exp(j 2 pi s_t / alphabet).
Sequence psk_sequence(std::span<const int> symbols, int alphabet);

/// Minimal theta_max^2 over all alphabet-PSK sets (first symbol of the first
/// member pinned to 0), one result per LAZ from a single enumeration.
/// Throws when alphabet^(N M) exceeds 1e8.
std::vector<SearchResult> exhaustive_search(int alphabet, long long n, long long m, std::span<const LazSpec> lazs);
SearchResult exhaustive_search(int alphabet, long long n, long long m, const LazSpec& laz);

}  // namespace aflaz
