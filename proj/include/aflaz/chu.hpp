// Chu sequences s_t = exp(j pi a t^2 / N) and their ambiguity behaviour
// inside a LAZ: closed-form auto-AF, the peak-ratio asymptote, the cross-AF
// cap from a van der Corput estimate, and order-optimal LAZ selection.

#pragma once

#include "aflaz/af.hpp"

#include <string>
#include <vector>

namespace aflaz {

struct ChuSpec {
    long long n = 1;
    std::vector<long long> roots;

    /// Roots must be pairwise distinct with 1 <= |a| <= N-1.
    void validate() const;
};

/// Constants of the auto-AF peak asymptote.
struct ChuAsymptote {
    static constexpr double peak_constant = 0.4802;  // lim max|A| / sqrt(N / |a|)
    static constexpr double phi0 = 2.3311;           // argmax of (1 - cos phi) / phi on (0, 2 pi]
    static constexpr double shape_max = 0.7246;      // value at phi0
    static constexpr double small_delay_sq = 0.2025; // (0.45)^2, short-delay regime
    static constexpr double limit_sq = 0.2306;       // shape_max / pi

    /// (1 - cos phi) / phi
    static double shape(double phi);

    /// Maximizer of shape() on (0, 2 pi], by golden-section search.
    static double locate_phi0();
};

Sequence chu_sequence(long long n, long long a);

SequenceSet chu_set(const ChuSpec& spec);

/// |A_s(tau, nu)|^2 from the geometric-sum closed form
///   sin^2(pi k tau / N) / sin^2(pi k / N),  k = nu - a tau,
/// and (N - |tau|)^2 when k == 0 (mod N). Negative tau uses |A(tau,nu)| = |A(-tau,-nu)|.
double chu_aaf_closed_form(long long n, long long a, long long tau, long long nu);

/// LAZ |nu| < |a|, |tau| <= beta N / |a| - 1 as (floor(beta N / |a|), |a|).
/// Requires |a| > 1, 1/2 < beta < 1 and N >= 5 |a|.
LazSpec chu_aaf_laz(long long n, long long a, double beta = 0.9);

/// max over that LAZ (excluding the origin) of |A_s| / sqrt(N), via the closed form.
double chu_aaf_peak_ratio(long long n, long long a, double beta = 0.9);

/// 3 (sqrt(a1-a2) + 2/sqrt(a1-a2)) sqrt(N) - 3 |tau| sqrt(a1-a2) / sqrt(N), a1 > a2.
double chu_caf_cap(long long n, long long a1, long long a2, long long tau);

/// 3 alpha xi sqrt(rho) + 6 / sqrt(rho)
double van_der_corput_cap(double rho, double alpha, double xi);

struct OrderOptimalLaz {
    LazSpec laz;
    bool applicable = false;
    bool spread_ok = false;  // max root spread <= sqrt(N)
    std::string note;
};

/// Largest LAZ with Z_x < floor(N / max|a| - 1) and Z_y <= min|a|.
/// Throws when N < 5 max|a|.
OrderOptimalLaz order_optimal_laz(const ChuSpec& spec);

}  // namespace aflaz
