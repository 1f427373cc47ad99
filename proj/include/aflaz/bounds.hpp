// Lower bounds on the peak aperiodic AF magnitude over a LAZ.
//
// All bounds are stated for theta_max^2 (energy^2 units). Weight vectors live
// on the probability simplex; the delay weight w has dimension Z_x (general
// LAZ) or 2N-1 (Z_x = N), the Doppler weight p has dimension Z_y.

#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aflaz {

enum class WeightFamily { A, B, C, custom };

std::string_view to_string(WeightFamily family);

/// Delay weight vector on the simplex.
struct WeightVector {
    Eigen::VectorXd values;
    WeightFamily family = WeightFamily::custom;
    std::optional<int> q;

    /// Validates sum == 1 (1e-12) and entries >= -1e-15; tiny negatives are clamped to 0.
    static WeightVector from_values(Eigen::VectorXd values, WeightFamily family = WeightFamily::custom,
                                    std::optional<int> q = std::nullopt);

    Eigen::Index dim() const { return values.size(); }
    double sum_sq() const { return values.squaredNorm(); }
};

struct DopplerWeight {
    Eigen::VectorXd values;

    static DopplerWeight from_values(Eigen::VectorXd values);
    Eigen::Index dim() const { return values.size(); }
};

struct BoundParams {
    long long n = 1;
    long long m = 1;
    long long zx = 1;
    long long zy = 1;
    long long d = 0;  // number of trailing delays whose AF is capped by d^2

    long long e() const { return n - zx + 1; }
};

enum class BoundStatus { ok, vacuous, not_applicable, degenerate };

std::string_view to_string(BoundStatus status);

/// coef_c * theta_c^2 + coef_a * theta_a^2 >= rhs
struct Tradeoff {
    double coef_c = 0;
    double coef_a = 0;
    double rhs = 0;
};

struct BoundReport {
    std::string name;
    double value = 0;  // usable lower bound: raw if ok, 0 if vacuous, NaN otherwise
    double raw = 0;    // the formula's own value (NaN when undefined)
    BoundStatus status = BoundStatus::ok;
    std::string note;
    std::optional<Tradeoff> tradeoff;
    BoundParams params;
    std::optional<WeightVector> weight;
    std::optional<int> q;

    bool usable() const { return status == BoundStatus::ok || status == BoundStatus::vacuous; }
};

// ---- quadratic forms -------------------------------------------------------

/// l_{s,t,N} = min(|t-s|, 2N-1-|t-s|)
long long circular_lag(long long s, long long t, long long n);

/// sum_{s,t} l_{s,t,N} w_s w_t
double l_quadform(const WeightVector& w, long long n);

/// sum over pairs with l_{s,t,N} = N - d of w_s w_t, for 1 <= d <= N.
double jd_quadform(const WeightVector& w, long long d, long long n);

/// Uniform Doppler weight 1/Z_y; minimizes sum p_r^2 on the simplex.
DopplerWeight optimal_doppler_weights(long long zy);

// ---- weight families -------------------------------------------------------

/// First q entries 1/q.
WeightVector weights_A(int q, Eigen::Index dim);

/// Chebyshev-shaped weights
///   w_i = sin(g/2) / sin(q g/2) * sin(g0 + i g),  i < q
/// with g = arccos(1 - M Z_y / N^2) and g0 = (pi - q g + g) / 2.
/// Requires M Z_y <= N^2 and (q - 1) g <= pi.
WeightVector weights_B(int q, Eigen::Index dim, long long n, long long m, long long zy);

/// Uniform 1/(2N-1) over the full circulant (Z_x = N only).
WeightVector weights_C(long long n);

/// arccos(1 - M Z_y / N^2); NaN when M Z_y > N^2.
double chebyshev_angle(long long n, long long m, long long zy);

/// min{Z_x, floor(pi / g) + 1}: the largest admissible family-B support.
int chebyshev_support(long long n, long long m, long long zx, long long zy);

// ---- the bounds ------------------------------------------------------------

/// General LAZ (1 < Z_x <= N), delay weight of dimension Z_x, trailing-delay
/// sums over d in [N - Z_x + 1, D]. Carries the theta_max^2 bound and the
/// theta_c / theta_a trade-off.
BoundReport laz_bound(const WeightVector& w, const BoundParams& params);

/// Z_x = N with the relaxed weighting over all 2N - 1 circulant rows;
/// trailing-delay sums over d in [1, D].
BoundReport full_delay_bound(const WeightVector& w, const BoundParams& params);

/// N - Q(w, N^2/(M Z_y), 0): drops the denominator and trailing delays.
BoundReport simplified_bound(const WeightVector& w, const BoundParams& params);

enum class ClosedForm {
    uniform_q,        // family A at a given q
    uniform_opt_q,    // family A at q ~ sqrt(3N^2 / (M Z_y))
    chebyshev_q,      // family B at a given q
    chebyshev_opt_q,  // family B at q = floor(pi/g) + 1
    flat_full,        // family C, Z_x = N
    global_af,        // Z_y = N
};

std::string_view to_string(ClosedForm form);

BoundReport closed_form_bound(ClosedForm form, const BoundParams& params,
                              std::optional<int> q = std::nullopt);

/// Inner-product benchmark:
///   N^2 (M Z_x Z_y - N - Z_x + 1) / ((N + Z_x - 1)(M Z_x - 1) Z_y)
BoundReport benchmark_bound(const BoundParams& params);

enum class Regime { laz, full_delay };

struct DoptResult {
    BoundReport best;             // bound at the maximizing D (smallest on ties)
    BoundReport at_zero;          // reference value at D = 0
    long long heuristic_d = 0;    // floor(sqrt(reference)), reported only
    std::vector<double> raw_by_d; // raw bound per D in [0, N-1]; NaN where degenerate
};

/// Exact sweep of D over [0, N-1].
DoptResult dopt_search(const WeightVector& w, const BoundParams& params, Regime regime);

/// Margin N(N - Z_y)/(M Z_y) + lambda_min(L_{2N-1}); w^C is optimal at D = 0 iff >= 0.
double flat_weight_margin(long long n, long long m, long long zy);

/// Same expression with the sin(pi/(2N-1)) form; kept for comparison only.
double flat_weight_margin_displayed(long long n, long long m, long long zy);

bool flat_weight_optimal(long long n, long long m, long long zy);

/// Max over families A/B (every admissible q) with a D sweep, plus the
/// full-delay forms (A/B/C on 2N-1) when Z_x = N.
BoundReport best_bound(const BoundParams& params);

/// Every bound evaluable at these parameters, any status.
std::vector<BoundReport> all_bounds(const BoundParams& params);

}  // namespace aflaz
