#include "aflaz/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace aflaz {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kPi = std::numbers::pi;

std::string str(long long v) { return std::to_string(v); }

// Pair sums of w organized by lag: c[k] = sum_s w_s w_{s+k}.
struct LagSums {
    long long n = 0;
    double sum_sq = 0;
    double l_form = 0;
    std::vector<double> jd;  // jd[d] for d in [0, n]; jd[0] unused

    LagSums(const WeightVector& w, long long n_) : n(n_) {
        const Eigen::Index dim = w.dim();
        if (dim > 2 * n - 1) throw std::invalid_argument("weight dimension exceeds 2N-1");
        Eigen::Index support = dim;
        while (support > 0 && w.values[support - 1] == 0.0) --support;
        std::vector<double> c(static_cast<std::size_t>(std::max<Eigen::Index>(dim, 1)), 0.0);
        for (Eigen::Index k = 0; k < support; ++k) {
            double acc = 0;
            for (Eigen::Index s = 0; s + k < support; ++s) acc += w.values[s] * w.values[s + k];
            c[k] = acc;
        }
        sum_sq = c[0];
        for (Eigen::Index k = 1; k < dim; ++k) {
            l_form += 2.0 * c[k] * static_cast<double>(circular_lag(0, k, n));
        }
        jd.assign(static_cast<std::size_t>(n + 1), 0.0);
        // l = N - d is reached at lag k = N - d and at k = N - 1 + d.
        for (long long d = 1; d <= n; ++d) {
            double acc = 0;
            const long long k1 = n - d;
            const long long k2 = n - 1 + d;
            if (k1 < dim) acc += (k1 == 0 ? 1.0 : 2.0) * c[k1];
            if (k2 < dim && k2 != k1) acc += 2.0 * c[k2];
            jd[d] = acc;
        }
    }
};

struct Evaluation {
    double raw = kNaN;
    double denominator = 0;
    Tradeoff tradeoff;
};

// theta_max^2 >= N - Q(w, N(N-Zy)/(M Zy), sum (d^2 - N) J^d) / (1 - w'(I/M + sum J^d) w)
Evaluation evaluate(const LagSums& sums, long long m, long long zy, long long d_lo, long long d_hi) {
    const double n = static_cast<double>(sums.n);
    const double md = static_cast<double>(m);
    const double zyd = static_cast<double>(zy);
    double j_sum = 0, j_sq = 0, j_shift = 0;
    for (long long d = std::max<long long>(d_lo, 1); d <= d_hi; ++d) {
        const double jd = sums.jd[d];
        const double dd = static_cast<double>(d);
        j_sum += jd;
        j_sq += dd * dd * jd;
        j_shift += (dd * dd - n) * jd;
    }
    Evaluation ev;
    const double eta_max = n * (n - zyd) / (md * zyd);
    const double eta_pair = n * n / (md * zyd);
    ev.denominator = 1.0 - sums.sum_sq / md - j_sum;
    if (ev.denominator > 1e-15) {
        ev.raw = n - (eta_max * sums.sum_sq + j_shift + sums.l_form) / ev.denominator;
    }
    ev.tradeoff.coef_c = (md - 1.0) * (1.0 - j_sum);
    ev.tradeoff.coef_a = 1.0 - sums.sum_sq - j_sum;
    ev.tradeoff.rhs = md * (n - eta_pair * sums.sum_sq - j_sq - sums.l_form);
    return ev;
}

BoundReport finish(BoundReport r, double raw) {
    r.raw = raw;
    if (r.status == BoundStatus::not_applicable || r.status == BoundStatus::degenerate) {
        r.value = kNaN;
        return r;
    }
    if (!std::isfinite(raw)) {
        r.status = BoundStatus::degenerate;
        r.value = kNaN;
    } else if (raw < 0) {
        r.status = BoundStatus::vacuous;
        r.value = 0;
    } else {
        r.status = BoundStatus::ok;
        r.value = raw;
    }
    return r;
}

BoundReport not_applicable(BoundReport r, std::string why, double raw = kNaN) {
    r.status = BoundStatus::not_applicable;
    r.note = std::move(why);
    r.raw = raw;
    r.value = kNaN;
    return r;
}

void check_common(const BoundParams& p) {
    if (p.n < 1 || p.m < 1) throw std::invalid_argument("N and M must be >= 1");
    if (p.zx < 1 || p.zx > p.n || p.zy < 1 || p.zy > p.n) {
        throw std::invalid_argument("LAZ (" + str(p.zx) + "," + str(p.zy) + ") outside [1, N]");
    }
    if (p.d < 0 || p.d > p.n - 1) throw std::invalid_argument("D must lie in [0, N-1]");
}

std::string family_name(std::string_view base, const WeightVector& w) {
    return std::string(base) + "_" + std::string(to_string(w.family));
}

BoundReport weighted_report(std::string_view base, const WeightVector& w, const BoundParams& params,
                           long long d_lo) {
    BoundReport r;
    r.name = family_name(base, w);
    r.params = params;
    r.weight = w;
    r.q = w.q;
    const LagSums sums(w, params.n);
    const Evaluation ev = evaluate(sums, params.m, params.zy, d_lo, params.d);
    r.tradeoff = ev.tradeoff;
    if (!(ev.denominator > 1e-15)) {
        r.status = BoundStatus::degenerate;
        r.note = "non-positive denominator " + std::to_string(ev.denominator);
        return finish(r, kNaN);
    }
    return finish(r, ev.raw);
}

}  // namespace

std::string_view to_string(WeightFamily family) {
    switch (family) {
        case WeightFamily::A: return "A";
        case WeightFamily::B: return "B";
        case WeightFamily::C: return "C";
        case WeightFamily::custom: return "custom";
    }
    return "?";
}

std::string_view to_string(BoundStatus status) {
    switch (status) {
        case BoundStatus::ok: return "ok";
        case BoundStatus::vacuous: return "vacuous";
        case BoundStatus::not_applicable: return "not_applicable";
        case BoundStatus::degenerate: return "degenerate";
    }
    return "?";
}

std::string_view to_string(ClosedForm form) {
    switch (form) {
        case ClosedForm::uniform_q: return "uniform_q";
        case ClosedForm::uniform_opt_q: return "uniform_opt_q";
        case ClosedForm::chebyshev_q: return "chebyshev_q";
        case ClosedForm::chebyshev_opt_q: return "chebyshev_opt_q";
        case ClosedForm::flat_full: return "flat_full";
        case ClosedForm::global_af: return "global_af";
    }
    return "?";
}

WeightVector WeightVector::from_values(Eigen::VectorXd values, WeightFamily family, std::optional<int> q) {
    if (values.size() < 1) throw std::invalid_argument("weight vector must be non-empty");
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]) || values[i] < -1e-15) {
            throw std::invalid_argument("weight entry " + std::to_string(i) + " is negative or not finite");
        }
        values[i] = std::max(values[i], 0.0);
    }
    if (std::abs(values.sum() - 1.0) > 1e-12) {
        throw std::invalid_argument("weight vector must sum to 1 (got " + std::to_string(values.sum()) + ")");
    }
    return WeightVector{std::move(values), family, q};
}

DopplerWeight DopplerWeight::from_values(Eigen::VectorXd values) {
    const WeightVector checked = WeightVector::from_values(std::move(values));
    return DopplerWeight{checked.values};
}

long long circular_lag(long long s, long long t, long long n) {
    const long long diff = s > t ? s - t : t - s;
    return std::min(diff, 2 * n - 1 - diff);
}

double l_quadform(const WeightVector& w, long long n) { return LagSums(w, n).l_form; }

double jd_quadform(const WeightVector& w, long long d, long long n) {
    if (d < 1 || d > n) throw std::invalid_argument("d must lie in [1, N]");
    return LagSums(w, n).jd[d];
}

DopplerWeight optimal_doppler_weights(long long zy) {
    if (zy < 1) throw std::invalid_argument("Z_y must be >= 1");
    return DopplerWeight{Eigen::VectorXd::Constant(zy, 1.0 / static_cast<double>(zy))};
}

WeightVector weights_A(int q, Eigen::Index dim) {
    if (q < 1 || q > dim) throw std::invalid_argument("family A needs 1 <= q <= dim");
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
    v.head(q).setConstant(1.0 / q);
    return WeightVector::from_values(std::move(v), WeightFamily::A, q);
}

double chebyshev_angle(long long n, long long m, long long zy) {
    const double ratio = static_cast<double>(m) * static_cast<double>(zy) /
                         (static_cast<double>(n) * static_cast<double>(n));
    if (ratio > 1.0) return kNaN;
    // 1 - cos g = 2 sin^2(g/2) = ratio, evaluated without cancellation.
    return 2.0 * std::asin(std::sqrt(ratio / 2.0));
}

int chebyshev_support(long long n, long long m, long long zx, long long zy) {
    const double g = chebyshev_angle(n, m, zy);
    if (!std::isfinite(g)) return 0;
    const double cap = std::floor(kPi / g) + 1.0;
    return static_cast<int>(std::min<double>(static_cast<double>(zx), cap));
}

WeightVector weights_B(int q, Eigen::Index dim, long long n, long long m, long long zy) {
    const double g = chebyshev_angle(n, m, zy);
    if (!std::isfinite(g)) throw std::invalid_argument("family B needs M Z_y <= N^2");
    if (q < 1 || q > dim) throw std::invalid_argument("family B needs 1 <= q <= dim");
    if ((q - 1) * g > kPi * (1.0 + 1e-12)) throw std::invalid_argument("family B needs q g <= pi + g");
    const double s = std::sin(q * g / 2.0);
    if (s == 0.0) throw std::invalid_argument("family B: sin(q g / 2) vanishes");
    const double g0 = (kPi - q * g + g) / 2.0;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
    for (int i = 0; i < q; ++i) {
        v[i] = std::sin(g / 2.0) / s * std::sin(g0 + i * g);
        if (v[i] < -1e-12) throw std::invalid_argument("family B produced a negative entry");
        v[i] = std::max(v[i], 0.0);
    }
    v /= v.sum();
    return WeightVector::from_values(std::move(v), WeightFamily::B, q);
}

WeightVector weights_C(long long n) {
    if (n < 1) throw std::invalid_argument("N must be >= 1");
    const Eigen::Index dim = 2 * n - 1;
    return WeightVector::from_values(Eigen::VectorXd::Constant(dim, 1.0 / static_cast<double>(dim)),
                                     WeightFamily::C);
}

BoundReport laz_bound(const WeightVector& w, const BoundParams& params) {
    check_common(params);
    if (w.dim() != params.zx) throw std::invalid_argument("LAZ bound needs dim(w) == Z_x");
    if (params.zx < 2) {
        BoundReport r;
        r.name = family_name("laz_bound", w);
        r.params = params;
        r.weight = w;
        r.q = w.q;
        return not_applicable(r, "needs Z_x > 1");
    }
    return weighted_report("laz_bound", w, params, params.e());
}

BoundReport full_delay_bound(const WeightVector& w, const BoundParams& params) {
    check_common(params);
    if (w.dim() != 2 * params.n - 1) throw std::invalid_argument("full-delay bound needs dim(w) == 2N-1");
    if (params.zx != params.n) {
        BoundReport r;
        r.name = family_name("full_delay_bound", w);
        r.params = params;
        r.weight = w;
        r.q = w.q;
        return not_applicable(r, "needs Z_x == N");
    }
    return weighted_report("full_delay_bound", w, params, 1);
}

BoundReport simplified_bound(const WeightVector& w, const BoundParams& params) {
    check_common(params);
    BoundReport r;
    r.name = family_name("simplified_bound", w);
    r.params = params;
    r.weight = w;
    r.q = w.q;
    const bool fits = w.dim() == params.zx || (params.zx == params.n && w.dim() == 2 * params.n - 1);
    if (!fits) throw std::invalid_argument("simplified bound needs dim(w) == Z_x (or 2N-1 when Z_x == N)");
    const LagSums sums(w, params.n);
    const double n = static_cast<double>(params.n);
    const double md = static_cast<double>(params.m);
    const double q_form = n * n / (md * static_cast<double>(params.zy)) * sums.sum_sq + sums.l_form;
    const double raw = n - q_form;
    r.tradeoff = Tradeoff{md - 1.0, 1.0, md * raw};
    return finish(r, raw);
}

BoundReport closed_form_bound(ClosedForm form, const BoundParams& params, std::optional<int> q) {
    check_common(params);
    BoundReport r;
    r.name = std::string(to_string(form));
    r.params = params;
    r.q = q;
    const double n = static_cast<double>(params.n);
    const double md = static_cast<double>(params.m);
    const double zx = static_cast<double>(params.zx);
    const double zy = static_cast<double>(params.zy);
    const double mzy = md * zy;

    switch (form) {
        case ClosedForm::uniform_q: {
            if (!q) throw std::invalid_argument("uniform_q needs q");
            const double qd = *q;
            if (*q < 1 || *q > params.zx) return not_applicable(r, "needs 1 <= q <= Z_x");
            const double den = 3.0 * (qd * md - 1.0) * zy;
            r.tradeoff = Tradeoff{3.0 * qd * zy * (md - 1.0), 3.0 * qd * zy - 3.0 * zy,
                                  3.0 * qd * md * n * zy - (qd * qd - 1.0) * mzy - 3.0 * n * n};
            if (den <= 0) {
                r.status = BoundStatus::degenerate;
                r.note = "q M = 1";
                return finish(r, kNaN);
            }
            return finish(r, (3.0 * qd * md * n * zy - 3.0 * n * n - qd * qd * mzy + mzy) / den);
        }
        case ClosedForm::uniform_opt_q: {
            const double c = std::sqrt(3.0 * n * n / mzy);
            r.q = static_cast<int>(std::clamp<double>(std::floor(c), 1.0, zx));
            const double root = std::sqrt(3.0 * mzy);
            r.tradeoff = Tradeoff{md - 1.0, 1.0 - std::sqrt(mzy) / (std::sqrt(3.0) * n),
                                  md * n * (root - 2.0) / root};
            const double raw = n - 2.0 * n / root;
            if (mzy < 3.0) return not_applicable(r, "needs M Z_y >= 3", raw);
            if (!(zx > c)) return not_applicable(r, "needs Z_x > sqrt(3 N^2 / (M Z_y))", raw);
            return finish(r, raw);
        }
        case ClosedForm::chebyshev_q: {
            if (!q) throw std::invalid_argument("chebyshev_q needs q");
            const double g = chebyshev_angle(params.n, params.m, params.zy);
            if (!std::isfinite(g)) return not_applicable(r, "needs M Z_y <= N^2");
            const double qd = *q;
            if (*q < 1 || !(qd < std::min(zx + 1.0, kPi / g + 1.0))) {
                return not_applicable(r, "needs 1 <= q < min(Z_x + 1, pi/g + 1)");
            }
            const double one_minus_cos = mzy / (n * n);
            const double s = std::sin(qd * g / 2.0);
            const double raw =
                n - (qd - 1.0) / 2.0 - (s - std::sin((qd - 2.0) * g / 2.0)) / (2.0 * one_minus_cos * s);
            r.tradeoff = Tradeoff{md - 1.0, 1.0, md * raw};
            return finish(r, raw);
        }
        case ClosedForm::chebyshev_opt_q: {
            const double g = chebyshev_angle(params.n, params.m, params.zy);
            if (!std::isfinite(g)) return not_applicable(r, "needs M Z_y <= N^2");
            r.q = static_cast<int>(std::floor(kPi / g) + 1.0);
            const double raw = n - std::ceil(kPi * n / std::sqrt(8.0 * mzy));
            r.tradeoff = Tradeoff{md - 1.0, 1.0, md * raw};
            if (mzy < 5.0) return not_applicable(r, "needs M Z_y >= 5", raw);
            if (!(zx > kPi / g)) return not_applicable(r, "needs Z_x > pi / g", raw);
            return finish(r, raw);
        }
        case ClosedForm::flat_full: {
            const double raw = n * n * (mzy - 1.0) / (md * (2.0 * n - 1.0) * zy - zy);
            r.tradeoff = Tradeoff{md - 1.0, (2.0 * n - 2.0) / (2.0 * n - 1.0),
                                  n * n * (mzy - 1.0) / ((2.0 * n - 1.0) * zy)};
            if (params.zx != params.n) return not_applicable(r, "needs Z_x == N", raw);
            if (md * (2.0 * n - 1.0) * zy - zy <= 0) {
                r.status = BoundStatus::degenerate;
                r.note = "zero denominator";
                return finish(r, kNaN);
            }
            return finish(r, raw);
        }
        case ClosedForm::global_af: {
            const double raw = params.m == 1 ? n - 1.0 : n;
            if (params.zy != params.n) return not_applicable(r, "needs Z_y == N", raw);
            if (params.m == 1 && params.zx < 2) return not_applicable(r, "needs Z_x > 1 when M == 1", raw);
            return finish(r, raw);
        }
    }
    throw std::invalid_argument("unknown closed form");
}

BoundReport benchmark_bound(const BoundParams& params) {
    check_common(params);
    BoundReport r;
    r.name = "benchmark";
    r.params = params;
    if (params.zx < 2) return not_applicable(r, "needs Z_x > 1");
    const double n = static_cast<double>(params.n);
    const double md = static_cast<double>(params.m);
    const double zx = static_cast<double>(params.zx);
    const double zy = static_cast<double>(params.zy);
    const double den = (n + zx - 1.0) * (md * zx - 1.0) * zy;
    if (den <= 0) {
        r.status = BoundStatus::degenerate;
        return finish(r, kNaN);
    }
    return finish(r, n * n * (md * zx * zy - n - zx + 1.0) / den);
}

DoptResult dopt_search(const WeightVector& w, const BoundParams& params, Regime regime) {
    BoundParams base = params;
    base.d = 0;
    auto eval_report = [&](long long d) {
        BoundParams p = base;
        p.d = d;
        return regime == Regime::laz ? laz_bound(w, p) : full_delay_bound(w, p);
    };
    DoptResult result;
    result.at_zero = eval_report(0);
    result.best = result.at_zero;
    if (result.at_zero.status == BoundStatus::not_applicable) return result;

    const LagSums sums(w, params.n);
    const long long d_lo = regime == Regime::laz ? base.e() : 1;
    result.raw_by_d.assign(static_cast<std::size_t>(params.n), kNaN);
    long long best_d = -1;
    double best_raw = -std::numeric_limits<double>::infinity();
    for (long long d = 0; d < params.n; ++d) {
        const double raw = evaluate(sums, params.m, params.zy, d_lo, d).raw;
        result.raw_by_d[d] = raw;
        if (std::isfinite(raw) && raw > best_raw) {
            best_raw = raw;
            best_d = d;
        }
    }
    const double ref = result.at_zero.raw;
    result.heuristic_d = std::isfinite(ref) ? static_cast<long long>(std::floor(std::sqrt(std::max(ref, 0.0)))) : 0;
    if (best_d > 0) result.best = eval_report(best_d);
    result.best.note = "heuristic D = " + std::to_string(result.heuristic_d);
    return result;
}

double flat_weight_margin(long long n, long long m, long long zy) {
    const double nd = static_cast<double>(n);
    const double s = std::sin(kPi / (2.0 * (2.0 * nd - 1.0)));
    return nd * (nd - zy) / (static_cast<double>(m) * zy) - 1.0 / (4.0 * s * s);
}

double flat_weight_margin_displayed(long long n, long long m, long long zy) {
    const double nd = static_cast<double>(n);
    const double s = std::sin(kPi / (2.0 * nd - 1.0));
    return nd * (nd - zy) / (static_cast<double>(m) * zy) - 1.0 / (4.0 * s * s);
}

bool flat_weight_optimal(long long n, long long m, long long zy) {
    return flat_weight_margin(n, m, zy) >= -1e-12;
}

namespace {

template <typename Fn>
void for_each_weight(const BoundParams& params, Eigen::Index dim, bool include_c, Fn&& fn) {
    for (int q = 1; q <= dim; ++q) fn(weights_A(q, dim));
    const double g = chebyshev_angle(params.n, params.m, params.zy);
    if (std::isfinite(g)) {
        const int cap = static_cast<int>(std::min<double>(static_cast<double>(dim), std::floor(kPi / g) + 1.0));
        for (int q = 1; q <= cap; ++q) fn(weights_B(q, dim, params.n, params.m, params.zy));
    }
    if (include_c) fn(weights_C(params.n));
}

bool better(const BoundReport& candidate, const BoundReport& incumbent) {
    if (!candidate.usable()) return false;
    if (!incumbent.usable()) return true;
    if (candidate.value != incumbent.value) return candidate.value > incumbent.value;
    return candidate.raw > incumbent.raw;
}

}  // namespace

BoundReport best_bound(const BoundParams& params) {
    check_common(params);
    BoundReport best;
    best.name = "best";
    best.params = params;
    best = not_applicable(best, "no admissible weight");
    auto consider = [&](const BoundReport& r) {
        if (better(r, best)) best = r;
    };
    if (params.zx >= 2) {
        for_each_weight(params, params.zx, false,
                        [&](const WeightVector& w) { consider(dopt_search(w, params, Regime::laz).best); });
    }
    if (params.zx == params.n) {
        for_each_weight(params, 2 * params.n - 1, true, [&](const WeightVector& w) {
            consider(dopt_search(w, params, Regime::full_delay).best);
        });
    }
    return best;
}

std::vector<BoundReport> all_bounds(const BoundParams& params) {
    check_common(params);
    BoundParams base = params;
    base.d = 0;
    std::vector<BoundReport> out;
    out.push_back(benchmark_bound(base));
    out.push_back(closed_form_bound(ClosedForm::global_af, base));
    out.push_back(closed_form_bound(ClosedForm::uniform_opt_q, base));
    out.push_back(closed_form_bound(ClosedForm::chebyshev_opt_q, base));
    out.push_back(closed_form_bound(ClosedForm::flat_full, base));
    for (int q = 1; q <= params.zx; ++q) {
        out.push_back(closed_form_bound(ClosedForm::uniform_q, base, q));
        out.push_back(closed_form_bound(ClosedForm::chebyshev_q, base, q));
    }
    if (params.zx >= 2) {
        for_each_weight(base, params.zx, false, [&](const WeightVector& w) {
            out.push_back(simplified_bound(w, base));
            const DoptResult res = dopt_search(w, base, Regime::laz);
            out.push_back(res.at_zero);
            out.push_back(res.best);
        });
    }
    if (params.zx == params.n) {
        for_each_weight(base, 2 * params.n - 1, true, [&](const WeightVector& w) {
            const DoptResult res = dopt_search(w, base, Regime::full_delay);
            out.push_back(res.at_zero);
            out.push_back(res.best);
        });
    }
    return out;
}

}  // namespace aflaz
