#include "aflaz/chu.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace aflaz {

namespace {

constexpr double kPi = std::numbers::pi;

long long mod(long long v, long long m) {
    const long long r = v % m;
    return r < 0 ? r + m : r;
}

void check_laz_preconditions(long long n, long long a, double beta) {
    const long long abs_a = std::llabs(a);
    if (abs_a <= 1) throw std::invalid_argument("peak asymptote needs |a| > 1");
    if (abs_a > n - 1) throw std::invalid_argument("root must satisfy |a| <= N-1");
    if (!(beta > 0.5 && beta < 1.0)) throw std::invalid_argument("beta must lie in (1/2, 1)");
    if (n < 5 * abs_a) throw std::invalid_argument("needs N >= 5|a|");
}

}  // namespace

void ChuSpec::validate() const {
    if (n < 2) throw std::invalid_argument("Chu length must be >= 2");
    if (roots.empty()) throw std::invalid_argument("Chu set needs at least one root");
    std::set<long long> seen;
    for (long long a : roots) {
        if (a == 0 || std::llabs(a) > n - 1) {
            throw std::invalid_argument("root " + std::to_string(a) + " outside 1 <= |a| <= N-1");
        }
        if (!seen.insert(a).second) throw std::invalid_argument("duplicate root " + std::to_string(a));
    }
}

double ChuAsymptote::shape(double phi) { return (1.0 - std::cos(phi)) / phi; }

double ChuAsymptote::locate_phi0() {
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 1e-6, hi = 2.0 * kPi;
    double x1 = hi - ratio * (hi - lo), x2 = lo + ratio * (hi - lo);
    for (int it = 0; it < 200; ++it) {
        if (shape(x1) < shape(x2)) {
            lo = x1;
            x1 = x2;
            x2 = lo + ratio * (hi - lo);
        } else {
            hi = x2;
            x2 = x1;
            x1 = hi - ratio * (hi - lo);
        }
    }
    return (lo + hi) / 2.0;
}

Sequence chu_sequence(long long n, long long a) {
    if (n < 1) throw std::invalid_argument("Chu length must be >= 1");
    if (a == 0 || std::llabs(a) > n - 1) throw std::invalid_argument("root must satisfy 1 <= |a| <= N-1");
    const long long two_n = 2 * n;
    const long long a_red = mod(a, two_n);
    Sequence::Vector v(n);
    for (long long t = 0; t < n; ++t) {
        const long long tm = t % two_n;
        const long long k = ((tm * tm) % two_n) * a_red % two_n;  // a t^2 mod 2N
        v[t] = std::polar(1.0, kPi * static_cast<double>(k) / static_cast<double>(n));
    }
    return Sequence(std::move(v));
}

SequenceSet chu_set(const ChuSpec& spec) {
    spec.validate();
    std::vector<Sequence> members;
    members.reserve(spec.roots.size());
    for (long long a : spec.roots) members.push_back(chu_sequence(spec.n, a));
    return SequenceSet(std::move(members));
}

double chu_aaf_closed_form(long long n, long long a, long long tau, long long nu) {
    if (tau < 0) return chu_aaf_closed_form(n, a, -tau, -nu);
    if (tau >= n) throw std::invalid_argument("tau must be <= N-1");
    const long long k = mod(nu - mod(a, n) * tau, n);
    if (k == 0) {
        const double len = static_cast<double>(n - tau);
        return len * len;
    }
    const double num = std::sin(kPi * static_cast<double>(mod(k * tau, n)) / static_cast<double>(n));
    const double den = std::sin(kPi * static_cast<double>(k) / static_cast<double>(n));
    return (num * num) / (den * den);
}

LazSpec chu_aaf_laz(long long n, long long a, double beta) {
    check_laz_preconditions(n, a, beta);
    const long long abs_a = std::llabs(a);
    const double extent = beta * static_cast<double>(n) / static_cast<double>(abs_a);
    const long long zx = static_cast<long long>(std::floor(extent * (1.0 + 1e-12)));
    return LazSpec{static_cast<Index>(std::max<long long>(zx, 1)), static_cast<Index>(abs_a)};
}

double chu_aaf_peak_ratio(long long n, long long a, double beta) {
    const LazSpec laz = chu_aaf_laz(n, a, beta);
    double best = 0;
    // |A(tau, nu)| = |A(-tau, -nu)| and the nu range is symmetric, so tau >= 0 suffices.
    for (long long tau = 0; tau < laz.zx; ++tau) {
        for (long long nu = -(laz.zy - 1); nu <= laz.zy - 1; ++nu) {
            if (tau == 0 && nu == 0) continue;
            best = std::max(best, chu_aaf_closed_form(n, a, tau, nu));
        }
    }
    return std::sqrt(best / static_cast<double>(n));
}

double chu_caf_cap(long long n, long long a1, long long a2, long long tau) {
    if (a1 <= a2) throw std::invalid_argument("cross-AF cap needs a1 > a2");
    const double delta = std::sqrt(static_cast<double>(a1 - a2));
    const double root_n = std::sqrt(static_cast<double>(n));
    return 3.0 * (delta + 2.0 / delta) * root_n - 3.0 * static_cast<double>(std::llabs(tau)) * delta / root_n;
}

double van_der_corput_cap(double rho, double alpha, double xi) {
    if (!(rho > 0)) throw std::invalid_argument("rho must be > 0");
    if (alpha < 1) throw std::invalid_argument("alpha must be >= 1");
    if (xi < 0) throw std::invalid_argument("xi must be >= 0");
    return 3.0 * alpha * xi * std::sqrt(rho) + 6.0 / std::sqrt(rho);
}

OrderOptimalLaz order_optimal_laz(const ChuSpec& spec) {
    spec.validate();
    long long max_abs = 0, min_abs = spec.n, hi = spec.roots.front(), lo = spec.roots.front();
    for (long long a : spec.roots) {
        max_abs = std::max(max_abs, std::llabs(a));
        min_abs = std::min(min_abs, std::llabs(a));
        hi = std::max(hi, a);
        lo = std::min(lo, a);
    }
    if (spec.n < 5 * max_abs) throw std::invalid_argument("order-optimal LAZ needs N >= 5 max|a|");

    OrderOptimalLaz out;
    const long long zx_limit = static_cast<long long>(
        std::floor(static_cast<double>(spec.n) / static_cast<double>(max_abs) - 1.0));
    out.laz = LazSpec{static_cast<Index>(std::max<long long>(zx_limit - 1, 1)), static_cast<Index>(min_abs)};
    out.spread_ok = static_cast<double>(hi - lo) <= std::sqrt(static_cast<double>(spec.n));
    out.applicable = min_abs > 1 && zx_limit - 1 >= 1;
    if (min_abs <= 1) {
        out.note = "a root with |a| = 1 is outside the auto-AF asymptote's range";
    } else if (zx_limit - 1 < 1) {
        out.note = "no admissible Z_x";
    } else if (!out.spread_ok) {
        out.note = "root spread exceeds sqrt(N); cross-AF cap is no longer O(sqrt(N))";
    }
    return out;
}

}  // namespace aflaz
