// Independent reference computations used by the tests. Nothing here calls
// into the library's numerical kernels.

#pragma once

#include "aflaz/af.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>

namespace oracle {

using cd = std::complex<double>;

// Aperiodic AF straight from its definition, phases through std::exp.
inline cd naive_af(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y, long tau, long nu) {
    const long n = static_cast<long>(x.size());
    cd acc = 0;
    for (long t = 0; t < n; ++t) {
        const double phase = 2.0 * std::numbers::pi * static_cast<double>(nu) * static_cast<double>(t) / n;
        if (tau >= 0) {
            if (t + tau < n) acc += x[t] * std::conj(y[t + tau]) * std::exp(cd(0, phase));
        } else {
            if (t - tau < n) acc += x[t - tau] * std::conj(y[t]) * std::exp(cd(0, phase));
        }
    }
    return acc;
}

// l_{s,t,N} table of size dim x dim.
inline Eigen::MatrixXd lag_matrix(long dim, long n) {
    Eigen::MatrixXd l(dim, dim);
    for (long s = 0; s < dim; ++s) {
        for (long t = 0; t < dim; ++t) {
            const long d = std::labs(t - s);
            l(s, t) = static_cast<double>(std::min(d, 2 * n - 1 - d));
        }
    }
    return l;
}

// Indicator of l_{s,t,N} == N - d.
inline Eigen::MatrixXd jd_matrix(long dim, long n, long d) {
    const Eigen::MatrixXd l = lag_matrix(dim, n);
    return (l.array() == static_cast<double>(n - d)).cast<double>().matrix();
}

inline Eigen::VectorXcd chu(long n, long a) {
    Eigen::VectorXcd v(n);
    for (long t = 0; t < n; ++t) {
        // exact reduction of a t^2 mod 2N keeps large N accurate
        const long long k = ((static_cast<long long>(t) * t) % (2 * n) * ((a % (2 * n) + 2 * n) % (2 * n))) % (2 * n);
        v[t] = std::exp(cd(0, std::numbers::pi * static_cast<double>(k) / n));
    }
    return v;
}

}  // namespace oracle
