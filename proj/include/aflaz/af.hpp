// Discrete aperiodic ambiguity functions of unimodular sequences over a
// delay-Doppler low-ambiguity zone (LAZ).
//
//   A_{x,y}(tau, nu) = sum_t x_t conj(y_{t+tau}) exp(j 2 pi nu t / N),  tau >= 0
//                    = sum_t x_{t-tau} conj(y_t) exp(j 2 pi nu t / N),  tau <  0
//
// Doppler is an integer bin on the length-N exponential basis, so nu and
// nu + N address the same value. Everything here is templated on the real
// scalar; the rest of the library instantiates it with double.

#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace aflaz {

using Index = Eigen::Index;

template <typename Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using RealMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

namespace detail {

inline Index positive_mod(std::int64_t value, std::int64_t modulus) {
    const std::int64_t r = value % modulus;
    return static_cast<Index>(r < 0 ? r + modulus : r);
}

// exp(j 2 pi k / n) with k reduced exactly before the trig call.
template <typename Scalar>
std::complex<Scalar> unit_root(std::int64_t k, std::int64_t n) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(positive_mod(k, n)) /
                         static_cast<double>(n);
    return {static_cast<Scalar>(std::cos(angle)), static_cast<Scalar>(std::sin(angle))};
}

template <typename Scalar>
Scalar unimodular_tolerance() {
    return std::max<Scalar>(Scalar(1e-12), Scalar(64) * std::numeric_limits<Scalar>::epsilon());
}

inline bool has_only_small_factors(Index n) {
    for (Index p : {2, 3, 5}) {
        while (n % p == 0) n /= p;
    }
    return n == 1;
}

}  // namespace detail

/// Unimodular complex sequence of length N >= 1.
template <typename Scalar>
class BasicSequence {
public:
    using Complex = std::complex<Scalar>;
    using Vector = ComplexVector<Scalar>;

    explicit BasicSequence(Vector entries) : entries_(std::move(entries)) {
        if (entries_.size() < 1) throw std::invalid_argument("sequence must have length >= 1");
        const Scalar tol = detail::unimodular_tolerance<Scalar>();
        for (Index t = 0; t < entries_.size(); ++t) {
            const Scalar e = std::norm(entries_[t]);
            if (!(std::abs(e - Scalar(1)) <= tol)) {
                throw std::invalid_argument("sequence entry " + std::to_string(t) +
                                            " is not unimodular (|x|^2 = " + std::to_string(e) + ")");
            }
        }
    }

    static BasicSequence from_phases(const Eigen::Ref<const RealVector<Scalar>>& phases) {
        Vector v(phases.size());
        for (Index t = 0; t < phases.size(); ++t) v[t] = std::polar(Scalar(1), phases[t]);
        return BasicSequence(std::move(v));
    }

    Index size() const { return entries_.size(); }
    const Vector& entries() const { return entries_; }
    Complex operator[](Index t) const { return entries_[t]; }

private:
    Vector entries_;
};

/// M >= 1 unimodular sequences of a common length N.
template <typename Scalar>
class BasicSequenceSet {
public:
    using Member = BasicSequence<Scalar>;

    explicit BasicSequenceSet(std::vector<Member> members) : members_(std::move(members)) {
        if (members_.empty()) throw std::invalid_argument("sequence set must contain at least one member");
        for (const auto& s : members_) {
            if (s.size() != members_.front().size()) {
                throw std::invalid_argument("sequence set members must share one length");
            }
        }
    }

    Index count() const { return static_cast<Index>(members_.size()); }
    Index length() const { return members_.front().size(); }
    const Member& operator[](Index m) const { return members_[static_cast<std::size_t>(m)]; }
    const std::vector<Member>& members() const { return members_; }

private:
    std::vector<Member> members_;
};

using Sequence = BasicSequence<double>;
using SequenceSet = BasicSequenceSet<double>;

/// Delay/Doppler half-extents: |tau| <= zx - 1, |nu| <= zy - 1.
struct LazSpec {
    Index zx = 1;
    Index zy = 1;

    void validate(Index n) const {
        if (zx < 1 || zx > n || zy < 1 || zy > n) {
            throw std::invalid_argument("LAZ (" + std::to_string(zx) + "," + std::to_string(zy) +
                                        ") outside [1, N] for N = " + std::to_string(n));
        }
    }

    friend bool operator==(const LazSpec&, const LazSpec&) = default;
};

/// Evaluates sum_t z_t exp(+j 2 pi nu t / n) for every nu in [0, n).
///
/// Lengths whose prime factors are all <= 5 go straight through Eigen's FFT.
/// Other lengths use Bluestein's chirp-z identity
///   nu t = (nu^2 + t^2 - (nu - t)^2) / 2
/// which turns the transform into a power-of-two circular convolution.
template <typename Scalar>
class DopplerTransform {
public:
    using Complex = std::complex<Scalar>;

    explicit DopplerTransform(Index n) : n_(n) {
        if (n < 1) throw std::invalid_argument("transform length must be >= 1");
        bluestein_ = !detail::has_only_small_factors(n);
        if (!bluestein_) {
            in_.assign(static_cast<std::size_t>(n), Complex(0));
            return;
        }
        padded_ = 1;
        while (padded_ < 2 * n - 1) padded_ <<= 1;
        chirp_.resize(static_cast<std::size_t>(n));
        for (Index t = 0; t < n; ++t) chirp_[t] = chirp(t);
        std::vector<Complex> kernel(static_cast<std::size_t>(padded_), Complex(0));
        for (Index k = 0; k < n; ++k) {
            kernel[k] = std::conj(chirp_[k]);
            if (k > 0) kernel[padded_ - k] = std::conj(chirp_[k]);
        }
        fft_.fwd(kernel_hat_, kernel);
        in_.assign(static_cast<std::size_t>(padded_), Complex(0));
    }

    Index size() const { return n_; }

    void apply(std::span<const Complex> z, std::span<Complex> out) {
        if (static_cast<Index>(z.size()) > n_ || static_cast<Index>(out.size()) != n_) {
            throw std::invalid_argument("DopplerTransform::apply size mismatch");
        }
        if (n_ == 1) {
            out[0] = z.empty() ? Complex(0) : z[0];
            return;
        }
        std::fill(in_.begin(), in_.end(), Complex(0));
        if (!bluestein_) {
            std::copy(z.begin(), z.end(), in_.begin());
            fft_.inv(work_, in_);
            const Scalar scale = static_cast<Scalar>(n_);
            for (Index v = 0; v < n_; ++v) out[v] = work_[v] * scale;
            return;
        }
        for (std::size_t t = 0; t < z.size(); ++t) in_[t] = z[t] * chirp_[t];
        fft_.fwd(work_, in_);
        for (Index k = 0; k < padded_; ++k) work_[k] *= kernel_hat_[k];
        fft_.inv(conv_, work_);
        for (Index v = 0; v < n_; ++v) out[v] = chirp_[v] * conv_[v];
    }

private:
    // exp(j pi t^2 / n), with t^2 reduced mod 2n.
    Complex chirp(Index t) const {
        const std::int64_t two_n = 2 * static_cast<std::int64_t>(n_);
        const std::int64_t tm = t % two_n;
        const std::int64_t k = (tm * tm) % two_n;
        const double angle = std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_);
        return {static_cast<Scalar>(std::cos(angle)), static_cast<Scalar>(std::sin(angle))};
    }

    Index n_;
    bool bluestein_ = false;
    Index padded_ = 0;
    std::vector<Complex> chirp_;
    std::vector<Complex> kernel_hat_;
    std::vector<Complex> in_, work_, conv_;
    Eigen::FFT<Scalar> fft_;
};

namespace detail {

template <typename Scalar>
void check_pair(const BasicSequence<Scalar>& x, const BasicSequence<Scalar>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("AF operands must have equal length");
}

template <typename Scalar>
void check_shift(Index n, Index tau, Index nu) {
    if (tau <= -n || tau >= n) throw std::invalid_argument("|tau| must be <= N-1");
    if (nu <= -n || nu >= n) throw std::invalid_argument("|nu| must be <= N-1");
}

// z_t = x_t conj(y_{t+tau}) (tau >= 0) or x_{t-tau} conj(y_t) (tau < 0), t in [0, N-|tau|).
template <typename Scalar>
void lag_product(const BasicSequence<Scalar>& x, const BasicSequence<Scalar>& y, Index tau,
                 std::vector<std::complex<Scalar>>& z) {
    const Index n = x.size();
    const Index len = n - (tau >= 0 ? tau : -tau);
    z.resize(static_cast<std::size_t>(len));
    if (tau >= 0) {
        for (Index t = 0; t < len; ++t) z[t] = x[t] * std::conj(y[t + tau]);
    } else {
        for (Index t = 0; t < len; ++t) z[t] = x[t - tau] * std::conj(y[t]);
    }
}

}  // namespace detail

/// A_{x,y}(tau, nu) by direct summation.
template <typename Scalar>
std::complex<Scalar> aperiodic_af(const BasicSequence<Scalar>& x, const BasicSequence<Scalar>& y,
                                  Index tau, Index nu) {
    detail::check_pair(x, y);
    const Index n = x.size();
    detail::check_shift<Scalar>(n, tau, nu);
    std::complex<Scalar> acc(0);
    const Index len = n - std::abs(tau);
    for (Index t = 0; t < len; ++t) {
        const auto prod = tau >= 0 ? x[t] * std::conj(y[t + tau]) : x[t - tau] * std::conj(y[t]);
        acc += prod * detail::unit_root<Scalar>(static_cast<std::int64_t>(nu) * t, n);
    }
    return acc;
}

/// Full Doppler row: entry v holds A_{x,y}(tau, v) for v in [0, N).
template <typename Scalar>
ComplexVector<Scalar> doppler_row(const BasicSequence<Scalar>& x, const BasicSequence<Scalar>& y,
                                  Index tau, DopplerTransform<Scalar>& transform) {
    detail::check_pair(x, y);
    const Index n = x.size();
    detail::check_shift<Scalar>(n, tau, 0);
    if (transform.size() != n) throw std::invalid_argument("transform length differs from N");
    std::vector<std::complex<Scalar>> z;
    detail::lag_product(x, y, tau, z);
    ComplexVector<Scalar> row(n);
    transform.apply(z, std::span<std::complex<Scalar>>(row.data(), static_cast<std::size_t>(n)));
    return row;
}

template <typename Scalar>
ComplexVector<Scalar> doppler_row(const BasicSequence<Scalar>& x, const BasicSequence<Scalar>& y,
                                  Index tau) {
    DopplerTransform<Scalar> transform(x.size());
    return doppler_row(x, y, tau, transform);
}

/// |A|^2 over a LAZ grid. Row index tau + zx - 1, column index nu + zy - 1.
template <typename Scalar>
struct BasicAfSurface {
    RealMatrix<Scalar> magnitudes_sq;
    LazSpec laz;
    Index m = 0;
    Index m_prime = 0;

    Scalar at(Index tau, Index nu) const { return magnitudes_sq(tau + laz.zx - 1, nu + laz.zy - 1); }
    Index tau_min() const { return -(laz.zx - 1); }
    Index nu_min() const { return -(laz.zy - 1); }
};

using AfSurface = BasicAfSurface<double>;

enum class SurfaceMethod { automatic, direct, transform };

template <typename Scalar>
BasicAfSurface<Scalar> af_surface(const BasicSequence<Scalar>& x, const BasicSequence<Scalar>& y,
                                  const LazSpec& laz, SurfaceMethod method = SurfaceMethod::automatic) {
    detail::check_pair(x, y);
    const Index n = x.size();
    laz.validate(n);
    const Index rows = 2 * laz.zx - 1;
    const Index cols = 2 * laz.zy - 1;
    BasicAfSurface<Scalar> surface{RealMatrix<Scalar>(rows, cols), laz};

    if (method == SurfaceMethod::automatic) {
        // Direct cost per row ~ cols * N; transform cost ~ a few N log N.
        double log_n = std::log2(static_cast<double>(std::max<Index>(n, 2)));
        method = static_cast<double>(cols) > 6.0 * log_n ? SurfaceMethod::transform
                                                          : SurfaceMethod::direct;
    }

    if (method == SurfaceMethod::direct) {
        std::vector<std::complex<Scalar>> z;
        std::vector<std::complex<Scalar>> roots(static_cast<std::size_t>(n));
        for (Index k = 0; k < n; ++k) roots[k] = detail::unit_root<Scalar>(k, n);
        for (Index r = 0; r < rows; ++r) {
            const Index tau = r - (laz.zx - 1);
            detail::lag_product(x, y, tau, z);
            for (Index c = 0; c < cols; ++c) {
                const Index nu = c - (laz.zy - 1);
                const Index step = detail::positive_mod(nu, n);
                std::complex<Scalar> acc(0);
                Index phase = 0;
                for (std::size_t t = 0; t < z.size(); ++t) {
                    acc += z[t] * roots[phase];
                    phase += step;
                    if (phase >= n) phase -= n;
                }
                surface.magnitudes_sq(r, c) = std::norm(acc);
            }
        }
        return surface;
    }

    DopplerTransform<Scalar> transform(n);
    for (Index r = 0; r < rows; ++r) {
        const Index tau = r - (laz.zx - 1);
        const ComplexVector<Scalar> row = doppler_row(x, y, tau, transform);
        for (Index c = 0; c < cols; ++c) {
            const Index nu = c - (laz.zy - 1);
            surface.magnitudes_sq(r, c) = std::norm(row[detail::positive_mod(nu, n)]);
        }
    }
    return surface;
}

/// (m, m', tau, nu) location of a maximum.
struct AfWitness {
    Index m = 0;
    Index m_prime = 0;
    Index tau = 0;
    Index nu = 0;

    friend bool operator==(const AfWitness&, const AfWitness&) = default;
};

/// Peak non-trivial auto and cross magnitudes (squared) over a LAZ.
template <typename Scalar>
struct BasicThetaReport {
    Scalar theta_a_sq = 0;
    std::optional<Scalar> theta_c_sq;  // absent when M == 1
    Scalar theta_max_sq = 0;
    std::optional<AfWitness> argmax_a;  // absent when the LAZ has no non-trivial auto cell
    std::optional<AfWitness> argmax_c;
};

using ThetaReport = BasicThetaReport<double>;

/// Ties resolve to the first cell in (m, m', tau, nu) ascending order.
template <typename Scalar>
BasicThetaReport<Scalar> theta_report(const BasicSequenceSet<Scalar>& set, const LazSpec& laz,
                                      SurfaceMethod method = SurfaceMethod::automatic) {
    laz.validate(set.length());
    BasicThetaReport<Scalar> report;
    Scalar best_a = -1;
    Scalar best_c = -1;
    for (Index m = 0; m < set.count(); ++m) {
        for (Index mp = 0; mp < set.count(); ++mp) {
            const auto surface = af_surface(set[m], set[mp], laz, method);
            const bool is_auto = (m == mp);
            Scalar& best = is_auto ? best_a : best_c;
            auto& witness = is_auto ? report.argmax_a : report.argmax_c;
            for (Index tau = surface.tau_min(); tau <= -surface.tau_min(); ++tau) {
                for (Index nu = surface.nu_min(); nu <= -surface.nu_min(); ++nu) {
                    if (is_auto && tau == 0 && nu == 0) continue;
                    const Scalar v = surface.at(tau, nu);
                    if (v > best) {
                        best = v;
                        witness = AfWitness{m, mp, tau, nu};
                    }
                }
            }
        }
    }
    report.theta_a_sq = std::max<Scalar>(best_a, 0);
    if (set.count() > 1) report.theta_c_sq = best_c;
    report.theta_max_sq = std::max(report.theta_a_sq, report.theta_c_sq.value_or(Scalar(0)));
    return report;
}

}  // namespace aflaz
