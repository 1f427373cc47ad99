#include "aflaz/oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace aflaz {

namespace {

double sum_d_terms(const WeightVector& w, const BoundParams& params, double weight_of_theta, bool squared) {
    double acc = 0;
    for (long long d = std::max<long long>(params.e(), 1); d <= params.d; ++d) {
        const double dd = static_cast<double>(d);
        acc += (squared ? dd * dd - weight_of_theta : 1.0) * jd_quadform(w, d, params.n);
    }
    return acc;
}

}  // namespace

WeightedMatrixU build_weighted_matrix(const SequenceSet& set, const WeightVector& w, const DopplerWeight& p,
                                      const LazSpec& laz) {
    const Index n = set.length();
    laz.validate(n);
    if (w.dim() != laz.zx) throw std::invalid_argument("dim(w) must equal Z_x");
    if (p.dim() != laz.zy) throw std::invalid_argument("dim(p) must equal Z_y");
    const Index len = 2 * n - 1;
    WeightedMatrixU u;
    u.n = n;
    u.m = set.count();
    u.laz = laz;
    u.rows = Eigen::MatrixXcd::Zero(set.count() * laz.zy * laz.zx, len);
    Eigen::VectorXcd base(len);
    for (Index m = 0; m < set.count(); ++m) {
        for (Index r = 0; r < laz.zy; ++r) {
            base.setZero();
            for (Index t = 0; t < n; ++t) base[t] = set[m][t] * detail::unit_root<double>(t * r, n);
            for (Index i = 0; i < laz.zx; ++i) {
                const double scale = std::sqrt(p.values[r] * w.values[i]);
                auto row = u.rows.row(u.row_index(m, r, i));
                for (Index k = 0; k < len; ++k) row[k] = scale * base[(k - i + len) % len];
            }
        }
    }
    return u;
}

FrobeniusPair frobenius_pair(const WeightedMatrixU& u) {
    const Eigen::MatrixXcd& a = u.rows;
    return FrobeniusPair{(a.adjoint() * a).squaredNorm(), (a * a.adjoint()).squaredNorm()};
}

double af_expansion(const WeightedMatrixU& u, const SequenceSet& set, const WeightVector& w,
                    const DopplerWeight& p) {
    const LazSpec& laz = u.laz;
    if (set.length() != u.n || set.count() != u.m) throw std::invalid_argument("set does not match U");
    double total = 0;
    for (Index m = 0; m < set.count(); ++m) {
        for (Index mp = 0; mp < set.count(); ++mp) {
            const AfSurface s = af_surface(set[m], set[mp], laz, SurfaceMethod::direct);
            for (Index r = 0; r < laz.zy; ++r) {
                for (Index rp = 0; rp < laz.zy; ++rp) {
                    for (Index i = 0; i < laz.zx; ++i) {
                        for (Index ip = 0; ip < laz.zx; ++ip) {
                            total += s.at(ip - i, r - rp) * p.values[r] * p.values[rp] * w.values[i] *
                                     w.values[ip];
                        }
                    }
                }
            }
        }
    }
    return total;
}

double gram_lower_rhs(const WeightVector& w, long long n, long long m) {
    const double md = static_cast<double>(m);
    return md * md * (static_cast<double>(n) - l_quadform(w, n));
}

CheckOutcome gram_lower_check(const WeightedMatrixU& u, const WeightVector& w) {
    CheckOutcome out;
    out.check = "gram_lower";
    out.params = {{"N", double(u.n)}, {"M", double(u.m)}, {"Zx", double(u.laz.zx)}, {"Zy", double(u.laz.zy)}};
    out.lhs = frobenius_pair(u).gram_cols;
    out.rhs = gram_lower_rhs(w, u.n, u.m);
    out.pass = out.lhs >= out.rhs - 1e-9;
    return out;
}

double gram_upper_rhs(const ThetaReport& theta, const BoundParams& params, const WeightVector& w,
                      const DopplerWeight& p, UpperVariant variant) {
    const double n = static_cast<double>(params.n);
    const double md = static_cast<double>(params.m);
    const double sw = w.sum_sq();
    const double sp = p.values.squaredNorm();
    const double j_sum = sum_d_terms(w, params, 0.0, false);
    const double j_sq = sum_d_terms(w, params, 0.0, true);
    if (variant == UpperVariant::split) {
        const double ta = theta.theta_a_sq;
        const double tc = theta.theta_c_sq.value_or(0.0);
        return tc * md * (md - 1.0) * (1.0 - j_sum) + ta * md * (1.0 - sw - j_sum) + md * n * n * sp * sw +
               md * md * j_sq;
    }
    const double tm = theta.theta_max_sq;
    const double j_gap = sum_d_terms(w, params, tm, true);  // sum (d^2 - theta^2) J^d
    return md * md * tm + md * (n * n * sp - tm) * sw + md * md * j_gap;
}

CheckOutcome gram_upper_check(const WeightedMatrixU& u, const SequenceSet& set, const BoundParams& params,
                              const WeightVector& w, const DopplerWeight& p, UpperVariant variant) {
    if (params.n != u.n || params.m != u.m || params.zx != u.laz.zx || params.zy != u.laz.zy) {
        throw std::invalid_argument("bound parameters do not match U");
    }
    CheckOutcome out;
    out.check = variant == UpperVariant::split ? "gram_upper_split" : "gram_upper_max";
    out.params = {{"N", double(params.n)}, {"M", double(params.m)}, {"Zx", double(params.zx)},
                  {"Zy", double(params.zy)}, {"D", double(params.d)}};
    const ThetaReport theta = theta_report(set, u.laz);
    out.lhs = frobenius_pair(u).gram_rows;
    out.rhs = gram_upper_rhs(theta, params, w, p, variant);
    out.pass = out.lhs <= out.rhs + 1e-9;
    return out;
}

Sequence psk_sequence(std::span<const int> symbols, int alphabet) {
    Sequence::Vector v(static_cast<Index>(symbols.size()));
    for (std::size_t t = 0; t < symbols.size(); ++t) v[static_cast<Index>(t)] = detail::unit_root<double>(symbols[t], alphabet);
    return Sequence(std::move(v));
}

SequenceSet SearchResult::witness_set() const {
    std::vector<Sequence> members;
    for (const auto& symbols : witness) members.push_back(psk_sequence(symbols, alphabet));
    return SequenceSet(std::move(members));
}

std::vector<SearchResult> exhaustive_search(int alphabet, long long n, long long m, std::span<const LazSpec> lazs) {
    if (alphabet < 1 || n < 1 || m < 1) throw std::invalid_argument("alphabet, N and M must be >= 1");
    const long long positions = n * m;
    if (static_cast<double>(positions) * std::log(static_cast<double>(alphabet)) > std::log(1e8) + 1e-12) {
        throw std::invalid_argument("enumeration budget exceeded: alphabet^(N M) > 1e8");
    }
    for (const LazSpec& laz : lazs) laz.validate(static_cast<Index>(n));

    std::vector<SearchResult> results(lazs.size());
    for (std::size_t k = 0; k < lazs.size(); ++k) {
        results[k].laz = lazs[k];
        results[k].alphabet = alphabet;
        results[k].best_theta_max_sq = std::numeric_limits<double>::infinity();
    }

    std::vector<int> symbols(static_cast<std::size_t>(positions), 0);
    auto split = [&] {
        std::vector<std::vector<int>> out(static_cast<std::size_t>(m));
        for (long long i = 0; i < m; ++i) out[i].assign(symbols.begin() + i * n, symbols.begin() + (i + 1) * n);
        return out;
    };
    while (true) {
        std::vector<Sequence> members;
        for (long long i = 0; i < m; ++i) {
            members.push_back(psk_sequence(std::span<const int>(symbols.data() + i * n, static_cast<std::size_t>(n)), alphabet));
        }
        const SequenceSet set(std::move(members));
        for (std::size_t k = 0; k < lazs.size(); ++k) {
            const double v = theta_report(set, lazs[k], SurfaceMethod::direct).theta_max_sq;
            ++results[k].explored;
            if (v < results[k].best_theta_max_sq) {
                results[k].best_theta_max_sq = v;
                results[k].witness = split();
            }
        }
        // Lexicographic increment; position 0 stays pinned by global-phase invariance.
        long long pos = positions - 1;
        while (pos >= 1 && symbols[pos] == alphabet - 1) symbols[pos--] = 0;
        if (pos < 1) break;
        ++symbols[pos];
    }
    return results;
}

SearchResult exhaustive_search(int alphabet, long long n, long long m, const LazSpec& laz) {
    return exhaustive_search(alphabet, n, m, std::span<const LazSpec>(&laz, 1)).front();
}

}  // namespace aflaz
