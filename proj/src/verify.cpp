#include "aflaz/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace aflaz {

namespace {

double relative_gap(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0}); }

CheckOutcome outcome(std::string name, std::vector<std::pair<std::string, double>> params, double lhs, double rhs,
                     bool pass, std::uint64_t seed) {
    CheckOutcome c;
    c.check = std::move(name);
    c.params = std::move(params);
    c.lhs = lhs;
    c.rhs = rhs;
    c.pass = pass;
    c.seed = seed;
    return c;
}

}  // namespace

Sequence random_unimodular(Rng& rng, Index n) {
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    Sequence::Vector v(n);
    for (Index t = 0; t < n; ++t) v[t] = std::polar(1.0, phase(rng));
    return Sequence(std::move(v));
}

SequenceSet random_set(Rng& rng, Index n, Index m) {
    std::vector<Sequence> members;
    for (Index i = 0; i < m; ++i) members.push_back(random_unimodular(rng, n));
    return SequenceSet(std::move(members));
}

Eigen::VectorXd random_simplex(Rng& rng, Index dim) {
    std::exponential_distribution<double> draw(1.0);
    Eigen::VectorXd v(dim);
    for (Index i = 0; i < dim; ++i) v[i] = draw(rng);
    return v / v.sum();
}

std::vector<CheckOutcome> zero_delay_checks(std::uint64_t seed, Index n) {
    Rng rng(seed);
    const Sequence x = random_unimodular(rng, n);
    const Sequence y = random_unimodular(rng, n);
    DopplerTransform<double> transform(n);
    const double nd = static_cast<double>(n);

    double nulling = 0;
    double energy_gap = 0;
    double cap_excess = -nd;
    for (Index tau = -(n - 1); tau <= n - 1; ++tau) {
        const double expected = nd * static_cast<double>(n - std::abs(tau));
        for (const Sequence* other : {&x, &y}) {
            const ComplexVector<double> row = doppler_row(x, *other, tau, transform);
            energy_gap = std::max(energy_gap, relative_gap(row.squaredNorm(), expected));
            for (Index nu = 0; nu < n; ++nu) {
                cap_excess = std::max(cap_excess, std::abs(row[nu]) - static_cast<double>(n - std::abs(tau)));
            }
            if (tau == 0 && other == &x) {
                for (Index nu = 1; nu < n; ++nu) nulling = std::max(nulling, std::abs(row[nu]));
            }
        }
    }
    const std::vector<std::pair<std::string, double>> params{{"N", nd}};
    return {
        outcome("zero_delay_nulling", params, nulling, 1e-9 * nd, nulling <= 1e-9 * nd, seed),
        outcome("energy_identity", params, energy_gap, 1e-9, energy_gap <= 1e-9, seed),
        outcome("delay_cap", params, cap_excess, 1e-9 * nd, cap_excess <= 1e-9 * nd, seed),
    };
}

std::vector<CheckOutcome> gram_chain_checks(std::uint64_t seed, Index max_n, Index max_m, bool all_lazs) {
    Rng rng(seed);
    const Index n = std::uniform_int_distribution<Index>(2, max_n)(rng);
    const Index m = std::uniform_int_distribution<Index>(1, max_m)(rng);
    const SequenceSet set = random_set(rng, n, m);

    std::vector<LazSpec> lazs;
    if (all_lazs) {
        for (Index zx = 1; zx <= n; ++zx) {
            for (Index zy = 1; zy <= n; ++zy) lazs.push_back({zx, zy});
        }
    } else {
        std::uniform_int_distribution<Index> side(1, n);
        const Index zx = side(rng);
        lazs.push_back({zx, side(rng)});
    }

    std::vector<CheckOutcome> out;
    for (const LazSpec& laz : lazs) {
        const WeightVector w = WeightVector::from_values(random_simplex(rng, laz.zx));
        const DopplerWeight p = DopplerWeight::from_values(random_simplex(rng, laz.zy));
        const long long d = std::uniform_int_distribution<long long>(0, n - 1)(rng);
        const BoundParams params{n, m, laz.zx, laz.zy, d};
        const std::vector<std::pair<std::string, double>> tags{
            {"N", double(n)}, {"M", double(m)}, {"Zx", double(laz.zx)}, {"Zy", double(laz.zy)}, {"D", double(d)}};

        const WeightedMatrixU u = build_weighted_matrix(set, w, p, laz);
        const FrobeniusPair f = frobenius_pair(u);
        out.push_back(outcome("frobenius_equal", tags, f.gram_cols, f.gram_rows,
                              relative_gap(f.gram_cols, f.gram_rows) <= 1e-9, seed));

        const double expansion = af_expansion(u, set, w, p);
        out.push_back(outcome("af_expansion", tags, expansion, f.gram_rows,
                              relative_gap(expansion, f.gram_rows) <= 1e-9, seed));

        CheckOutcome lower = gram_lower_check(u, w);
        lower.params = tags;
        lower.seed = seed;
        out.push_back(lower);
        for (UpperVariant variant : {UpperVariant::split, UpperVariant::max}) {
            CheckOutcome upper = gram_upper_check(u, set, params, w, p, variant);
            upper.params = tags;
            upper.seed = seed;
            out.push_back(upper);
        }

        const ThetaReport theta = theta_report(set, laz);
        const double uniform = gram_upper_rhs(theta, params, w, optimal_doppler_weights(laz.zy), UpperVariant::max);
        const double other = gram_upper_rhs(theta, params, w, p, UpperVariant::max);
        out.push_back(outcome("uniform_doppler_dominance", tags, uniform, other, uniform <= other + 1e-9, seed));
    }
    return out;
}

std::vector<CheckOutcome> search_floor_checks(int alphabet, long long n, long long m) {
    std::vector<LazSpec> lazs;
    for (Index zx = 1; zx <= n; ++zx) {
        for (Index zy = 1; zy <= n; ++zy) lazs.push_back({zx, zy});
    }
    const std::vector<SearchResult> results = exhaustive_search(alphabet, n, m, lazs);

    std::vector<CheckOutcome> out;
    for (const SearchResult& res : results) {
        const BoundParams params{n, m, res.laz.zx, res.laz.zy, 0};
        const std::vector<std::pair<std::string, double>> tags{{"alphabet", double(alphabet)},
                                                               {"N", double(n)},
                                                               {"M", double(m)},
                                                               {"Zx", double(res.laz.zx)},
                                                               {"Zy", double(res.laz.zy)}};

        std::vector<BoundReport> reports = all_bounds(params);
        reports.push_back(best_bound(params));
        const BoundReport* binding = nullptr;
        for (const BoundReport& r : reports) {
            if (r.usable() && (!binding || r.value > binding->value)) binding = &r;
        }
        const double floor = res.best_theta_max_sq;
        const double rhs = binding ? binding->value : 0.0;
        const std::string name = "search_floor:" + (binding ? binding->name : std::string("none"));
        out.push_back(outcome(name, tags, floor, rhs, floor >= rhs - 1e-9, 0));

        const double replay = theta_report(res.witness_set(), res.laz, SurfaceMethod::direct).theta_max_sq;
        out.push_back(outcome("search_witness", tags, replay, floor, replay == floor, 0));
    }
    return out;
}

}  // namespace aflaz
