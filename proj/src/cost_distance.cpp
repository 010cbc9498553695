#include "slc/cost_distance.hpp"

#include <algorithm>
#include <cmath>

#include "slc/exact.hpp"

namespace slc {

double SuccinctProfile::lookup(double k) const {
    if (breakpoints.empty()) {
        throw std::runtime_error("profile has no breakpoints");
    }
    // Largest breakpoint <= k; clamp below the first breakpoint.
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), k);
    if (it == breakpoints.begin()) {
        return values.front();
    }
    return values[static_cast<size_t>(it - breakpoints.begin()) - 1];
}

namespace detail {

std::vector<Edge> metered_full_scan(AccessSession& session) {
    const WeightedGraph& g = session.graph();
    std::vector<Edge> edges;
    edges.reserve(g.m());
    for (uint32_t v = 0; v < g.n(); ++v) {
        const uint32_t deg = g.degree_raw(v);
        for (uint32_t i = 0; i < deg; ++i) {
            const AdjEntry e = session.read_entry(v, i);
            if (e.neighbor > v) {
                edges.push_back({v, e.neighbor, e.weight});
            }
        }
    }
    return edges;
}

} // namespace detail

namespace {

void require_config(const RunConfig& config) {
    if (!(config.eps > 0.0 && config.eps < 1.0)) {
        throw std::runtime_error("run config needs eps in (0,1)");
    }
    if (config.params == ParamMode::Practical && config.r == 0) {
        throw std::runtime_error("practical mode needs r >= 1");
    }
}

struct BucketRun {
    DiscretizationScheme scheme;
    BucketIndexVector jhat;
    uint64_t evals = 0;
};

// Shared by the cost and profile entry points: estimator parameters, the
// memoized component-count sequence, and the threshold searches.
BucketRun run_distance_buckets(AccessSession& session, const RunConfig& config, Rng& rng) {
    const WeightedGraph& g = session.graph();
    const auto w = static_cast<uint32_t>(g.max_weight());
    const double k = std::sqrt(static_cast<double>(w));

    DiscretizationScheme scheme = make_endpoints_distance(g.n(), w, config.eps);

    EstimatorParams params;
    bool use_median = false;
    if (config.params == ParamMode::Theory) {
        params = EstimatorParams::theory(config.eps / 8.0, k, g.avg_degree(),
                                         1.0 / (4.0 * static_cast<double>(w)));
        use_median = true;
    } else {
        const auto gamma =
            static_cast<uint64_t>(std::ceil(std::sqrt(static_cast<double>(config.r) * k)));
        Rng cap_rng = rng.stream(4, 0);
        const double d_cap =
            std::max(1.0, static_cast<double>(estimate_degree_cap(session, gamma, cap_rng)));
        params = EstimatorParams::practical(config.r, k, d_cap);
    }

    EstimateSequence seq(w, 1.0, [&](uint32_t j) {
        ThresholdView view(session, ThresholdMode::AtMost, j);
        Rng jr = rng.stream(1, j);
        return use_median ? estimate_cc_median(view, params, jr).value
                          : estimate_cc(view, params, jr).value;
    });
    BucketIndexVector jhat = bucket_search(seq, scheme);
    return {std::move(scheme), std::move(jhat), seq.evaluations()};
}

bool distance_exact_fallback(const WeightedGraph& g, const RunConfig& config) {
    const double n = g.n();
    const double w = static_cast<double>(g.max_weight());
    const double sq_w = std::sqrt(w);
    if (n < sq_w) {
        return true;
    }
    if (config.params == ParamMode::Theory) {
        if (config.eps < sq_w / n) {
            return true;
        }
        // The sampling work would exceed a full scan: fall back.
        const double eps8 = config.eps / 8.0;
        const double r = std::ceil(64.0 * sq_w / (eps8 * eps8));
        const double l2 = std::log2(std::max(w, 2.0));
        if (std::ceil(l2 * l2 / config.eps) * r * g.avg_degree() >
            static_cast<double>(g.m())) {
            return true;
        }
    }
    return false;
}

} // namespace

CostEstimate app_cost(AccessSession& session, const RunConfig& config, Rng& rng) {
    require_config(config);
    const WeightedGraph& g = session.graph();
    const uint32_t n = g.n();
    const uint64_t start = session.entries_scanned();

    CostEstimate est;
    est.mode = CostMode::Distance;
    est.eps = config.eps;

    if (n <= 1) {
        return est;
    }
    const double base = 0.5 * static_cast<double>(n) * (static_cast<double>(n) - 1.0);
    if (g.max_weight() <= 1) {
        // Single weight level: every pair merges at weight 1.
        est.value = base;
        return est;
    }
    if (distance_exact_fallback(g, config)) {
        detail::metered_full_scan(session);
        est.value = cost_to_double(formula_cost_distance(
            component_curve(g, CostMode::Distance), n));
        est.exact_fallback = true;
        est.entries_scanned = session.entries_scanned() - start;
        return est;
    }

    BucketRun run = run_distance_buckets(session, config, rng);
    double sum = 0.0;
    for (uint32_t i = 1; i + 1 <= run.scheme.t(); ++i) {
        const double b = run.scheme.at(i);
        sum += static_cast<double>(run.jhat.j(i + 1) - run.jhat.j(i)) * (b * b - b);
    }
    est.value = base + 0.5 * sum;
    est.num_cj_estimated = run.evals;
    est.j_hat = std::move(run.jhat);
    est.scheme = std::move(run.scheme);
    est.entries_scanned = session.entries_scanned() - start;
    return est;
}

namespace {

SuccinctProfile profile_shell(CostMode mode, uint32_t n, double eps) {
    SuccinctProfile p;
    p.mode = mode;
    p.n = n;
    p.eps = eps;
    return p;
}

} // namespace

SuccinctProfile succinct_from_exact(const std::vector<cost128>& profile, CostMode mode,
                                    double eps) {
    SuccinctProfile p = profile_shell(mode, static_cast<uint32_t>(profile.size()), eps);
    p.exact_fallback = true;
    p.breakpoints.reserve(profile.size());
    p.values.reserve(profile.size());
    for (size_t k = 1; k <= profile.size(); ++k) {
        p.breakpoints.push_back(static_cast<double>(k));
        p.values.push_back(cost_to_double(profile[k - 1]));
    }
    return p;
}

SuccinctProfile app_profile(AccessSession& session, const RunConfig& config, Rng& rng) {
    require_config(config);
    const WeightedGraph& g = session.graph();
    const uint32_t n = g.n();
    const uint64_t start = session.entries_scanned();

    if (n <= 1) {
        SuccinctProfile p = profile_shell(CostMode::Distance, n, config.eps);
        p.breakpoints = {1.0};
        p.values = {0.0};
        return p;
    }
    if (g.max_weight() <= 1) {
        // All merges cost 1: clustering into k clusters costs n - k.
        SuccinctProfile p = profile_shell(CostMode::Distance, n, config.eps);
        p.breakpoints.reserve(n);
        p.values.reserve(n);
        for (uint32_t k = 1; k <= n; ++k) {
            p.breakpoints.push_back(k);
            p.values.push_back(static_cast<double>(n - k));
        }
        return p;
    }
    if (distance_exact_fallback(g, config)) {
        detail::metered_full_scan(session);
        SuccinctProfile p =
            succinct_from_exact(exact_profile(g, CostMode::Distance), CostMode::Distance,
                                config.eps);
        p.entries_scanned = session.entries_scanned() - start;
        return p;
    }

    BucketRun run = run_distance_buckets(session, config, rng);
    const uint32_t t = run.scheme.t();

    SuccinctProfile p = profile_shell(CostMode::Distance, n, config.eps);
    p.breakpoints.resize(t);
    p.values.resize(t);
    // Ascending breakpoints: B_t < ... < B_1; the value at B_1 = n is 0 and
    // the value at B_i adds one bucket term per endpoint above it.
    double prefix = 0.0; // Σ_{k<i} (ĵ_{k+1} - ĵ_k)·B_k
    for (uint32_t i = 1; i <= t; ++i) {
        const double b = run.scheme.at(i);
        const double value =
            i == 1 ? 0.0
                   : static_cast<double>(n) - b * static_cast<double>(run.jhat.j(i)) + prefix;
        p.breakpoints[t - i] = b;
        p.values[t - i] = value;
        if (i + 1 <= t) {
            prefix += static_cast<double>(run.jhat.j(i + 1) - run.jhat.j(i)) * b;
        }
    }
    p.entries_scanned = session.entries_scanned() - start;
    return p;
}

double profile_oracle(const SuccinctProfile& profile, double k) {
    if (profile.mode != CostMode::Distance) {
        throw std::runtime_error("profile oracle expects a distance profile");
    }
    if (k < 1.0 || k > static_cast<double>(profile.n)) {
        throw std::runtime_error("cluster count out of range");
    }
    return profile.lookup(k);
}

} // namespace slc
