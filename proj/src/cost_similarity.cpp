#include "slc/cost_similarity.hpp"

#include <cmath>

#include "slc/exact.hpp"

namespace slc {

namespace {

void require_config(const RunConfig& config) {
    if (!(config.eps > 0.0 && config.eps < 1.0)) {
        throw std::runtime_error("run config needs eps in (0,1)");
    }
    if (config.params == ParamMode::Practical && config.r == 0) {
        throw std::runtime_error("practical mode needs r >= 1");
    }
}

bool similarity_exact_fallback(const WeightedGraph& g) {
    return g.max_weight() > static_cast<int64_t>(g.n()) || g.max_weight() <= 10;
}

uint64_t practical_gamma(uint64_t r, double k) {
    return static_cast<uint64_t>(std::ceil(std::sqrt(static_cast<double>(r) * k)));
}

double sampled_degree_cap(AccessSession& session, uint64_t gamma, Rng cap_rng) {
    return std::max(1.0, static_cast<double>(estimate_degree_cap(session, gamma, cap_rng)));
}

struct SimBucketRun {
    DiscretizationScheme scheme;
    BucketIndexVector jhat;
    uint64_t evals = 0;
};

// Discretization plus the noisy searches over the memoized D̂ sequence
// (sentinel 0: past the top weight every vertex is its own component).
SimBucketRun run_similarity_buckets(AccessSession& session, const RunConfig& config,
                                    Rng& rng) {
    const WeightedGraph& g = session.graph();
    const auto w = static_cast<uint32_t>(g.max_weight());
    const double k = static_cast<double>(w);

    DiscretizationScheme scheme = make_endpoints_similarity(g.n(), w, config.eps);

    EstimatorParams params;
    bool use_median = false;
    if (config.params == ParamMode::Theory) {
        params = EstimatorParams::theory(config.eps / 8.0, k, g.avg_degree(),
                                         1.0 / (8.0 * static_cast<double>(w)));
        use_median = true;
    } else {
        const double d_cap =
            sampled_degree_cap(session, practical_gamma(config.r, k), rng.stream(4, 1));
        params = EstimatorParams::practical(config.r, k, d_cap);
    }

    EstimateSequence seq(w, 0.0, [&](uint32_t j) {
        ThresholdView view(session, ThresholdMode::AtLeast, j);
        Rng jr = rng.stream(3, j);
        return use_median ? estimate_D_median(view, params, jr).value
                          : estimate_D_sim(view, params, jr).value;
    });
    BucketIndexVector jhat = bucket_search(seq, scheme);
    return {std::move(scheme), std::move(jhat), seq.evaluations()};
}

} // namespace

double similarity_cost_from_inputs(const SimCostInputs& inputs, uint32_t n) {
    const uint32_t t = inputs.scheme.t();
    if (inputs.j_hat.t() != t) {
        throw std::runtime_error("bucket indices do not match the scheme");
    }
    double total = 0.0;
    for (uint32_t i = 1; i + 1 <= t; ++i) {
        double bucket = 0.0;
        for (uint32_t j = inputs.j_hat.j(i); j < inputs.j_hat.j(i + 1); ++j) {
            bucket += inputs.c_hat.at(j - 1) + static_cast<double>(n) - 1.0;
        }
        total += inputs.scheme.at(i) * bucket;
    }
    return 0.5 * total;
}

CostEstimate app_cost_sim(AccessSession& session, const RunConfig& config, Rng& rng) {
    require_config(config);
    const WeightedGraph& g = session.graph();
    const uint32_t n = g.n();
    const uint64_t start = session.entries_scanned();

    CostEstimate est;
    est.mode = CostMode::Similarity;
    est.eps = config.eps;

    if (n <= 1) {
        return est;
    }
    if (similarity_exact_fallback(g)) {
        detail::metered_full_scan(session);
        est.value = cost_to_double(formula_cost_similarity(
            component_curve(g, CostMode::Similarity), n));
        est.exact_fallback = true;
        est.entries_scanned = session.entries_scanned() - start;
        return est;
    }

    SimBucketRun run = run_similarity_buckets(session, config, rng);

    // One component-count estimate per weight level, all at the run's eps
    // with a unit quality parameter.
    const auto w = static_cast<uint32_t>(g.max_weight());
    EstimatorParams cparams;
    bool use_median = false;
    if (config.params == ParamMode::Theory) {
        cparams = EstimatorParams::theory(config.eps, 1.0, g.avg_degree(),
                                          1.0 / (8.0 * static_cast<double>(w)));
        use_median = true;
    } else {
        const double d_cap =
            sampled_degree_cap(session, practical_gamma(config.r, 1.0), rng.stream(4, 2));
        cparams = EstimatorParams::practical(config.r, 1.0, d_cap);
    }

    SimCostInputs inputs{std::move(run.scheme), std::move(run.jhat), {}};
    inputs.c_hat.resize(w);
    for (uint32_t j = 1; j <= w; ++j) {
        ThresholdView view(session, ThresholdMode::AtLeast, j);
        Rng jr = rng.stream(2, j);
        inputs.c_hat[j - 1] = use_median ? estimate_cc_median(view, cparams, jr).value
                                         : estimate_cc(view, cparams, jr).value;
    }

    est.value = similarity_cost_from_inputs(inputs, n);
    est.num_cj_estimated = run.evals + w;
    est.j_hat = std::move(inputs.j_hat);
    est.scheme = std::move(inputs.scheme);
    est.entries_scanned = session.entries_scanned() - start;
    return est;
}

SuccinctProfile app_profile_sim(AccessSession& session, const RunConfig& config, Rng& rng) {
    require_config(config);
    const WeightedGraph& g = session.graph();
    const uint32_t n = g.n();
    const uint64_t start = session.entries_scanned();

    if (n <= 1) {
        SuccinctProfile p;
        p.mode = CostMode::Similarity;
        p.n = n;
        p.eps = config.eps;
        p.breakpoints = {1.0};
        p.values = {0.0};
        return p;
    }
    if (similarity_exact_fallback(g)) {
        detail::metered_full_scan(session);
        SuccinctProfile p = succinct_from_exact(exact_profile(g, CostMode::Similarity),
                                                CostMode::Similarity, config.eps);
        p.entries_scanned = session.entries_scanned() - start;
        return p;
    }

    SimBucketRun run = run_similarity_buckets(session, config, rng);
    const uint32_t t = run.scheme.t();

    SuccinctProfile p;
    p.mode = CostMode::Similarity;
    p.n = n;
    p.eps = config.eps;
    p.breakpoints.resize(t);
    p.values.resize(t);
    // Ascending breakpoints n - B_1 < ... < n - B_t; the value at n - B_t = n
    // is 0 and each endpoint below adds its bucket suffix.
    double suffix = 0.0; // Σ_{k=i}^{t-1} (ĵ_{k+1} - ĵ_k)·B_k
    p.breakpoints[t - 1] = static_cast<double>(n) - run.scheme.at(t);
    p.values[t - 1] = 0.0;
    for (uint32_t i = t - 1; i >= 1; --i) {
        const double b = run.scheme.at(i);
        suffix += static_cast<double>(run.jhat.j(i + 1) - run.jhat.j(i)) * b;
        p.breakpoints[i - 1] = static_cast<double>(n) - b;
        p.values[i - 1] = b * (static_cast<double>(run.jhat.j(i)) - 1.0) + suffix;
    }
    p.entries_scanned = session.entries_scanned() - start;
    return p;
}

double profile_oracle_sim(const SuccinctProfile& profile, double k) {
    if (profile.mode != CostMode::Similarity) {
        throw std::runtime_error("profile oracle expects a similarity profile");
    }
    if (k < 1.0 || k > static_cast<double>(profile.n)) {
        throw std::runtime_error("cluster count out of range");
    }
    return profile.lookup(k);
}

} // namespace slc
