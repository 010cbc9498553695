#include "slc/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace slc {

EstimatorParams EstimatorParams::theory(double eps, double k, double avg_degree,
                                        double delta) {
    EstimatorParams p;
    p.eps = eps;
    p.k = k;
    p.r = static_cast<uint64_t>(std::ceil(64.0 * k / (eps * eps)));
    p.gamma = static_cast<uint64_t>(std::ceil(4.0 * k / eps));
    p.d_cap = avg_degree * static_cast<double>(p.gamma);
    p.delta = delta;
    p.validate();
    return p;
}

EstimatorParams EstimatorParams::practical(uint64_t r, double k, double d_cap, double delta) {
    EstimatorParams p;
    p.eps = 0.5; // quality knob is r here; eps only matters for theory sizing
    p.k = k;
    p.r = r;
    p.gamma = static_cast<uint64_t>(std::ceil(std::sqrt(static_cast<double>(r) * k)));
    p.d_cap = d_cap;
    p.delta = delta;
    p.validate();
    return p;
}

void EstimatorParams::validate() const {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::runtime_error("estimator eps must lie in (0,1)");
    }
    if (k < 1.0 || r == 0 || gamma == 0 || d_cap <= 0.0) {
        throw std::runtime_error("estimator parameters must be positive (k >= 1)");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::runtime_error("estimator delta must lie in (0,1)");
    }
}

namespace detail {

void ExploreWorkspace::ensure(uint32_t n) {
    if (mark.size() < n) {
        mark.assign(n, 0);
        cursor.resize(n);
    }
}

void ExploreWorkspace::begin_trial() {
    order.clear();
    if (++epoch == 0) { // stamp wrapped; restart cleanly
        std::fill(mark.begin(), mark.end(), 0);
        epoch = 1;
    }
}

BetaTrialResult beta_trial(const ThresholdView& view, uint32_t u, uint64_t gamma,
                           double d_cap, Rng& rng, CoinPolicy policy,
                           ExploreWorkspace& ws) {
    AccessSession& session = view.session();
    const WeightedGraph& g = session.graph();
    ws.ensure(g.n());
    ws.begin_trial();

    BetaTrialResult res;
    const uint32_t deg_u = g.degree_raw(u);
    if (deg_u == 0) {
        // Isolated in G, hence in every view: counts as its own component.
        res.beta = 1.0;
        res.completed = true;
        res.isolated = true;
        return res;
    }

    auto visit = [&](uint32_t v) {
        ws.mark[v] = ws.epoch;
        ws.cursor[v] = 0;
        ws.order.push_back(v);
    };
    visit(u);

    uint64_t budget = deg_u;
    size_t qpos = 0;
    for (;;) {
        // Scan phase: advance the breadth-first frontier entry by entry until
        // the budget is exhausted or every visited vertex is fully scanned.
        bool need_coin = false;
        while (qpos < ws.order.size()) {
            const uint32_t v = ws.order[qpos];
            const uint32_t deg_v = g.degree_raw(v);
            while (ws.cursor[v] < deg_v) {
                if (res.entries_scanned == budget) {
                    need_coin = true;
                    break;
                }
                const AdjEntry e = session.read_entry(v, ws.cursor[v]);
                ++ws.cursor[v];
                ++res.entries_scanned;
                if (view.passes(e.weight) && ws.mark[e.neighbor] != ws.epoch) {
                    if (ws.order.size() == 1 && static_cast<double>(deg_u) > d_cap) {
                        // u itself violates the degree cap and is not isolated.
                        res.cap_aborted = true;
                        return res;
                    }
                    visit(e.neighbor);
                    if (ws.order.size() >= gamma ||
                        static_cast<double>(g.degree_raw(e.neighbor)) > d_cap) {
                        res.cap_aborted = true;
                        return res;
                    }
                }
            }
            if (need_coin) {
                break;
            }
            ++qpos;
        }
        if (!need_coin) {
            // Exploration complete: entries_scanned equals the component's
            // volume (sum of member degrees in G).
            res.beta = std::ldexp(static_cast<double>(deg_u), static_cast<int>(res.flips)) /
                       static_cast<double>(res.entries_scanned);
            res.completed = true;
            res.isolated = ws.order.size() == 1;
            return res;
        }
        const bool heads = policy == CoinPolicy::AlwaysHeads || rng.coin();
        if (!heads || res.flips >= 62) {
            return res; // beta stays 0
        }
        ++res.flips;
        budget *= 2;
    }
}

BetaTrialResult beta_trial(const ThresholdView& view, uint32_t u, uint64_t gamma,
                           double d_cap, Rng& rng, CoinPolicy policy) {
    ExploreWorkspace ws;
    return beta_trial(view, u, gamma, d_cap, rng, policy, ws);
}

} // namespace detail

namespace {

double clamp(double x, double lo, double hi) {
    return std::min(std::max(x, lo), hi);
}

// Number of independent instances feeding the median: ceil(8·ln(1/delta)),
// forced odd, at least one.
uint64_t median_trial_count(double delta) {
    auto t = static_cast<uint64_t>(std::ceil(8.0 * std::log(1.0 / delta)));
    if (t == 0) {
        t = 1;
    }
    if (t % 2 == 0) {
        ++t;
    }
    return t;
}

// Median by value; on even sizes the lower-middle element would be ambiguous,
// but counts are forced odd. Returns the index of the selected element.
size_t median_index(const std::vector<double>& xs) {
    std::vector<size_t> idx(xs.size());
    std::iota(idx.begin(), idx.end(), 0);
    const size_t mid = xs.size() / 2;
    std::nth_element(idx.begin(), idx.begin() + static_cast<ptrdiff_t>(mid), idx.end(),
                     [&](size_t a, size_t b) { return xs[a] < xs[b]; });
    return idx[mid];
}

} // namespace

CcEstimate estimate_cc(const ThresholdView& view, const EstimatorParams& params, Rng& rng,
                       detail::CoinPolicy policy) {
    params.validate();
    const WeightedGraph& g = view.session().graph();
    const uint32_t n = g.n();

    detail::ExploreWorkspace ws;
    double beta_sum = 0.0;
    for (uint64_t i = 0; i < params.r; ++i) {
        const auto u = static_cast<uint32_t>(rng.uniform(n));
        beta_sum += detail::beta_trial(view, u, params.gamma, params.d_cap, rng, policy, ws).beta;
    }

    CcEstimate est;
    est.raw = static_cast<double>(n) * beta_sum / static_cast<double>(params.r);
    est.value = clamp(est.raw, 1.0, static_cast<double>(n));
    est.params = params;
    est.trials = {est.raw};
    return est;
}

CcEstimate estimate_cc_median(const ThresholdView& view, const EstimatorParams& params,
                              Rng& rng) {
    params.validate();
    const uint64_t t = median_trial_count(params.delta);
    std::vector<double> raws;
    raws.reserve(t);
    for (uint64_t i = 0; i < t; ++i) {
        raws.push_back(estimate_cc(view, params, rng).raw);
    }
    CcEstimate est;
    est.raw = raws[median_index(raws)];
    est.value = clamp(est.raw, 1.0, static_cast<double>(view.session().graph().n()));
    est.params = params;
    est.trials = std::move(raws);
    return est;
}

namespace {

struct DSimRaw {
    double raw;
    DBranch branch;
};

DSimRaw estimate_D_sim_raw(const ThresholdView& view, const EstimatorParams& params,
                           Rng& rng) {
    AccessSession& session = view.session();
    const WeightedGraph& g = session.graph();
    const uint32_t n = g.n();
    const double nd = n;

    // Phase 1: indicator sample of non-isolated vertices (full scans).
    uint64_t non_isolated = 0;
    for (uint64_t i = 0; i < params.r; ++i) {
        const auto v = static_cast<uint32_t>(rng.uniform(n));
        const uint32_t deg_v = g.degree_raw(v);
        bool hit = false;
        for (uint32_t p = 0; p < deg_v; ++p) {
            if (view.passes(session.read_entry(v, p).weight)) {
                hit = true;
            }
        }
        non_isolated += hit ? 1 : 0;
    }
    const double n_prime_hat = nd * static_cast<double>(non_isolated) /
                               static_cast<double>(params.r);

    // Phase 2: fresh samples through the doubling exploration; alpha drops the
    // isolated-vertex contribution that beta keeps.
    detail::ExploreWorkspace ws;
    double beta_sum = 0.0;
    double alpha_sum = 0.0;
    for (uint64_t i = 0; i < params.r; ++i) {
        const auto u = static_cast<uint32_t>(rng.uniform(n));
        const auto trial = detail::beta_trial(view, u, params.gamma, params.d_cap, rng,
                                              detail::CoinPolicy::Fair, ws);
        beta_sum += trial.beta;
        if (!trial.isolated) {
            alpha_sum += trial.beta;
        }
    }
    const double c_hat = nd * beta_sum / static_cast<double>(params.r);
    const double c_prime_hat = nd * alpha_sum / static_cast<double>(params.r);

    if (n_prime_hat < 0.5 * nd) {
        return {n_prime_hat - c_prime_hat, DBranch::IsolatedBranch};
    }
    return {nd - c_hat, DBranch::ComponentBranch};
}

void require_D_preconditions(const ThresholdView& view, const EstimatorParams& params) {
    if (view.mode() != ThresholdMode::AtLeast) {
        throw std::runtime_error("D estimator requires an at-least threshold view");
    }
    if (params.k < 10.0) {
        throw KTooSmall("D estimator requires threshold parameter k >= 10");
    }
}

} // namespace

DEstimate estimate_D_sim(const ThresholdView& view, const EstimatorParams& params, Rng& rng) {
    params.validate();
    require_D_preconditions(view, params);
    const auto [raw, branch] = estimate_D_sim_raw(view, params, rng);

    DEstimate est;
    est.raw = raw;
    est.value = clamp(raw, 0.0, static_cast<double>(view.session().graph().n()) - 1.0);
    est.branch = branch;
    est.params = params;
    est.trials = {raw};
    return est;
}

DEstimate estimate_D_median(const ThresholdView& view, const EstimatorParams& params,
                            Rng& rng) {
    params.validate();
    require_D_preconditions(view, params);
    const uint64_t t = median_trial_count(params.delta);
    std::vector<double> raws;
    std::vector<DBranch> branches;
    raws.reserve(t);
    branches.reserve(t);
    for (uint64_t i = 0; i < t; ++i) {
        const auto [raw, branch] = estimate_D_sim_raw(view, params, rng);
        raws.push_back(raw);
        branches.push_back(branch);
    }
    const size_t mid = median_index(raws);

    DEstimate est;
    est.raw = raws[mid];
    est.value = clamp(est.raw, 0.0, static_cast<double>(view.session().graph().n()) - 1.0);
    est.branch = branches[mid];
    est.params = params;
    est.trials = std::move(raws);
    return est;
}

uint32_t estimate_degree_cap(AccessSession& session, uint64_t gamma, Rng& rng) {
    if (gamma == 0) {
        throw std::runtime_error("degree-cap sampling needs gamma >= 1");
    }
    const uint32_t n = session.graph().n();
    uint32_t best = 0;
    for (uint64_t i = 0; i < 2 * gamma; ++i) {
        best = std::max(best, session.degree(static_cast<uint32_t>(rng.uniform(n))));
    }
    return best;
}

} // namespace slc
