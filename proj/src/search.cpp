#include "slc/search.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace slc {

EstimateSequence EstimateSequence::from_values(std::vector<double> values, double sentinel) {
    const auto w = static_cast<uint32_t>(values.size());
    return EstimateSequence(
        w, sentinel,
        [vals = std::move(values)](uint32_t j) { return vals[j - 1]; });
}

double EstimateSequence::at(uint32_t j) {
    if (j == w_ + 1) {
        return sentinel_;
    }
    if (j < 1 || j > w_) {
        throw std::runtime_error("estimate sequence index out of range");
    }
    const auto it = cache_.find(j);
    if (it != cache_.end()) {
        return it->second;
    }
    const double v = eval_(j);
    cache_.emplace(j, v);
    return v;
}

uint32_t binary_search(EstimateSequence& seq, double bound) {
    uint32_t lo = 1;
    uint32_t hi = seq.w() + 1;
    while (lo < hi) {
        const uint32_t mid = lo + (hi - lo) / 2;
        if (seq.at(mid) <= bound) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

void DiscretizationScheme::validate() const {
    if (endpoints.empty() || endpoints.size() != tags.size()) {
        throw std::runtime_error("discretization scheme is empty or mistagged");
    }
    for (size_t i = 1; i < endpoints.size(); ++i) {
        if (!(endpoints[i] < endpoints[i - 1])) {
            throw std::runtime_error("discretization endpoints must strictly decrease");
        }
    }
    const double lw = std::log2(static_cast<double>(std::max<int64_t>(w, 2)));
    if (static_cast<double>(endpoints.size()) > 3.0 * (lw / eps + 1.0 / eps + 2.0)) {
        throw std::runtime_error("discretization scheme is unexpectedly large");
    }
}

namespace {

void require_scheme_inputs(uint32_t n, int64_t w, double eps) {
    if (n == 0 || w < 1) {
        throw std::runtime_error("endpoint construction needs n >= 1 and w >= 1");
    }
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::runtime_error("endpoint construction needs eps in (0,1)");
    }
}

// Appends candidates in construction order, dropping any that fail to
// strictly decrease or that do not sit strictly above the bottom endpoint.
struct EndpointBuilder {
    std::vector<double> endpoints;
    std::vector<SegmentTag> tags;
    double bottom;

    explicit EndpointBuilder(double bottom_value) : bottom(bottom_value) {}

    void add(double value, SegmentTag tag) {
        if (value <= bottom) {
            return;
        }
        if (!endpoints.empty() && value >= endpoints.back()) {
            return;
        }
        endpoints.push_back(value);
        tags.push_back(tag);
    }

    void finish() {
        endpoints.push_back(bottom);
        tags.push_back(SegmentTag::Bottom);
    }
};

int64_t floor_log(double base, double x) {
    if (x <= 1.0) {
        return 0;
    }
    return static_cast<int64_t>(std::floor(std::log(x) / std::log(base)));
}

} // namespace

DiscretizationScheme make_endpoints_distance(uint32_t n, int64_t w, double eps) {
    require_scheme_inputs(n, w, eps);
    const double nd = n;
    const double sqrt_w = std::sqrt(static_cast<double>(w));

    // Segment lengths: geometric down to ~n/sqrt(w), linear down to ~eps·n/sqrt(w).
    const auto t1 = static_cast<int64_t>(
        std::floor(std::log(sqrt_w) / std::log(1.0 + eps) + 1.0));
    const auto t2 = std::max<int64_t>(0, static_cast<int64_t>(std::floor(1.0 / eps - 1.0)));

    EndpointBuilder b(1.0);
    double geo = nd;
    for (int64_t i = 1; i <= t1; ++i) {
        b.add(geo, SegmentTag::Geometric);
        geo /= 1.0 + eps;
    }
    for (int64_t k = 1; k <= t2; ++k) {
        b.add((nd / sqrt_w) * (1.0 - eps * static_cast<double>(k)), SegmentTag::Linear);
    }
    b.finish();

    DiscretizationScheme scheme;
    scheme.mode = CostMode::Distance;
    scheme.n = n;
    scheme.w = w;
    scheme.eps = eps;
    scheme.endpoints = std::move(b.endpoints);
    scheme.tags = std::move(b.tags);
    scheme.validate();
    return scheme;
}

DiscretizationScheme make_endpoints_similarity(uint32_t n, int64_t w, double eps) {
    require_scheme_inputs(n, w, eps);
    const double nd = n;
    const double wd = static_cast<double>(w);

    const auto t1 = std::max<int64_t>(0, static_cast<int64_t>(std::floor(1.0 / eps)));
    const auto t2 = std::max<int64_t>(0, floor_log(1.0 + eps, wd / 2.0));
    const auto t3 = std::max<int64_t>(0, static_cast<int64_t>(std::floor((1.0 - eps) / eps)));

    EndpointBuilder b(0.0);
    b.add(nd - 1.0, SegmentTag::Top);
    for (int64_t i = 2; i <= t1; ++i) {
        b.add(nd - static_cast<double>(i) * eps * nd / wd, SegmentTag::Linear);
    }
    double geo = 1.0;
    for (int64_t k = 1; k <= t2; ++k) {
        geo *= 1.0 + eps;
        b.add(nd - geo * nd / wd, SegmentTag::Geometric);
    }
    geo = 1.0;
    for (int64_t k = 1; k <= t2; ++k) {
        geo *= 1.0 + eps;
        b.add(nd / (2.0 * geo), SegmentTag::GeometricSecond);
    }
    for (int64_t k = 1; k <= t3; ++k) {
        b.add((nd / wd) * (1.0 - static_cast<double>(k) * eps), SegmentTag::LinearSecond);
    }
    b.finish();

    DiscretizationScheme scheme;
    scheme.mode = CostMode::Similarity;
    scheme.n = n;
    scheme.w = w;
    scheme.eps = eps;
    scheme.endpoints = std::move(b.endpoints);
    scheme.tags = std::move(b.tags);
    scheme.validate();
    return scheme;
}

bool check_valid_discretization(const DiscretizationScheme& scheme,
                                const std::vector<double>& x,
                                const std::vector<double>& tol) {
    if (x.size() != tol.size() || x.size() != static_cast<size_t>(scheme.w)) {
        throw std::runtime_error("validity check needs one (x, tol) pair per weight");
    }
    const auto& b = scheme.endpoints;
    const size_t t = b.size();
    for (size_t j = 0; j < x.size(); ++j) {
        for (size_t i = 1; i <= t; ++i) {
            const double lower = i == t ? -std::numeric_limits<double>::infinity() : b[i];
            if (!(lower <= x[j] && x[j] <= b[i - 1])) {
                continue;
            }
            if (i >= 2 && !(tol[j] < b[i - 2] - b[i - 1])) {
                return false;
            }
            if (i + 2 <= t && !(tol[j] < b[i] - b[i + 1])) {
                return false;
            }
        }
    }
    return true;
}

BucketIndexVector bucket_search(EstimateSequence& seq, const DiscretizationScheme& scheme) {
    scheme.validate();
    if (static_cast<int64_t>(seq.w()) != scheme.w) {
        throw std::runtime_error("estimate sequence and scheme disagree on w");
    }
    const uint32_t t = scheme.t();
    BucketIndexVector out;
    out.j_hat.resize(t);
    for (uint32_t i = 1; i + 1 <= t; ++i) {
        out.j_hat[i - 1] = binary_search(seq, scheme.at(i));
    }
    // The bottom endpoint's answer is pinned: past the top weight, every
    // threshold subgraph is trivial, so no probes are spent on it.
    out.j_hat[t - 1] = seq.w() + 1;
    return out;
}

} // namespace slc
