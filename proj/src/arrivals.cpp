#include "slq/arrivals.hpp"

#include <algorithm>
#include <cmath>
#include <format>

#include "slq/errors.hpp"

namespace slq {

DistTag dist_tag_from_string(const std::string& tag) {
    if (tag == "deterministic") return DistTag::Deterministic;
    if (tag == "exponential") return DistTag::Exponential;
    if (tag == "gamma") return DistTag::Gamma;
    if (tag == "lognormal") return DistTag::Lognormal;
    throw UnsupportedDistribution(std::format("unknown distribution tag '{}'", tag));
}

double ArrivalSource::lambda_first(std::int64_t n) const {
    switch (kind) {
        case Kind::PatternK1:
        case Kind::PatternK2:
            return 1.0; // m arrivals per period tau = m/n
        case Kind::Poisson:
            return rate / static_cast<double>(n);
        case Kind::Renewal:
            return renewal.acceleration / renewal.mean / static_cast<double>(n);
    }
    return 0.0;
}

double ArrivalSource::lambda_center() const {
    switch (kind) {
        case Kind::PatternK1:
        case Kind::PatternK2:
            return static_cast<double>(params.n);
        case Kind::Poisson:
            return rate;
        case Kind::Renewal:
            return renewal.acceleration / renewal.mean;
    }
    return 0.0;
}

namespace {

// Work on the integer lattice u = 2nt: pattern event offsets are multiples
// of 1/(2n). Period length is 2m lattice units.
std::int64_t lattice_floor(double t, std::int64_t n) {
    return static_cast<std::int64_t>(std::floor(2.0 * t * static_cast<double>(n) + 0.25));
}

// true if this class carries the batch under pattern variant k
bool is_batch_class(int cls, int k) { return (k == 1) ? (cls == 0) : (cls == 1); }

} // namespace

std::int64_t pattern_count(int cls, double t, const DerivedParams& params, int k) {
    if (t <= 0.0) return 0;
    const std::int64_t m = params.m;
    const std::int64_t period = 2 * m;
    const std::int64_t u = lattice_floor(t, params.n);
    const std::int64_t full = u / period;
    if (is_batch_class(cls, k)) {
        // all m arrivals land on the period boundary
        return m * full;
    }
    // spread class: singletons at lattice offsets m, m+1, ..., 2m-1
    const std::int64_t r = u - full * period;
    const std::int64_t within = std::clamp<std::int64_t>(r - m + 1, 0, m);
    return m * full + within;
}

std::vector<ArrivalEvent> next_events(const ArrivalSource& source, double after, double horizon,
                                      RandomSource& rng) {
    std::vector<ArrivalEvent> events;
    switch (source.kind) {
        case ArrivalSource::Kind::PatternK1:
        case ArrivalSource::Kind::PatternK2: {
            const int k = source.kind == ArrivalSource::Kind::PatternK1 ? 1 : 2;
            const std::int64_t m = source.params.m;
            const std::int64_t period = 2 * m;
            const double scale = 1.0 / (2.0 * static_cast<double>(source.params.n));
            const std::int64_t u_lo = lattice_floor(after, source.params.n);
            const std::int64_t u_hi = lattice_floor(horizon, source.params.n);
            if (is_batch_class(source.cls, k)) {
                for (std::int64_t u = (u_lo / period + 1) * period; u <= u_hi; u += period)
                    events.push_back({static_cast<double>(u) * scale, source.cls, m});
            } else {
                for (std::int64_t u = u_lo + 1; u <= u_hi; ++u) {
                    const std::int64_t r = u % period;
                    if (r >= m) events.push_back({static_cast<double>(u) * scale, source.cls, 1});
                }
            }
            break;
        }
        case ArrivalSource::Kind::Poisson: {
            if (source.rate <= 0.0) return events;
            double t = after;
            for (;;) {
                t += exponential_draw(rng, source.rate);
                if (t > horizon) break;
                events.push_back({t, source.cls, 1});
            }
            break;
        }
        case ArrivalSource::Kind::Renewal: {
            const RenewalSpec& r = source.renewal;
            if (r.acceleration <= 0.0 || r.mean <= 0.0) return events;
            double t = after;
            for (;;) {
                double gap;
                switch (r.dist) {
                    case DistTag::Deterministic:
                        gap = r.mean;
                        break;
                    case DistTag::Exponential:
                        gap = exponential_draw(rng, 1.0 / r.mean);
                        break;
                    case DistTag::Gamma:
                        gap = gamma_draw(rng, 1.0 / r.scv, r.mean * r.scv);
                        break;
                    case DistTag::Lognormal: {
                        const double s2 = std::log1p(r.scv);
                        gap = lognormal_draw(rng, std::log(r.mean) - 0.5 * s2, std::sqrt(s2));
                        break;
                    }
                }
                t += gap / r.acceleration;
                if (t > horizon) break;
                events.push_back({t, source.cls, 1});
            }
            break;
        }
    }
    return events;
}

std::vector<ArrivalEvent> merged_events(const std::vector<ArrivalSource>& sources, double after,
                                        double horizon, RandomSource& rng) {
    std::vector<ArrivalEvent> all;
    for (const auto& s : sources) {
        auto part = next_events(s, after, horizon, rng);
        all.insert(all.end(), part.begin(), part.end());
    }
    std::stable_sort(all.begin(), all.end(), [](const ArrivalEvent& a, const ArrivalEvent& b) {
        return a.time != b.time ? a.time < b.time : a.cls < b.cls;
    });
    return all;
}

ScalingCheckResult scaling_check(const ArrivalSource& source, std::int64_t n, double T,
                                 double grid_step, RandomSource& rng) {
    const double lambda_i = source.lambda_first(n);
    const double lambda_n = source.lambda_center();
    const double inv_n = 1.0 / static_cast<double>(n);
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));

    ScalingCheckResult res;
    auto consider = [&](double t, double count) {
        res.sup_lln_dev = std::max(res.sup_lln_dev, std::abs(count * inv_n - lambda_i * t));
        res.sup_clt_dev = std::max(res.sup_clt_dev, std::abs(count - lambda_n * t) * inv_sqrt_n);
    };

    const auto events = next_events(source, 0.0, T, rng);
    double count = 0.0;
    consider(0.0, 0.0);
    for (const auto& ev : events) {
        consider(ev.time, count); // left limit
        count += static_cast<double>(ev.multiplicity);
        consider(ev.time, count); // right-continuous value
    }
    consider(T, count);

    if (grid_step > 0.0) {
        std::size_t idx = 0;
        double running = 0.0;
        for (double t = 0.0; t <= T + 1e-12; t += grid_step) {
            while (idx < events.size() && events[idx].time <= t)
                running += static_cast<double>(events[idx++].multiplicity);
            consider(std::min(t, T), running);
        }
    }
    return res;
}

} // namespace slq
