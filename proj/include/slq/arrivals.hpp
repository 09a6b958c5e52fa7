#pragma once

#include <cstdint>
#include <vector>

#include "slq/model.hpp"
#include "slq/rng.hpp"

namespace slq {

enum class DistTag { Deterministic, Exponential, Gamma, Lognormal };

DistTag dist_tag_from_string(const std::string& tag); // throws UnsupportedDistribution

// Renewal stream: i.i.d. gaps from the base distribution (given mean/scv),
// played at `acceleration` times real speed, so the stream rate is
// acceleration / mean.
struct RenewalSpec {
    DistTag dist = DistTag::Exponential;
    double mean = 1.0;
    double scv = 1.0;
    double acceleration = 1.0;
};

// One generator per class. Pattern sources are deterministic and derive
// everything from DerivedParams; Poisson/Renewal sources draw from the
// supplied RandomSource.
struct ArrivalSource {
    enum class Kind { PatternK1, PatternK2, Poisson, Renewal };
    Kind kind = Kind::Poisson;
    int cls = 0;            // 0-based class this source feeds
    DerivedParams params;   // pattern sources
    double rate = 0.0;      // Poisson rate lambda^n_i
    RenewalSpec renewal;

    // First-order rate lambda_i and CLT centering rate lambda^n_i of the stream.
    double lambda_first(std::int64_t n) const;
    double lambda_center() const;
};

struct ArrivalEvent {
    double time = 0.0;
    int cls = 0;
    std::int64_t multiplicity = 1;
};

// Count of pattern arrivals for `cls` in (0, t]. k = 1 puts the size-m batch
// of class 1 at each period end j*tau and spreads class 2 over
// [tau/2, tau); k = 2 swaps the roles. Times are snapped to the event
// lattice (multiples of 1/(2n)) at tolerance 1/(8n), making counts exact at
// period boundaries.
std::int64_t pattern_count(int cls, double t, const DerivedParams& params, int k);

// Events strictly inside (after, horizon], sorted by time. Pattern sources
// ignore rng. Poisson/renewal gaps restart at `after`.
std::vector<ArrivalEvent> next_events(const ArrivalSource& source, double after, double horizon,
                                      RandomSource& rng);

// Merge per-class streams into one time-ordered stream (ties broken by class).
std::vector<ArrivalEvent> merged_events(const std::vector<ArrivalSource>& sources, double after,
                                        double horizon, RandomSource& rng);

struct ScalingCheckResult {
    double sup_lln_dev = 0.0; // sup_t |E(t)/n - lambda_i t|
    double sup_clt_dev = 0.0; // sup_t |E(t) - lambda^n_i t| / sqrt(n)
};

// Exact sup over [0, T]: the deviation of a counting path from a line is
// attained at event boundaries, so both one-sided limits at every event are
// evaluated in addition to a uniform grid of spacing grid_step.
ScalingCheckResult scaling_check(const ArrivalSource& source, std::int64_t n, double T,
                                 double grid_step, RandomSource& rng);

} // namespace slq
