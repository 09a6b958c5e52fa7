#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "slq/arrivals.hpp"
#include "slq/model.hpp"
#include "slq/rng.hpp"

namespace slq {

// Instantaneous state of the n-server system plus cumulative counters.
struct HwState {
    double t = 0.0;
    std::vector<std::int64_t> Q;    // in buffer
    std::vector<std::int64_t> Psi;  // in service
    std::vector<std::int64_t> Psi0; // in service at time 0
    std::vector<std::int64_t> E;    // arrivals (including lost)
    std::vector<std::int64_t> B;    // entered service
    std::vector<std::int64_t> R;    // lost
    std::vector<std::int64_t> D;    // departed

    explicit HwState(int num_classes = 0)
        : Q(num_classes), Psi(num_classes), Psi0(num_classes), E(num_classes), B(num_classes),
          R(num_classes), D(num_classes) {}

    std::int64_t total_q() const;
    std::int64_t total_psi() const;
    std::int64_t x(int i) const { return Q[i] + Psi[i]; } // customers of class i in system
};

struct HwEvent {
    enum class Kind : std::uint8_t { Arrival, Departure };
    double t = 0.0;
    Kind kind = Kind::Arrival;
    int cls = 0;
    std::int64_t multiplicity = 0; // arrivals: batch size
    std::int64_t to_service = 0;   // arrivals: customers sent straight to service
    std::int64_t to_buffer = 0;    // arrivals: customers queued
    std::int64_t lost = 0;         // arrivals: customers lost
    int admitted_cls = -1;         // departures: class admitted from buffer, or -1
};

struct HwTrajectory {
    DerivedParams params;
    HwState initial;
    HwState final_state;
    std::vector<HwEvent> events;
    double horizon = 0.0;
};

// Admission of a batch, one customer at a time against the updated state:
// free server -> service, else buffer if below beta_n, else lost.
HwEvent handle_arrival(HwState& state, int cls, std::int64_t multiplicity,
                       const DerivedParams& params);

// Departure of one class-`cls` customer followed by SLQ admission from the
// buffers. Throws NoSuchCustomer if Psi[cls] = 0. Consumes one uniform draw.
HwEvent handle_departure(HwState& state, int cls, const DerivedParams& params, RandomSource& rng);

// Initial condition: Q(0) = 0 and Psi_i(0) = clamp(round(n rho_i + sqrt(n) x0_i), 0, n),
// scaled down proportionally if the total exceeds n. x0 comes from m0.
HwState initial_hw_state(const ModelData& model, const DerivedParams& params, RandomSource& rng);

// Event-driven run over [0, T]. Departures are competing exponential clocks
// with class-i intensity mu_n_i * Psi_i, redrawn after every event; arrival
// batches are atomic. Draw order per event: one uniform for the departure
// clock (when the service rate is positive), then on a departure one uniform
// for the class pick and one for the SLQ selection.
HwTrajectory run_hw(const ModelData& model, const DerivedParams& params,
                    const std::vector<ArrivalSource>& sources, double T, RandomSource& rng);

// Convenience entry: pattern variant k with the standard per-class sources.
HwTrajectory run_hw_pattern(const ModelData& model, std::int64_t n, double a, int k, double T,
                            std::uint64_t seed, std::uint64_t stream = 0);

std::vector<ArrivalSource> pattern_sources(const DerivedParams& params, int k);

struct InvariantReport {
    std::int64_t checks = 0;
    std::int64_t violations = 0;
    std::vector<std::string> messages; // first few failures

    void note(bool ok, const std::string& msg);
};

// Replays the event log from the initial state and verifies, at every event:
// buffer caps, server capacity, non-idling, the balance equations
// Q = Q(0)+E-B-R and Psi = Psi(0)+B-D, customer conservation, and agreement
// with the simulator's own final state.
InvariantReport check_hw_invariants(const HwTrajectory& traj);

// Right-continuous state visitor: calls fn(state) after advancing to each
// grid time (events at t <= grid time applied).
void replay_hw(const HwTrajectory& traj, const std::vector<double>& grid,
               const std::function<void(double, const HwState&)>& fn);

} // namespace slq
