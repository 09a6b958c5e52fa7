#include "slq/hw_sim.hpp"

#include <algorithm>
#include <cmath>
#include <format>
#include <limits>
#include <numeric>

#include "slq/errors.hpp"

namespace slq {

std::int64_t HwState::total_q() const { return std::accumulate(Q.begin(), Q.end(), std::int64_t{0}); }
std::int64_t HwState::total_psi() const {
    return std::accumulate(Psi.begin(), Psi.end(), std::int64_t{0});
}

HwEvent handle_arrival(HwState& state, int cls, std::int64_t multiplicity,
                       const DerivedParams& params) {
    HwEvent ev;
    ev.t = state.t;
    ev.kind = HwEvent::Kind::Arrival;
    ev.cls = cls;
    ev.multiplicity = multiplicity;

    const std::int64_t n = params.n;
    std::int64_t busy = state.total_psi();
    for (std::int64_t j = 0; j < multiplicity; ++j) {
        if (busy < n) {
            ++state.Psi[cls];
            ++state.B[cls];
            ++busy;
            ++ev.to_service;
        } else if (state.Q[cls] < params.beta_n) {
            ++state.Q[cls];
            ++ev.to_buffer;
        } else {
            ++state.R[cls];
            ++ev.lost;
        }
    }
    state.E[cls] += multiplicity;
    return ev;
}

HwEvent handle_departure(HwState& state, int cls, const DerivedParams& params, RandomSource& rng) {
    (void)params;
    if (state.Psi[cls] < 1)
        throw NoSuchCustomer(std::format("departure of class {} with Psi = 0", cls + 1));

    HwEvent ev;
    ev.t = state.t;
    ev.kind = HwEvent::Kind::Departure;
    ev.cls = cls;

    --state.Psi[cls];
    ++state.D[cls];

    const double draw = rng.next_double();
    if (auto pick = slq_select(state.Q, draw)) {
        --state.Q[*pick];
        ++state.Psi[*pick];
        ++state.B[*pick];
        ev.admitted_cls = *pick;
    }
    return ev;
}

HwState initial_hw_state(const ModelData& model, const DerivedParams& params, RandomSource& rng) {
    const int nc = model.num_classes();
    HwState state(nc);

    std::vector<double> x0(nc, 0.0);
    if (model.m0.kind == InitialLaw::Kind::Deterministic) {
        for (int i = 0; i < nc && i < static_cast<int>(model.m0.value.size()); ++i)
            x0[i] = model.m0.value[i];
    } else {
        for (int i = 0; i < nc; ++i) x0[i] = model.m0.mean[i] + model.m0.sd[i] * rng.next_normal();
    }

    const double sqrt_n = std::sqrt(static_cast<double>(params.n));
    for (int i = 0; i < nc; ++i) {
        const double target = static_cast<double>(params.n) * params.rho[i] + sqrt_n * x0[i];
        state.Psi[i] = std::clamp<std::int64_t>(
            static_cast<std::int64_t>(std::llround(target)), 0, params.n);
    }
    const std::int64_t total = state.total_psi();
    if (total > params.n) {
        for (int i = 0; i < nc; ++i)
            state.Psi[i] = state.Psi[i] * params.n / total; // proportional truncation
    }
    state.Psi0 = state.Psi;
    return state;
}

HwTrajectory run_hw(const ModelData& model, const DerivedParams& params,
                    const std::vector<ArrivalSource>& sources, double T, RandomSource& rng) {
    HwTrajectory traj;
    traj.params = params;
    traj.horizon = T;
    traj.initial = initial_hw_state(model, params, rng);

    HwState state = traj.initial;
    const auto arrivals = merged_events(sources, 0.0, T, rng);
    std::size_t next_arrival = 0;

    const int nc = model.num_classes();
    for (;;) {
        double total_rate = 0.0;
        for (int i = 0; i < nc; ++i)
            total_rate += params.mu_n[i] * static_cast<double>(state.Psi[i]);

        double t_dep = std::numeric_limits<double>::infinity();
        if (total_rate > 0.0) t_dep = state.t + exponential_draw(rng, total_rate);

        const double t_arr = next_arrival < arrivals.size()
                                 ? arrivals[next_arrival].time
                                 : std::numeric_limits<double>::infinity();

        if (t_dep < t_arr && t_dep <= T) {
            state.t = t_dep;
            // class picked proportionally to mu_n_i * Psi_i
            const double u = rng.next_double() * total_rate;
            double acc = 0.0;
            int cls = nc - 1;
            for (int i = 0; i < nc; ++i) {
                acc += params.mu_n[i] * static_cast<double>(state.Psi[i]);
                if (u < acc) {
                    cls = i;
                    break;
                }
            }
            traj.events.push_back(handle_departure(state, cls, params, rng));
        } else if (t_arr <= T) {
            state.t = t_arr;
            const auto& a = arrivals[next_arrival++];
            traj.events.push_back(handle_arrival(state, a.cls, a.multiplicity, params));
        } else {
            break;
        }
    }
    state.t = T;
    traj.final_state = state;
    return traj;
}

std::vector<ArrivalSource> pattern_sources(const DerivedParams& params, int k) {
    std::vector<ArrivalSource> sources(2);
    for (int i = 0; i < 2; ++i) {
        sources[i].kind =
            k == 1 ? ArrivalSource::Kind::PatternK1 : ArrivalSource::Kind::PatternK2;
        sources[i].cls = i;
        sources[i].params = params;
    }
    return sources;
}

HwTrajectory run_hw_pattern(const ModelData& model, std::int64_t n, double a, int k, double T,
                            std::uint64_t seed, std::uint64_t stream) {
    const auto params = derive(model, n, a);
    RngStream rng(seed, stream);
    return run_hw(model, params, pattern_sources(params, k), T, rng);
}

void InvariantReport::note(bool ok, const std::string& msg) {
    ++checks;
    if (!ok) {
        ++violations;
        if (messages.size() < 8) messages.push_back(msg);
    }
}

namespace {

void apply_hw_event(HwState& state, const HwEvent& ev) {
    state.t = ev.t;
    if (ev.kind == HwEvent::Kind::Arrival) {
        state.E[ev.cls] += ev.multiplicity;
        state.Psi[ev.cls] += ev.to_service;
        state.B[ev.cls] += ev.to_service;
        state.Q[ev.cls] += ev.to_buffer;
        state.R[ev.cls] += ev.lost;
    } else {
        --state.Psi[ev.cls];
        ++state.D[ev.cls];
        if (ev.admitted_cls >= 0) {
            --state.Q[ev.admitted_cls];
            ++state.Psi[ev.admitted_cls];
            ++state.B[ev.admitted_cls];
        }
    }
}

} // namespace

InvariantReport check_hw_invariants(const HwTrajectory& traj) {
    InvariantReport report;
    const int nc = static_cast<int>(traj.initial.Q.size());
    const auto& p = traj.params;

    HwState state = traj.initial;
    double prev_t = 0.0;
    auto check_state = [&](const HwState& s) {
        for (int i = 0; i < nc; ++i) {
            report.note(s.Q[i] >= 0 && s.Q[i] <= p.beta_n,
                        std::format("t={}: Q[{}]={} outside [0, beta_n={}]", s.t, i + 1, s.Q[i],
                                    p.beta_n));
            report.note(s.Psi[i] >= 0, std::format("t={}: Psi[{}]={} negative", s.t, i + 1, s.Psi[i]));
            report.note(s.Q[i] == s.Q[i] + 0 && s.Q[i] == (s.E[i] - s.B[i] - s.R[i]),
                        std::format("t={}: balance Q[{}] = E-B-R violated", s.t, i + 1));
            report.note(s.Psi[i] == s.Psi0[i] + s.B[i] - s.D[i],
                        std::format("t={}: balance Psi[{}] = Psi0+B-D violated", s.t, i + 1));
            report.note(s.E[i] == s.Q[i] + s.Psi[i] - s.Psi0[i] + s.R[i] + s.D[i],
                        std::format("t={}: conservation violated for class {}", s.t, i + 1));
        }
        report.note(s.total_psi() <= p.n,
                    std::format("t={}: total in service {} > n={}", s.t, s.total_psi(), p.n));
        report.note(s.total_q() == 0 || s.total_psi() == p.n,
                    std::format("t={}: non-idling violated (Q={}, Psi={})", s.t, s.total_q(),
                                s.total_psi()));
    };

    check_state(state);
    for (const auto& ev : traj.events) {
        report.note(ev.t >= prev_t, std::format("event time decreased at t={}", ev.t));
        prev_t = ev.t;
        apply_hw_event(state, ev);
        check_state(state);
    }

    for (int i = 0; i < nc; ++i) {
        report.note(state.Q[i] == traj.final_state.Q[i] && state.Psi[i] == traj.final_state.Psi[i] &&
                        state.E[i] == traj.final_state.E[i] && state.R[i] == traj.final_state.R[i] &&
                        state.D[i] == traj.final_state.D[i] && state.B[i] == traj.final_state.B[i],
                    std::format("replayed final state disagrees for class {}", i + 1));
    }
    return report;
}

void replay_hw(const HwTrajectory& traj, const std::vector<double>& grid,
               const std::function<void(double, const HwState&)>& fn) {
    HwState state = traj.initial;
    std::size_t idx = 0;
    for (double g : grid) {
        if (g < 0.0 || g > traj.horizon + 1e-12)
            throw GridOutOfRange(std::format("grid time {} outside [0, {}]", g, traj.horizon));
        while (idx < traj.events.size() && traj.events[idx].t <= g)
            apply_hw_event(state, traj.events[idx++]);
        fn(g, state);
    }
}

} // namespace slq
