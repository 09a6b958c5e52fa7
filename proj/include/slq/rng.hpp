#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace slq {

// Philox4x64-10 counter-based generator (Salmon et al., "Parallel random
// numbers: as easy as 1, 2, 3"). A stream is identified by a 128-bit key
// (seed, stream id); the counter enumerates 256-bit blocks of four 64-bit
// outputs. Distinct keys give statistically independent streams, which is
// what makes replication-indexed seeding safe.
class Philox4x64 {
  public:
    using Block = std::array<std::uint64_t, 4>;

    Philox4x64(std::uint64_t key0, std::uint64_t key1) : key0_(key0), key1_(key1) {}

    static Block encrypt(Block ctr, std::uint64_t k0, std::uint64_t k1) {
        for (int round = 0; round < 10; ++round) {
            const auto [hi0, lo0] = mulhilo(kM0, ctr[0]);
            const auto [hi1, lo1] = mulhilo(kM1, ctr[2]);
            ctr = {hi1 ^ ctr[1] ^ k0, lo1, hi0 ^ ctr[3] ^ k1, lo0};
            k0 += kW0;
            k1 += kW1;
        }
        return ctr;
    }

    std::uint64_t next_u64() {
        if (index_ == 4) {
            block_ = encrypt({counter_, 0, 0, 0}, key0_, key1_);
            ++counter_;
            index_ = 0;
        }
        return block_[index_++];
    }

  private:
    static constexpr std::uint64_t kM0 = 0xD2E7470EE14C6C93ull;
    static constexpr std::uint64_t kM1 = 0xCA5A826395121157ull;
    static constexpr std::uint64_t kW0 = 0x9E3779B97F4A7C15ull;
    static constexpr std::uint64_t kW1 = 0xBB67AE8584CAA73Bull;

    static std::pair<std::uint64_t, std::uint64_t> mulhilo(std::uint64_t a, std::uint64_t b) {
        const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
        return {static_cast<std::uint64_t>(p >> 64), static_cast<std::uint64_t>(p)};
    }

    std::uint64_t key0_, key1_;
    std::uint64_t counter_ = 0;
    Block block_{};
    int index_ = 4;
};

// Draw interface consumed by the simulators; lets tests script exact values.
class RandomSource {
  public:
    virtual ~RandomSource() = default;
    virtual double next_double() = 0; // uniform on [0,1)
    virtual double next_normal() = 0; // standard normal
};

class RngStream final : public RandomSource {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream) : engine_(seed, stream) {}

    double next_double() override {
        // 53-bit mantissa from the top bits
        return static_cast<double>(engine_.next_u64() >> 11) * 0x1.0p-53;
    }

    double next_normal() override {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        // Box-Muller; log1p(-u) keeps u=0 finite-safe
        const double u1 = next_double();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log1p(-u1));
        const double theta = 2.0 * kPi * u2;
        cached_ = r * std::sin(theta);
        has_cached_ = true;
        return r * std::cos(theta);
    }

    std::uint64_t next_u64() { return engine_.next_u64(); }

  private:
    static constexpr double kPi = 3.14159265358979323846;
    Philox4x64 engine_;
    bool has_cached_ = false;
    double cached_ = 0.0;
};

// rate > 0 assumed
inline double exponential_draw(RandomSource& rng, double rate) {
    return -std::log1p(-rng.next_double()) / rate;
}

// Marsaglia-Tsang for shape >= 1, boosted for shape < 1.
inline double gamma_draw(RandomSource& rng, double shape, double scale) {
    if (shape < 1.0) {
        const double u = rng.next_double();
        return gamma_draw(rng, shape + 1.0, scale) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = rng.next_normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.next_double();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
    }
}

inline double lognormal_draw(RandomSource& rng, double mu_log, double sigma_log) {
    return std::exp(mu_log + sigma_log * rng.next_normal());
}

} // namespace slq
