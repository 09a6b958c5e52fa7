#include "slq/model.hpp"

#include <algorithm>
#include <cmath>
#include <format>

#include "slq/errors.hpp"

namespace slq {

namespace {

bool sizes_match(const ModelData& m) {
    const std::size_t n = m.mu.size();
    return m.mu_hat.size() == n && m.lambda.size() == n && m.lambda_hat.size() == n &&
           m.sigma_sq.size() == n && m.gamma_sq.size() == n &&
           (m.eps.empty() || m.eps.size() == n);
}

} // namespace

ValidationReport validate(const ModelData& model) {
    ValidationReport report;
    auto fail = [&](std::string msg) {
        report.pass = false;
        report.violations.push_back(std::move(msg));
    };

    const int n = model.num_classes();
    if (n < 2) fail(std::format("num_classes = {} < 2", n));
    if (!sizes_match(model)) {
        fail("parameter vectors have inconsistent lengths");
        return report; // index-based checks below would be unsafe
    }

    for (int i = 0; i < n; ++i) {
        if (!(model.mu[i] > 0.0)) fail(std::format("mu[{}] = {} not > 0", i + 1, model.mu[i]));
        if (!(model.lambda[i] > 0.0))
            fail(std::format("lambda[{}] = {} not > 0", i + 1, model.lambda[i]));
        if (model.sigma_sq[i] < 0.0)
            fail(std::format("sigma_sq[{}] = {} negative", i + 1, model.sigma_sq[i]));
        if (model.gamma_sq[i] < 0.0)
            fail(std::format("gamma_sq[{}] = {} negative", i + 1, model.gamma_sq[i]));
    }

    if (report.pass) {
        double rho_sum = 0.0;
        for (int i = 0; i < n; ++i) rho_sum += model.lambda[i] / model.mu[i];
        if (std::abs(rho_sum - 1.0) > 1e-12)
            fail(std::format("critical load violated: sum rho_i = {:.17g} != 1", rho_sum));
    }

    if (!(model.beta1 > 0.0)) fail(std::format("beta1 = {} not > 0", model.beta1));
    if (!(model.beta > 0.0)) fail(std::format("beta = {} not > 0", model.beta));

    const auto& m0 = model.m0;
    if (m0.kind == InitialLaw::Kind::Deterministic) {
        if (!m0.value.empty() && m0.value.size() != static_cast<std::size_t>(n))
            fail("m0 deterministic vector length mismatch");
    } else {
        if (m0.mean.size() != static_cast<std::size_t>(n) ||
            m0.sd.size() != static_cast<std::size_t>(n))
            fail("m0 gaussian mean/sd length mismatch");
        for (double s : m0.sd)
            if (s < 0.0) fail("m0 gaussian sd negative");
    }

    return report;
}

DerivedParams derive(const ModelData& model, std::int64_t n, double a) {
    if (n < 1) throw DegenerateScale(std::format("n = {} < 1", n));
    if (!(a > 0.0) || a > 0.5)
        throw DegenerateScale(std::format("a = {} outside (0, 1/2]", a));

    const int nc = model.num_classes();
    const double sqrt_n = std::sqrt(static_cast<double>(n));

    DerivedParams p;
    p.n = n;
    p.a = a;
    p.mu_n.resize(nc);
    p.lambda_n.resize(nc);
    p.rho.resize(nc);
    for (int i = 0; i < nc; ++i) {
        p.mu_n[i] = model.mu[i] + model.mu_hat[i] / sqrt_n;
        p.lambda_n[i] = static_cast<double>(n) * model.lambda[i] + sqrt_n * model.lambda_hat[i];
        p.rho[i] = model.lambda[i] / model.mu[i];
        if (!(p.mu_n[i] > 0.0))
            throw NonPositiveRate(std::format("mu_n[{}] = {} <= 0 at n = {}", i + 1, p.mu_n[i], n));
        if (!(p.lambda_n[i] > 0.0))
            throw NonPositiveRate(
                std::format("lambda_n[{}] = {} <= 0 at n = {}", i + 1, p.lambda_n[i], n));
    }

    p.m = static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(n), a)));
    if (p.m < 1) throw DegenerateScale(std::format("m = floor(n^a) = 0 at n = {}, a = {}", n, a));

    p.beta_n = static_cast<std::int64_t>(std::floor(model.beta1 * sqrt_n));
    if (p.beta_n < 1)
        throw DegenerateScale(std::format("beta_n = floor(beta1*sqrt(n)) = 0 at n = {}", n));

    p.beta_conv.resize(nc);
    const double n_quarter = std::pow(static_cast<double>(n), 0.25);
    for (int i = 0; i < nc; ++i) {
        // eps^n_i = eps_i * n^{-1/4}, so the buffer is floor(beta*sqrt(n) + eps_i*n^{1/4})
        const double eps_i = model.eps.empty() ? 0.0 : model.eps[i];
        p.beta_conv[i] =
            static_cast<std::int64_t>(std::floor(model.beta * sqrt_n + eps_i * n_quarter));
        if (p.beta_conv[i] < 1)
            throw DegenerateScale(std::format("beta_conv[{}] = 0 at n = {}", i + 1, n));
    }

    return p;
}

std::optional<int> slq_select(std::span<const std::int64_t> queue_lengths, double uniform_draw) {
    std::int64_t best = 0;
    for (std::int64_t q : queue_lengths) best = std::max(best, q);
    if (best == 0) return std::nullopt;

    int ties = 0;
    for (std::int64_t q : queue_lengths)
        if (q == best) ++ties;
    if (ties == 1) {
        for (std::size_t i = 0; i < queue_lengths.size(); ++i)
            if (queue_lengths[i] == best) return static_cast<int>(i);
    }

    int pick = static_cast<int>(uniform_draw * ties);
    pick = std::min(pick, ties - 1); // guard draw == 1 - ulp edge
    for (std::size_t i = 0; i < queue_lengths.size(); ++i) {
        if (queue_lengths[i] == best) {
            if (pick == 0) return static_cast<int>(i);
            --pick;
        }
    }
    return std::nullopt; // unreachable
}

} // namespace slq
