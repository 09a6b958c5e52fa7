#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace slq {

// Initial law m0 for the scaled state Xhat(0). Deterministic vector or a
// product of independent Gaussians; default is deterministic zero.
struct InitialLaw {
    enum class Kind { Deterministic, Gaussian };
    Kind kind = Kind::Deterministic;
    std::vector<double> value; // deterministic x0; empty means zero
    std::vector<double> mean;  // gaussian per-class means
    std::vector<double> sd;    // gaussian per-class standard deviations
};

// First/second-order data of the primitives plus buffer coefficients.
struct ModelData {
    std::vector<double> mu;         // service rates, > 0
    std::vector<double> mu_hat;     // service-rate perturbations
    std::vector<double> lambda;     // arrival rates, > 0
    std::vector<double> lambda_hat; // arrival-rate perturbations
    std::vector<double> sigma_sq;   // arrival CLT variance factors, >= 0
    std::vector<double> gamma_sq;   // service scv (conventional regime), >= 0
    InitialLaw m0;
    double beta1 = 1.0;           // many-server buffer coefficient
    double beta = 1.0;            // conventional buffer coefficient
    std::vector<double> eps;      // conventional buffer perturbation coefficients

    int num_classes() const { return static_cast<int>(mu.size()); }
};

struct ValidationReport {
    bool pass = true;
    std::vector<std::string> violations;
};

// Checks the standing assumptions: N >= 2, consistent vector sizes, strict
// positivity of rates, nonnegative variance factors, critical load
// sum(lambda_i/mu_i) = 1 within 1e-12, positive buffer coefficients, and a
// well-formed m0.
ValidationReport validate(const ModelData& model);

// Per-n derived quantities. tau is kept as the exact rational m/n.
struct DerivedParams {
    std::int64_t n = 1;
    double a = 0.3;
    std::vector<double> mu_n;     // mu_i + mu_hat_i / sqrt(n)
    std::vector<double> lambda_n; // n*lambda_i + sqrt(n)*lambda_hat_i
    std::vector<double> rho;      // lambda_i / mu_i
    std::int64_t beta_n = 0;      // floor(beta1 * sqrt(n)), equal across classes
    std::vector<std::int64_t> beta_conv; // floor(beta*sqrt(n) + eps_i*n^{1/4}*... ) per class
    std::int64_t m = 1;           // floor(n^a)

    double tau() const { return static_cast<double>(m) / static_cast<double>(n); }
    int num_classes() const { return static_cast<int>(mu_n.size()); }
};

// Throws NonPositiveRate if any mu_n or lambda_n is <= 0, DegenerateScale if
// m or a buffer size comes out zero. Accepts a in (0, 1/2]; see README.
DerivedParams derive(const ModelData& model, std::int64_t n, double a);

// Serve-the-longest-queue selection. Returns nullopt iff all queues are
// empty; on a tie of j maximal queues returns the floor(draw*j)-th element of
// the argmax set in ascending index order.
std::optional<int> slq_select(std::span<const std::int64_t> queue_lengths, double uniform_draw);

} // namespace slq
