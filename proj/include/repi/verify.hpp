#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "repi/family.hpp"
#include "repi/grid.hpp"
#include "repi/report.hpp"

namespace repi {

/// Grid resolution knobs. `spacing` drives convolution-bearing checks,
/// `fine_spacing` the pure-quadrature ones. REPI_RESOLUTION (points per unit,
/// default 100) overrides the defaults process-wide.
struct Resolution {
    double spacing = 0.01;
    double fine_spacing = 0.002;

    static Resolution defaults();
};

/// Theorem 1.1: N_r^alpha(X+Y) >= N_r^alpha(X) + N_r^alpha(Y) for
/// log-concave X, Y and r in (0,1). Uses closed forms when the pair's
/// convolution admits them (iid exponential, gaussian pairs), quadrature
/// otherwise.
VerificationReport verify_main_epi(const FamilyDensity& f, const FamilyDensity& g, double r,
                                   const Resolution& res = Resolution::defaults());

/// Grid-input variant; rejects non-log-concave inputs as a precondition
/// violation rather than a failure.
VerificationReport verify_main_epi(const GridDensity& f, const GridDensity& g, double r);

/// Theorems 1.2 + 1.3 on uniform marginals of the given interval lengths:
/// the beta-exponent form and the equivalent support-volume (gamma) form;
/// both margins are reported, the smaller one judged.
VerificationReport verify_uniform_epi(double lenA, double lenB, double r,
                                      const Resolution& res = Resolution::defaults());

/// Theorem 1.4: N_r(X_1 + ... + X_k) >= c(r,k) sum_i N_r(X_i).
VerificationReport verify_ktuple_epi(const std::vector<FamilyDensity>& families, double r,
                                     const Resolution& res = Resolution::defaults());

/// Sharpness of the exponent on the i.i.d. exponential pair: the alpha-form
/// EPI holds there iff alpha >= (1-r) log 2 / (2 log Gamma(1+r) + 2r log(1/r)).
/// The report carries the critical exponent and the outcomes for candidates
/// at 0.99x and 1.01x of it.
VerificationReport sharpness_exponential(double r, double alpha_candidate);

/// CLT sharpness: N_r(S_k) for Laplace variance-1 summands, k = 1, 2, 4, ...
/// k_max, against the Gaussian limit 2 pi r^{1/(r-1)}, together with the
/// sandwich e r^{1/(1-r)} <= N_r(S_k)/N_r(X_1) (eventually <= pi r^{1/(1-r)}).
VerificationReport clt_sharpness(double r, int k_max,
                                 const Resolution& res = Resolution::defaults());

struct SweepConfig {
    std::vector<double> r_values;
    std::vector<std::string> families;
    std::vector<int> k_values;
    double points_per_unit = 100.0;
    std::uint64_t seed = 42;
    std::vector<std::string> claims; // subset of thm1.1 thm1.2 thm1.4 lem2.2 thmA.1 thm7.1 appB

    static SweepConfig defaults();
    static SweepConfig parse(const std::string& text);
};

/// Runs the claims x r x family matrix in config order; deterministic under
/// the seed. Rows with non-log-concave inputs come back as
/// precondition_violated, not fail.
std::vector<VerificationReport> run_sweep(const SweepConfig& cfg);

} // namespace repi
