#pragma once

#include <vector>

#include "repi/family.hpp"
#include "repi/grid.hpp"
#include "repi/order.hpp"
#include "repi/report.hpp"

namespace repi {

enum class EntropyMethod { grid_quadrature, closed_form, limit };

struct EntropyPowerValue {
    RenyiOrder r;
    int n_dim = 1;
    double value = 0.0;
    EntropyMethod method = EntropyMethod::grid_quadrature;
};

/// Trapezoid integral of g^r over the grid (0^r treated as 0).
double renyi_integral(const GridDensity& g, double r);

/// N_r = (integral of g^r)^{2/(1-r)} with the usual limits:
/// r = 0 -> squared support length, r = 1 -> exp(-2 int g log g),
/// r = inf -> (max g)^{-2}. Near r = 1 (|r-1| < 1e-6) the Shannon value is
/// used directly to avoid the 2/(1-r) blow-up.
EntropyPowerValue renyi_entropy_power(const GridDensity& g, RenyiOrder r);

/// Analytic N_r for the closed-form families, r in (0,1); includes the
/// N_r(aX) = a^2 N_r(X) scale covariance.
EntropyPowerValue closed_form_entropy_power(const FamilyDensity& f, double r, int n_dim = 1);

/// Fradelizi-Madiman-Wang comparison on a grid density:
/// N_q <= N_p <= (p^{2/(p-1)} / q^{2/(q-1)}) N_q for 0 < p < q.
/// margin is the smaller of the two gaps; details carry both.
VerificationReport fmw_comparison_check(const GridDensity& g, double p, double q, double tol);

/// Same comparison evaluated from the closed forms of a family (margins are
/// then exact up to rounding; the exponential sits on the equality case).
VerificationReport fmw_comparison_check(const FamilyDensity& f, double p, double q, double tol);

/// Midpoint log-concavity of phi(t) = t * int g^t over consecutive triples
/// of t_grid.
VerificationReport phi_log_concavity_check(const GridDensity& g, const std::vector<double>& t_grid,
                                           double slack);

/// Closed-form variant for families.
VerificationReport phi_log_concavity_check(const FamilyDensity& f,
                                           const std::vector<double>& t_grid, double slack);

} // namespace repi
