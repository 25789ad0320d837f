#pragma once

#include <cstdint>
#include <string>

namespace repi {

/// Lanczos log-gamma, accurate to a few ulp on the positive axis (well below
/// the 1e-12 relative requirement on (0, 2]).
double log_gamma(double x);

/// Hoelder conjugate p' = p/(p-1); conjugate of 1 is +inf.
double conjugate(double p);

/// Sharp Young constant factor c_m = m^{1/m} / |m'|^{1/m'}, m in (0,1) u (1,inf).
double young_c(double m);
/// log c_m; every product of the c's is assembled in log space.
double log_young_c(double m);

/// Admissible exponent triple for the two-function reverse Young inequality:
/// p, q, r in (0,1) with 1/p' + 1/q' = 1/r'. In the (x, y) chart
/// p = 1/(x+1), q = 1/(y+1), r = 1/(x+y+1) and x = 1/|p'|, y = 1/|q'|,
/// x + y = 1/|r'|.
struct ExponentTriple {
    double p = 0.0, q = 0.0, r = 0.0;
    double x = 0.0, y = 0.0;           // 1/|p'|, 1/|q'|
    double admissibility_residual = 0.0; // 1/|p'| + 1/|q'| - 1/|r'|

    static ExponentTriple from_xy(double x, double y);
    /// Validates the constraint to 1e-12 and derives x, y.
    static ExponentTriple from_pqr(double p, double q, double r);
};

/// C(p,q,r) = c_p c_q / c_r.
double young_C(const ExponentTriple& t);
double log_young_C(const ExponentTriple& t);

/// A(p,q,r) = C(p,q,r) * r^{2/r} / (p^{2/p} q^{2/q}); always >= 1 on
/// admissible triples.
double A_const(const ExponentTriple& t);
double log_A_const(const ExponentTriple& t);

/// Exponent for the log-concave Renyi EPI N_r^a(X+Y) >= N_r^a(X) + N_r^a(Y):
/// a(r) = (1-r) log 2 / ((1+r) log(1+r) + r log(1/(4r))).
double alpha(double r);

/// Exponent for the uniform-distribution form:
/// b(r) = (1-r) log 2 / (2 log 2 + r log r - (r+1) log(r+1)).
double beta(double r);

/// gamma = 2 beta / n, the support-volume exponent of the geometric form.
double gamma_exponent(double r, int n_dim);

/// Lower bound on the k-summand constant:
/// c(r,k) >= r^{1/(1-r)} (1 + 1/(k|r'|))^{1 + k|r'|}; decreasing in k with
/// limit e * r^{1/(1-r)}.
double c_rk_lower(double r, double k);

struct AlphaOptBounds {
    double lower = 0.0; // max{1, (1-r) log2 / (2 log Gamma(1+r) + 2 r log(1/r))}
    double upper = 0.0; // alpha(r)
    double lower_raw = 0.0; // the Gamma-based bound before the max with 1
};
AlphaOptBounds alpha_opt_bounds(double r);

/// Ratio of the lower to the upper bound on the optimal exponent,
/// alpha_opt_bounds(r).lower / alpha(r); tends to 1/2 as r -> 0 and to 1 as
/// r -> 1, and is increasing in between.
double bound_ratio(double r);

/// All derived constants for one order r (and one summand count k).
struct ConstantBundle {
    double r = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double gamma_n1 = 0.0; // 2*beta at n = 1
    double k = 2.0;
    double c_rk = 0.0;
    double alpha_opt_lower = 0.0;
    double alpha_opt_upper = 0.0;
    double c_opt_lower = 0.0; // e * r^{1/(1-r)}
    double c_opt_upper = 0.0; // pi * r^{1/(1-r)}
    double bound_ratio = 0.0;

    static ConstantBundle make(double r, double k = 2.0);
    std::string to_json() const;
};

} // namespace repi
