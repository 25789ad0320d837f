#pragma once

#include <string>
#include <utility>
#include <vector>

namespace repi {

enum class FamilyKind { gaussian, exponential, laplace, uniform, gamma_shape2, potential };

/// A knot of a piecewise-linear convex potential V; the density is e^{-V}/Z
/// on the knot span and 0 outside.
struct PotentialKnot {
    double x = 0.0;
    double v = 0.0;
};

/// Closed-form 1-d density family. All members are log-concave by
/// construction; CustomConvexPotential enforces convexity of the knot
/// sequence at build time.
class FamilyDensity {
public:
    static FamilyDensity gaussian(double mean, double stddev);
    static FamilyDensity exponential(double rate);
    /// Laplace with scale b: density e^{-|x|/b}/(2b), variance 2 b^2.
    static FamilyDensity laplace_scale(double scale);
    /// Laplace parameterized by variance (the common normalization here).
    static FamilyDensity laplace_variance(double variance);
    static FamilyDensity uniform(double lo, double hi);
    /// Gamma with shape 2: density rate^2 x e^{-rate x} on (0, inf).
    static FamilyDensity gamma_shape2(double rate);
    static FamilyDensity convex_potential(std::vector<PotentialKnot> knots);

    /// Parses the plain-text spec format, e.g. "gaussian mean=0 sd=1",
    /// "exponential rate=1", "laplace var=1", "uniform lo=0 hi=1",
    /// "gamma2 rate=1", "potential knots=0:1,1:0,2:1".
    static FamilyDensity parse(const std::string& spec);

    FamilyKind kind() const { return kind_; }
    double param(int i) const { return params_[i]; }
    const std::vector<PotentialKnot>& knots() const { return knots_; }

    double pdf(double x) const;
    double log_pdf(double x) const; // -inf outside the support
    double cdf(double x) const;
    double mean() const;
    double variance() const;
    double max_pdf() const;

    /// Support interval; +-inf for unbounded families.
    std::pair<double, double> support() const;

    /// Smallest window on which log f >= log max_pdf - drop. Integrals of
    /// f^t need drop ~ K/t_min, so callers widen with the smallest order
    /// they intend to evaluate.
    std::pair<double, double> window(double drop) const;

    bool has_closed_forms() const { return kind_ != FamilyKind::potential; }

    /// Closed form of the integral of f^t over the line, t > 0. Throws for
    /// the potential family.
    double renyi_integral(double t) const;

    std::string describe() const;

private:
    FamilyDensity() = default;

    FamilyKind kind_ = FamilyKind::gaussian;
    double params_[2] = {0.0, 0.0};
    std::vector<PotentialKnot> knots_;
    // potential family: normalization and quadrature moments, fixed at build
    double pot_log_z_ = 0.0;
    double pot_mean_ = 0.0;
    double pot_var_ = 0.0;
    double pot_max_ = 0.0;
};

} // namespace repi
