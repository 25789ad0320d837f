#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "repi/family.hpp"

namespace repi {

/// Uniform-grid sample of a probability density. All quadrature in the
/// library is composite trapezoid on this grid, so "mass" below always means
/// the trapezoid-rule integral.
struct GridDensity {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<double> values;
    double mass_tolerance = 1e-6;

    std::size_t n() const { return values.size(); }
    double h() const { return (hi - lo) / static_cast<double>(values.size() - 1); }
    double x(std::size_t i) const { return lo + static_cast<double>(i) * h(); }

    /// Validating constructor; throws on mass/shape violations.
    static GridDensity make(double lo, double hi, std::vector<double> values,
                            double mass_tolerance = 1e-6);
};

/// Trapezoid integral of raw samples at spacing h.
double trapezoid(const std::vector<double>& v, double h);

double grid_mass(const GridDensity& g);
double grid_mean(const GridDensity& g);
/// Trapezoid-rule second central moment.
double variance(const GridDensity& g);

/// Pointwise discretization of a family on [lo, hi]. Values are exact pdf
/// evaluations; the window must hold all but mass_tolerance/2 of the true
/// mass (checked through the analytic cdf) and the sampled mass must land
/// within mass_tolerance of 1.
GridDensity discretize(const FamilyDensity& f, double lo, double hi, std::size_t n_points,
                       double mass_tolerance = 1e-6);

/// Spacing-driven discretization on the family's own window. The window is
/// widened so that integrals of f^t stay accurate down to t = r_min
/// (sub-exponential tails need a log-density drop of about 30/r_min).
GridDensity discretize_default(const FamilyDensity& f, double spacing, double r_min = 0.3,
                               double mass_tolerance = 1e-6);

/// Same, but samples the standardized density (mean 0, variance 1).
GridDensity discretize_standardized(const FamilyDensity& f, double spacing, double r_min = 0.3,
                                    double mass_tolerance = 1e-6);

/// Midpoint log-concavity of the sampled values, up to slack. The support
/// (strictly positive values) must be a contiguous index range; zeros inside
/// it fail the check.
bool is_log_concave(const GridDensity& g, double slack = 1e-9);

/// Linear-interpolation resample to (approximately) the requested spacing.
GridDensity resample(const GridDensity& g, double new_spacing);

/// Drops leading/trailing cells below rel_threshold * max(values).
GridDensity trim(const GridDensity& g, double rel_threshold = 1e-120);

/// Prepends/appends one zero cell wherever the boundary value is
/// non-negligible. On the padded grid the trapezoid rule coincides with the
/// plain cell measure, which makes cell rearrangement conserve every Renyi
/// integral exactly; the price is an O(h) mass bias recorded in the widened
/// mass_tolerance.
GridDensity zero_pad_edges(const GridDensity& g);

} // namespace repi
