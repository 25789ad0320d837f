#pragma once

#include <string>

#include "repi/family.hpp"
#include "repi/grid.hpp"
#include "repi/report.hpp"

namespace repi {

struct ConvolutionResult {
    GridDensity density;
    double mass_error = 0.0;    // |pre-normalization mass - 1|
    double renormalization = 1.0; // divisor applied to reach mass 1
    std::string input_refs;
};

/// Trapezoid-quadrature convolution on the Minkowski-sum window
/// [f.lo + g.lo, f.hi + g.hi]. Inputs with different spacings are resampled
/// to the finer one first; the output is renormalized to mass 1 with the
/// defect recorded.
ConvolutionResult convolve(const GridDensity& f, const GridDensity& g);

/// Density of (X_1 + ... + X_k)/sqrt(k) for i.i.d. X_i ~ f, standardized to
/// mean 0 and variance 1 first. Convolutions run at the original scale
/// (square-and-multiply with tail trimming) and the abscissa is rescaled
/// once at the end.
GridDensity iid_normalized_sum(const FamilyDensity& f, int k, double spacing = 0.01,
                               double r_min = 0.3);

/// Sharp reverse Young check ||f*g||_r >= C^{1/2} ||f||_p ||g||_q for an
/// admissible triple p, q, r in (0,1). Norms are computed on the
/// unnormalized quadrature convolution; details carry the log-scale margin
/// and the entropy-power (information) form of the same inequality.
VerificationReport reverse_young_margin(const GridDensity& f, const GridDensity& g, double p,
                                        double q, double r);

} // namespace repi
