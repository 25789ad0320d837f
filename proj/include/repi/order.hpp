#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace repi {

/// Renyi order r in [0, inf], with its Hoelder-style conjugate r' = r/(r-1).
/// For r in (0,1) the conjugate is negative and |r'| = r/(1-r).
struct RenyiOrder {
    double r = 1.0;

    RenyiOrder() = default;
    explicit RenyiOrder(double order) : r(order) {
        if (std::isnan(r) || r < 0.0) {
            throw std::invalid_argument("RenyiOrder: r must lie in [0, inf]");
        }
    }

    static RenyiOrder shannon() { return RenyiOrder(1.0); }
    static RenyiOrder zero() { return RenyiOrder(0.0); }
    static RenyiOrder sup() { return RenyiOrder(std::numeric_limits<double>::infinity()); }

    bool is_shannon() const { return r == 1.0; }
    bool is_zero() const { return r == 0.0; }
    bool is_infinite() const { return std::isinf(r); }

    /// r' = r/(r-1); conjugate of 1 is +inf, of +inf is 1, of 0 is 0.
    double conjugate() const {
        if (is_shannon()) return std::numeric_limits<double>::infinity();
        if (is_infinite()) return 1.0;
        return r / (r - 1.0);
    }

    /// |r'| = r/(1-r), only meaningful for r in (0,1).
    double abs_conjugate() const {
        if (!(r > 0.0 && r < 1.0)) {
            throw std::domain_error("abs_conjugate: requires r in (0,1)");
        }
        return r / (1.0 - r);
    }

    /// 1/|r'| = (1-r)/r for r in (0,1); shows up as the simplex scale in the
    /// exponent optimization problems.
    double inv_abs_conjugate() const {
        if (!(r > 0.0 && r < 1.0)) {
            throw std::domain_error("inv_abs_conjugate: requires r in (0,1)");
        }
        return (1.0 - r) / r;
    }
};

} // namespace repi
