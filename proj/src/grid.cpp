#include "repi/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace repi {

GridDensity GridDensity::make(double lo, double hi, std::vector<double> values,
                              double mass_tolerance) {
    if (values.size() < 3) throw std::invalid_argument("GridDensity: need n_points >= 3");
    if (!(hi > lo)) throw std::invalid_argument("GridDensity: need hi > lo");
    if (!(mass_tolerance > 0.0)) throw std::invalid_argument("GridDensity: bad mass_tolerance");
    for (double v : values) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("GridDensity: values must be finite and non-negative");
        }
    }
    GridDensity g;
    g.lo = lo;
    g.hi = hi;
    g.values = std::move(values);
    g.mass_tolerance = mass_tolerance;
    const double mass = grid_mass(g);
    if (std::abs(mass - 1.0) > mass_tolerance) {
        throw std::invalid_argument("GridDensity: trapezoid mass " + std::to_string(mass) +
                                    " outside tolerance " + std::to_string(mass_tolerance));
    }
    return g;
}

double trapezoid(const std::vector<double>& v, double h) {
    double s = 0.0;
    for (double x : v) s += x;
    s -= 0.5 * (v.front() + v.back());
    return s * h;
}

double grid_mass(const GridDensity& g) { return trapezoid(g.values, g.h()); }

double grid_mean(const GridDensity& g) {
    const double h = g.h();
    double s = 0.0;
    for (std::size_t i = 0; i < g.n(); ++i) s += g.x(i) * g.values[i];
    s -= 0.5 * (g.x(0) * g.values.front() + g.x(g.n() - 1) * g.values.back());
    return s * h / grid_mass(g);
}

double variance(const GridDensity& g) {
    const double mu = grid_mean(g);
    const double h = g.h();
    double s = 0.0;
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double d = g.x(i) - mu;
        s += d * d * g.values[i];
    }
    const double d0 = g.x(0) - mu;
    const double d1 = g.x(g.n() - 1) - mu;
    s -= 0.5 * (d0 * d0 * g.values.front() + d1 * d1 * g.values.back());
    return s * h / grid_mass(g);
}

GridDensity discretize(const FamilyDensity& f, double lo, double hi, std::size_t n_points,
                       double mass_tolerance) {
    if (n_points < 3) throw std::invalid_argument("discretize: n_points < 3");
    const double tail = f.cdf(lo) + (1.0 - f.cdf(hi));
    if (tail > 0.5 * mass_tolerance) {
        throw std::invalid_argument("discretize: window too narrow, tail mass " +
                                    std::to_string(tail));
    }
    std::vector<double> v(n_points);
    const double h = (hi - lo) / static_cast<double>(n_points - 1);
    for (std::size_t i = 0; i < n_points; ++i) v[i] = f.pdf(lo + static_cast<double>(i) * h);
    return GridDensity::make(lo, hi, std::move(v), mass_tolerance);
}

namespace {

GridDensity discretize_on_window(const FamilyDensity& f, double lo, double hi, double anchor,
                                 double spacing, double mass_tolerance, double shift,
                                 double scale) {
    // grid points at anchor + k*spacing: keeps the mode of symmetric
    // families (and the support edge of one-sided ones) on a node, so kinks
    // stay second-order and rearrangement sees near-exact value ties
    const auto below = static_cast<std::size_t>(std::ceil((anchor - lo) / spacing - 1e-9));
    const double start = anchor - spacing * static_cast<double>(below);
    const auto n = std::max<std::size_t>(
        static_cast<std::size_t>(std::ceil((hi - start) / spacing - 1e-9)) + 1, 3);
    std::vector<double> v(n);
    const double end = start + spacing * static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = start + spacing * static_cast<double>(i);
        v[i] = scale * f.pdf(scale * x + shift);
    }
    return GridDensity::make(start, end, std::move(v), mass_tolerance);
}

// two-sided families center on the mean, one-sided ones on the support edge
double window_anchor(const FamilyDensity& f, double lo) {
    const auto [slo, shi] = f.support();
    return std::isinf(slo) ? f.mean() : lo;
}

} // namespace

GridDensity discretize_default(const FamilyDensity& f, double spacing, double r_min,
                               double mass_tolerance) {
    if (!(spacing > 0.0)) throw std::invalid_argument("discretize_default: bad spacing");
    if (!(r_min > 0.0 && r_min <= 1.0)) {
        throw std::invalid_argument("discretize_default: r_min must be in (0,1]");
    }
    auto [lo, hi] = f.window(30.0 / r_min);
    return discretize_on_window(f, lo, hi, window_anchor(f, lo), spacing, mass_tolerance, 0.0,
                                1.0);
}

GridDensity discretize_standardized(const FamilyDensity& f, double spacing, double r_min,
                                    double mass_tolerance) {
    const double mu = f.mean();
    const double sd = std::sqrt(f.variance());
    auto [lo, hi] = f.window(30.0 / r_min);
    const double anchor = (window_anchor(f, lo) - mu) / sd;
    return discretize_on_window(f, (lo - mu) / sd, (hi - mu) / sd, anchor, spacing, mass_tolerance,
                                mu, sd);
}

bool is_log_concave(const GridDensity& g, double slack) {
    std::size_t first = g.n(), last = 0;
    for (std::size_t i = 0; i < g.n(); ++i) {
        if (g.values[i] > 0.0) {
            if (first == g.n()) first = i;
            last = i;
        }
    }
    if (first == g.n()) return false; // all zero
    for (std::size_t i = first; i <= last; ++i) {
        if (g.values[i] == 0.0) return false; // hole in the support
    }
    for (std::size_t i = first + 1; i < last; ++i) {
        const double mid = std::log(g.values[i]);
        const double avg = 0.5 * (std::log(g.values[i - 1]) + std::log(g.values[i + 1]));
        if (mid < avg - slack) return false;
    }
    return true;
}

GridDensity resample(const GridDensity& g, double new_spacing) {
    if (!(new_spacing > 0.0)) throw std::invalid_argument("resample: bad spacing");
    const double span = g.hi - g.lo;
    const auto n = static_cast<std::size_t>(std::llround(span / new_spacing)) + 1;
    if (n < 3) throw std::invalid_argument("resample: spacing too coarse for span");
    std::vector<double> v(n);
    const double hn = span / static_cast<double>(n - 1);
    const double ho = g.h();
    for (std::size_t i = 0; i < n; ++i) {
        const double x = g.lo + hn * static_cast<double>(i);
        const double t = (x - g.lo) / ho;
        const auto j = std::min(static_cast<std::size_t>(std::max(t, 0.0)), g.n() - 2);
        const double w = std::clamp(t - static_cast<double>(j), 0.0, 1.0);
        v[i] = (1.0 - w) * g.values[j] + w * g.values[j + 1];
    }
    GridDensity out;
    out.lo = g.lo;
    out.hi = g.hi;
    out.values = std::move(v);
    out.mass_tolerance = std::max(g.mass_tolerance, 1e-4);
    return out;
}

GridDensity trim(const GridDensity& g, double rel_threshold) {
    double mx = 0.0;
    for (double v : g.values) mx = std::max(mx, v);
    const double thr = mx * rel_threshold;
    std::size_t a = 0, b = g.n() - 1;
    while (a < b && g.values[a] <= thr) ++a;
    while (b > a && g.values[b] <= thr) --b;
    if (b - a + 1 == g.n()) return g;
    if (b - a < 2) throw std::runtime_error("trim: grid degenerated");
    GridDensity out;
    const double h = g.h();
    out.lo = g.x(a);
    out.hi = g.lo + h * static_cast<double>(b);
    out.values.assign(g.values.begin() + static_cast<std::ptrdiff_t>(a),
                      g.values.begin() + static_cast<std::ptrdiff_t>(b) + 1);
    out.mass_tolerance = g.mass_tolerance;
    return out;
}

GridDensity zero_pad_edges(const GridDensity& g) {
    double mx = 0.0;
    for (double v : g.values) mx = std::max(mx, v);
    const double thr = 1e-12 * mx;
    const bool pad_front = g.values.front() > thr;
    const bool pad_back = g.values.back() > thr;
    if (!pad_front && !pad_back) return g;
    const double h = g.h();
    GridDensity out;
    out.values.reserve(g.n() + 2);
    if (pad_front) out.values.push_back(0.0);
    out.values.insert(out.values.end(), g.values.begin(), g.values.end());
    if (pad_back) out.values.push_back(0.0);
    out.lo = pad_front ? g.lo - h : g.lo;
    out.hi = pad_back ? g.hi + h : g.hi;
    // turning the half-weighted boundary cells into interior ones biases the
    // trapezoid mass by h*(v0+vn)/2; widen the tolerance accordingly
    out.mass_tolerance =
        g.mass_tolerance + h * (g.values.front() + g.values.back());
    return out;
}

} // namespace repi
