#include "repi/family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "repi/constants.hpp"

namespace repi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kTwoPi = 6.283185307179586;

double require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(what) + " must be positive and finite");
    }
    return v;
}

// trapezoid over a lambda, used only for the potential family setup
template <typename F>
double trapz(const F& f, double lo, double hi, int n) {
    const double h = (hi - lo) / (n - 1);
    double s = 0.5 * (f(lo) + f(hi));
    for (int i = 1; i < n - 1; ++i) s += f(lo + i * h);
    return s * h;
}

} // namespace

FamilyDensity FamilyDensity::gaussian(double mean, double stddev) {
    FamilyDensity f;
    f.kind_ = FamilyKind::gaussian;
    f.params_[0] = mean;
    f.params_[1] = require_positive(stddev, "gaussian stddev");
    return f;
}

FamilyDensity FamilyDensity::exponential(double rate) {
    FamilyDensity f;
    f.kind_ = FamilyKind::exponential;
    f.params_[0] = require_positive(rate, "exponential rate");
    return f;
}

FamilyDensity FamilyDensity::laplace_scale(double scale) {
    FamilyDensity f;
    f.kind_ = FamilyKind::laplace;
    f.params_[0] = require_positive(scale, "laplace scale");
    return f;
}

FamilyDensity FamilyDensity::laplace_variance(double variance) {
    return laplace_scale(std::sqrt(require_positive(variance, "laplace variance") / 2.0));
}

FamilyDensity FamilyDensity::uniform(double lo, double hi) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw std::invalid_argument("uniform: requires lo < hi, both finite");
    }
    FamilyDensity f;
    f.kind_ = FamilyKind::uniform;
    f.params_[0] = lo;
    f.params_[1] = hi;
    return f;
}

FamilyDensity FamilyDensity::gamma_shape2(double rate) {
    FamilyDensity f;
    f.kind_ = FamilyKind::gamma_shape2;
    f.params_[0] = require_positive(rate, "gamma2 rate");
    return f;
}

FamilyDensity FamilyDensity::convex_potential(std::vector<PotentialKnot> knots) {
    if (knots.size() < 2) throw std::invalid_argument("potential: needs at least 2 knots");
    for (size_t i = 1; i < knots.size(); ++i) {
        if (!(knots[i].x > knots[i - 1].x)) {
            throw std::invalid_argument("potential: knot abscissas must be strictly increasing");
        }
    }
    // convexity of the piecewise-linear potential: slopes non-decreasing
    for (size_t i = 2; i < knots.size(); ++i) {
        const double s0 = (knots[i - 1].v - knots[i - 2].v) / (knots[i - 1].x - knots[i - 2].x);
        const double s1 = (knots[i].v - knots[i - 1].v) / (knots[i].x - knots[i - 1].x);
        if (s1 < s0 - 1e-12) throw std::invalid_argument("potential: non-convex knot sequence");
    }
    FamilyDensity f;
    f.kind_ = FamilyKind::potential;
    f.knots_ = std::move(knots);

    const double lo = f.knots_.front().x;
    const double hi = f.knots_.back().x;
    double vmin = f.knots_.front().v;
    for (const auto& k : f.knots_) vmin = std::min(vmin, k.v);

    auto unnorm = [&f, vmin](double x) {
        // V evaluated by linear interpolation between knots; shifted by vmin
        // so exp() stays in range during normalization
        const auto& ks = f.knots_;
        auto it = std::upper_bound(ks.begin(), ks.end(), x,
                                   [](double xx, const PotentialKnot& k) { return xx < k.x; });
        if (it == ks.begin()) return std::exp(-(ks.front().v - vmin));
        if (it == ks.end()) return std::exp(-(ks.back().v - vmin));
        const auto& k1 = *it;
        const auto& k0 = *(it - 1);
        const double t = (x - k0.x) / (k1.x - k0.x);
        return std::exp(-((1.0 - t) * k0.v + t * k1.v - vmin));
    };
    const int n = 200001;
    const double z = trapz(unnorm, lo, hi, n);
    if (!(z > 0.0) || !std::isfinite(z)) throw std::invalid_argument("potential: empty support");
    f.pot_log_z_ = std::log(z) - vmin;
    const double m1 = trapz([&](double x) { return x * unnorm(x); }, lo, hi, n) / z;
    const double m2 = trapz([&](double x) { return (x - m1) * (x - m1) * unnorm(x); }, lo, hi, n) / z;
    f.pot_mean_ = m1;
    f.pot_var_ = m2;
    // max of e^{-V}/Z sits at the knot with minimal V
    f.pot_max_ = std::exp(-vmin - f.pot_log_z_);
    return f;
}

double FamilyDensity::log_pdf(double x) const {
    switch (kind_) {
        case FamilyKind::gaussian: {
            const double z = (x - params_[0]) / params_[1];
            return -0.5 * z * z - std::log(params_[1]) - 0.5 * std::log(kTwoPi);
        }
        case FamilyKind::exponential:
            if (x < 0.0) return -kInf;
            return std::log(params_[0]) - params_[0] * x;
        case FamilyKind::laplace:
            return -std::abs(x) / params_[0] - std::log(2.0 * params_[0]);
        case FamilyKind::uniform:
            if (x < params_[0] || x > params_[1]) return -kInf;
            return -std::log(params_[1] - params_[0]);
        case FamilyKind::gamma_shape2:
            if (x <= 0.0) return -kInf;
            return 2.0 * std::log(params_[0]) + std::log(x) - params_[0] * x;
        case FamilyKind::potential: {
            if (x < knots_.front().x || x > knots_.back().x) return -kInf;
            auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                                       [](double xx, const PotentialKnot& k) { return xx < k.x; });
            if (it == knots_.begin()) return -knots_.front().v - pot_log_z_;
            if (it == knots_.end()) return -knots_.back().v - pot_log_z_;
            const auto& k1 = *it;
            const auto& k0 = *(it - 1);
            const double t = (x - k0.x) / (k1.x - k0.x);
            return -((1.0 - t) * k0.v + t * k1.v) - pot_log_z_;
        }
    }
    return -kInf;
}

double FamilyDensity::pdf(double x) const {
    const double l = log_pdf(x);
    return std::isinf(l) ? 0.0 : std::exp(l);
}

double FamilyDensity::cdf(double x) const {
    switch (kind_) {
        case FamilyKind::gaussian:
            return 0.5 * std::erfc(-(x - params_[0]) / (params_[1] * kSqrt2));
        case FamilyKind::exponential:
            return x <= 0.0 ? 0.0 : -std::expm1(-params_[0] * x);
        case FamilyKind::laplace:
            return x < 0.0 ? 0.5 * std::exp(x / params_[0])
                           : 1.0 - 0.5 * std::exp(-x / params_[0]);
        case FamilyKind::uniform:
            if (x <= params_[0]) return 0.0;
            if (x >= params_[1]) return 1.0;
            return (x - params_[0]) / (params_[1] - params_[0]);
        case FamilyKind::gamma_shape2: {
            if (x <= 0.0) return 0.0;
            const double t = params_[0] * x;
            return 1.0 - std::exp(-t) * (1.0 + t);
        }
        case FamilyKind::potential: {
            // compact support; quadrature on demand (rarely used)
            const double lo = knots_.front().x;
            if (x <= lo) return 0.0;
            if (x >= knots_.back().x) return 1.0;
            const int n = 20001;
            const double h = (x - lo) / (n - 1);
            double s = 0.5 * (pdf(lo) + pdf(x));
            for (int i = 1; i < n - 1; ++i) s += pdf(lo + i * h);
            return s * h;
        }
    }
    return 0.0;
}

double FamilyDensity::mean() const {
    switch (kind_) {
        case FamilyKind::gaussian: return params_[0];
        case FamilyKind::exponential: return 1.0 / params_[0];
        case FamilyKind::laplace: return 0.0;
        case FamilyKind::uniform: return 0.5 * (params_[0] + params_[1]);
        case FamilyKind::gamma_shape2: return 2.0 / params_[0];
        case FamilyKind::potential: return pot_mean_;
    }
    return 0.0;
}

double FamilyDensity::variance() const {
    switch (kind_) {
        case FamilyKind::gaussian: return params_[1] * params_[1];
        case FamilyKind::exponential: return 1.0 / (params_[0] * params_[0]);
        case FamilyKind::laplace: return 2.0 * params_[0] * params_[0];
        case FamilyKind::uniform: {
            const double w = params_[1] - params_[0];
            return w * w / 12.0;
        }
        case FamilyKind::gamma_shape2: return 2.0 / (params_[0] * params_[0]);
        case FamilyKind::potential: return pot_var_;
    }
    return 0.0;
}

double FamilyDensity::max_pdf() const {
    switch (kind_) {
        case FamilyKind::gaussian: return 1.0 / (params_[1] * std::sqrt(kTwoPi));
        case FamilyKind::exponential: return params_[0];
        case FamilyKind::laplace: return 1.0 / (2.0 * params_[0]);
        case FamilyKind::uniform: return 1.0 / (params_[1] - params_[0]);
        case FamilyKind::gamma_shape2: return params_[0] * std::exp(-1.0);
        case FamilyKind::potential: return pot_max_;
    }
    return 0.0;
}

std::pair<double, double> FamilyDensity::support() const {
    switch (kind_) {
        case FamilyKind::gaussian:
        case FamilyKind::laplace: return {-kInf, kInf};
        case FamilyKind::exponential:
        case FamilyKind::gamma_shape2: return {0.0, kInf};
        case FamilyKind::uniform: return {params_[0], params_[1]};
        case FamilyKind::potential: return {knots_.front().x, knots_.back().x};
    }
    return {-kInf, kInf};
}

std::pair<double, double> FamilyDensity::window(double drop) const {
    drop = std::max(drop, 28.0); // never narrower than the 1e-12 quantile range
    switch (kind_) {
        case FamilyKind::gaussian: {
            const double w = params_[1] * std::sqrt(2.0 * drop);
            return {params_[0] - w, params_[0] + w};
        }
        case FamilyKind::exponential:
            return {0.0, drop / params_[0]};
        case FamilyKind::laplace: {
            const double w = params_[0] * (drop + 1.0);
            return {-w, w};
        }
        case FamilyKind::gamma_shape2: {
            // solve log t - t + 1 = -drop for t = rate*x by fixed point
            double t = drop + 1.0;
            for (int i = 0; i < 3; ++i) t = drop + 1.0 + std::log(t);
            return {0.0, (t + 2.0) / params_[0]};
        }
        case FamilyKind::uniform: return {params_[0], params_[1]};
        case FamilyKind::potential: return {knots_.front().x, knots_.back().x};
    }
    return {0.0, 0.0};
}

double FamilyDensity::renyi_integral(double t) const {
    if (!(t > 0.0)) throw std::domain_error("renyi_integral: t must be positive");
    switch (kind_) {
        case FamilyKind::gaussian: {
            const double s2 = params_[1] * params_[1];
            return std::exp(0.5 * (1.0 - t) * std::log(kTwoPi * s2) - 0.5 * std::log(t));
        }
        case FamilyKind::exponential:
            return std::exp((t - 1.0) * std::log(params_[0])) / t;
        case FamilyKind::laplace:
            return std::exp((1.0 - t) * std::log(2.0 * params_[0])) / t;
        case FamilyKind::uniform:
            return std::exp((1.0 - t) * std::log(params_[1] - params_[0]));
        case FamilyKind::gamma_shape2:
            // rate^{2t} * Gamma(t+1) / (rate t)^{t+1}
            return std::exp((t - 1.0) * std::log(params_[0]) + log_gamma(t + 1.0) -
                            (t + 1.0) * std::log(t));
        case FamilyKind::potential:
            throw std::domain_error("renyi_integral: no closed form for potential family");
    }
    return 0.0;
}

std::string FamilyDensity::describe() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind_) {
        case FamilyKind::gaussian: os << "gaussian mean=" << params_[0] << " sd=" << params_[1]; break;
        case FamilyKind::exponential: os << "exponential rate=" << params_[0]; break;
        case FamilyKind::laplace: os << "laplace scale=" << params_[0]; break;
        case FamilyKind::uniform: os << "uniform lo=" << params_[0] << " hi=" << params_[1]; break;
        case FamilyKind::gamma_shape2: os << "gamma2 rate=" << params_[0]; break;
        case FamilyKind::potential: {
            os << "potential knots=";
            for (size_t i = 0; i < knots_.size(); ++i) {
                if (i) os << ',';
                os << knots_[i].x << ':' << knots_[i].v;
            }
            break;
        }
    }
    return os.str();
}

FamilyDensity FamilyDensity::parse(const std::string& spec) {
    std::istringstream is(spec);
    std::string name;
    is >> name;
    std::vector<std::string> toks;
    std::vector<bool> used;
    for (std::string t; is >> t;) {
        toks.push_back(t);
        used.push_back(false);
    }

    auto get = [&toks, &used](const std::string& key, bool* found = nullptr) -> double {
        for (std::size_t i = 0; i < toks.size(); ++i) {
            const auto pos = toks[i].find('=');
            if (pos != std::string::npos && toks[i].substr(0, pos) == key) {
                if (found) *found = true;
                used[i] = true;
                return std::stod(toks[i].substr(pos + 1));
            }
        }
        if (found) {
            *found = false;
            return 0.0;
        }
        throw std::invalid_argument("family spec '" + key + "' missing");
    };
    auto reject_unused = [&toks, &used]() {
        for (std::size_t i = 0; i < toks.size(); ++i) {
            if (!used[i]) {
                throw std::invalid_argument("family spec: unexpected token '" + toks[i] + "'");
            }
        }
    };

    if (name == "gaussian") {
        const double mean = get("mean"), sd = get("sd");
        reject_unused();
        return gaussian(mean, sd);
    } else if (name == "exponential") {
        const double rate = get("rate");
        reject_unused();
        return exponential(rate);
    } else if (name == "laplace") {
        bool have_var = false;
        const double var = get("var", &have_var);
        if (have_var) {
            reject_unused();
            return laplace_variance(var);
        }
        const double scale = get("scale");
        reject_unused();
        return laplace_scale(scale);
    } else if (name == "uniform") {
        const double lo = get("lo"), hi = get("hi");
        reject_unused();
        return uniform(lo, hi);
    } else if (name == "gamma2") {
        const double rate = get("rate");
        reject_unused();
        return gamma_shape2(rate);
    } else if (name == "potential") {
        std::string kn;
        for (std::size_t i = 0; i < toks.size(); ++i) {
            if (toks[i].rfind("knots=", 0) == 0) {
                kn = toks[i].substr(6);
                used[i] = true;
            }
        }
        reject_unused();
        if (kn.empty()) throw std::invalid_argument("potential spec needs knots=x:v,...");
        std::vector<PotentialKnot> knots;
        std::istringstream ks(kn);
        for (std::string item; std::getline(ks, item, ',');) {
            const auto c = item.find(':');
            if (c == std::string::npos) throw std::invalid_argument("bad knot '" + item + "'");
            knots.push_back({std::stod(item.substr(0, c)), std::stod(item.substr(c + 1))});
        }
        return convex_potential(std::move(knots));
    }
    throw std::invalid_argument("unknown family '" + name + "'");
}

} // namespace repi
