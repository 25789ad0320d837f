#include "repi/constants.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace repi {

namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kLog2 = 0.6931471805599453;

void require_open_unit(double r, const char* who) {
    if (!(r > 0.0 && r < 1.0)) {
        throw std::domain_error(std::string(who) + ": r must lie in (0,1)");
    }
}

} // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
    // Lanczos approximation, g = 7, 9 coefficients (Godfrey's set).
    static constexpr std::array<double, 9> coeff = {
        0.99999999999980993,     676.5203681218851,    -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,  12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    if (x < 0.5) {
        // reflection keeps the small-argument branch accurate
        return std::log(kPi / std::sin(kPi * x)) - log_gamma(1.0 - x);
    }
    const double z = x - 1.0;
    double a = coeff[0];
    for (int i = 1; i < 9; ++i) a += coeff[static_cast<std::size_t>(i)] / (z + i);
    const double t = z + 7.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

double conjugate(double p) {
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    return p / (p - 1.0);
}

double log_young_c(double m) {
    if (!(m > 0.0) || m == 1.0) throw std::domain_error("young_c: m must be in (0,1) u (1,inf)");
    const double mc = conjugate(m);
    return std::log(m) / m - std::log(std::abs(mc)) / mc;
}

double young_c(double m) { return std::exp(log_young_c(m)); }

ExponentTriple ExponentTriple::from_xy(double x, double y) {
    if (!(x > 0.0 && y > 0.0)) throw std::domain_error("from_xy: x, y must be positive");
    ExponentTriple t;
    t.x = x;
    t.y = y;
    t.p = 1.0 / (x + 1.0);
    t.q = 1.0 / (y + 1.0);
    t.r = 1.0 / (x + y + 1.0);
    t.admissibility_residual = 0.0; // x + y - (x + y), exact by construction
    return t;
}

ExponentTriple ExponentTriple::from_pqr(double p, double q, double r) {
    if (!(p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0 && r > 0.0 && r < 1.0)) {
        throw std::domain_error("from_pqr: exponents must lie in (0,1)");
    }
    ExponentTriple t;
    t.p = p;
    t.q = q;
    t.r = r;
    t.x = (1.0 - p) / p;
    t.y = (1.0 - q) / q;
    t.admissibility_residual = t.x + t.y - (1.0 - r) / r;
    if (std::abs(t.admissibility_residual) > 1e-12 * (1.0 + t.x + t.y)) {
        throw std::invalid_argument("from_pqr: inadmissible triple, residual " +
                                    std::to_string(t.admissibility_residual));
    }
    if (!(p > r && q > r)) {
        throw std::invalid_argument("from_pqr: admissibility forces p, q > r");
    }
    return t;
}

double log_young_C(const ExponentTriple& t) {
    return log_young_c(t.p) + log_young_c(t.q) - log_young_c(t.r);
}

double young_C(const ExponentTriple& t) { return std::exp(log_young_C(t)); }

double log_A_const(const ExponentTriple& t) {
    const double la = log_young_C(t) + 2.0 * std::log(t.r) / t.r - 2.0 * std::log(t.p) / t.p -
                      2.0 * std::log(t.q) / t.q;
    if (la < -1e-9) {
        throw std::runtime_error("A_const: computed value below 1 on an admissible triple");
    }
    return la;
}

double A_const(const ExponentTriple& t) { return std::exp(log_A_const(t)); }

double alpha(double r) {
    require_open_unit(r, "alpha");
    return (1.0 - r) * kLog2 / ((1.0 + r) * std::log1p(r) + r * std::log(1.0 / (4.0 * r)));
}

double beta(double r) {
    require_open_unit(r, "beta");
    return (1.0 - r) * kLog2 / (2.0 * kLog2 + r * std::log(r) - (r + 1.0) * std::log1p(r));
}

double gamma_exponent(double r, int n_dim) {
    if (n_dim < 1) throw std::domain_error("gamma_exponent: n_dim must be >= 1");
    return 2.0 * beta(r) / static_cast<double>(n_dim);
}

double c_rk_lower(double r, double k) {
    require_open_unit(r, "c_rk_lower");
    if (!(k >= 1.0)) throw std::domain_error("c_rk_lower: k must be >= 1");
    const double m = k * r / (1.0 - r); // k |r'|
    return std::exp(std::log(r) / (1.0 - r) + (1.0 + m) * std::log1p(1.0 / m));
}

AlphaOptBounds alpha_opt_bounds(double r) {
    require_open_unit(r, "alpha_opt_bounds");
    AlphaOptBounds b;
    b.lower_raw =
        (1.0 - r) * kLog2 / (2.0 * log_gamma(1.0 + r) + 2.0 * r * std::log(1.0 / r));
    b.lower = std::max(1.0, b.lower_raw);
    b.upper = alpha(r);
    return b;
}

double bound_ratio(double r) {
    const AlphaOptBounds b = alpha_opt_bounds(r);
    return b.lower / b.upper;
}

ConstantBundle ConstantBundle::make(double r, double k) {
    require_open_unit(r, "ConstantBundle");
    ConstantBundle c;
    c.r = r;
    c.alpha = repi::alpha(r);
    c.beta = repi::beta(r);
    c.gamma_n1 = gamma_exponent(r, 1);
    c.k = k;
    c.c_rk = c_rk_lower(r, k);
    const AlphaOptBounds b = alpha_opt_bounds(r);
    c.alpha_opt_lower = b.lower;
    c.alpha_opt_upper = b.upper;
    const double base = std::exp(std::log(r) / (1.0 - r));
    c.c_opt_lower = std::exp(1.0) * base;
    c.c_opt_upper = kPi * base;
    c.bound_ratio = repi::bound_ratio(r);
    if (!(c.alpha >= 1.0 && c.alpha >= c.alpha_opt_lower - 1e-12)) {
        throw std::runtime_error("ConstantBundle: exponent ordering violated");
    }
    if (!(c.c_opt_lower <= c.c_opt_upper)) {
        throw std::runtime_error("ConstantBundle: c_opt bounds out of order");
    }
    return c;
}

std::string ConstantBundle::to_json() const {
    std::ostringstream os;
    os.precision(17);
    os << "{\"r\":" << r << ",\"alpha\":" << alpha << ",\"beta\":" << beta
       << ",\"gamma_n1\":" << gamma_n1 << ",\"k\":" << k << ",\"c_rk_lower\":" << c_rk
       << ",\"alpha_opt_lower\":" << alpha_opt_lower << ",\"alpha_opt_upper\":" << alpha_opt_upper
       << ",\"c_opt_lower\":" << c_opt_lower << ",\"c_opt_upper\":" << c_opt_upper
       << ",\"bound_ratio\":" << bound_ratio << "}";
    return os.str();
}

} // namespace repi
