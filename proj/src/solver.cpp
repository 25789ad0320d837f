#include "repi/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace repi {

namespace {

double xlogx(double u) { return u > 0.0 ? u * std::log(u) : 0.0; }

void require_open_unit(double r, const char* who) {
    if (!(r > 0.0 && r < 1.0)) {
        throw std::domain_error(std::string(who) + ": r must lie in (0,1)");
    }
}

void require_inside(double r, double x, const char* who) {
    const double s = (1.0 - r) / r;
    if (!(x > 0.0 && x < s)) {
        throw std::domain_error(std::string(who) + ": x must lie in (0, 1/|r'|)");
    }
}

// golden-section maximization on [a, b]; stops once the bracket shrinks to
// tol (kept well above fp noise so the reported argmax is meaningful)
std::pair<double, double> golden_max(const std::function<double(double)>& f, double a, double b,
                                     double tol) {
    constexpr double gr = 0.6180339887498949;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        } else {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

SolverResult maximize_on(const std::function<double(double)>& f, double a, double b,
                         int grid_size) {
    const double cell = (b - a) / static_cast<double>(grid_size);
    double best_x = a, best_v = -1e300;
    for (int i = 0; i <= grid_size; ++i) {
        const double x = a + cell * i;
        const double v = f(x);
        if (v > best_v) {
            best_v = v;
            best_x = x;
        }
    }
    const double lo = std::max(a, best_x - cell);
    const double hi = std::min(b, best_x + cell);
    auto [x, v] = golden_max(f, lo, hi, 1e-7 * (b - a));
    SolverResult res;
    res.value = std::max(v, best_v);
    res.argmax = v >= best_v ? x : best_x;
    res.refinement_cell = cell;
    return res;
}

} // namespace

RatioProblem RatioProblem::make(double r) {
    require_open_unit(r, "RatioProblem");
    RatioProblem p;
    p.r = r;
    p.simplex_scale = (1.0 - r) / r;
    p.midpoint = 0.5 * p.simplex_scale;
    return p;
}

double eval_F(double r, double x) {
    require_inside(r, x, "eval_F");
    const double s = (1.0 - r) / r;
    return xlogx(s) - xlogx(x) - xlogx(s - x);
}

double eval_L(double r, double x) {
    require_inside(r, x, "eval_L");
    const double s = (1.0 - r) / r;
    return xlogx(s + 1.0) - xlogx(x + 1.0) - xlogx(s - x + 1.0);
}

double eval_G(double r, double x) { return eval_F(r, x) - eval_L(r, x); }

SolverResult numeric_alpha(double r, int grid_size) {
    const auto prob = RatioProblem::make(r);
    const double s = prob.simplex_scale;
    auto ratio = [r](double x) { return eval_F(r, x) / eval_G(r, x); };
    return maximize_on(ratio, s * 1e-9, s * (1.0 - 1e-9), grid_size);
}

SolverResult numeric_beta(double r, int grid_size) {
    const auto prob = RatioProblem::make(r);
    auto lf = [r](double x) { return eval_L(r, x) / eval_F(r, x); };
    SolverResult res = maximize_on(lf, prob.simplex_scale * 1e-9, prob.midpoint, grid_size);
    res.value = 1.0 / (1.0 + res.value);
    return res;
}

CalculusLemmaReport calculus_lemma_check(double r, int n_samples) {
    const auto prob = RatioProblem::make(r);
    const double s = prob.simplex_scale;
    const double c = prob.midpoint;
    if (n_samples < 8) throw std::invalid_argument("calculus_lemma_check: too few samples");

    auto Fp = [s](double x) { return std::log((s - x) / x); };
    auto ratio2 = [s](double x) {
        // L''/F'' in closed form
        return (s + 2.0) / s * (x * (s - x)) / ((x + 1.0) * (s - x + 1.0));
    };

    CalculusLemmaReport rep;
    rep.min_F = 1e300;
    rep.min_F_increment = 1e300;
    rep.min_Fp_decrement = 1e300;
    rep.min_ratio_increment = 1e300;
    rep.min_LF_increment = 1e300;

    const double a = c * 1e-6;
    const double step = (c - 2.0 * a) / static_cast<double>(n_samples - 1);
    double prev_F = 0.0, prev_Fp = 0.0, prev_ratio = 0.0, prev_LF = 0.0;
    const double fd_h = 1e-6 * c; // central differences with Richardson refinement
    for (int i = 0; i < n_samples; ++i) {
        const double x = a + step * i;
        const double F = eval_F(r, x);
        const double L = eval_L(r, x);
        rep.min_F = std::min(rep.min_F, F);

        // analytic derivatives vs finite differences
        const double fp = Fp(x);
        if (x > 4.0 * fd_h) {
            const double d1 = (eval_F(r, x + fd_h) - eval_F(r, x - fd_h)) / (2.0 * fd_h);
            const double d2 = (eval_F(r, x + 0.5 * fd_h) - eval_F(r, x - 0.5 * fd_h)) / fd_h;
            const double rich = (4.0 * d2 - d1) / 3.0;
            rep.max_fd_mismatch = std::max(rep.max_fd_mismatch, std::abs(rich - fp));
        }
        // second derivatives need a wider step (h^2 in the denominator);
        // Richardson over h and h/2 against the closed forms
        if (x > 0.2 * c && x < 0.8 * c) {
            const double h2 = 1e-3 * c;
            auto fd2 = [r](double u, double step, double (*f)(double, double)) {
                return (f(r, u + step) - 2.0 * f(r, u) + f(r, u - step)) / (step * step);
            };
            const double f2_analytic = -s / (x * (s - x));
            const double l2_analytic = -(s + 2.0) / ((x + 1.0) * (s - x + 1.0));
            const double f2 =
                (4.0 * fd2(x, 0.5 * h2, &eval_F) - fd2(x, h2, &eval_F)) / 3.0;
            const double l2 =
                (4.0 * fd2(x, 0.5 * h2, &eval_L) - fd2(x, h2, &eval_L)) / 3.0;
            rep.max_fd_mismatch =
                std::max({rep.max_fd_mismatch, std::abs(f2 - f2_analytic) / std::abs(f2_analytic),
                          std::abs(l2 - l2_analytic) / std::abs(l2_analytic)});
        }

        const double rat = ratio2(x);
        const double lf = L / F;
        if (i > 0) {
            rep.min_F_increment = std::min(rep.min_F_increment, F - prev_F);
            rep.min_Fp_decrement = std::min(rep.min_Fp_decrement, prev_Fp - fp);
            rep.min_ratio_increment = std::min(rep.min_ratio_increment, rat - prev_ratio);
            rep.min_LF_increment = std::min(rep.min_LF_increment, lf - prev_LF);
        }
        prev_F = F;
        prev_Fp = fp;
        prev_ratio = rat;
        prev_LF = lf;
    }
    // L/F peaks at c: the last sampled ratio may equal L(c)/F(c) only up to
    // the sampling step, so allow a step-sized slack on the increments
    const double slack = -1e-12;
    rep.pass = rep.min_F > 0.0 && rep.min_F_increment > slack && rep.min_Fp_decrement > slack &&
               rep.min_ratio_increment > slack && rep.min_LF_increment > slack;
    return rep;
}

WValue W_eval(double x, double y) {
    if (!(x > 0.0 && y > 0.0)) throw std::domain_error("W_eval: x, y must be positive");
    auto D = [](double u) { return std::log1p(u) + u * std::log1p(1.0 / u); };
    WValue v;
    v.w = D(x) + D(y) - D(x + y);
    v.dw_dx = std::log1p(1.0 / x) - std::log1p(1.0 / (x + y));
    return v;
}

double c_rk_objective(double r, int k, const std::vector<double>& lambda,
                      const std::vector<double>& t) {
    require_open_unit(r, "c_rk_objective");
    if (k < 1 || lambda.size() != static_cast<std::size_t>(k) ||
        t.size() != static_cast<std::size_t>(k)) {
        throw std::invalid_argument("c_rk_objective: dimension mismatch");
    }
    auto check_simplex = [](const std::vector<double>& v, const char* name) {
        double sum = 0.0;
        for (double u : v) {
            if (u < 0.0) throw std::invalid_argument(std::string("c_rk_objective: negative ") + name);
            sum += u;
        }
        if (std::abs(sum - 1.0) > 1e-12) {
            throw std::invalid_argument(std::string("c_rk_objective: ") + name +
                                        " does not sum to 1");
        }
    };
    check_simplex(lambda, "lambda");
    check_simplex(t, "t");

    const double rc = r / (1.0 - r); // |r'|
    double e = rc * std::log(r) / r;
    for (int i = 0; i < k; ++i) {
        const auto ii = static_cast<std::size_t>(i);
        e += rc * (1.0 + t[ii] / rc) * std::log1p(t[ii] / rc);
        if (t[ii] > 0.0) {
            if (lambda[ii] == 0.0) return 0.0; // t_i log(0/t_i) = -inf
            e += t[ii] * std::log(lambda[ii] / t[ii]);
        }
    }
    return std::exp(e);
}

std::vector<double> sample_simplex(int k, std::mt19937_64& rng) {
    std::exponential_distribution<double> exp1(1.0);
    std::vector<double> v(static_cast<std::size_t>(k));
    double sum = 0.0;
    for (auto& u : v) {
        u = exp1(rng);
        sum += u;
    }
    for (auto& u : v) u /= sum;
    return v;
}

} // namespace repi
