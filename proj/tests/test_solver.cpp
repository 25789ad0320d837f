#include <doctest.h>

#include <cmath>
#include <random>

#include "repi/constants.hpp"
#include "repi/solver.hpp"

using namespace repi;

TEST_SUITE_BEGIN("solver");

TEST_CASE("F at the midpoint and its symmetry") {
    for (double r : {0.2, 0.5, 0.8}) {
        CAPTURE(r);
        const auto prob = RatioProblem::make(r);
        const double c = prob.midpoint;
        CHECK(eval_F(r, c) == doctest::Approx((1.0 - r) * std::log(2.0) / r).epsilon(1e-13));
        CHECK(eval_F(r, 0.3 * c) == doctest::Approx(eval_F(r, prob.simplex_scale - 0.3 * c)));
        CHECK(eval_F(r, prob.simplex_scale * 1e-9) < 1e-6);
    }
    CHECK_THROWS(eval_F(0.5, 0.0));
    CHECK_THROWS(eval_F(0.5, 1.0)); // right endpoint of (0, 1/|r'|) at r=1/2
}

TEST_CASE("L at the midpoint matches its closed form") {
    for (double r : {0.2, 0.5, 0.8}) {
        CAPTURE(r);
        const auto prob = RatioProblem::make(r);
        const double c = prob.midpoint;
        const double closed = std::log(2.0 / (1.0 + r)) / r - std::log((r + 1.0) / (2.0 * r));
        CHECK(eval_L(r, c) == doctest::Approx(closed).epsilon(1e-12));
        CHECK(eval_L(r, 0.4 * c) == doctest::Approx(eval_L(r, prob.simplex_scale - 0.4 * c)));
        CHECK(eval_L(r, prob.simplex_scale * 1e-9) < 1e-6);
    }
}

TEST_CASE("G = F - L stays positive and the midpoint is stationary") {
    for (double r : {0.1, 0.5, 0.9}) {
        CAPTURE(r);
        const auto prob = RatioProblem::make(r);
        const double s = prob.simplex_scale, c = prob.midpoint;
        for (int i = 1; i < 64; ++i) {
            const double x = s * i / 64.0;
            CHECK(eval_G(r, x) > 0.0);
        }
        // F'(c) = L'(c) = 0 by symmetry; central differences at the midpoint
        const double h = 1e-6 * c;
        CHECK(std::abs(eval_F(r, c + h) - eval_F(r, c - h)) / (2.0 * h) < 1e-9);
        CHECK(std::abs(eval_L(r, c + h) - eval_L(r, c - h)) / (2.0 * h) < 1e-9);
    }
}

TEST_CASE("alpha and beta emerge from the midpoint values of F and L") {
    for (double r : {0.3, 0.5, 0.7}) {
        CAPTURE(r);
        const double c = RatioProblem::make(r).midpoint;
        const double F = eval_F(r, c), L = eval_L(r, c);
        CHECK(F / (F - L) == doctest::Approx(alpha(r)).epsilon(1e-12));
        CHECK(F / (F + L) == doctest::Approx(beta(r)).epsilon(1e-12));
    }
}

TEST_CASE("numeric optimization reproduces the closed forms to 1e-8") {
    for (double r = 0.05; r < 0.96; r += 0.05) {
        CAPTURE(r);
        const double c = RatioProblem::make(r).midpoint;
        const auto a = numeric_alpha(r);
        CHECK(std::abs(a.value - alpha(r)) <= 1e-8);
        CHECK(std::abs(a.argmax - c) <= a.refinement_cell);
        const auto b = numeric_beta(r);
        CHECK(std::abs(b.value - beta(r)) <= 1e-8);
        CHECK(std::abs(b.argmax - c) <= b.refinement_cell);
    }
}

TEST_CASE("calculus lemma hypotheses and conclusion hold on samples") {
    for (double r : {0.05, 0.5, 0.9}) {
        CAPTURE(r);
        const auto rep = calculus_lemma_check(r, 1000);
        CHECK(rep.pass);
        CHECK(rep.min_F > 0.0);
        CHECK(rep.max_fd_mismatch < 1e-6);
    }
    // the ratio L/F is maximized at the midpoint
    const double r = 0.5;
    const double c = RatioProblem::make(r).midpoint;
    const double at_c = eval_L(r, c) / eval_F(r, c);
    for (double frac : {0.1, 0.5, 0.9, 0.999}) {
        CHECK(eval_L(r, frac * c) / eval_F(r, frac * c) <= at_c + 1e-12);
    }
}

TEST_CASE("W is positive with positive x-derivative, matching finite differences") {
    CHECK(W_eval(1.0, 1.0).w == doctest::Approx(std::log(64.0 / 27.0)).epsilon(1e-13));
    CHECK(W_eval(1e-12, 1.0).w == doctest::Approx(0.0).epsilon(1e-9));
    CHECK_THROWS(W_eval(0.0, 1.0));
    CHECK_THROWS(W_eval(1.0, -2.0));

    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        for (int j = 0; j < 50; ++j) {
            const double x = std::pow(10.0, -3.0 + 6.0 * i / 49.0);
            const double y = std::pow(10.0, -3.0 + 6.0 * j / 49.0);
            const auto w = W_eval(x, y);
            CHECK(w.w > 0.0);
            CHECK(w.dw_dx > 0.0);
            const double h = 6e-6 * std::pow(x, 2.0 / 3.0) * std::cbrt(1.0 + x);
            const double fd = (W_eval(x + h, y).w - W_eval(x - h, y).w) / (2.0 * h);
            worst = std::max(worst, std::abs(fd - w.dw_dx));
        }
    }
    CHECK(worst <= 1e-7);
}

TEST_CASE("k-summand objective: uniform point reproduces the bound") {
    for (double r : {0.3, 0.5, 0.7}) {
        for (int k : {1, 2, 3, 5}) {
            CAPTURE(r);
            CAPTURE(k);
            const std::vector<double> u(static_cast<std::size_t>(k), 1.0 / k);
            CHECK(c_rk_objective(r, k, u, u) ==
                  doctest::Approx(c_rk_lower(r, k)).epsilon(1e-12));
        }
    }
    // k = 1 closed form: r^{1/(1-r)} (1 + 1/|r'|)^{1+|r'|}
    const double r = 0.4;
    const double m = r / (1.0 - r);
    const double expect = std::pow(r, 1.0 / (1.0 - r)) * std::pow(1.0 + 1.0 / m, 1.0 + m);
    CHECK(c_rk_objective(r, 1, {1.0}, {1.0}) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("k-summand objective validates simplex inputs") {
    CHECK_THROWS(c_rk_objective(0.5, 2, {0.5, 0.5}, {0.7, 0.2}));
    CHECK_THROWS(c_rk_objective(0.5, 2, {0.5, 0.5}, {0.5}));
    CHECK_THROWS(c_rk_objective(0.5, 2, {-0.1, 1.1}, {0.5, 0.5}));
}

TEST_CASE("entropy-like term is minimized at the uniform weights") {
    // |r'| sum (1 + t_i/|r'|) log(1 + t_i/|r'|) >= (k|r'|+1) log(1 + 1/(k|r'|))
    std::mt19937_64 rng(987654321u);
    for (double r : {0.3, 0.6}) {
        const double rc = r / (1.0 - r);
        for (int k : {2, 3, 5}) {
            const double floor_value =
                (k * rc + 1.0) * std::log1p(1.0 / (k * rc));
            for (int trial = 0; trial < 1000; ++trial) {
                const auto t = sample_simplex(k, rng);
                double s = 0.0;
                for (double ti : t) s += rc * (1.0 + ti / rc) * std::log1p(ti / rc);
                CHECK(s >= floor_value - 1e-12);
            }
        }
    }
}

TEST_CASE("objective never exceeds its uniform-lambda diagonal on random t") {
    // at lambda = t the relative-entropy term vanishes; random t against
    // uniform lambda must stay below the value at t = lambda = uniform only
    // when the entropy term dominates, so just check the documented identity
    std::mt19937_64 rng(1234u);
    const double r = 0.5;
    const int k = 3;
    const std::vector<double> u(k, 1.0 / 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        const auto t = sample_simplex(k, rng);
        const double diag = c_rk_objective(r, k, t, t);
        CHECK(diag >= c_rk_lower(r, k) - 1e-12); // inf over lambda of sup over t is at uniform
    }
}

TEST_SUITE_END();
