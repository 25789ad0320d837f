#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace repi {

/// The scalar optimization problems behind the EPI exponents. With
/// S = 1/|r'| = (1-r)/r and y = S - x implied:
///   F(x) = S log S - x log x - y log y
///   L(x) = (S+1) log(S+1) - (x+1) log(x+1) - (y+1) log(y+1)
///   G(x) = F(x) - L(x) = log A in the (x, y) chart
/// F and L vanish at the endpoints, are symmetric about c = S/2, and L/F is
/// increasing on (0, c]; alpha = sup F/G and beta = (1 + L(c)/F(c))^{-1}.
struct RatioProblem {
    double r = 0.0;
    double simplex_scale = 0.0; // S = 1/|r'|
    double midpoint = 0.0;      // c = S/2

    static RatioProblem make(double r);
};

double eval_F(double r, double x);
double eval_L(double r, double x);
double eval_G(double r, double x);

struct SolverResult {
    double value = 0.0;
    double argmax = 0.0;
    double refinement_cell = 0.0; // coarse-grid cell that was refined
};

/// Grid-plus-golden-section supremum of F/G over the open interval; the
/// optimum sits at the midpoint c and must reproduce the closed form alpha(r).
SolverResult numeric_alpha(double r, int grid_size = 4096);

/// Same machinery for the uniform-distribution exponent. L/F is maximized on
/// (0, c] (that is the content of the calculus lemma), and
/// beta = 1/(1 + max L/F); the maximizer is again c.
SolverResult numeric_beta(double r, int grid_size = 4096);

struct CalculusLemmaReport {
    bool pass = false;
    double min_F = 0.0;              // positivity margin of F on (0, c)
    double min_F_increment = 0.0;    // monotonicity of F
    double min_Fp_decrement = 0.0;   // strict decrease of F'
    double min_ratio_increment = 0.0; // monotonicity of L''/F''
    double min_LF_increment = 0.0;   // conclusion: L/F non-decreasing
    double max_fd_mismatch = 0.0;    // analytic vs finite-difference derivatives
};

/// Samples the hypotheses and the conclusion of the Cauchy-mean-value lemma
/// on (0, c); derivatives come from closed forms cross-checked against
/// central finite differences.
CalculusLemmaReport calculus_lemma_check(double r, int n_samples = 1000);

struct WValue {
    double w = 0.0;
    double dw_dx = 0.0;
};

/// W(x,y) = log of the (x,y)-form of A. Evaluated through
/// D(u) = log(1+u) + u log(1+1/u) as W = D(x) + D(y) - D(x+y), which is
/// stable for widely separated x, y; dW/dx = log(1+1/x) - log(1+1/(x+y)).
WValue W_eval(double x, double y);

/// Objective of the k-summand minimax constant:
/// exp{ |r'| log(r)/r + sum_i |r'| (1 + t_i/|r'|) log(1 + t_i/|r'|)
///      + sum_i t_i log(lambda_i / t_i) },
/// with lambda, t on the probability simplex (validated to 1e-12).
double c_rk_objective(double r, int k, const std::vector<double>& lambda,
                      const std::vector<double>& t);

/// Uniform sample from the probability simplex (symmetric Dirichlet(1)).
std::vector<double> sample_simplex(int k, std::mt19937_64& rng);

} // namespace repi
