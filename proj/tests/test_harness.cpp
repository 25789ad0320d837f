#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "repi/constants.hpp"
#include "repi/family.hpp"
#include "repi/grid.hpp"
#include "repi/verify.hpp"

using namespace repi;

namespace {
constexpr double kPi = 3.141592653589793;
}

TEST_SUITE_BEGIN("harness");

TEST_CASE("alpha-form EPI on the iid exponential pair (closed forms)") {
    const auto f = FamilyDensity::exponential(1.0);
    const auto rep = verify_main_epi(f, f, 0.5);
    CHECK(rep.passed());
    CHECK(rep.details.at("method_closed_form") == 1.0);
    // frozen closed-form values: (2pi)^2)^alpha vs 2*16^alpha
    CHECK(rep.lhs == doctest::Approx(130.22634611507607).epsilon(1e-12));
    CHECK(rep.rhs == doctest::Approx(78.727883388775456).epsilon(1e-12));
    CHECK(rep.margin == doctest::Approx(51.498462726300610).epsilon(1e-10));
}

TEST_CASE("gaussian pair margin equals (2^alpha - 2) N_r^alpha") {
    const auto z = FamilyDensity::gaussian(0.0, 1.0);
    for (double r : {0.3, 0.5, 0.7}) {
        CAPTURE(r);
        const auto rep = verify_main_epi(z, z, r);
        CHECK(rep.passed());
        const double a = alpha(r);
        const double nr = 2.0 * kPi * std::pow(r, 1.0 / (r - 1.0));
        const double expect = (std::pow(2.0, a) - 2.0) * std::pow(nr, a);
        CHECK(std::abs(rep.margin - expect) / expect < 1e-6);
    }
}

TEST_CASE("alpha-form EPI across mixed family pairs by quadrature") {
    const auto u = FamilyDensity::uniform(0.0, 1.0);
    const auto l = FamilyDensity::laplace_variance(1.0);
    const auto rep = verify_main_epi(u, l, 0.7);
    CHECK(rep.passed());
    CHECK(rep.details.at("method_closed_form") == 0.0);
    CHECK(rep.margin > 1.0);
}

TEST_CASE("grid-input EPI flags non-log-concave densities") {
    const double lo = -8.0, hi = 8.0;
    const std::size_t n = 1601;
    std::vector<double> v(n);
    const double h = (hi - lo) / double(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = lo + h * double(i);
        v[i] = 0.5 *
               (std::exp(-0.5 * (x - 3.0) * (x - 3.0)) + std::exp(-0.5 * (x + 3.0) * (x + 3.0))) /
               std::sqrt(2.0 * kPi);
    }
    const auto bimodal = GridDensity::make(lo, hi, v, 1e-3);
    const auto ok = discretize_default(FamilyDensity::gaussian(0.0, 1.0), 0.01, 0.5, 1e-4);
    const auto rep = verify_main_epi(bimodal, ok, 0.5);
    CHECK(rep.status == CheckStatus::precondition_violated);
    const auto rep2 = verify_main_epi(ok, ok, 0.5);
    CHECK(rep2.passed());
}

TEST_CASE("uniform EPI in both the beta and the support-volume forms") {
    const auto rep = verify_uniform_epi(1.0, 1.0, 0.5);
    CHECK(rep.passed());
    // N_{1/2}(triangle) = (4/3)^4
    CHECK(rep.details.at("N_r_conv") ==
          doctest::Approx(256.0 / 81.0).epsilon(5e-3));
    CHECK(rep.details.at("beta_margin") > 0.5);
    CHECK(rep.details.at("geometric_margin") > 0.0);

    // nearly deterministic second summand
    const auto tiny = verify_uniform_epi(1.0, 0.01, 0.5);
    CHECK(tiny.passed());

    // r near 1: the beta-form approaches the Shannon EPI for this pair
    const auto shan = verify_uniform_epi(1.0, 1.0, 0.999);
    CHECK(shan.passed());
    const double n1 = std::exp(1.0); // e^{2 h_1(triangle)} = e
    CHECK(shan.details.at("N_r_conv") == doctest::Approx(n1).epsilon(5e-3));
    CHECK(beta(0.999) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("k-tuple EPI for exponential triples and gaussian scaling") {
    const auto e = FamilyDensity::exponential(1.0);
    const auto rep = verify_ktuple_epi({e, e, e}, 0.5);
    CHECK(rep.passed());

    // iid gaussians: N_r(sum of k) = k N_r(Z), so the check passes iff
    // c(r,k) <= 1, with relative margin (1 - c)/c
    const auto z = FamilyDensity::gaussian(0.0, 1.0);
    for (int k : {2, 4, 8}) {
        CAPTURE(k);
        const auto repk = verify_ktuple_epi(std::vector<FamilyDensity>(k, z), 0.4);
        CHECK(repk.passed());
        const double c = c_rk_lower(0.4, k);
        CHECK(repk.margin == doctest::Approx((1.0 - c) / c).epsilon(5e-3));
    }
    CHECK_THROWS(verify_ktuple_epi({e}, 0.5));
}

TEST_CASE("k = 2 tuple bound is weaker than the alpha-form result") {
    const auto e = FamilyDensity::exponential(1.0);
    const auto tuple_rep = verify_ktuple_epi({e, e}, 0.5);
    const auto main_rep = verify_main_epi(e, e, 0.5);
    CHECK(tuple_rep.passed());
    CHECK(main_rep.passed());
}

TEST_CASE("exponent sharpness on the exponential pair") {
    const double crit = 0.7674642678306876; // (1-r)log2 / (2 log Gamma(1.5) + log 2) at r = 1/2
    const auto pass_rep = sharpness_exponential(0.5, alpha(0.5));
    CHECK(pass_rep.passed());
    CHECK(pass_rep.details.at("critical_exponent") == doctest::Approx(crit).epsilon(1e-12));
    CHECK(pass_rep.details.at("margin_at_0.99_critical") < 0.0);
    CHECK(pass_rep.details.at("margin_at_1.01_critical") > 0.0);

    const auto fail_rep = sharpness_exponential(0.5, 0.99 * crit);
    CHECK_FALSE(fail_rep.passed());

    // at small r the critical exponent exceeds 1, so alpha = 1 fails
    const auto one_rep = sharpness_exponential(0.1, 1.0);
    CHECK_FALSE(one_rep.passed());
    CHECK(one_rep.details.at("critical_exponent") > 1.0);
}

TEST_CASE("CLT sharpness at a reduced summand count") {
    // k = 16 is already within a few percent; the acceptance suite runs k = 64
    const auto rep = clt_sharpness(0.5, 16);
    CHECK(rep.details.at("N_r_S1") == doctest::Approx(32.0).epsilon(1e-4));
    CHECK(rep.details.at("N_r_S16") == doctest::Approx(8.0 * kPi).epsilon(0.05));
    CHECK(rep.details.at("sandwich_lower_ok") == 1.0);
    CHECK_THROWS(clt_sharpness(0.5, 48)); // not a power of two
}

TEST_CASE("sweep: reduced config runs deterministically and passes") {
    SweepConfig cfg;
    cfg.r_values = {0.5};
    cfg.families = {"exponential rate=1", "uniform lo=0 hi=1"};
    cfg.k_values = {2};
    cfg.points_per_unit = 100.0;
    cfg.seed = 7;
    cfg.claims = {"thm1.1", "thm1.2", "thm1.4", "lem2.2", "thmA.1", "thm7.1", "appB",
                  "consistency"};
    const auto reports = run_sweep(cfg);
    CHECK(reports.size() > 5);
    for (const auto& rep : reports) {
        CAPTURE(rep.claim_id);
        CAPTURE(rep.inputs);
        CHECK(rep.status == CheckStatus::pass);
    }
    // bitwise determinism on rerun
    const auto again = run_sweep(cfg);
    REQUIRE(again.size() == reports.size());
    for (std::size_t i = 0; i < again.size(); ++i) {
        CHECK(again[i].lhs == reports[i].lhs);
        CHECK(again[i].rhs == reports[i].rhs);
        CHECK(again[i].margin == reports[i].margin);
    }
}

TEST_CASE("sweep config parsing and validation") {
    const auto cfg = SweepConfig::parse("r = 0.3 0.7\nfamily = exponential rate=1\nk = 2 3\n"
                                        "resolution = 50\nseed = 9\nclaims = thm1.1\n");
    CHECK(cfg.r_values.size() == 2);
    CHECK(cfg.k_values.size() == 2);
    CHECK(cfg.points_per_unit == 50.0);
    CHECK(cfg.seed == 9);
    CHECK_THROWS(SweepConfig::parse("family = exponential rate=1\n"));  // empty r
    CHECK_THROWS(SweepConfig::parse("r = 0.5\n"));                       // no family
    CHECK_THROWS(SweepConfig::parse("r = 1.5\nfamily = exponential rate=1\n"));
    CHECK_THROWS(SweepConfig::parse("bogus = 1\nr = 0.5\nfamily = exponential rate=1\n"));
}

TEST_CASE("reports serialize to JSON and CSV with stable fields") {
    const auto rep = verify_main_epi(FamilyDensity::exponential(1.0),
                                     FamilyDensity::exponential(1.0), 0.5);
    const std::string j = rep.to_json();
    CHECK(j.find("\"claim_id\":\"thm1.1\"") != std::string::npos);
    CHECK(j.find("\"status\":\"pass\"") != std::string::npos);
    CHECK(j.find("\"margin\":") != std::string::npos);
    CHECK(VerificationReport::csv_header() == "claim_id,r,family,margin,pass");
    CHECK(rep.to_csv_row().find("thm1.1,0.5,\"") == 0);
}

TEST_CASE("JSON output re-parses to the exact doubles") {
    const auto rep = verify_main_epi(FamilyDensity::exponential(1.0),
                                     FamilyDensity::laplace_variance(1.0), 0.4);
    const auto j = nlohmann::json::parse(rep.to_json());
    CHECK(j.at("lhs").get<double>() == rep.lhs);
    CHECK(j.at("rhs").get<double>() == rep.rhs);
    CHECK(j.at("margin").get<double>() == rep.margin);
    CHECK(j.at("tolerance").get<double>() == rep.tolerance);
    for (const auto& [key, val] : rep.details) {
        CHECK(j.at("details").at(key).get<double>() == val);
    }

    const auto bundle = ConstantBundle::make(0.37, 3.0);
    const auto bj = nlohmann::json::parse(bundle.to_json());
    CHECK(bj.at("alpha").get<double>() == bundle.alpha);
    CHECK(bj.at("beta").get<double>() == bundle.beta);
    CHECK(bj.at("c_rk_lower").get<double>() == bundle.c_rk);
    CHECK(bj.at("bound_ratio").get<double>() == bundle.bound_ratio);
}

TEST_SUITE_END();
