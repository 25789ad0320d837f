#include "repi/renyi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace repi {

namespace {

constexpr double kSupportThreshold = 1e-12; // relative, for the r = 0 support length

double shannon_entropy(const GridDensity& g) {
    double s = 0.0;
    for (double v : g.values) {
        if (v > 0.0) s += v * std::log(v);
    }
    const double v0 = g.values.front(), v1 = g.values.back();
    if (v0 > 0.0) s -= 0.5 * v0 * std::log(v0);
    if (v1 > 0.0) s -= 0.5 * v1 * std::log(v1);
    return -s * g.h();
}

double max_value(const GridDensity& g) {
    double m = 0.0;
    for (double v : g.values) m = std::max(m, v);
    return m;
}

} // namespace

double renyi_integral(const GridDensity& g, double r) {
    if (!(r > 0.0)) throw std::domain_error("renyi_integral: r must be positive");
    double s = 0.0;
    for (double v : g.values) {
        if (v > 0.0) s += std::exp(r * std::log(v));
    }
    const double v0 = g.values.front(), v1 = g.values.back();
    if (v0 > 0.0) s -= 0.5 * std::exp(r * std::log(v0));
    if (v1 > 0.0) s -= 0.5 * std::exp(r * std::log(v1));
    return s * g.h();
}

EntropyPowerValue renyi_entropy_power(const GridDensity& g, RenyiOrder order) {
    const double mx = max_value(g);
    if (mx <= 0.0) throw std::invalid_argument("renyi_entropy_power: degenerate grid");
    EntropyPowerValue out;
    out.r = order;
    out.n_dim = 1;

    if (order.is_zero()) {
        const double thr = kSupportThreshold * mx;
        std::size_t first = 0, last = g.n() - 1;
        while (g.values[first] <= thr) ++first;
        while (g.values[last] <= thr) --last;
        const double len = g.h() * static_cast<double>(last - first);
        out.value = len * len;
        out.method = EntropyMethod::limit;
        return out;
    }
    if (order.is_infinite()) {
        out.value = 1.0 / (mx * mx);
        out.method = EntropyMethod::limit;
        return out;
    }
    if (std::abs(order.r - 1.0) < 1e-6) {
        // the 2/(1-r) exponent amplifies quadrature noise without bound, so
        // inside this band the Shannon value stands in for the limit
        out.value = std::exp(2.0 * shannon_entropy(g));
        out.method = order.is_shannon() ? EntropyMethod::grid_quadrature : EntropyMethod::limit;
        return out;
    }
    const double integral = renyi_integral(g, order.r);
    out.value = std::exp(2.0 / (1.0 - order.r) * std::log(integral));
    out.method = EntropyMethod::grid_quadrature;
    return out;
}

EntropyPowerValue closed_form_entropy_power(const FamilyDensity& f, double r, int n_dim) {
    if (!(r > 0.0 && r < 1.0)) {
        throw std::domain_error("closed_form_entropy_power: r must lie in (0,1)");
    }
    if (!f.has_closed_forms()) {
        throw std::invalid_argument("closed_form_entropy_power: unsupported family");
    }
    EntropyPowerValue out;
    out.r = RenyiOrder(r);
    out.n_dim = n_dim;
    out.method = EntropyMethod::closed_form;
    out.value = std::exp(2.0 / (1.0 - r) * std::log(f.renyi_integral(r)));
    return out;
}

namespace {

VerificationReport fmw_report(double Np, double Nq, double p, double q, double tol,
                              const std::string& inputs) {
    VerificationReport rep;
    rep.claim_id = "lem2.2";
    rep.inputs = inputs;
    // the comparison factor p^{2/(p-1)} / q^{2/(q-1)}
    const double factor = std::exp(2.0 / (p - 1.0) * std::log(p) - 2.0 / (q - 1.0) * std::log(q));
    const double gap_monotone = Np - Nq;        // N_q <= N_p
    const double gap_reverse = factor * Nq - Np; // N_p <= factor N_q
    rep.lhs = Np;
    rep.rhs = Nq;
    rep.margin = std::min(gap_monotone, gap_reverse);
    rep.tolerance = tol;
    rep.details["gap_monotone"] = gap_monotone;
    rep.details["gap_reverse"] = gap_reverse;
    rep.details["comparison_factor"] = factor;
    rep.judge();
    return rep;
}

} // namespace

VerificationReport fmw_comparison_check(const GridDensity& g, double p, double q, double tol) {
    if (!(p > 0.0 && p < q)) throw std::invalid_argument("fmw_comparison_check: need 0 < p < q");
    std::ostringstream is;
    is << "grid density, p=" << p << " q=" << q;
    if (!is_log_concave(g, 1e-6)) {
        VerificationReport rep;
        rep.claim_id = "lem2.2";
        rep.inputs = is.str() + " (input not log-concave)";
        rep.status = CheckStatus::precondition_violated;
        return rep;
    }
    const double Np = renyi_entropy_power(g, RenyiOrder(p)).value;
    const double Nq = renyi_entropy_power(g, RenyiOrder(q)).value;
    VerificationReport rep = fmw_report(Np, Nq, p, q, tol, is.str());
    rep.numerics.grid_points = static_cast<double>(g.n());
    rep.numerics.spacing = g.h();
    return rep;
}

VerificationReport fmw_comparison_check(const FamilyDensity& f, double p, double q, double tol) {
    if (!(p > 0.0 && p < q)) throw std::invalid_argument("fmw_comparison_check: need 0 < p < q");
    const double Np = closed_form_entropy_power(f, p).value;
    const double Nq = closed_form_entropy_power(f, q).value;
    VerificationReport rep = fmw_report(Np, Nq, p, q, tol, f.describe());
    rep.family = f.describe();
    return rep;
}

namespace {

VerificationReport phi_report(const std::vector<double>& log_phi,
                              const std::vector<double>& t_grid, double slack,
                              const std::string& inputs) {
    VerificationReport rep;
    rep.claim_id = "thmA.1";
    rep.inputs = inputs;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < log_phi.size(); ++i) {
        const double second_diff = log_phi[i - 1] + log_phi[i + 1] - 2.0 * log_phi[i];
        worst = std::max(worst, second_diff);
    }
    rep.lhs = slack;
    rep.rhs = worst;
    rep.margin = slack - worst; // concavity: every second difference <= slack
    rep.tolerance = 0.0;
    rep.details["max_second_difference"] = worst;
    rep.details["t_min"] = t_grid.front();
    rep.details["t_max"] = t_grid.back();
    rep.judge();
    return rep;
}

void validate_t_grid(const std::vector<double>& t_grid) {
    if (t_grid.size() < 3) throw std::invalid_argument("phi check: need at least 3 t values");
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > 0.0)) throw std::invalid_argument("phi check: t values must be positive");
        if (i > 0 && !(t_grid[i] > t_grid[i - 1])) {
            throw std::invalid_argument("phi check: t grid must be increasing");
        }
    }
}

} // namespace

VerificationReport phi_log_concavity_check(const GridDensity& g, const std::vector<double>& t_grid,
                                           double slack) {
    validate_t_grid(t_grid);
    if (!is_log_concave(g, 1e-6)) {
        VerificationReport rep;
        rep.claim_id = "thmA.1";
        rep.inputs = "grid density (input not log-concave)";
        rep.status = CheckStatus::precondition_violated;
        return rep;
    }
    std::vector<double> lp;
    lp.reserve(t_grid.size());
    for (double t : t_grid) lp.push_back(std::log(t) + std::log(renyi_integral(g, t)));
    VerificationReport rep = phi_report(lp, t_grid, slack, "grid density");
    rep.numerics.grid_points = static_cast<double>(g.n());
    rep.numerics.spacing = g.h();
    return rep;
}

VerificationReport phi_log_concavity_check(const FamilyDensity& f,
                                           const std::vector<double>& t_grid, double slack) {
    validate_t_grid(t_grid);
    std::vector<double> lp;
    lp.reserve(t_grid.size());
    for (double t : t_grid) lp.push_back(std::log(t) + std::log(f.renyi_integral(t)));
    VerificationReport rep = phi_report(lp, t_grid, slack, f.describe());
    rep.family = f.describe();
    return rep;
}

} // namespace repi
