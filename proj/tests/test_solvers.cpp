#include "oracles.hpp"

#include "pbessel/analysis.hpp"
#include "pbessel/bumps.hpp"
#include "pbessel/errors.hpp"
#include "pbessel/hankel.hpp"
#include "pbessel/solvers.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace pbessel;

namespace {

Bump bump(double tc, double tw, double xc, double xw) {
    Bump b;
    b.time = {tc, tw, BumpShape::gaussian};
    b.space = {xc, xw, BumpShape::gaussian};
    return b;
}

RadialGrid desk_grid(int n) { return RadialGrid::log_uniform(0.02, 8.0, n); }

/// ∫_ℝ G_τ(x − y) e^{−(y−c)²/(2w²)} dy for the classical heat kernel G.
double smoothed_gaussian(double tau, double x, double c, double w) {
    const double v = w * w + 2.0 * tau;
    return w / std::sqrt(v) * std::exp(-(x - c) * (x - c) / (2.0 * v));
}

Field zero_field(const TimeGrid& tg, const RadialGrid& rg) {
    Field f(tg, rg);
    f.values.setZero();
    return f;
}

Eigen::VectorXd radial_samples(const RadialGrid& rg, const Bump1D& b) {
    Eigen::VectorXd g(rg.size());
    for (int j = 0; j < rg.size(); ++j) g(j) = b.value(rg.node(j));
    return g;
}

} // namespace

TEST_CASE("zero data give zero solutions and reports") {
    const RadialGrid rg = desk_grid(64);
    const BesselOrder mu(1.0);
    const Field zero = zero_field(TimeGrid(-1.0, 0.05, 32), rg);
    CHECK(solve_wholespace(mu, zero).values.cwiseAbs().maxCoeff() == 0.0);

    const Field zero_c = zero_field(TimeGrid(0.0, 0.05, 32), rg);
    const Field u = solve_cauchy({mu, zero_c, Eigen::VectorXd::Zero(rg.size())});
    CHECK(u.values.cwiseAbs().maxCoeff() == 0.0);

    const ResidualReport rep = residual_check(zero, zero, mu);
    CHECK(rep.interior_norm == 0.0);
    CHECK(rep.boundary_layer_norm == 0.0);
    CHECK(rep.relative_interior == 0.0);
    CHECK(rep.dx_min > 0.0);
    CHECK(rep.dx_max > rep.dx_min);

    CHECK(maximal_regularity_ratio(mu, 2.0, 2.0, zero_c).ratio == 0.0);
}

TEST_CASE("support and shape violations are rejected") {
    const RadialGrid rg = desk_grid(64);
    const BesselOrder mu(1.0);
    // Radial bump touching x_max.
    const Field edge = Field::sample(TimeGrid(-1.0, 0.05, 32), rg, bump(0.0, 0.1, 7.9, 0.3));
    CHECK_THROWS_AS(solve_wholespace(mu, edge), DomainError);
    // Forcing already on at the start of the window.
    const Field early = Field::sample(TimeGrid(-1.0, 0.05, 32), rg, bump(-1.0, 0.2, 2.5, 0.26));
    CHECK_THROWS_AS(solve_wholespace(mu, early), DomainError);

    const TimeGrid shifted(0.5, 0.05, 16);
    CHECK_THROWS_AS(solve_cauchy({mu, zero_field(shifted, rg), Eigen::VectorXd::Zero(rg.size())}), DomainError);
    const TimeGrid causal(0.0, 0.05, 16);
    CHECK_THROWS_AS(solve_cauchy({mu, zero_field(causal, rg), Eigen::VectorXd::Zero(3)}), DomainError);
    CHECK_THROWS_AS(maximal_regularity_ratio(mu, 1.0, 2.0, zero_field(causal, rg)), DomainError);
    CHECK_THROWS_AS(residual_check(zero_field(causal, rg), zero_field(TimeGrid(0.0, 0.05, 8), rg), mu),
                    DomainError);
}

TEST_CASE("residual of a manufactured stationary field") {
    for (double m : {-0.5, 0.3, 1.0, 2.0}) {
        const BesselOrder mu(m);
        const RadialGrid rg = desk_grid(257);
        const TimeGrid tg(0.0, 0.05, 16);
        const double a = m + 0.5;
        // u = x^{a} e^{−x²}: Δ_μ u = (4x² − 4a − 2)·u.
        const Field u = Field::sample(tg, rg, [a](double, double x) { return std::pow(x, a) * std::exp(-x * x); });
        const Field f = Field::sample(tg, rg, [a](double, double x) {
            return -(4.0 * x * x - 4.0 * a - 2.0) * std::pow(x, a) * std::exp(-x * x);
        });
        const ResidualReport rep = residual_check(u, f, mu);
        MESSAGE("mu " << m << " relative residual " << rep.relative_interior);
        CHECK(rep.relative_interior < 1e-3);
        CHECK(rep.boundary_layer_norm >= 0.0);
    }
}

TEST_CASE("whole-space residual at moderate resolution and space order") {
    const BesselOrder mu(1.0);
    const Bump b = bump(0.2, 0.2, 2.4, 0.26);
    const TimeGrid tg(-2.5, 5.0 / 256, 256);
    const Field f = Field::sample(tg, desk_grid(256), b);
    const ResidualReport rep = residual_check(solve_wholespace(mu, f), f, mu);
    MESSAGE("relative interior residual " << rep.relative_interior);
    CHECK(rep.relative_interior < 5e-2);

    // Nested radial grids with the same time grid: successive residual differences
    // on the coarse nodes shrink like Δ^p.
    const TimeGrid tc(-2.5, 5.0 / 128, 128);
    std::vector<Field> res;
    for (int n : {128, 256, 512}) {
        const Field fn = Field::sample(tc, desk_grid(n + 1), b);
        res.push_back(residual_field(solve_wholespace(mu, fn), fn, mu));
    }
    const RadialGrid& coarse = res[0].radial;
    const auto diff = [&](int a, int c) {
        double acc = 0.0;
        for (int k = 3; k < tc.size() - 3; ++k) {
            for (int j = 3; j <= 128 - 3; ++j) {
                const double d = res[a].values(k, j << a).real() - res[c].values(k, j << c).real();
                acc += d * d * coarse.weight(j);
            }
        }
        return std::sqrt(acc);
    };
    const double order = std::log2(diff(0, 1) / diff(1, 2));
    MESSAGE("observed space order " << order);
    CHECK(order >= 1.5);
}

TEST_CASE("Neumann case equals the reflected Gaussian convolution") {
    const BesselOrder mu(-0.5);
    const Bump b = bump(0.0, 0.2, 2.4, 0.26);
    const RadialGrid rg = desk_grid(257);
    const TimeGrid tg(-2.0, 0.005, 512);
    const Field u = solve_wholespace(mu, Field::sample(tg, rg, b));

    double worst = 0.0;
    double peak = 0.0;
    for (int k : {300, 400, 480}) {
        for (int j : {150, 180, 200, 215, 230}) {
            const double t = tg.time(k);
            const double x = rg.node(j);
            const auto integrand = [&](double tau) {
                return b.time.value(t - tau) * (smoothed_gaussian(tau, x, b.space.center, b.space.width) +
                                                smoothed_gaussian(tau, -x, b.space.center, b.space.width));
            };
            std::vector<double> pts{0.0, t - b.time.lo()};
            oracle::add_peak(pts, t - b.time.center, b.time.width, 0.0, t - b.time.lo());
            const double ref = oracle::integrate(integrand, pts);
            worst = std::max(worst, std::abs(u.values(k, j).real() - ref));
            peak = std::max(peak, std::abs(ref));
        }
    }
    MESSAGE("relative deviation " << worst / peak);
    CHECK(worst / peak < 1e-4);
}

TEST_CASE("Dirichlet Cauchy evolution equals the odd reflection") {
    const BesselOrder mu(0.5);
    const RadialGrid rg = desk_grid(257);
    const TimeGrid tg(0.0, 0.05, 32);
    const Bump1D g{2.0, 0.3, BumpShape::gaussian};
    const Field u = solve_cauchy({mu, zero_field(tg, rg), radial_samples(rg, g)});
    double worst = 0.0;
    for (int k = 0; k < tg.size(); k += 3) {
        for (int j = 20; j < 240; j += 10) {
            const double t = tg.time(k);
            const double x = rg.node(j);
            const double ref = k == 0 ? g.value(x)
                                      : smoothed_gaussian(t, x, g.center, g.width) -
                                            smoothed_gaussian(t, -x, g.center, g.width);
            worst = std::max(worst, std::abs(u.values(k, j).real() - ref));
        }
    }
    MESSAGE("max deviation " << worst);
    CHECK(worst < 1e-6);
}

TEST_CASE("initial trace converges at first order") {
    const BesselOrder mu(1.0);
    const RadialGrid rg = desk_grid(513);
    const Bump1D g{3.5, 0.5, BumpShape::gaussian};
    const Eigen::VectorXd gv = radial_samples(rg, g);
    std::vector<double> errs;
    for (double t_min : {0.004, 0.002, 0.001, 0.0005}) {
        const TimeGrid tg(0.0, t_min, 2);
        const Field u = solve_cauchy({mu, zero_field(tg, rg), gv});
        errs.push_back((u.values.row(1).real().transpose() - gv).cwiseAbs().maxCoeff());
    }
    for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
        const double order = std::log2(errs[i] / errs[i + 1]);
        MESSAGE("trace error " << errs[i + 1] << " order " << order);
        CHECK(order >= 0.95);
    }
}

TEST_CASE("Cauchy residual, small-time bound and positivity") {
    const BesselOrder mu(1.0);
    const RadialGrid rg = desk_grid(256);
    const TimeGrid tg(0.0, 4.0 / 256, 256);
    const Bump b = bump(0.8, 0.2, 2.4, 0.26);
    const Bump1D g{2.8, 0.3, BumpShape::gaussian};
    const Field f = Field::sample(tg, rg, b);
    const Field u = solve_cauchy({mu, f, radial_samples(rg, g)});
    const ResidualReport rep = residual_check(u, f, mu);
    MESSAGE("Cauchy relative residual " << rep.relative_interior);
    CHECK(rep.relative_interior < 5e-2);
    CHECK(u.values.real().minCoeff() > -1e-14);

    // Forced part of a datum that is on at t = 0: |u₁(t)| ≤ t‖f‖_∞ since
    // the semigroup is sub-Markovian for μ ≥ 1/2.
    const Field f0 = Field::sample(tg, rg, bump(0.0, 0.3, 2.4, 0.26));
    const Field u1 = solve_cauchy({mu, f0, Eigen::VectorXd::Zero(rg.size())});
    const double fmax = f0.values.cwiseAbs().maxCoeff();
    for (int k = 1; k <= 8; ++k) {
        const double bound = u1.values.row(k).cwiseAbs().maxCoeff() / (tg.time(k) * fmax);
        CHECK(bound <= 1.0 + 1e-6);
        CHECK(bound > 0.5);
    }
}

TEST_CASE("linearity and causality") {
    const BesselOrder mu(0.3);
    const RadialGrid rg = desk_grid(128);
    const TimeGrid tg(0.0, 0.04, 64);
    const Field f1 = Field::sample(tg, rg, bump(0.6, 0.2, 2.2, 0.26));
    const Field f2 = Field::sample(tg, rg, bump(1.2, 0.25, 2.9, 0.27));
    const Eigen::VectorXd g1 = radial_samples(rg, {2.5, 0.3, BumpShape::gaussian});
    const Eigen::VectorXd g2 = radial_samples(rg, {2.0, 0.25, BumpShape::gaussian});
    const double a = 1.7;
    const double c = -0.4;
    Field combo(tg, rg, a * f1.values + c * f2.values);
    const Field u1 = solve_cauchy({mu, f1, g1});
    const Field u2 = solve_cauchy({mu, f2, g2});
    const Field u = solve_cauchy({mu, combo, a * g1 + c * g2});
    const double scale = u.values.cwiseAbs().maxCoeff();
    CHECK((u.values - a * u1.values - c * u2.values).cwiseAbs().maxCoeff() < 1e-13 * scale);

    // Changing f after t_k leaves rows up to k untouched.
    const int k = 30;
    Field later = f1;
    later.values.bottomRows(tg.size() - k - 1).middleCols(10, rg.size() - 20).setRandom();
    const Field ul = solve_cauchy({mu, later, g1});
    CHECK((ul.values.topRows(k + 1) - u1.values.topRows(k + 1)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("whole-space solution grows like x^{mu+1/2} near the origin") {
    for (double m : {-0.5, 0.3, 1.0}) {
        const BesselOrder mu(m);
        const RadialGrid rg = desk_grid(200);
        const TimeGrid tg(-1.5, 0.05, 64);
        const Field f = Field::sample(tg, rg, bump(0.0, 0.2, 2.0, 0.26));
        const Field u = solve_wholespace(mu, f);
        const double fmax = f.values.cwiseAbs().maxCoeff();
        double c_max = 0.0;
        for (int k = 0; k < tg.size(); ++k) {
            for (int j = 0; j < rg.size(); ++j) {
                c_max = std::max(c_max, std::abs(u.values(k, j)) / (fmax * std::pow(rg.node(j), m + 0.5)));
            }
        }
        MESSAGE("mu " << m << " empirical constant " << c_max);
        CHECK(std::isfinite(c_max));
        CHECK(c_max < 50.0);
    }
}

TEST_CASE("agreement with the spectral inverse on a periodic window") {
    // The spectral operator is periodic in time; folding the causal solution of a
    // long window onto one period reproduces it. A forcing with zero time
    // integral keeps the folded tail short.
    const BesselOrder mu(1.0);
    const RadialGrid rg = RadialGrid::alias_free(1e-3, 512);
    const int m = 128;
    const double width = 10.0;
    const int periods = 4;
    const Bump b = bump(0.2, 0.2, 2.4, 0.26);
    const auto forcing = [&](double t, double x) {
        return t >= width / 2 ? 0.0 : b.time.d1(t) * b.space.value(x);
    };
    const TimeGrid tg(-width / 2, width / m, m);
    const TimeGrid tl(-width / 2, width / m, periods * m);
    const Field ul = solve_wholespace(mu, Field::sample(tl, rg, forcing));
    Field folded(tg, rg);
    folded.values.setZero();
    for (int k = 0; k < tl.size(); ++k) folded.values.row(k % m) += ul.values.row(k);
    const Field spectral = op_L(mu, Field::sample(tg, rg, forcing));
    const double err = relative_l2(folded, spectral);
    MESSAGE("folded vs spectral " << err);
    CHECK(err < 5e-2);
}

TEST_CASE("maximal regularity ratio") {
    BumpRanges br;
    br.t_center_lo = 1.2;
    br.t_center_hi = 1.8;
    const std::vector<Bump> suite = bump_suite(11, 2, br);
    for (double m : {0.2, 1.0}) {
        const BesselOrder mu(m);
        for (const Bump& b : suite) {
            std::vector<double> ratios;
            for (int n : {128, 256}) {
                const Field f = Field::sample(TimeGrid(0.0, 6.0 / n, n), desk_grid(n), b);
                const MaxRegResult r = maximal_regularity_ratio(mu, 3.0, 1.5, f);
                CHECK(r.hypothesis_ok);
                ratios.push_back(r.ratio);
            }
            MESSAGE("mu " << m << " ratios " << ratios[0] << " " << ratios[1]);
            CHECK(std::isfinite(ratios[1]));
            CHECK(std::abs(ratios[1] - ratios[0]) <= 0.1 * ratios[1]);
        }
    }
    const Field f = Field::sample(TimeGrid(0.0, 6.0 / 64, 64), desk_grid(64), suite[0]);
    const MaxRegResult outside = maximal_regularity_ratio(BesselOrder(-0.7), 2.0, 2.0, f);
    CHECK_FALSE(outside.hypothesis_ok);
    CHECK(outside.ratio > 0.0);
}
