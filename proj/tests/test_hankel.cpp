#include "oracles.hpp"

#include "pbessel/bumps.hpp"
#include "pbessel/errors.hpp"
#include "pbessel/hankel.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace pbessel;

namespace {

const RadialGrid& default_grid() {
    static const RadialGrid grid = RadialGrid::alias_free(1e-3, 1024);
    return grid;
}

double wnorm(const RadialGrid& grid, const Eigen::VectorXd& v) {
    double s = 0.0;
    for (int j = 0; j < grid.size(); ++j) s += v[j] * v[j] * grid.weight(j);
    return std::sqrt(s);
}

double wrel(const RadialGrid& grid, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return wnorm(grid, a - b) / wnorm(grid, b);
}

Eigen::VectorXd sample(const RadialGrid& grid, const std::function<double(double)>& f) {
    Eigen::VectorXd v(grid.size());
    for (int j = 0; j < grid.size(); ++j) v[j] = f(grid.node(j));
    return v;
}

Bump1D radial_bump(double center = 2.5, double width = 0.25) { return {center, width, BumpShape::gaussian}; }

TimeGrid window() { return TimeGrid(-5.0, 10.0 / 256, 256); }

Bump space_time_bump() {
    Bump b;
    b.time = {0.1, 0.2, BumpShape::gaussian};
    b.space = radial_bump(2.4, 0.26);
    return b;
}

double self_inversion_error(const RadialGrid& grid, double mu, const Bump1D& b) {
    HankelPlan plan(mu, grid);
    const Eigen::VectorXd g = sample(grid, [&](double x) { return b.value(x); });
    return wrel(grid, plan.apply(plan.apply(g)), g);
}

} // namespace

TEST_CASE("alias-free grids are calibrated and coarse grids are rejected") {
    const RadialGrid& grid = default_grid();
    CHECK(grid.size() == 1024);
    CHECK(grid.x_max() * grid.x_max() * grid.log_step() == doctest::Approx(RadialGrid::kDefaultAliasingMargin).epsilon(1e-9));
    for (double nu : {-0.9, -0.5, 0.0, 0.7, 1.0, 2.7, 3.0}) CHECK(grid.calibration_error(nu) <= kCalibrationTolerance);

    const RadialGrid coarse = RadialGrid::log_uniform(0.1, 3.0, 16);
    try {
        HankelPlan plan(0.7, coarse);
        FAIL("expected grid-not-calibrated");
    } catch (const NumericalError& e) {
        CHECK(std::string(e.what()).find("grid-not-calibrated") != std::string::npos);
    }
    CHECK_THROWS_AS(HankelPlan(-1.0, grid), DomainError);
}

TEST_CASE("the self-reciprocal function is a fixed point") {
    const double mu = 0.7;
    auto eig = [mu](double x) { return std::pow(x, mu + 0.5) * std::exp(-0.5 * x * x); };

    // Adaptive quadrature of the defining integral confirms the fixed point independently.
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> pick(0.05, 6.0);
    for (int i = 0; i < 20; ++i) {
        const double x = pick(rng);
        std::vector<double> pts;
        for (double y = 0.0; y <= 12.0; y += 0.25) pts.push_back(y);
        const double direct = oracle::integrate(
            [&](double y) { return std::sqrt(x * y) * std::cyl_bessel_j(mu, x * y) * eig(y); }, pts);
        CHECK(oracle::rel(direct, eig(x)) < 1e-8);
    }

    const RadialGrid& grid = default_grid();
    const Eigen::VectorXd g = sample(grid, eig);
    const double err = wrel(grid, hankel_transform(BesselOrder(mu), g, grid), g);
    MESSAGE("eigenfunction error " << err);
    CHECK(err <= 1e-3);
}

TEST_CASE("self-inversion and isometry on band-limited bumps") {
    const RadialGrid& grid = default_grid();
    for (double mu : {-0.5, 0.0, 0.7, 1.0, 2.5}) {
        for (const Bump& b : bump_suite(3, 4)) {
            HankelPlan plan(mu, grid);
            const Eigen::VectorXd g = sample(grid, [&](double x) { return b.space.value(x); });
            const Eigen::VectorXd hg = plan.apply(g);
            CHECK(wrel(grid, plan.apply(hg), g) <= 1e-3);
            CHECK(std::abs(wnorm(grid, hg) / wnorm(grid, g) - 1.0) <= 2e-3);
        }
    }
}

TEST_CASE("the transform diagonalizes the Bessel operator") {
    const RadialGrid& grid = default_grid();
    for (double mu : {-0.5, 0.7, 1.0, 2.0}) {
        const Bump1D b = radial_bump();
        const double c = mu * mu - 0.25;
        const Eigen::VectorXd phi = sample(grid, [&](double x) { return b.value(x); });
        const Eigen::VectorXd lap = sample(grid, [&](double x) { return b.d2(x) - c * b.value(x) / (x * x); });
        HankelPlan plan(mu, grid);
        Eigen::VectorXd rhs = plan.apply(phi);
        for (int j = 0; j < grid.size(); ++j) rhs[j] *= -grid.node(j) * grid.node(j);
        CHECK(wrel(grid, plan.apply(lap), rhs) <= 5e-3);
    }
}

TEST_CASE("differentiation intertwines neighbouring orders") {
    const RadialGrid& grid = default_grid();
    const double mu = 0.7;
    const Bump1D b = radial_bump();
    const Eigen::VectorXd beta = sample(grid, [&](double x) { return b.value(x); });
    const Eigen::VectorXd z_beta = sample(grid, [&](double x) { return x * b.value(x); });
    const HankelPlan lower(mu, grid);
    const Eigen::VectorXd expected = -HankelPlan(mu + 1.0, grid).apply(z_beta);

    // x^{μ+1/2} ∂_x (x^{−μ−1/2} h(x)) by centered differences of the synthesized transform.
    double num = 0.0;
    double den = 0.0;
    for (int j = 0; j < grid.size(); j += 8) {
        const double x = grid.node(j);
        const double h = std::cbrt(std::numeric_limits<double>::epsilon()) * x;
        const Eigen::VectorXd v = lower.synthesize_at({x - h, x + h}, beta);
        const double p = mu + 0.5;
        const double deriv = (std::pow(x + h, -p) * v[1] - std::pow(x - h, -p) * v[0]) / (2.0 * h);
        const double numeric = std::pow(x, p) * deriv;
        num += (numeric - expected[j]) * (numeric - expected[j]) * grid.weight(j);
        den += expected[j] * expected[j] * grid.weight(j);
    }
    const double err = std::sqrt(num / den);
    MESSAGE("intertwining error " << err);
    CHECK(err <= 5e-3);
}

TEST_CASE("time Fourier transform conventions") {
    const TimeGrid tg(-1.6, 0.05, 64);
    const RadialGrid grid = RadialGrid::log_uniform(0.5, 2.0, 8);

    SUBCASE("round trip") {
        std::mt19937_64 rng(5);
        std::normal_distribution<double> n(0.0, 1.0);
        Field f(tg, grid);
        for (int k = 0; k < f.rows(); ++k) {
            for (int j = 0; j < f.cols(); ++j) f.values(k, j) = cplx(n(rng), n(rng));
        }
        const Field back = inverse_time_fourier(time_fourier(f));
        CHECK((back.values - f.values).cwiseAbs().maxCoeff() <= 1e-12 * f.values.cwiseAbs().maxCoeff());
    }
    SUBCASE("impulse has a flat spectrum") {
        Field f(tg, grid);
        f.values.row(17).setConstant(1.0);
        const SpectralField s = time_fourier(f);
        for (int k = 0; k < s.values.rows(); ++k) {
            CHECK(std::abs(s.values(k, 0)) == doctest::Approx(tg.dt()).epsilon(1e-13));
            // e^{−iρt} with t the impulse time: the forward sign.
            const cplx expect = std::polar(tg.dt(), -tg.frequency(k) * tg.time(17));
            CHECK(std::abs(s.values(k, 0) - expect) <= 1e-13);
        }
    }
    SUBCASE("real even signal has a real spectrum") {
        const Field f = Field::sample(tg, grid, [](double t, double x) { return std::exp(-4.0 * t * t) * x; });
        const SpectralField s = time_fourier(f);
        CHECK(s.values.imag().cwiseAbs().maxCoeff() <= 1e-10 * s.values.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("multiplier values and partition") {
    CHECK(std::abs(multiplier_L(1.0, 0.0) - cplx(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(multiplier_L(0.0, 2.0) - 1.0 / cplx(0.0, 2.0)) < 1e-15);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> z(1e-3, 20.0);
    std::uniform_real_distribution<double> rho(-200.0, 200.0);
    for (int i = 0; i < 1000; ++i) {
        const double zz = z(rng);
        const double rr = rho(rng);
        const cplx mr = multiplier_R(zz, rr);
        const cplx mt = multiplier_Rtilde(zz, rr, RtildeSign::convention);
        CHECK(std::abs(mr + mt - 1.0) <= 4e-16);
        CHECK(std::abs(mr) <= 1.0 + 1e-15);
        CHECK(std::abs(mt) <= 1.0 + 1e-15);
        CHECK(multiplier_Rtilde(zz, rr, RtildeSign::paper) == -mt);
    }
}

TEST_CASE("spectral operators") {
    const SpectralEngine engine(BesselOrder(1.0), default_grid());
    const TimeGrid tg = window();
    const Field zero(tg, default_grid());
    CHECK(engine.op_L(zero).values.cwiseAbs().maxCoeff() == 0.0);
    CHECK(engine.op_R(zero).values.cwiseAbs().maxCoeff() == 0.0);
    CHECK(engine.op_Rtilde(zero).values.cwiseAbs().maxCoeff() == 0.0);

    const Bump b = space_time_bump();
    const Field f = Field::sample(tg, default_grid(), b);
    CHECK_NOTHROW(check_support(f));

    SUBCASE("the time Riesz sign that matches the time derivative of L") {
        const Field u = engine.op_L(f);
        // Fourth-order periodic centered differences in time.
        Field ut(tg, default_grid());
        const int m = tg.size();
        for (int k = 0; k < m; ++k) {
            auto row = [&](int off) { return u.values.row(((k + off) % m + m) % m); };
            ut.values.row(k) = (-row(2) + 8.0 * row(1) - 8.0 * row(-1) + row(-2)) / (12.0 * tg.dt());
        }
        const Field conv = engine.op_Rtilde(f, RtildeSign::convention);
        const Field paper = engine.op_Rtilde(f, RtildeSign::paper);
        const double err_conv = Field(tg, default_grid(), conv.values - ut.values).l2_norm() / f.l2_norm();
        const double err_paper = Field(tg, default_grid(), paper.values - ut.values).l2_norm() / f.l2_norm();
        MESSAGE("R~ vs d/dt L: convention " << err_conv << ", paper " << err_paper);
        CHECK(err_conv <= 5e-2);
        CHECK(err_paper > 0.5);
    }
    SUBCASE("R is bounded on the bump") {
        const double ratio = engine.op_R(f).l2_norm() / f.l2_norm();
        MESSAGE("|R f| / |f| = " << ratio);
        CHECK(ratio <= 1.0 + 2e-3);
    }
}

TEST_CASE("transplantation") {
    const double mu = 0.7;
    const SpectralEngine engine(BesselOrder(mu), default_grid());
    const RadialGrid& grid = default_grid();
    const Bump1D b = radial_bump(2.2, 0.26);
    const Eigen::VectorXd g = sample(grid, [&](double x) { return b.value(x); });

    CHECK(wrel(grid, engine.transplant_adjoint(engine.transplant(g)), g) <= 2e-3);
    CHECK(std::abs(wnorm(grid, engine.transplant(g)) / wnorm(grid, g) - 1.0) <= 2e-3);
    CHECK(wrel(grid, transplant(BesselOrder(mu), g, grid), engine.transplant(g)) == 0.0);

    // S*f decays only like x^{−μ−3/2}, so the grid truncation limits this check to larger orders.
    const TimeGrid tg = window();
    const Field f = Field::sample(tg, grid, space_time_bump());
    for (double order : {1.0, 2.0}) {
        const SpectralEngine lower(BesselOrder(order), grid);
        const SpectralEngine upper(BesselOrder(order + 2.0), grid);
        const Field direct = lower.op_Rtilde(f);
        const Field factored = lower.transplant(upper.op_Rtilde(lower.transplant_adjoint(f)));
        const double err = relative_l2(factored, direct);
        MESSAGE("factorization error at order " << order << ": " << err);
        CHECK(err <= 5e-2);
    }
}

TEST_CASE("support check") {
    const TimeGrid tg = window();
    const Field early = Field::sample(tg, default_grid(), [](double t, double x) {
        return std::exp(-(t + 4.0) * (t + 4.0)) * std::exp(-(x - 2.0) * (x - 2.0) * 8.0);
    });
    CHECK_THROWS_WITH_AS(check_support(early), doctest::Contains("support-violation"), DomainError);
    const Field wide = Field::sample(tg, default_grid(), [](double t, double) { return std::exp(-t * t); });
    CHECK_THROWS_AS(check_support(wide), DomainError);
}

TEST_CASE("refinement at least halves the self-inversion error") {
    const RadialGrid coarse = RadialGrid::alias_free(1e-3, 1024);
    const RadialGrid fine = RadialGrid::alias_free(1e-3, 2048);
    for (const Bump& b : bump_suite(7, 3)) {
        const double e1 = self_inversion_error(coarse, 0.7, b.space);
        const double e2 = self_inversion_error(fine, 0.7, b.space);
        MESSAGE("inversion error " << e1 << " -> " << e2);
        CHECK(e2 <= 0.5 * e1);
    }
}
