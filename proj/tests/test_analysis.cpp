#include "oracles.hpp"

#include "pbessel/analysis.hpp"
#include "pbessel/bumps.hpp"
#include "pbessel/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <tuple>

using namespace pbessel;

namespace {

constexpr double kPi = std::numbers::pi;

Bump bump(double tc, double tw, double xc, double xw) {
    Bump b;
    b.time = {tc, tw, BumpShape::gaussian};
    b.space = {xc, xw, BumpShape::gaussian};
    return b;
}

Field gaussian_field(int n = 512) {
    return Field::sample(TimeGrid(-8.0, 16.0 / 256, 256), RadialGrid::log_uniform(0.02, 8.0, n), bump(0.0, 1.0, 3.0, 0.5));
}

/// (1/|B|∫_B w)((1/|B|)∫_B w^{−1/(p−1)})^{p−1} by a midpoint sum over the ball in (y, (s − t)/h(y)).
double brute_ap(const WeightSpec& w, double p, const ParabolicBall& b, int n = 600) {
    const double y_lo = std::max(0.0, b.x - b.r);
    const double y_hi = b.x + b.r;
    double vol = 0.0, iw = 0.0, id = 0.0;
    for (int i = 0; i < n; ++i) {
        const double y = y_lo + (y_hi - y_lo) * (i + 0.5) / n;
        const double h = std::pow(b.r - std::abs(b.x - y), 2);
        for (int k = 0; k < n; ++k) {
            const double s = b.t + h * (-1.0 + 2.0 * (k + 0.5) / n);
            const double cell = (y_hi - y_lo) / n * 2.0 * h / n;
            const double v = w(s, y);
            vol += cell;
            iw += v * cell;
            id += std::pow(v, -1.0 / (p - 1.0)) * cell;
        }
    }
    return iw / vol * std::pow(id / vol, p - 1.0);
}

} // namespace

TEST_CASE("lp_norm matches closed-form Gaussian integrals") {
    const Field f = gaussian_field();
    // ∫ e^{−t²/2 ·p} dt · ∫ e^{−(x−3)²/(2·0.25)·p} dx, both to the power 1/p.
    for (double p : {1.0, 2.0, 3.5}) {
        const double exact = std::pow(std::sqrt(2.0 * kPi / p) * 0.5 * std::sqrt(2.0 * kPi / p), 1.0 / p);
        CHECK(oracle::rel(lp_norm(f, p), exact) < 1e-6);
    }
    // Weight x: ∫ x e^{−(x−3)²/0.25} dx = 3·0.5·√π.
    const double weighted = std::sqrt(std::sqrt(kPi) * 3.0 * 0.5 * std::sqrt(kPi));
    CHECK(oracle::rel(lp_norm(f, 2.0, WeightSpec::spatial(1.0)), weighted) < 1e-6);
    // The same with an off-center weight against adaptive quadrature.
    const double space = oracle::integrate([](double x) { return x * std::exp(-(x - 3.0) * (x - 3.0) / 0.25); },
                                           {0.02, 1.0, 2.0, 3.0, 4.0, 5.0, 8.0});
    CHECK(oracle::rel(lp_norm(f, 2.0, WeightSpec::spatial(1.0)), std::sqrt(std::sqrt(kPi) * space)) < 1e-6);
    CHECK(lp_norm(f, INFINITY) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("p = 1 norm of a unit cell is its measure") {
    const RadialGrid rg = RadialGrid::log_uniform(0.1, 10.0, 64);
    const TimeGrid tg(0.0, 0.25, 16);
    Field f(tg, rg);
    f.values.setZero();
    f.values(3, 20) = 1.0;
    CHECK(lp_norm(f, 1.0) == doctest::Approx(rg.weight(20) * 0.25));
    CHECK(lp_norm(f, 7.0) == doctest::Approx(std::pow(rg.weight(20) * 0.25, 1.0 / 7.0)));
}

TEST_CASE("norms are homogeneous and subadditive") {
    const Field f = gaussian_field(256);
    Field g = Field::sample(f.time, f.radial, bump(1.0, 0.7, 2.0, 0.3));
    Field sum = f;
    sum.values += g.values;
    Field scaled = f;
    scaled.values *= -3.0;
    for (double p : {1.0, 1.5, 2.0, 4.0}) {
        CHECK(lp_norm(scaled, p) == doctest::Approx(3.0 * lp_norm(f, p)));
        CHECK(lp_norm(sum, p) <= lp_norm(f, p) + lp_norm(g, p) + 1e-12);
        CHECK(mixed_norm(sum, p, 2.0) <= mixed_norm(f, p, 2.0) + mixed_norm(g, p, 2.0) + 1e-12);
    }
    Field zero = f;
    zero.values.setZero();
    CHECK(lp_norm(zero, 2.0) == 0.0);
    CHECK_THROWS_AS(lp_norm(f, 0.5), DomainError);
}

TEST_CASE("mixed norm of a separable field factorizes") {
    const Field f = gaussian_field();
    for (auto [q, p] : {std::pair{2.0, 2.0}, std::pair{3.0, 1.5}, std::pair{1.2, 4.0}}) {
        const double time_part = std::pow(std::sqrt(2.0 * kPi / q), 1.0 / q);
        const double space_part = std::pow(0.5 * std::sqrt(2.0 * kPi / p), 1.0 / p);
        CHECK(oracle::rel(mixed_norm(f, q, p), time_part * space_part) < 1e-4);
    }
    CHECK(oracle::rel(mixed_norm(f, 2.5, 2.5), lp_norm(f, 2.5)) < 1e-12);
}

TEST_CASE("mixed norm of a rough field is stable under refinement") {
    // Random smooth-ish field: a sum of random bumps, resolved on two nested grids.
    const std::vector<Bump> suite = bump_suite(11, 6);
    const auto sum = [&](double t, double x) {
        double v = 0.0;
        for (const Bump& b : suite) v += b(t, x);
        return v;
    };
    const Field coarse = Field::sample(TimeGrid(-2.0, 4.0 / 64, 64), RadialGrid::log_uniform(0.3, 8.0, 128), sum);
    const Field fine = Field::sample(TimeGrid(-2.0, 4.0 / 128, 128), RadialGrid::log_uniform(0.3, 8.0, 256), sum);
    CHECK(oracle::rel(mixed_norm(coarse, 3.0, 2.0), mixed_norm(fine, 3.0, 2.0)) < 0.02);
}

TEST_CASE("A_p of the constant weight is one") {
    const std::vector<ParabolicBall> balls{{0.0, 1.0, 0.5}, {3.0, 0.2, 1.0}, {-2.0, 50.0, 10.0}};
    for (double p : {1.0, 1.5, 2.0, 6.0}) {
        CHECK(ap_constant(WeightSpec::unweighted(), p, balls) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("A_p quotients agree with brute-force ball sums") {
    const ParabolicBall away{0.0, 2.0, 1.5};
    CHECK(oracle::rel(ap_constant(WeightSpec::spatial(0.5), 2.0, {away}), brute_ap(WeightSpec::spatial(0.5), 2.0, away)) <
          1e-3);
    const ParabolicBall timed{0.3, 1.0, 1.0};
    CHECK(oracle::rel(ap_constant(WeightSpec::temporal(0.5), 3.0, {timed}),
                      brute_ap(WeightSpec::temporal(0.5), 3.0, timed)) < 2e-3);
    const ParabolicBall parab{0.2, 1.0, 0.9};
    CHECK(oracle::rel(ap_constant(WeightSpec::parabolic(0.7), 2.0, {parab}),
                      brute_ap(WeightSpec::parabolic(0.7), 2.0, parab)) < 2e-3);
}

TEST_CASE("power weights: scale invariance, monotonicity in p and divergence") {
    // Balls touching the origin are mapped onto each other by parabolic dilations.
    const WeightSpec w = WeightSpec::spatial(0.5);
    const double a1 = ap_constant(w, 2.0, {{0.0, 1.0, 1.0}});
    const double a2 = ap_constant(w, 2.0, {{0.0, 100.0, 100.0}});
    CHECK(a1 == doctest::Approx(a2).epsilon(1e-6));
    CHECK(std::isfinite(a1));
    CHECK(a1 > 1.0);

    const std::vector<ParabolicBall> balls{{0.0, 1.0, 1.0}, {0.0, 1.0, 0.3}, {1.0, 4.0, 2.0}};
    double previous = INFINITY;
    for (double p : {1.0, 1.5, 2.0, 3.0, 8.0}) {
        const double a = ap_constant(w, p, balls);
        CHECK(a <= previous * (1.0 + 1e-9));
        previous = a;
    }

    CHECK(std::isinf(ap_constant(WeightSpec::spatial(-1.0), 2.0, {{0.0, 1.0, 1.0}})));
    CHECK(std::isinf(ap_constant(WeightSpec::spatial(1.5), 2.0, {{0.0, 1.0, 1.0}})));
    CHECK(std::isinf(ap_constant(WeightSpec::temporal(-1.2), 2.0, {{0.0, 1.0, 1.0}})));
    CHECK(std::isfinite(ap_constant(WeightSpec::spatial(-1.0), 2.0, {{0.0, 3.0, 1.0}})));
    CHECK(WeightSpec::spatial(0.5).admissible(2.0));
    CHECK_FALSE(WeightSpec::spatial(1.5).admissible(2.0));
}

TEST_CASE("A_p of x^0.5 over many random balls is finite and stable") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<ParabolicBall> balls;
    for (int i = 0; i < 10000; ++i) {
        const double r = std::pow(10.0, -2.0 + 4.0 * unit(rng));
        const double x = r * std::pow(10.0, -2.0 + 4.0 * unit(rng));
        balls.push_back({20.0 * unit(rng) - 10.0, x, r});
    }
    const WeightSpec w = WeightSpec::spatial(0.5);
    const double head = ap_constant(w, 2.0, {balls.begin(), balls.begin() + 1000});
    const double all = ap_constant(w, 2.0, balls);
    CHECK(std::isfinite(all));
    CHECK(all <= 1.2 * head);
}

TEST_CASE("Calderon-Zygmund ratios stay bounded and are reproducible") {
    const BesselOrder mu(1.0);
    const CZReport rep = cz_verify(mu, RieszKernel::space, 20000);
    CHECK_FALSE(rep.report_only);
    CHECK(rep.stable());
    for (int k = 0; k < CZReport::kind_count; ++k) {
        CHECK(std::isfinite(rep.sup[k]));
        CHECK(rep.quantiles[k][0] <= rep.quantiles[k][1]);
        CHECK(rep.quantiles[k][2] <= rep.quantiles[k][3]);
        CHECK(rep.quantiles[k][3] == rep.sup[k]);
    }
    CZOptions two;
    two.workers = 2;
    const CZReport again = cz_verify(mu, RieszKernel::space, 20000, two);
    for (int k = 0; k < CZReport::kind_count; ++k) CHECK(again.sup[k] == rep.sup[k]);

    CHECK(cz_verify(BesselOrder(0.0), RieszKernel::time, 1000).report_only);
    CHECK_FALSE(cz_verify(BesselOrder(-0.5), RieszKernel::time, 1000).report_only);
    CHECK_THROWS_AS(cz_verify(mu, RieszKernel::space, 5), DomainError);
}

TEST_CASE("sweep separates bounded and growing cells") {
    SweepOptions opt;
    opt.suite_size = 4;
    const RegionSweep rt = opnorm_sweep(SweepOperator::time_riesz, {-0.8, 1.0}, {0.1, 0.5, 0.9}, opt);
    CHECK(rt.at(0, 1).verdict == Verdict::bounded);
    CHECK(rt.at(0, 2).verdict == Verdict::growing);
    // Duality: 1/p and 1 − 1/p behave alike.
    CHECK(rt.at(0, 0).verdict == Verdict::growing);
    CHECK(rt.at(0, 0).last_step_growth == doctest::Approx(rt.at(0, 2).last_step_growth).epsilon(0.05));
    CHECK(rt.at(1, 1).verdict == Verdict::bounded);
    CHECK(rt.at(1, 2).verdict == Verdict::bounded);
    CHECK(rt.at(0, 2).norms.back() > 5.0 * rt.at(0, 2).norms.front());

    const RegionSweep r = opnorm_sweep(SweepOperator::space_riesz, {-0.8}, {0.5}, opt);
    CHECK(r.at(0, 0).verdict == Verdict::bounded);
    CHECK_THROWS_AS(opnorm_sweep(SweepOperator::space_riesz, {1.0}, {1.0}, opt), DomainError);
}

TEST_CASE("weak-type profile obeys the Chebyshev bound") {
    const RadialGrid rg = RadialGrid::alias_free(1e-3, 700);
    const Field f = Field::sample(TimeGrid(-20.0, 40.0 / 64, 64), rg, bump(0.0, 2.0, 2.5, 0.45));
    const BesselOrder mu(1.0);
    const std::vector<double> lambdas{1e-3, 1e-2, 0.05, 0.1, 0.3};
    const WeakProfile prof = weak_l1_profile(SweepOperator::time_riesz, mu, f, lambdas);
    const double tf1 = lp_norm(apply_operator(SweepOperator::time_riesz, mu, f), 1.0);
    REQUIRE(prof.values.size() == lambdas.size());
    for (double v : prof.values) CHECK(v <= tf1 * (1.0 + 1e-12));
    CHECK(prof.ratio > 0.0);
    CHECK(prof.ratio <= tf1 / lp_norm(f, 1.0) * (1.0 + 1e-12));

    const double top = apply_operator(SweepOperator::time_riesz, mu, f).values.cwiseAbs().maxCoeff();
    CHECK(weak_l1_profile(SweepOperator::time_riesz, mu, f, {1.01 * top}).values[0] == 0.0);

    Field zero = f;
    zero.values.setZero();
    const WeakProfile none = weak_l1_profile(SweepOperator::time_riesz, mu, zero, lambdas);
    CHECK(none.ratio == 0.0);
    for (double v : none.values) CHECK(v == 0.0);
}

TEST_CASE("weak-type ratio is stable under refinement") {
    const BesselOrder mu(1.0);
    std::vector<double> lambdas;
    for (int i = 0; i < 40; ++i) lambdas.push_back(std::pow(10.0, -4.0 + 0.1 * i));
    std::vector<double> ratios;
    for (auto [x_min, n, m] : {std::tuple{1e-3, 700, 64}, std::tuple{1e-4, 1100, 128}}) {
        const RadialGrid rg = RadialGrid::alias_free(x_min, n);
        double worst = 0.0;
        for (const Bump& b : bump_suite(5, 4, SweepOptions::default_ranges())) {
            const Field f = Field::sample(TimeGrid(-20.0, 40.0 / m, m), rg, b);
            worst = std::max(worst, weak_l1_profile(SweepOperator::time_riesz, mu, f, lambdas).ratio);
        }
        ratios.push_back(worst);
    }
    CHECK(oracle::rel(ratios[1], ratios[0]) < 0.05);
}

TEST_CASE("region classification") {
    using enum RegionClass;
    CHECK(classify_region(SweepOperator::time_riesz, 1.0, 0.9) == interior);
    CHECK(classify_region(SweepOperator::time_riesz, -0.8, 0.5) == interior);
    CHECK(classify_region(SweepOperator::time_riesz, -0.8, 0.1) == exterior);
    CHECK(classify_region(SweepOperator::time_riesz, -0.8, 0.9) == exterior);
    CHECK(classify_region(SweepOperator::time_riesz, -0.75, 0.25) == boundary);
    CHECK(classify_region(SweepOperator::space_riesz, -0.8, 0.1) == interior);
    CHECK(classify_region(SweepOperator::space_riesz, -0.8, 0.9) == exterior);
    CHECK(classify_region(SweepOperator::space_riesz, -0.75, 0.75) == boundary);
    CHECK(classify_region(SweepOperator::transplantation, 1.0, 0.5) == unknown);
}
