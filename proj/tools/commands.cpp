#include "commands.hpp"

#include "pbessel/analysis.hpp"
#include "pbessel/bumps.hpp"
#include "pbessel/errors.hpp"
#include "pbessel/hankel.hpp"
#include "pbessel/kernels.hpp"
#include "pbessel/pv_singular.hpp"
#include "pbessel/solvers.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

namespace pbessel::cli {

namespace {

using nlohmann::json;

std::string num(double v) { return format_number(v); }

double rel_error(double a, double b) { return b == 0.0 ? std::abs(a) : std::abs(a - b) / std::abs(b); }

Check at_most(const std::string& name, double value, double tolerance) {
    return {name, value, tolerance, value <= tolerance};
}

Check at_least(const std::string& name, double value, double tolerance) {
    return {name, value, tolerance, value >= tolerance};
}

BesselOrder order_from(const RunConfig& c) {
    try {
        return BesselOrder(c.number("mu"));
    } catch (const DomainError& e) {
        throw ConfigError(std::string("config: key 'mu': ") + e.what());
    }
}

/// ∫ over consecutive breakpoints; tanh-sinh copes with integrable endpoint singularities.
template <class F>
double integrate(F f, std::vector<double> pts) {
    static boost::math::quadrature::tanh_sinh<double> ts(15);
    std::sort(pts.begin(), pts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (pts[i + 1] > pts[i]) total += ts.integrate(f, pts[i], pts[i + 1], 1e-13);
    }
    return total;
}

void peak_points(std::vector<double>& pts, double c, double w, double hi) {
    for (double k : {-8.0, -3.0, -1.0, 0.0, 1.0, 3.0, 8.0}) pts.push_back(std::clamp(c + k * w, 0.0, hi));
}

// ---------------------------------------------------------------------------

RunResult kernel_check(const RunConfig& c, const RunContext&) {
    const BesselOrder mu = order_from(c);
    const long samples = c.integer("samples", 1);
    std::mt19937_64 rng(static_cast<std::uint64_t>(c.integer("seed", 0)));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto log_uniform = [&](double lo, double hi) { return lo * std::pow(hi / lo, unit(rng)); };

    RunResult r;
    r.csv_name = "kernel_check.csv";
    r.csv = CsvWriter({"check", "t", "x", "y", "value", "reference", "rel_error"});
    const auto record = [&](const std::string& check, double t, double x, double y, double v, double ref) {
        const double e = rel_error(v, ref);
        r.csv.row({check, num(t), num(x), num(y), num(v), num(ref), num(e)});
        return e;
    };

    const double g_norm = 1.0 / std::sqrt(4.0 * std::numbers::pi);
    const auto gauss = [&](double t, double z) { return g_norm / std::sqrt(t) * std::exp(-z * z / (4.0 * t)); };
    double sym = 0.0;
    double reduction = 0.0;
    for (long i = 0; i < samples; ++i) {
        const double t = log_uniform(1e-3, 10.0);
        const double x = log_uniform(1e-3, 10.0);
        const double y = log_uniform(1e-3, 10.0);
        const double w = heat_kernel_bessel(mu, t, x, y);
        sym = std::max(sym, record("symmetry", t, x, y, w, heat_kernel_bessel(mu, t, y, x)));
        double ref = 0.0;
        if (mu.is_neumann()) {
            ref = gauss(t, x - y) + gauss(t, x + y);
        } else if (mu.is_dirichlet()) {
            ref = gauss(t, x - y) * -std::expm1(-x * y / t);
        } else {
            continue;
        }
        if (ref > 1e-300) reduction = std::max(reduction, record("reflection", t, x, y, w, ref));
    }
    r.checks.push_back(at_most("symmetry", sym, 1e-12));
    if (mu.is_neumann() || mu.is_dirichlet()) r.checks.push_back(at_most("reflection_formula", reduction, 1e-12));

    double ck = 0.0;
    double mass = 0.0;
    const double power = mu.mu() + 0.5;
    for (int i = 0; i < 20; ++i) {
        const double t = log_uniform(0.02, 2.0);
        const double s = log_uniform(0.02, 2.0);
        const double x = log_uniform(0.1, 4.0);
        const double y = log_uniform(0.1, 4.0);
        const double hi = std::max(x, y) + 60.0 * std::sqrt(std::max(t, s));
        std::vector<double> pts{0.0, 1e-4, 1e-2, hi};
        peak_points(pts, x, std::sqrt(t), hi);
        peak_points(pts, y, std::sqrt(s), hi);
        const double lhs = integrate(
            [&](double z) { return z > 0 ? heat_kernel_bessel(mu, t, x, z) * heat_kernel_bessel(mu, s, z, y) : 0.0; },
            pts);
        ck = std::max(ck, record("chapman_kolmogorov", t + s, x, y, lhs, heat_kernel_bessel(mu, t + s, x, y)));

        std::vector<double> mpts{0.0, 1e-4, 1e-2, hi};
        peak_points(mpts, x, std::sqrt(t), hi);
        const double m = integrate(
            [&](double z) { return z > 0 ? heat_kernel_bessel(mu, t, x, z) * std::pow(z, power) : 0.0; }, mpts);
        mass = std::max(mass, record("mass", t, x, 0.0, m, std::pow(x, power)));
    }
    r.checks.push_back(at_most("chapman_kolmogorov", ck, 1e-7));
    r.checks.push_back(at_most("mass_identity", mass, 1e-8));
    r.summary = {{"samples", samples}, {"symmetry", sym}, {"chapman_kolmogorov", ck}, {"mass_identity", mass}};
    if (mu.is_neumann() || mu.is_dirichlet()) r.summary["reflection_formula"] = reduction;
    return r;
}

// ---------------------------------------------------------------------------

double weighted_rel(const RadialGrid& grid, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    double num = 0.0;
    double den = 0.0;
    for (int j = 0; j < grid.size(); ++j) {
        num += (a[j] - b[j]) * (a[j] - b[j]) * grid.weight(j);
        den += b[j] * b[j] * grid.weight(j);
    }
    return std::sqrt(num / den);
}

Eigen::VectorXd on_grid(const RadialGrid& grid, const std::function<double(double)>& f) {
    Eigen::VectorXd v(grid.size());
    for (int j = 0; j < grid.size(); ++j) v[j] = f(grid.node(j));
    return v;
}

RunResult hankel_check(const RunConfig& c, const RunContext&) {
    const BesselOrder mu = order_from(c);
    std::vector<double> sizes = c.numbers("n");
    std::sort(sizes.begin(), sizes.end());
    const double x_min = c.number("x-min");
    if (!(x_min > 0.0)) throw ConfigError("config: key 'x-min' must be positive");
    const std::vector<Bump> suite = bump_suite(static_cast<std::uint64_t>(c.integer("seed", 0)),
                                               static_cast<int>(c.integer("bumps", 1)));
    const double m = mu.mu();

    RunResult r;
    r.csv_name = "hankel_check.csv";
    r.csv = CsvWriter({"check", "n", "error"});
    std::vector<std::array<double, 3>> errors;
    for (double nd : sizes) {
        if (nd < 16 || nd != std::floor(nd)) throw ConfigError("config: key 'n' expects integers ≥ 16");
        const RadialGrid grid = RadialGrid::alias_free(x_min, static_cast<int>(nd));
        const HankelPlan plan(m, grid);
        double inversion = 0.0;
        for (const Bump& b : suite) {
            const Eigen::VectorXd g = on_grid(grid, [&](double x) { return b.space.value(x); });
            inversion = std::max(inversion, weighted_rel(grid, plan.apply(plan.apply(g)), g));
        }
        const Bump1D b{2.5, 0.25, BumpShape::gaussian};
        const Eigen::VectorXd phi = on_grid(grid, [&](double x) { return b.value(x); });
        const Eigen::VectorXd lap =
            on_grid(grid, [&](double x) { return b.d2(x) - (m * m - 0.25) * b.value(x) / (x * x); });
        Eigen::VectorXd rhs = plan.apply(phi);
        for (int j = 0; j < grid.size(); ++j) rhs[j] *= -grid.node(j) * grid.node(j);
        const double diag = weighted_rel(grid, plan.apply(lap), rhs);
        const Eigen::VectorXd eig = on_grid(grid, [&](double x) { return std::pow(x, m + 0.5) * std::exp(-0.5 * x * x); });
        const double fixed = weighted_rel(grid, plan.apply(eig), eig);
        errors.push_back({inversion, diag, fixed});
        r.csv.row({"self_inversion", num(nd), num(inversion)});
        r.csv.row({"diagonalization", num(nd), num(diag)});
        r.csv.row({"eigenfunction", num(nd), num(fixed)});
    }
    const auto& last = errors.back();
    r.checks.push_back(at_most("self_inversion", last[0], 5e-3));
    r.checks.push_back(at_most("diagonalization", last[1], 5e-3));
    r.checks.push_back(at_most("eigenfunction", last[2], 1e-3));
    r.summary = {{"self_inversion", last[0]}, {"diagonalization", last[1]}, {"eigenfunction", last[2]}};
    if (errors.size() >= 2) {
        const auto& prev = errors[errors.size() - 2];
        const double gain = prev[0] / last[0];
        r.summary["self_inversion_refinement_gain"] = gain;
        if (sizes.back() == 2.0 * sizes[sizes.size() - 2]) r.checks.push_back(at_least("refinement_gain", gain, 2.0));
    }
    return r;
}

// ---------------------------------------------------------------------------

RunResult solve(const RunConfig& c, const RunContext&) {
    const BesselOrder mu = order_from(c);
    const std::string problem = c.text("problem");
    if (problem != "wholespace" && problem != "cauchy") {
        throw ConfigError("config: key 'problem' must be 'wholespace' or 'cauchy'");
    }
    const int n = static_cast<int>(c.integer("n", 16));
    const int m = static_cast<int>(c.integer("m", 16));
    if ((m & (m - 1)) != 0) throw ConfigError("config: key 'm' must be a power of two");
    const double window = c.number("window");
    if (!(window > 0.0)) throw ConfigError("config: key 'window' must be positive");
    const RadialGrid grid = RadialGrid::log_uniform(c.number("x-min"), c.number("x-max"), n);
    const std::vector<Bump> suite = bump_suite(static_cast<std::uint64_t>(c.integer("seed", 0)),
                                               static_cast<int>(c.integer("bumps", 1)));

    RunResult r;
    r.csv_name = "solve.csv";
    r.csv = CsvWriter({"bump", "t_center", "x_center", "relative_interior", "interior_norm", "boundary_layer_norm"});
    double worst = 0.0;
    for (std::size_t i = 0; i < suite.size(); ++i) {
        Bump b = suite[i];
        ResidualReport rep;
        if (problem == "wholespace") {
            const Field f = Field::sample(TimeGrid(-window / 2, window / m, m), grid, b);
            rep = residual_check(solve_wholespace(mu, f), f, mu);
        } else {
            // Forcing in the middle of the window, initial datum with the bump's radial profile.
            b.time.center += window / 2;
            const Field f = Field::sample(TimeGrid(0.0, window / m, m), grid, b);
            const Eigen::VectorXd g = on_grid(grid, [&](double x) { return b.space.value(x); });
            rep = residual_check(solve_cauchy({mu, f, g}), f, mu);
        }
        worst = std::max(worst, rep.relative_interior);
        r.csv.row({std::to_string(i), num(b.time.center), num(b.space.center), num(rep.relative_interior),
                   num(rep.interior_norm), num(rep.boundary_layer_norm)});
    }
    r.checks.push_back(at_most("relative_interior_residual", worst, 5e-2));
    r.summary = {{"worst_relative_interior", worst}, {"dt", window / m}};
    return r;
}

// ---------------------------------------------------------------------------

RunResult riesz(const RunConfig& c, const RunContext&) {
    const BesselOrder mu = order_from(c);
    std::vector<std::string> compare = c.words("compare");
    std::sort(compare.begin(), compare.end());
    if (compare != std::vector<std::string>{"pv", "spectral"}) {
        throw ConfigError("config: key 'compare' supports 'spectral,pv' only");
    }
    const std::string op = c.text("op");
    if (op != "r" && op != "rtilde" && op != "both") throw ConfigError("config: key 'op' must be r, rtilde or both");
    const std::string region_name = c.text("region");
    RegionKind region = RegionKind::parabolic_full;
    if (region_name == "spatial_slice") {
        region = RegionKind::spatial_slice;
    } else if (region_name == "causal") {
        region = RegionKind::causal;
    } else if (region_name != "parabolic_full") {
        throw ConfigError("config: key 'region' must be parabolic_full, spatial_slice or causal");
    }
    const double eps0 = c.number("epsilon0");
    const int levels = static_cast<int>(c.integer("levels", 3));
    PVOptions opts;
    opts.step = c.number("step");
    if (!(eps0 > 0.0) || !(opts.step > 0.0)) throw ConfigError("config: 'epsilon0' and 'step' must be positive");

    // The periodic spectral reference wraps the slowly decaying tail for μ ≤ −1/2; use a longer window there.
    const double window = mu.mu() <= -0.5 ? 40.0 : 10.0;
    const int m = mu.mu() <= -0.5 ? 1024 : 256;
    const RadialGrid grid = RadialGrid::alias_free(1e-3, static_cast<int>(c.integer("n", 64)));
    const TimeGrid tg(-window / 2, window / m, m);
    Bump b;
    b.time = {0.1, 0.2, BumpShape::gaussian};
    b.space = {2.4, 0.26, BumpShape::gaussian};
    const Field f = Field::sample(tg, grid, b);
    const SpectralEngine engine(mu, grid);

    std::vector<int> ti;
    std::vector<int> xi;
    for (int k = 0; k < tg.size(); k += 4) {
        if (tg.time(k) > -0.7 && tg.time(k) < 1.3) ti.push_back(k);
    }
    for (int j = 0; j < grid.size(); j += 10) {
        if (grid.node(j) > 1.4 && grid.node(j) < 3.6) xi.push_back(j);
    }
    if (ti.empty() || xi.empty()) throw ConfigError("config: key 'n' gives no evaluation points");
    const EvalPoints pts = EvalPoints::from_grid(tg, ti, grid, xi);
    Eigen::MatrixXd fvals(ti.size(), xi.size());
    for (std::size_t a = 0; a < ti.size(); ++a) {
        for (std::size_t k = 0; k < xi.size(); ++k) fvals(a, k) = b(pts.times[a], pts.xs[k]);
    }
    const auto norm = [&](const Eigen::MatrixXd& v) {
        double s = 0.0;
        for (Eigen::Index a = 0; a < v.rows(); ++a) {
            for (Eigen::Index k = 0; k < v.cols(); ++k) s += v(a, k) * v(a, k) * grid.weight(xi[static_cast<std::size_t>(k)]);
        }
        return std::sqrt(s);
    };
    const double f_norm = norm(fvals);

    RunResult r;
    r.csv_name = "riesz.csv";
    r.csv = CsvWriter({"operator", "region", "epsilon", "rel_l2_difference", "step_change"});
    std::vector<RieszKernel> kinds;
    if (op != "rtilde") kinds.push_back(RieszKernel::space);
    if (op != "r") kinds.push_back(RieszKernel::time);
    for (RieszKernel which : kinds) {
        const std::string name = which == RieszKernel::space ? "R" : "Rtilde";
        const Field spec = which == RieszKernel::space ? engine.op_R(f) : engine.op_Rtilde(f);
        Eigen::MatrixXd ref(ti.size(), xi.size());
        for (std::size_t a = 0; a < ti.size(); ++a) {
            for (std::size_t k = 0; k < xi.size(); ++k) ref(a, k) = spec.values(ti[a], xi[k]).real();
        }
        const PVLimit lim = pv_limit(which, mu, SmoothDatum::from_bump(b), region, pts, eps0, levels, opts);
        const double local = local_term(which, region);
        for (std::size_t k = 0; k < lim.iterates.size(); ++k) {
            const double d = norm(lim.iterates[k] + local * fvals - ref) / f_norm;
            r.csv.row({name, region_name, num(lim.epsilons[k]), num(d),
                       k == 0 ? "" : num(lim.step_changes[k - 1])});
        }
        const double final_diff = norm(lim.limit - ref) / f_norm;
        r.csv.row({name, region_name, "limit", num(final_diff), ""});
        r.checks.push_back(at_most(name + "_spectral_vs_pv", final_diff, 5e-2));
        double worst_ratio = INFINITY;
        for (std::size_t k = 0; k + 1 < lim.step_changes.size(); ++k) {
            worst_ratio = std::min(worst_ratio, lim.step_changes[k] / lim.step_changes[k + 1]);
        }
        if (std::isfinite(worst_ratio)) r.checks.push_back(at_least(name + "_epsilon_contraction", worst_ratio, 1.5));
        r.summary[name] = {{"limit_difference", final_diff}, {"min_contraction", worst_ratio}};
    }
    r.summary["window"] = window;
    return r;
}

// ---------------------------------------------------------------------------

RunResult cz(const RunConfig& c, const RunContext& ctx) {
    const BesselOrder mu = order_from(c);
    const std::string kind = c.text("kernel");
    if (kind != "K" && kind != "Ktilde") throw ConfigError("config: key 'kernel' must be K or Ktilde");
    CZOptions opts;
    opts.seed = static_cast<std::uint64_t>(c.integer("seed", 0));
    opts.workers = ctx.workers;
    const CZReport rep = cz_verify(mu, kind == "K" ? RieszKernel::space : RieszKernel::time, c.integer("samples", 10), opts);

    RunResult r;
    r.csv_name = "cz_verify.csv";
    r.csv = CsvWriter({"kind", "sup", "q50", "q90", "q99", "drift"});
    for (int k = 0; k < CZReport::kind_count; ++k) {
        const auto& q = rep.quantiles[k];
        r.csv.row({CZReport::kind_name(static_cast<CZReport::Kind>(k)), num(rep.sup[k]), num(q[0]), num(q[1]),
                   num(q[2]), num(rep.drift[k])});
        r.summary[CZReport::kind_name(static_cast<CZReport::Kind>(k))] = {{"sup", rep.sup[k]}, {"drift", rep.drift[k]}};
    }
    r.summary["report_only"] = rep.report_only;
    if (!rep.report_only) {
        const double worst = *std::max_element(rep.drift.begin(), rep.drift.end());
        r.checks.push_back(at_most("sup_drift", worst, 0.2));
    }
    return r;
}

// ---------------------------------------------------------------------------

RunResult sweep(const RunConfig& c, const RunContext&) {
    const std::string name = c.text("op");
    SweepOperator op = SweepOperator::time_riesz;
    if (name == "r") {
        op = SweepOperator::space_riesz;
    } else if (name == "transplant") {
        op = SweepOperator::transplantation;
    } else if (name != "rtilde") {
        throw ConfigError("config: key 'op' must be r, rtilde or transplant");
    }
    const std::vector<double> mus = c.range("mu");
    const std::vector<double> inv_ps = c.range("invp");
    for (double m : mus) {
        if (!(m > -1.0)) throw ConfigError("config: key 'mu' needs values above −1");
    }
    for (double ip : inv_ps) {
        if (!(ip > 0.0 && ip < 1.0)) throw ConfigError("config: key 'invp' needs values in (0, 1)");
    }
    SweepOptions opts;
    opts.suite_size = static_cast<int>(c.integer("suite", 1));
    opts.seed = static_cast<std::uint64_t>(c.integer("seed", 0));
    opts.x_mins = c.numbers("x-mins");
    opts.x_max = c.number("x-max");
    opts.time_samples = static_cast<int>(c.integer("time-samples", 8));
    opts.window = c.number("window");
    if (opts.x_mins.size() < 2) throw ConfigError("config: key 'x-mins' needs at least two resolutions");
    const RegionSweep s = opnorm_sweep(op, mus, inv_ps, opts);

    RunResult r;
    r.csv_name = "sweep.csv";
    std::vector<std::string> header{"mu", "inv_p", "region", "verdict"};
    for (std::size_t l = 0; l < opts.x_mins.size(); ++l) header.push_back("norm_" + std::to_string(l + 1));
    header.push_back("last_step_growth");
    header.push_back("max_step_growth");
    r.csv = CsvWriter(header);
    int interior_growing = 0;
    int exterior_bounded = 0;
    std::map<std::string, int> counts;
    for (const SweepCell& cell : s.cells) {
        const RegionClass region = classify_region(op, cell.mu, cell.inv_p);
        std::vector<std::string> row{num(cell.mu), num(cell.inv_p), region_class_name(region), verdict_name(cell.verdict)};
        for (double v : cell.norms) row.push_back(num(v));
        row.push_back(num(cell.last_step_growth));
        row.push_back(num(cell.max_step_growth));
        r.csv.row(row);
        ++counts[verdict_name(cell.verdict)];
        if (region == RegionClass::interior && cell.verdict == Verdict::growing) ++interior_growing;
        if (region == RegionClass::exterior && cell.verdict == Verdict::bounded) ++exterior_bounded;
    }
    if (op != SweepOperator::transplantation) {
        r.checks.push_back(at_most("interior_growing", interior_growing, 0));
        r.checks.push_back(at_most("exterior_bounded", exterior_bounded, 0));
    }
    r.summary = {{"operator", sweep_operator_name(op)}, {"verdicts", counts}};
    return r;
}

// ---------------------------------------------------------------------------

RunResult maxreg(const RunConfig& c, const RunContext&) {
    const BesselOrder mu = order_from(c);
    const double p = c.number("p");
    const double q = c.number("q");
    if (!(p > 1.0) || !(q > 1.0)) throw ConfigError("config: keys 'p' and 'q' must exceed 1");
    std::vector<double> sizes = c.numbers("n");
    std::sort(sizes.begin(), sizes.end());
    const double window = c.number("window");
    BumpRanges ranges;
    ranges.t_center_lo = 0.2 * window;
    ranges.t_center_hi = 0.3 * window;
    const std::vector<Bump> suite = bump_suite(static_cast<std::uint64_t>(c.integer("seed", 0)),
                                               static_cast<int>(c.integer("bumps", 1)), ranges);

    RunResult r;
    r.csv_name = "maxreg.csv";
    r.csv = CsvWriter({"bump", "n", "ratio"});
    double drift = 0.0;
    bool hypothesis = true;
    for (std::size_t i = 0; i < suite.size(); ++i) {
        double previous = 0.0;
        for (double nd : sizes) {
            const int n = static_cast<int>(nd);
            if (n < 16 || (n & (n - 1)) != 0) throw ConfigError("config: key 'n' expects powers of two ≥ 16");
            const Field f = Field::sample(TimeGrid(0.0, window / n, n), RadialGrid::log_uniform(0.02, 8.0, n), suite[i]);
            const MaxRegResult res = maximal_regularity_ratio(mu, p, q, f);
            hypothesis = res.hypothesis_ok;
            r.csv.row({std::to_string(i), std::to_string(n), num(res.ratio)});
            if (previous > 0.0) drift = std::max(drift, std::abs(res.ratio - previous) / res.ratio);
            previous = res.ratio;
        }
    }
    r.summary = {{"drift", drift}, {"hypothesis_ok", hypothesis}};
    if (hypothesis && sizes.size() > 1) r.checks.push_back(at_most("refinement_drift", drift, 0.1));
    return r;
}

} // namespace

const std::vector<Command>& commands() {
    static const std::vector<Command> all{
        {"kernel-check",
         "Heat-kernel symmetry, half-integer reductions, semigroup law and mass identity",
         {{"mu", "", "Bessel order μ > −1"}, {"samples", "1000", "random (t, x, y) triples"}, {"seed", "1", "RNG seed"}},
         kernel_check},
        {"hankel-check",
         "Self-inversion, diagonalization and eigenfunction errors of the discrete Hankel transform",
         {{"mu", "", "Bessel order μ > −1"},
          {"n", "256,512,1024", "comma-separated grid sizes"},
          {"x-min", "1e-3", "smallest radial node"},
          {"bumps", "4", "bumps in the test suite"},
          {"seed", "3", "bump suite seed"}},
         hankel_check},
        {"solve",
         "Solve the Bessel heat equation for a bump suite and report residuals",
         {{"mu", "", "Bessel order μ > −1"},
          {"problem", "wholespace", "wholespace or cauchy"},
          {"n", "512", "radial nodes"},
          {"m", "512", "time samples (power of two)"},
          {"x-min", "0.02", "smallest radial node"},
          {"x-max", "8", "largest radial node"},
          {"window", "5", "time window length"},
          {"bumps", "3", "bumps in the forcing suite"},
          {"seed", "1", "bump suite seed"}},
         solve},
        {"riesz",
         "Compare spectral and principal-value Riesz transforms along an ε schedule",
         {{"mu", "", "Bessel order μ > −1"},
          {"compare", "spectral,pv", "implementations to compare"},
          {"op", "both", "r, rtilde or both"},
          {"region", "parabolic_full", "parabolic_full, spatial_slice or causal"},
          {"epsilon0", "0.2", "first truncation radius; later ones halve"},
          {"levels", "4", "number of truncation radii"},
          {"step", "0.01", "quadrature cell size"},
          {"n", "1024", "radial nodes of the spectral grid"}},
         riesz},
        {"cz-verify",
         "Sample the Calderón–Zygmund size and smoothness ratios of a Riesz kernel",
         {{"mu", "", "Bessel order μ > −1"},
          {"kernel", "K", "K (space) or Ktilde (time)"},
          {"samples", "100000", "sample count"},
          {"seed", "20240601", "RNG seed"}},
         cz},
        {"sweep",
         "Operator-norm sweep over a (μ, 1/p) grid with bounded/growing verdicts",
         {{"op", "rtilde", "r, rtilde or transplant"},
          {"mu", "", "μ values as start:stop:count or a single value"},
          {"invp", "0.05:0.95:10", "1/p values as start:stop:count or a single value"},
          {"suite", "20", "bumps per cell"},
          {"seed", "7", "bump suite seed"},
          {"x-mins", "1e-3,1e-7,1e-11", "smallest radial node per resolution"},
          {"x-max", "10", "approximate largest radial node"},
          {"time-samples", "64", "time samples"},
          {"window", "80", "time window length"}},
         sweep},
        {"maxreg",
         "Mixed-norm ratios of the maximal-regularity operator under refinement",
         {{"mu", "", "Bessel order μ > −1"},
          {"p", "3", "outer (time) exponent"},
          {"q", "1.5", "inner (space) exponent"},
          {"n", "128,256,512", "grid sizes (N = M, powers of two)"},
          {"window", "6", "time window length"},
          {"bumps", "2", "bumps in the forcing suite"},
          {"seed", "11", "bump suite seed"}},
         maxreg},
    };
    return all;
}

} // namespace pbessel::cli
