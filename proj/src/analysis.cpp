#include "pbessel/analysis.hpp"

#include "pbessel/errors.hpp"
#include "pbessel/hankel.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <thread>

namespace pbessel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace

double WeightSpec::operator()(double t, double x) const {
    switch (kind) {
    case Kind::spatial:
        return space_exponent == 0.0 ? 1.0 : std::pow(x, space_exponent);
    case Kind::temporal:
        return time_exponent == 0.0 ? 1.0 : std::pow(std::abs(t - time_center), time_exponent);
    case Kind::parabolic_power:
        return std::pow(std::sqrt(std::abs(t - time_center)) + x, space_exponent);
    }
    return 1.0;
}

bool WeightSpec::admissible(double p) const noexcept {
    const double e = kind == Kind::temporal ? time_exponent : space_exponent;
    return e > -1.0 && e < p - 1.0;
}

double lp_norm(const Field& f, double p, const WeightSpec& w) {
    if (!(p >= 1.0)) throw DomainError("exponent-range: lp_norm needs p ≥ 1");
    const double dt = f.time.dt();
    double acc = 0.0;
    for (int k = 0; k < f.rows(); ++k) {
        const double t = f.time.time(k);
        for (int j = 0; j < f.cols(); ++j) {
            const double x = f.radial.node(j);
            const double wt = w(t, x);
            const double a = std::abs(f.values(k, j));
            if (std::isinf(p)) {
                if (wt > 0.0) acc = std::max(acc, a);
            } else if (a > 0.0) {
                acc += std::pow(a, p) * wt * f.radial.weight(j) * dt;
            }
        }
    }
    return std::isinf(p) ? acc : std::pow(acc, 1.0 / p);
}

double mixed_norm(const Field& f, double q_outer, double p_inner, const WeightSpec& u, const WeightSpec& v) {
    if (!(q_outer >= 1.0) || !(p_inner >= 1.0)) throw DomainError("exponent-range: mixed_norm needs exponents ≥ 1");
    const double dt = f.time.dt();
    double outer = 0.0;
    for (int k = 0; k < f.rows(); ++k) {
        const double t = f.time.time(k);
        double inner = 0.0;
        for (int j = 0; j < f.cols(); ++j) {
            const double a = std::abs(f.values(k, j));
            if (std::isinf(p_inner)) {
                inner = std::max(inner, a);
            } else if (a > 0.0) {
                inner += std::pow(a, p_inner) * v(t, f.radial.node(j)) * f.radial.weight(j);
            }
        }
        if (!std::isinf(p_inner)) inner = std::pow(inner, 1.0 / p_inner);
        if (std::isinf(q_outer)) {
            outer = std::max(outer, inner);
        } else if (inner > 0.0) {
            outer += std::pow(inner, q_outer) * u(t, 0.0) * dt;
        }
    }
    return std::isinf(q_outer) ? outer : std::pow(outer, 1.0 / q_outer);
}

// ---------------------------------------------------------------------------
// Muckenhoupt quotients

namespace {

/// ∫_a^b |u|^g du.
double power_integral(double a, double b, double g) {
    const auto anti = [g](double u) {
        if (g == -1.0) return std::copysign(std::log(std::abs(u)), u);
        return std::copysign(std::pow(std::abs(u), g + 1.0) / (g + 1.0), u);
    };
    if (a < 0.0 && b > 0.0) {
        if (g <= -1.0) return kInf;
        return anti(b) - anti(a);
    }
    if (a == 0.0 || b == 0.0) {
        if (g <= -1.0) return kInf;
    }
    return std::abs(anti(b) - anti(a));
}

double integrate(const std::function<double(double)>& f, double a, double b) {
    if (!(b > a)) return 0.0;
    static thread_local boost::math::quadrature::tanh_sinh<double> ts(12);
    return ts.integrate(f, a, b, 1e-10);
}

/// ∫_B w^g over the ball, +∞ when the power is not integrable.
double ball_power_integral(const WeightSpec& w, double g, const ParabolicBall& b) {
    const double y_lo = std::max(0.0, b.x - b.r);
    const double y_hi = b.x + b.r;
    const auto half = [&](double y) {
        const double h = b.r - std::abs(b.x - y);
        return h * h;
    };
    const auto over_y = [&](const std::function<double(double)>& f) { return integrate(f, y_lo, b.x) + integrate(f, b.x, y_hi); };

    switch (w.kind) {
    case WeightSpec::Kind::spatial: {
        const double e = w.space_exponent * g;
        if (y_lo == 0.0 && e <= -1.0) return kInf;
        return over_y([&](double y) { return 2.0 * half(y) * std::pow(y, e); });
    }
    case WeightSpec::Kind::temporal: {
        const double e = w.time_exponent * g;
        if (e <= -1.0 && std::abs(b.t - w.time_center) < b.r * b.r) return kInf;
        return over_y([&](double y) {
            const double h = half(y);
            return power_integral(b.t - h - w.time_center, b.t + h - w.time_center, e);
        });
    }
    case WeightSpec::Kind::parabolic_power: {
        const double e = w.space_exponent * g;
        const double reach = std::sqrt(std::abs(b.t - w.time_center)) + 0.0;
        // The weight vanishes or blows up only at (t_c, 0), a point of homogeneous dimension 3.
        if (e <= -3.0 && y_lo == 0.0 && reach + std::max(0.0, b.x - b.r) < b.r) return kInf;
        return over_y([&](double y) {
            const double h = half(y);
            const double lo = b.t - h;
            const double hi = b.t + h;
            const auto f = [&](double s) { return std::pow(std::sqrt(std::abs(s - w.time_center)) + y, e); };
            if (w.time_center > lo && w.time_center < hi) {
                return integrate(f, lo, w.time_center) + integrate(f, w.time_center, hi);
            }
            return integrate(f, lo, hi);
        });
    }
    }
    return kInf;
}

/// inf of the weight over the ball.
double ball_infimum(const WeightSpec& w, const ParabolicBall& b) {
    const double y_lo = std::max(0.0, b.x - b.r);
    const double y_hi = b.x + b.r;
    switch (w.kind) {
    case WeightSpec::Kind::spatial:
        return w.space_exponent >= 0.0 ? std::pow(y_lo, w.space_exponent) : std::pow(y_hi, w.space_exponent);
    case WeightSpec::Kind::temporal: {
        const double near = std::max(0.0, std::abs(b.t - w.time_center) - b.r * b.r);
        const double far = std::abs(b.t - w.time_center) + b.r * b.r;
        return w.time_exponent >= 0.0 ? std::pow(near, w.time_exponent) : std::pow(far, w.time_exponent);
    }
    case WeightSpec::Kind::parabolic_power: {
        // Sampled on a fine grid of the ball.
        double lo = kInf;
        double hi = 0.0;
        constexpr int n = 64;
        for (int i = 0; i <= n; ++i) {
            const double y = y_lo + (y_hi - y_lo) * i / n;
            const double h = std::pow(b.r - std::abs(b.x - y), 2);
            for (int k = 0; k <= n; ++k) {
                const double s = b.t - h + 2.0 * h * k / n;
                const double d = std::sqrt(std::abs(s - w.time_center)) + y;
                lo = std::min(lo, d);
                hi = std::max(hi, d);
            }
        }
        return w.space_exponent >= 0.0 ? std::pow(lo, w.space_exponent) : std::pow(hi, w.space_exponent);
    }
    }
    return 0.0;
}

} // namespace

double ap_constant(const WeightSpec& w, double p, const std::vector<ParabolicBall>& balls) {
    if (!(p >= 1.0)) throw DomainError("exponent-range: A_p needs p ≥ 1");
    double worst = 0.0;
    for (const ParabolicBall& b : balls) {
        if (!(b.r > 0.0) || !(b.x > 0.0)) throw DomainError("ball: needs r > 0 and a center with x > 0");
        const double measure = ball_power_integral(WeightSpec::unweighted(), 1.0, b);
        const double avg_w = ball_power_integral(w, 1.0, b) / measure;
        double q = 0.0;
        if (p == 1.0) {
            const double inf = ball_infimum(w, b);
            q = inf > 0.0 ? avg_w / inf : kInf;
        } else {
            const double avg_dual = ball_power_integral(w, -1.0 / (p - 1.0), b) / measure;
            q = avg_w * std::pow(avg_dual, p - 1.0);
        }
        worst = std::max(worst, q);
        if (std::isinf(worst)) break;
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Calderón–Zygmund sampling

const char* CZReport::kind_name(Kind k) noexcept {
    switch (k) {
    case size: return "size";
    case gradient: return "gradient";
    case time_derivative: return "time_derivative";
    case holder: return "holder";
    default: return "unknown";
    }
}

bool CZReport::stable(double tolerance) const noexcept {
    for (int k = 0; k < kind_count; ++k) {
        if (!std::isfinite(sup[k]) || drift[k] > tolerance) return false;
    }
    return true;
}

namespace {

constexpr long kPartition = 10000;
constexpr int kPolished = 4;
constexpr int kDims = 9;

using Cube = std::array<double, kDims>;

/// One sample, parametrized by a point of the unit cube.
///
/// Coordinates: base point x, distance d/x, split of d between √s and |x − y|,
/// side of y, perturbation size ρ/d ∈ [0, 1/2), its split between time and
/// space, the two perturbation signs and which point moves.
class CZSample {
public:
    CZSample(const BesselOrder& mu, RieszKernel which) : mu_(mu), which_(which) {}

    std::array<double, CZReport::kind_count> ratios(const Cube& u) const {
        const double x = 1e-2 * std::pow(1e4, u[0]);
        const double d = x * 1e-3 * std::pow(1e4, u[1]);
        const double a = u[2];
        double y = x + (u[3] < 0.5 ? -1.0 : 1.0) * (1.0 - a) * d;
        if (y <= 0.0) y = x + (1.0 - a) * d;
        const double root_s = std::max(a * d, 1e-6 * d);
        const KernelPoint pt(x, y, root_s * root_s);

        std::array<double, CZReport::kind_count> r{};
        r[CZReport::size] = envelope_ratio(EnvelopeKind::size3, mu_, pt, which_);
        r[CZReport::gradient] = std::max(envelope_ratio(EnvelopeKind::grad_x4, mu_, pt, which_),
                                         envelope_ratio(EnvelopeKind::grad_y4, mu_, pt, which_));
        r[CZReport::time_derivative] = envelope_ratio(EnvelopeKind::dt5, mu_, pt, which_);

        const double big_d = pt.distance();
        const double rho = 0.5 * big_d * std::min(u[4], 1.0 - 1e-9);
        const double dlag = (u[6] < 0.5 ? -1.0 : 1.0) * (u[5] * rho) * (u[5] * rho);
        const double dpos = (u[7] < 0.5 ? -1.0 : 1.0) * (1.0 - u[5]) * rho;
        const double base = kernel(x, y, pt.s);
        double moved = 0.0;
        double actual = 0.0;
        if (u[8] < 0.5) {
            const double x2 = x + dpos > 0.0 ? x + dpos : x - dpos;
            moved = kernel(x2, y, pt.s + dlag);
            actual = std::sqrt(std::abs(dlag)) + std::abs(x2 - x);
        } else {
            const double y2 = y + dpos > 0.0 ? y + dpos : y - dpos;
            moved = kernel(x, y2, pt.s - dlag);
            actual = std::sqrt(std::abs(dlag)) + std::abs(y2 - y);
        }
        r[CZReport::holder] = actual > 0.0 ? std::abs(moved - base) * std::pow(big_d, 4) / actual : 0.0;
        return r;
    }

private:
    double kernel(double x, double y, double s) const { return riesz_kernel(which_, mu_, KernelPoint(x, y, s)); }

    BesselOrder mu_;
    RieszKernel which_;
};

/// Compass search inside the unit cube, maximizing one ratio kind.
double polish(const CZSample& sample, int kind, Cube u, double value) {
    for (double step = 0.05; step > 1e-4; step *= 0.5) {
        bool improved = true;
        for (int sweep = 0; improved && sweep < 50; ++sweep) {
            improved = false;
            for (int i = 0; i < kDims; ++i) {
                for (double dir : {-1.0, 1.0}) {
                    Cube v = u;
                    v[static_cast<std::size_t>(i)] = std::clamp(u[static_cast<std::size_t>(i)] + dir * step, 0.0, 1.0);
                    const double r = sample.ratios(v)[static_cast<std::size_t>(kind)];
                    if (std::isfinite(r) && r > value) {
                        value = r;
                        u = v;
                        improved = true;
                    }
                }
            }
        }
    }
    return value;
}

struct Partition {
    std::array<std::vector<double>, CZReport::kind_count> ratios;
    /// Largest ratio per kind after polishing the best raw samples.
    std::array<double, CZReport::kind_count> sup{};
};

void sample_partition(const CZSample& sample, std::uint64_t seed, long index, long count, Partition& out) {
    std::seed_seq seq{seed, static_cast<std::uint64_t>(index)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    using Ranked = std::pair<double, Cube>;
    std::array<std::vector<Ranked>, CZReport::kind_count> best;
    for (auto& v : out.ratios) v.resize(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        Cube u;
        for (double& c : u) c = unit(rng);
        const auto r = sample.ratios(u);
        for (int k = 0; k < CZReport::kind_count; ++k) {
            out.ratios[k][static_cast<std::size_t>(i)] = r[k];
            auto& top = best[k];
            if (top.size() < kPolished || r[k] > top.back().first) {
                if (top.size() == kPolished) top.pop_back();
                top.emplace_back(r[k], u);
                std::sort(top.begin(), top.end(), [](const Ranked& a, const Ranked& b) { return a.first > b.first; });
            }
        }
    }
    for (int k = 0; k < CZReport::kind_count; ++k) {
        out.sup[k] = 0.0;
        for (const auto& [value, u] : best[k]) out.sup[k] = std::max(out.sup[k], polish(sample, k, u, value));
    }
}

double quantile(std::vector<double>& v, double q) {
    if (v.empty()) return 0.0;
    const auto k = static_cast<std::size_t>(std::floor(q * static_cast<double>(v.size() - 1)));
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
    return v[k];
}

} // namespace

CZReport cz_verify(const BesselOrder& mu, RieszKernel kernel, long n_samples, const CZOptions& options) {
    if (n_samples < 10) throw DomainError("samples: cz_verify needs at least 10 samples");
    const long parts = (n_samples + kPartition - 1) / kPartition;
    std::vector<Partition> results(static_cast<std::size_t>(parts));
    const CZSample sample(mu, kernel);

    const int workers = std::max(1, options.workers);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (long p = w; p < parts; p += workers) {
                const long count = std::min(kPartition, n_samples - p * kPartition);
                sample_partition(sample, options.seed, p, count, results[static_cast<std::size_t>(p)]);
            }
        });
    }
    for (auto& t : pool) t.join();

    CZReport rep;
    rep.mu = mu;
    rep.kernel = kernel;
    rep.samples = n_samples;
    rep.report_only = !mu.cz_class();
    const long head_parts = std::max<long>(1, parts / 10);
    for (int k = 0; k < CZReport::kind_count; ++k) {
        std::vector<double> all;
        all.reserve(static_cast<std::size_t>(n_samples));
        double head = 0.0;
        for (long p = 0; p < parts; ++p) {
            const Partition& part = results[static_cast<std::size_t>(p)];
            all.insert(all.end(), part.ratios[k].begin(), part.ratios[k].end());
            rep.sup[k] = std::max(rep.sup[k], part.sup[k]);
            if (p < head_parts) head = rep.sup[k];
        }
        rep.drift[k] = head > 0.0 ? rep.sup[k] / head - 1.0 : 0.0;
        rep.quantiles[k] = {quantile(all, 0.5), quantile(all, 0.9), quantile(all, 0.99), rep.sup[k]};
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Operator-norm sweeps

const char* sweep_operator_name(SweepOperator op) noexcept {
    switch (op) {
    case SweepOperator::space_riesz: return "r";
    case SweepOperator::time_riesz: return "rtilde";
    case SweepOperator::transplantation: return "transplant";
    }
    return "unknown";
}

const char* verdict_name(Verdict v) noexcept {
    switch (v) {
    case Verdict::bounded: return "bounded";
    case Verdict::growing: return "growing";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

BumpRanges SweepOptions::default_ranges() {
    BumpRanges r;
    r.t_center_lo = -0.5;
    r.t_center_hi = 0.5;
    r.t_width_lo = 1.5;
    r.t_width_hi = 2.5;
    r.x_center_lo = 2.2;
    r.x_center_hi = 2.8;
    r.x_width_lo = 0.4;
    r.x_width_hi = 0.45;
    return r;
}

const char* region_class_name(RegionClass c) noexcept {
    switch (c) {
    case RegionClass::interior: return "interior";
    case RegionClass::exterior: return "exterior";
    case RegionClass::boundary: return "boundary";
    case RegionClass::unknown: return "unknown";
    }
    return "unknown";
}

RegionClass classify_region(SweepOperator op, double mu, double inv_p, double tolerance) {
    if (op == SweepOperator::transplantation) return RegionClass::unknown;
    if (mu > -0.5) return RegionClass::interior;
    // Signed distances to the lines, positive on the bounded side.
    std::vector<double> sides{mu + 1.5 - inv_p};
    if (op == SweepOperator::time_riesz) sides.push_back(inv_p + mu + 0.5);
    const double worst = *std::min_element(sides.begin(), sides.end());
    if (std::abs(worst) <= tolerance) return RegionClass::boundary;
    return worst > 0.0 ? RegionClass::interior : RegionClass::exterior;
}

namespace {

Field time_reversed(const Field& f) {
    Field g = f;
    const int m = f.rows();
    for (int k = 0; k < m; ++k) g.values.row(k) = f.values.row((m - k) % m);
    return g;
}

Field apply_with(const SpectralEngine& e, SweepOperator op, const Field& f, bool adjoint) {
    switch (op) {
    case SweepOperator::space_riesz:
        return adjoint ? e.op_R_adjoint(f) : e.op_R(f);
    case SweepOperator::time_riesz:
        // The kernel is symmetric in (x, y), so the adjoint is the time-reversed operator.
        return adjoint ? time_reversed(e.op_Rtilde(time_reversed(f))) : e.op_Rtilde(f);
    case SweepOperator::transplantation:
        return adjoint ? e.transplant_adjoint(f) : e.transplant(f);
    }
    throw DomainError("operator: unknown sweep operator");
}

/// Smallest alias-free grid from x_min reaching x_max.
RadialGrid sweep_grid(double x_min, double x_max) {
    const double margin = RadialGrid::kDefaultAliasingMargin;
    const int n = 1 + static_cast<int>(std::ceil(x_max * x_max * std::log(x_max / x_min) / margin));
    return RadialGrid::alias_free(x_min, n, margin);
}

} // namespace

Field apply_operator(SweepOperator op, const BesselOrder& mu, const Field& f) {
    SpectralEngine e(mu, f.radial);
    return apply_with(e, op, f, false);
}

RegionSweep opnorm_sweep(SweepOperator op, const std::vector<double>& mus, const std::vector<double>& inv_ps,
                         const SweepOptions& options) {
    if (options.x_mins.size() < 2) throw DomainError("resolutions: a sweep needs at least two resolutions");
    for (double ip : inv_ps) {
        if (!(ip > 0.0 && ip < 1.0)) throw DomainError("inv_p: every 1/p must lie in (0, 1)");
    }
    const std::vector<Bump> suite = bump_suite(options.seed, options.suite_size, options.ranges);
    const TimeGrid tg(-options.window / 2, options.window / options.time_samples, options.time_samples);
    const std::size_t levels = options.x_mins.size();
    const std::size_t probes = 2 * suite.size();

    RegionSweep sweep{op, mus, inv_ps, {}};
    for (double m : mus) {
        const BesselOrder mu(m);
        // ratio[level][p][probe]
        std::vector<std::vector<std::vector<double>>> ratio(
            levels, std::vector<std::vector<double>>(inv_ps.size(), std::vector<double>(probes)));
        for (std::size_t l = 0; l < levels; ++l) {
            const SpectralEngine engine(mu, sweep_grid(options.x_mins[l], options.x_max));
            for (std::size_t b = 0; b < suite.size(); ++b) {
                const Field f = Field::sample(tg, engine.grid(), suite[b]);
                const Field direct = apply_with(engine, op, f, false);
                const Field dual = apply_with(engine, op, f, true);
                for (std::size_t i = 0; i < inv_ps.size(); ++i) {
                    const double p = 1.0 / inv_ps[i];
                    const double p_dual = 1.0 / (1.0 - inv_ps[i]);
                    ratio[l][i][2 * b] = lp_norm(direct, p) / lp_norm(f, p);
                    ratio[l][i][2 * b + 1] = lp_norm(dual, p_dual) / lp_norm(f, p_dual);
                }
            }
        }
        for (std::size_t i = 0; i < inv_ps.size(); ++i) {
            SweepCell cell;
            cell.mu = m;
            cell.inv_p = inv_ps[i];
            bool accelerating = false;
            for (std::size_t l = 0; l < levels; ++l) {
                cell.norms.push_back(*std::max_element(ratio[l][i].begin(), ratio[l][i].end()));
            }
            for (std::size_t k = 0; k < probes; ++k) {
                const double first = ratio[1][i][k] / ratio[0][i][k];
                const double last = ratio[levels - 1][i][k] / ratio[levels - 2][i][k];
                cell.last_step_growth = std::max(cell.last_step_growth, last);
                for (std::size_t l = 1; l < levels; ++l) {
                    cell.max_step_growth = std::max(cell.max_step_growth, ratio[l][i][k] / ratio[l - 1][i][k]);
                }
                if (last > first && last > 1.0 + 1e-3) accelerating = true;
            }
            if (cell.last_step_growth > options.growth_threshold) {
                cell.verdict = Verdict::growing;
            } else if (cell.max_step_growth <= options.flat_threshold && !accelerating) {
                cell.verdict = Verdict::bounded;
            } else {
                cell.verdict = Verdict::inconclusive;
            }
            sweep.cells.push_back(std::move(cell));
        }
    }
    return sweep;
}

WeakProfile weak_l1_profile(SweepOperator op, const BesselOrder& mu, const Field& f,
                            const std::vector<double>& lambdas) {
    WeakProfile prof;
    prof.lambdas = lambdas;
    prof.values.assign(lambdas.size(), 0.0);
    const double f1 = lp_norm(f, 1.0);
    if (f1 == 0.0) return prof;
    const Field tf = apply_operator(op, mu, f);
    const Eigen::MatrixXd mag = tf.values.cwiseAbs();
    const double dt = f.time.dt();
    double best = 0.0;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        const double lam = lambdas[i];
        if (!(lam > 0.0)) throw DomainError("lambda: levels must be positive");
        double measure = 0.0;
        for (int k = 0; k < mag.rows(); ++k) {
            for (int j = 0; j < mag.cols(); ++j) {
                if (mag(k, j) > lam) measure += f.radial.weight(j) * dt;
            }
        }
        prof.values[i] = lam * measure;
        best = std::max(best, prof.values[i]);
    }
    prof.ratio = best / f1;
    return prof;
}

} // namespace pbessel
