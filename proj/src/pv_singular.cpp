#include "pbessel/pv_singular.hpp"

#include "pbessel/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pbessel {

namespace {

using boost::math::quadrature::gauss_kronrod;

// C^∞ cutoff: 1 on |u| ≤ 1/2, 0 on |u| ≥ 1.
double cutoff(double u) {
    u = std::abs(u);
    if (u <= 0.5) return 1.0;
    if (u >= 1.0) return 0.0;
    const double a = std::exp(-1.0 / (1.0 - u));
    const double b = std::exp(-1.0 / (u - 0.5));
    return a / (a + b);
}

// Half-width in y of the removed set at √lag σ; negative when nothing is removed,
// +inf when every y is removed.
double removed_half_width(const TruncationRegion& region, double sigma) {
    const double eps = region.epsilon;
    switch (region.kind) {
    case RegionKind::parabolic_full:
        return sigma <= eps ? eps : -1.0;
    case RegionKind::spatial_slice:
        return sigma < eps ? eps - sigma : -1.0;
    case RegionKind::causal:
        return sigma <= eps ? std::numeric_limits<double>::infinity() : -1.0;
    }
    return -1.0;
}

// Exact integral of kernel·φ over the complement of the region, φ(σ, y) = cutoff(σ/a)·cutoff((y−x)/a).
double cutoff_integral(RieszKernel which, const BesselOrder& mu, double x, double a, const TruncationRegion& region) {
    auto inner = [&](double sigma) {
        const double c = removed_half_width(region, sigma);
        if (std::isinf(c) || sigma <= 0.0) return 0.0;
        const double s = sigma * sigma;
        auto g = [&](double w) { return riesz_kernel(which, mu, KernelPoint(x, x + w, s)) * cutoff(w / a); };
        const double lo = std::max(c, 0.0);
        if (lo >= a) return 0.0;
        // Beyond a removed gap the kernel falls off over 2σ²/lo rather than σ.
        const double scale = lo > 0.0 ? std::min(sigma, 2.0 * sigma * sigma / lo) : sigma;
        std::vector<double> pts{lo, a};
        for (double k : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) pts.push_back(std::clamp(lo + k * scale, lo, a));
        pts.push_back(0.5 * a);
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        double sum = 0.0;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            if (pts[i + 1] <= lo) continue;
            const double p = std::max(pts[i], lo);
            sum += gauss_kronrod<double, 15>::integrate(g, p, pts[i + 1], 5, 1e-8);
            sum += gauss_kronrod<double, 15>::integrate([&](double w) { return g(-w); }, p, pts[i + 1], 5, 1e-8);
        }
        return 2.0 * sigma * cutoff(sigma / a) * sum;
    };
    std::vector<double> pts{0.0, a, 0.5 * a};
    for (double k : {0.125, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 4.0}) pts.push_back(std::min(k * region.epsilon, a));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        total += gauss_kronrod<double, 15>::integrate(inner, pts[i], pts[i + 1], 5, 1e-8);
    }
    return total;
}

// Does the cell [σ ± h/2] × [w ± h/2] (w = y − x) meet the removed set?
bool cell_meets(const TruncationRegion& region, double sigma, double w, double h) {
    const double s_lo = std::max(sigma - 0.5 * h, 0.0);
    const double w_lo = std::max(std::abs(w) - 0.5 * h, 0.0);
    const double eps = region.epsilon;
    switch (region.kind) {
    case RegionKind::parabolic_full:
        return s_lo < eps && w_lo < eps;
    case RegionKind::spatial_slice:
        return s_lo + w_lo < eps;
    case RegionKind::causal:
        return s_lo < eps;
    }
    return false;
}

} // namespace

TruncationRegion::TruncationRegion(RegionKind k, double eps) : kind(k), epsilon(eps) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("truncation radius must be positive");
}

bool TruncationRegion::excludes(double x, double s, double y) const noexcept {
    if (s < 0.0) return false;
    const double r = std::sqrt(s);
    const double w = std::abs(x - y);
    switch (kind) {
    case RegionKind::parabolic_full:
        return std::max(r, w) <= epsilon;
    case RegionKind::spatial_slice:
        return r + w <= epsilon;
    case RegionKind::causal:
        return s <= epsilon * epsilon;
    }
    return false;
}

const LocalConstants& LocalConstants::get() {
    static const LocalConstants constants = [] {
        LocalConstants c{};
        c.A = pbessel::erf(0.5);
        c.one_minus_A = 1.0 - c.A;
        const double tail = gauss_kronrod<double, 31>::integrate(
            [](double w) { return std::exp(-0.25 * w * w) / (1.0 + w); }, 0.0,
            std::numeric_limits<double>::infinity(), 15, 1e-14);
        c.slice = tail / std::sqrt(std::numbers::pi);
        return c;
    }();
    return constants;
}

double local_term(RieszKernel which, RegionKind kind) {
    const LocalConstants& c = LocalConstants::get();
    double time_term = 1.0;
    if (kind == RegionKind::parabolic_full) time_term = c.A;
    if (kind == RegionKind::spatial_slice) time_term = c.slice;
    return which == RieszKernel::time ? time_term : time_term - 1.0;
}

SmoothDatum SmoothDatum::from_bump(const Bump& b) {
    return {[b](double t, double x) { return b(t, x); }, b.time.lo(), b.time.hi(), b.space.lo(), b.space.hi()};
}

SmoothDatum SmoothDatum::zero_extended() const {
    SmoothDatum out = *this;
    out.f = [g = f](double t, double x) { return t < 0.0 ? 0.0 : g(t, x); };
    out.t_lo = std::max(t_lo, 0.0);
    out.t_hi = std::max(t_hi, out.t_lo);
    return out;
}

EvalPoints EvalPoints::from_grid(const TimeGrid& tg, const std::vector<int>& time_index, const RadialGrid& rg,
                                 const std::vector<int>& radial_index) {
    EvalPoints p;
    for (int k : time_index) p.times.push_back(tg.time(k));
    for (int j : radial_index) p.xs.push_back(rg.node(j));
    return p;
}

PVIntegrator::PVIntegrator(RieszKernel which, BesselOrder mu, SmoothDatum f, PVOptions options)
    : which_(which), mu_(mu), f_(std::move(f)), options_(options) {
    if (!(options_.step > 0.0) || !(options_.cutoff_radius > 0.0)) throw DomainError("invalid PV quadrature options");
}

std::vector<Eigen::MatrixXd> PVIntegrator::truncated(const std::vector<TruncationRegion>& regions,
                                                     const EvalPoints& points) const {
    const double h = options_.step;
    for (const auto& r : regions) {
        if (r.epsilon < 2.0 * h) {
            throw NumericalError("region-too-small: epsilon " + std::to_string(r.epsilon) +
                                 " is below twice the cell size " + std::to_string(h));
        }
    }
    const auto nt = static_cast<Eigen::Index>(points.times.size());
    const auto nx = static_cast<Eigen::Index>(points.xs.size());
    std::vector<Eigen::MatrixXd> out(regions.size(), Eigen::MatrixXd::Zero(nt, nx));
    if (nt == 0 || nx == 0) return out;
    const double t_max = *std::max_element(points.times.begin(), points.times.end());

    for (Eigen::Index ix = 0; ix < nx; ++ix) {
        const double x = points.xs[static_cast<std::size_t>(ix)];
        if (!(x > 0.0)) throw DomainError("evaluation points need x > 0");
        const double a = std::min(options_.cutoff_radius, 0.5 * x);

        // Cells: σ_l = (l + ½)h, y_k = x + (k + ½)h.
        const double y_min = std::min(f_.x_lo, x - a);
        const double y_max = std::max(f_.x_hi, x + a);
        const int k_lo = std::max(static_cast<int>(std::floor((y_min - x) / h)), static_cast<int>(std::ceil(-x / h)));
        const int k_hi = static_cast<int>(std::ceil((y_max - x) / h));
        const int ny = k_hi - k_lo;
        const double sigma_max = std::max(a, std::sqrt(std::max(0.0, t_max - f_.t_lo)));
        const int ns = static_cast<int>(std::ceil(sigma_max / h));

        std::vector<double> sigma(static_cast<std::size_t>(ns));
        std::vector<double> ys(static_cast<std::size_t>(ny));
        for (int l = 0; l < ns; ++l) sigma[l] = (l + 0.5) * h;
        for (int k = 0; k < ny; ++k) ys[k] = x + (k_lo + k + 0.5) * h;

        // Kernel times cell weight 2σ h·h, and the cutoff φ.
        Eigen::MatrixXd table(ns, ny);
        Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(ns, ny);
        for (int l = 0; l < ns; ++l) {
            const double s = sigma[l] * sigma[l];
            for (int k = 0; k < ny; ++k) {
                table(l, k) = riesz_kernel(which_, mu_, KernelPoint(x, ys[k], s)) * 2.0 * sigma[l] * h * h;
                if (sigma[l] < a) phi(l, k) = cutoff(sigma[l] / a) * cutoff((ys[k] - x) / a);
            }
        }
        const double phi_grid = table.cwiseProduct(phi).sum();

        struct Removed {
            std::vector<std::pair<int, int>> cells;
            double exact;
        };
        std::vector<Removed> removed;
        for (const auto& region : regions) {
            Removed r;
            for (int l = 0; l < ns; ++l) {
                if (sigma[l] - 0.5 * h >= region.epsilon) break;
                for (int k = 0; k < ny; ++k) {
                    if (cell_meets(region, sigma[l], ys[k] - x, h)) r.cells.emplace_back(l, k);
                }
            }
            r.exact = cutoff_integral(which_, mu_, x, a, region);
            removed.push_back(std::move(r));
        }

        Eigen::MatrixXd fvals(ns, ny);
        for (Eigen::Index it = 0; it < nt; ++it) {
            const double t = points.times[static_cast<std::size_t>(it)];
            fvals.setZero();
            for (int l = 0; l < ns; ++l) {
                const double tau = t - sigma[l] * sigma[l];
                if (tau > f_.t_hi) continue;
                if (tau < f_.t_lo) break;
                for (int k = 0; k < ny; ++k) {
                    if (ys[k] >= f_.x_lo && ys[k] <= f_.x_hi) fvals(l, k) = f_(tau, ys[k]);
                }
            }
            const double f0 = f_(t, x);
            const double base = table.cwiseProduct(fvals).sum() - f0 * phi_grid;
            for (std::size_t r = 0; r < regions.size(); ++r) {
                double dropped = 0.0;
                for (const auto& [l, k] : removed[r].cells) dropped += table(l, k) * (fvals(l, k) - f0 * phi(l, k));
                out[r](it, ix) = base - dropped + f0 * removed[r].exact;
            }
        }
    }
    return out;
}

namespace {

Eigen::MatrixXd datum_at(const SmoothDatum& f, const EvalPoints& points) {
    Eigen::MatrixXd v(points.times.size(), points.xs.size());
    for (std::size_t i = 0; i < points.times.size(); ++i) {
        for (std::size_t j = 0; j < points.xs.size(); ++j) v(i, j) = f(points.times[i], points.xs[j]);
    }
    return v;
}

Eigen::MatrixXd pv_single(RieszKernel which, const BesselOrder& mu, const SmoothDatum& f,
                          const TruncationRegion& region, const EvalPoints& points, const PVOptions& options) {
    const PVIntegrator integ(which, mu, f, options);
    return integ.truncated({region}, points).front() + local_term(which, region.kind) * datum_at(f, points);
}

Eigen::MatrixXd bold(RieszKernel which, const BesselOrder& mu, const SmoothDatum& f, double epsilon,
                     const EvalPoints& points, const PVOptions& options) {
    const PVIntegrator integ(which, mu, f.zero_extended(), options);
    Eigen::MatrixXd v = integ.truncated({TruncationRegion(RegionKind::causal, epsilon)}, points).front();
    for (std::size_t i = 0; i < points.times.size(); ++i) {
        if (points.times[i] <= epsilon * epsilon) v.row(static_cast<Eigen::Index>(i)).setZero();
    }
    return v;
}

} // namespace

Eigen::MatrixXd pv_R(const BesselOrder& mu, const SmoothDatum& f, const TruncationRegion& region,
                     const EvalPoints& points, const PVOptions& options) {
    return pv_single(RieszKernel::space, mu, f, region, points, options);
}

Eigen::MatrixXd pv_Rtilde(const BesselOrder& mu, const SmoothDatum& f, const TruncationRegion& region,
                          const EvalPoints& points, const PVOptions& options) {
    return pv_single(RieszKernel::time, mu, f, region, points, options);
}

PVLimit pv_limit(RieszKernel which, const BesselOrder& mu, const SmoothDatum& f, RegionKind kind,
                 const EvalPoints& points, double epsilon0, int levels, const PVOptions& options) {
    if (levels < 1) throw DomainError("pv_limit needs at least one level");
    PVLimit out;
    std::vector<TruncationRegion> regions;
    for (int k = 0; k < levels; ++k) {
        out.epsilons.push_back(epsilon0 * std::ldexp(1.0, -k));
        regions.emplace_back(kind, out.epsilons.back());
    }
    const Eigen::MatrixXd local = local_term(which, kind) * datum_at(f, points);
    for (auto& m : PVIntegrator(which, mu, f, options).truncated(regions, points)) out.iterates.push_back(m + local);
    for (int k = 0; k + 1 < levels; ++k) {
        out.step_changes.push_back((out.iterates[k + 1] - out.iterates[k]).cwiseAbs().maxCoeff());
    }
    if (levels >= 3) {
        const auto& v1 = out.iterates[levels - 3];
        const auto& v2 = out.iterates[levels - 2];
        const auto& v3 = out.iterates[levels - 1];
        out.limit = (8.0 * v3 - 6.0 * v2 + v1) / 3.0;
    } else {
        out.limit = out.iterates.back();
    }
    return out;
}

Eigen::MatrixXd bold_R(const BesselOrder& mu, const SmoothDatum& f, double epsilon, const EvalPoints& points,
                       const PVOptions& options) {
    return bold(RieszKernel::space, mu, f, epsilon, points, options);
}

Eigen::MatrixXd bold_Rtilde(const BesselOrder& mu, const SmoothDatum& f, double epsilon, const EvalPoints& points,
                            const PVOptions& options) {
    return bold(RieszKernel::time, mu, f, epsilon, points, options);
}

Eigen::MatrixXd maximal_T_star(RieszKernel which, const BesselOrder& mu, const SmoothDatum& f,
                               const std::vector<double>& epsilons, const EvalPoints& points,
                               const PVOptions& options) {
    std::vector<TruncationRegion> regions;
    for (double e : epsilons) {
        regions.emplace_back(RegionKind::spatial_slice, e);
        regions.emplace_back(RegionKind::causal, e);
    }
    const auto values = PVIntegrator(which, mu, f.zero_extended(), options).truncated(regions, points);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(points.times.size(), points.xs.size());
    for (std::size_t i = 0; i < points.times.size(); ++i) {
        const double t = points.times[i];
        for (std::size_t e = 0; e < epsilons.size(); ++e) {
            if (!(epsilons[e] * epsilons[e] < t)) continue;
            const auto row = static_cast<Eigen::Index>(i);
            out.row(row) = out.row(row).cwiseMax((values[2 * e].row(row) - values[2 * e + 1].row(row)).cwiseAbs());
        }
    }
    return out;
}

Eigen::MatrixXd parabolic_maximal(const Field& f, const EvalPoints& points, int radii) {
    const int m = f.rows();
    const int n = f.cols();
    const TimeGrid& tg = f.time;
    const RadialGrid& rg = f.radial;
    Eigen::MatrixXd prefix = Eigen::MatrixXd::Zero(m + 1, n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < m; ++k) prefix(k + 1, j) = prefix(k, j) + std::abs(f.values(k, j));
    }
    const double r_max = std::sqrt(tg.length()) + (rg.x_max() - rg.x_min());
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(points.times.size(), points.xs.size());
    for (std::size_t pi = 0; pi < points.times.size(); ++pi) {
        const double t = points.times[pi];
        for (std::size_t pj = 0; pj < points.xs.size(); ++pj) {
            const double x = points.xs[pj];
            double best = 0.0;
            for (int level = 0; level < radii; ++level) {
                const double r = r_max * std::ldexp(1.0, -level);
                const int j_lo = rg.lower_index(x - r);
                double sum = 0.0;
                double measure = 0.0;
                for (int j = j_lo; j < n; ++j) {
                    const double w = std::abs(rg.node(j) - x);
                    if (rg.node(j) >= x + r) break;
                    if (w >= r) continue;
                    const double half = (r - w) * (r - w);
                    const int k_lo = std::max(0, static_cast<int>(std::floor((t - half - tg.t0()) / tg.dt())) + 1);
                    const int k_hi = std::min(m - 1, static_cast<int>(std::ceil((t + half - tg.t0()) / tg.dt())) - 1);
                    if (k_lo > k_hi) continue;
                    sum += (prefix(k_hi + 1, j) - prefix(k_lo, j)) * rg.weight(j);
                    measure += (k_hi - k_lo + 1) * rg.weight(j);
                }
                if (measure == 0.0) break;
                best = std::max(best, sum / measure);
            }
            out(static_cast<Eigen::Index>(pi), static_cast<Eigen::Index>(pj)) = best;
        }
    }
    return out;
}

Field parabolic_maximal(const Field& f, int radii) {
    EvalPoints p;
    for (int k = 0; k < f.rows(); ++k) p.times.push_back(f.time.time(k));
    p.xs = f.radial.nodes();
    return Field(f.time, f.radial, parabolic_maximal(f, p, radii).cast<cplx>());
}

} // namespace pbessel
