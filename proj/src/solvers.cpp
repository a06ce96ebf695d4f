#include "pbessel/solvers.hpp"

#include "pbessel/analysis.hpp"
#include "pbessel/errors.hpp"
#include "pbessel/kernels.hpp"

#include <cmath>
#include <functional>
#include <string>

namespace pbessel {

namespace {

constexpr int kMargin = 3;
constexpr double kSupportFloor = 1e-8;

using LagKernel = std::function<double(double tau, double x, double y)>;

struct Span {
    int lo = 0;
    int hi = -1;
    int count() const { return hi - lo + 1; }
    bool empty() const { return hi < lo; }
};

Span row_span(const Eigen::MatrixXd& a, double floor) {
    Span s;
    for (int k = 0; k < a.rows(); ++k) {
        if (a.row(k).cwiseAbs().maxCoeff() > floor) {
            if (s.empty()) s.lo = k;
            s.hi = k;
        }
    }
    return s;
}

Span col_span(const Eigen::MatrixXd& a, double floor) {
    Span s;
    for (int j = 0; j < a.cols(); ++j) {
        if (a.col(j).cwiseAbs().maxCoeff() > floor) {
            if (s.empty()) s.lo = j;
            s.hi = j;
        }
    }
    return s;
}

void check_radial_edges(const Eigen::MatrixXd& a, const std::string& what) {
    const double peak = a.cwiseAbs().maxCoeff();
    if (peak == 0.0) return;
    const Span cols = col_span(a, kSupportFloor * peak);
    if (cols.lo < kMargin || cols.hi > a.cols() - 1 - kMargin) {
        throw DomainError("support-violation: " + what + " reaches the radial grid edge");
    }
}

/// U(k) = Σ_m dt·K_{(m+½)dt}·A(k − m), A(i) = (f(i) + f(i−1))/2 the average over the
/// lag cell ending at row i. Rows of A below `first_row` are treated as zero.
Eigen::MatrixXd lag_convolution(const LagKernel& kernel, const Field& f, int first_row) {
    const Eigen::MatrixXd fr = f.values.real();
    const int m_rows = f.rows();
    const int n = f.cols();
    const double dt = f.time.dt();

    Eigen::MatrixXd avg = Eigen::MatrixXd::Zero(m_rows, n);
    for (int i = std::max(first_row, 0); i < m_rows; ++i) {
        avg.row(i) = 0.5 * fr.row(i);
        if (i > 0) avg.row(i) += 0.5 * fr.row(i - 1);
    }
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m_rows, n);
    const double peak = avg.cwiseAbs().maxCoeff();
    if (peak == 0.0) return out;
    const Span rows = row_span(avg, 0.0);
    const Span cols = col_span(avg, 0.0);

    // Fold the radial weights into the sources once.
    Eigen::MatrixXd src = avg.block(rows.lo, cols.lo, rows.count(), cols.count());
    for (int j = 0; j < cols.count(); ++j) src.col(j) *= f.radial.weight(cols.lo + j) * dt;

    Eigen::MatrixXd k_mat(n, cols.count());
    for (int lag = 0; lag + rows.lo < m_rows; ++lag) {
        const double tau = (lag + 0.5) * dt;
        for (int j = 0; j < cols.count(); ++j) {
            const double y = f.radial.node(cols.lo + j);
            for (int i = 0; i < n; ++i) k_mat(i, j) = kernel(tau, f.radial.node(i), y);
        }
        const int count = std::min(rows.count(), m_rows - (rows.lo + lag));
        out.middleRows(rows.lo + lag, count).noalias() += src.topRows(count) * k_mat.transpose();
    }
    return out;
}

LagKernel heat(const BesselOrder& mu) {
    return [mu](double tau, double x, double y) { return heat_kernel_bessel(mu, tau, x, y); };
}

void require_time_origin(const TimeGrid& tg) {
    if (std::abs(tg.t0()) > 1e-12 * tg.dt()) {
        throw DomainError("time-origin: the Cauchy problem needs a time grid starting at t = 0");
    }
}

double weighted_norm(const Eigen::MatrixXd& r, const RadialGrid& rg, double dt, int k0, int k1, int j0, int j1,
                     bool inside) {
    double acc = 0.0;
    for (int k = 0; k < r.rows(); ++k) {
        const bool k_in = k >= k0 && k <= k1;
        for (int j = 0; j < r.cols(); ++j) {
            const bool in = k_in && j >= j0 && j <= j1;
            if (in == inside) acc += r(k, j) * r(k, j) * rg.weight(j);
        }
    }
    return std::sqrt(acc * dt);
}

/// First and second derivative along a uniform axis at index i, one-sided near the ends.
struct Stencil {
    double d1;
    double d2;
};

template <typename Get>
Stencil axis_derivatives(const Get& v, int i, int size, double h, int one_sided_lo) {
    if (i < one_sided_lo) {
        return {(-3.0 * v(i) + 4.0 * v(i + 1) - v(i + 2)) / (2.0 * h),
                (2.0 * v(i) - 5.0 * v(i + 1) + 4.0 * v(i + 2) - v(i + 3)) / (h * h)};
    }
    if (i == size - 1) {
        return {(3.0 * v(i) - 4.0 * v(i - 1) + v(i - 2)) / (2.0 * h),
                (2.0 * v(i) - 5.0 * v(i - 1) + 4.0 * v(i - 2) - v(i - 3)) / (h * h)};
    }
    return {(v(i + 1) - v(i - 1)) / (2.0 * h), (v(i + 1) - 2.0 * v(i) + v(i - 1)) / (h * h)};
}

} // namespace

Field solve_wholespace(const BesselOrder& mu, const Field& f) {
    const Eigen::MatrixXd fr = f.values.real();
    check_radial_edges(fr, "forcing");
    const double peak = fr.cwiseAbs().maxCoeff();
    if (peak > 0.0 && row_span(fr, kSupportFloor * peak).lo < kMargin) {
        throw DomainError("support-violation: forcing reaches the start of the time window");
    }
    return Field(f.time, f.radial, lag_convolution(heat(mu), f, 0).cast<cplx>());
}

Field solve_cauchy(const CauchyProblem& problem) {
    const Field& f = problem.f;
    require_time_origin(f.time);
    if (problem.g.size() != f.cols()) {
        throw DomainError("shape-mismatch: initial datum and forcing use different radial grids");
    }
    check_radial_edges(f.values.real(), "forcing");
    check_radial_edges(problem.g.transpose(), "initial datum");

    // Cells inside (0, t_k) only: the one ending at row 0 would reach negative times.
    Eigen::MatrixXd u = lag_convolution(heat(problem.mu), f, 1);

    const Eigen::MatrixXd g_row = problem.g.transpose();
    const double g_peak = g_row.cwiseAbs().maxCoeff();
    if (g_peak > 0.0) {
        const Span cols = col_span(g_row, 0.0);
        u.row(0) += g_row;
        for (int k = 1; k < f.rows(); ++k) {
            const double t = f.time.time(k);
            for (int i = 0; i < f.cols(); ++i) {
                double acc = 0.0;
                for (int j = cols.lo; j <= cols.hi; ++j) {
                    acc += heat_kernel_bessel(problem.mu, t, f.radial.node(i), f.radial.node(j)) * problem.g(j) *
                           f.radial.weight(j);
                }
                u(k, i) += acc;
            }
        }
    }
    return Field(f.time, f.radial, u.cast<cplx>());
}

namespace {

struct ResidualParts {
    Eigen::MatrixXd residual;
    Eigen::MatrixXd laplacian;
};

ResidualParts residual_parts(const Field& u, const Field& f, const BesselOrder& mu) {
    if (u.rows() != f.rows() || u.cols() != f.cols()) {
        throw DomainError("shape-mismatch: residual needs u and f on a common grid");
    }
    const int m_rows = u.rows();
    const int n = u.cols();
    if (m_rows < 2 * kMargin + 1 || n < 2 * kMargin + 1) {
        throw DomainError("grid-too-small: residual needs at least 7 nodes per axis");
    }
    const Eigen::MatrixXd ur = u.values.real();
    const Eigen::MatrixXd fr = f.values.real();
    const double dt = u.time.dt();
    const double h = u.radial.log_step();
    const double potential = 0.25 - mu.mu() * mu.mu();

    ResidualParts out{Eigen::MatrixXd(m_rows, n), Eigen::MatrixXd(m_rows, n)};
    for (int k = 0; k < m_rows; ++k) {
        for (int j = 0; j < n; ++j) {
            const auto along_t = [&](int i) { return ur(i, j); };
            const auto along_s = [&](int i) { return ur(k, i); };
            const double ut = axis_derivatives(along_t, k, m_rows, dt, 1).d1;
            const Stencil s = axis_derivatives(along_s, j, n, h, 2);
            const double x = u.radial.node(j);
            // In s = ln x: ∂²_x = x^{−2}(∂²_s − ∂_s).
            out.laplacian(k, j) = (s.d2 - s.d1 + potential * ur(k, j)) / (x * x);
            out.residual(k, j) = ut - out.laplacian(k, j) - fr(k, j);
        }
    }
    return out;
}

} // namespace

Field residual_field(const Field& u, const Field& f, const BesselOrder& mu) {
    return Field(u.time, u.radial, residual_parts(u, f, mu).residual.cast<cplx>());
}

ResidualReport residual_check(const Field& u, const Field& f, const BesselOrder& mu) {
    const ResidualParts parts = residual_parts(u, f, mu);
    const Eigen::MatrixXd fr = f.values.real();
    const double dt = u.time.dt();
    const int k0 = kMargin, k1 = u.rows() - 1 - kMargin;
    const int j0 = kMargin, j1 = u.cols() - 1 - kMargin;
    ResidualReport rep;
    rep.interior_norm = weighted_norm(parts.residual, u.radial, dt, k0, k1, j0, j1, true);
    rep.boundary_layer_norm = weighted_norm(parts.residual, u.radial, dt, k0, k1, j0, j1, false);
    double scale = weighted_norm(fr, u.radial, dt, k0, k1, j0, j1, true);
    if (scale == 0.0) scale = weighted_norm(parts.laplacian, u.radial, dt, k0, k1, j0, j1, true);
    rep.relative_interior = scale > 0.0 ? rep.interior_norm / scale : 0.0;
    rep.dt = dt;
    rep.dx_min = u.radial.node(1) - u.radial.node(0);
    rep.dx_max = u.radial.node(u.cols() - 1) - u.radial.node(u.cols() - 2);
    return rep;
}

Field maximal_regularity_operator(const BesselOrder& mu, const Field& f) {
    require_time_origin(f.time);
    check_radial_edges(f.values.real(), "forcing");
    const LagKernel dtw = [mu](double tau, double x, double y) { return kernel_Ktilde(mu, KernelPoint(x, y, tau)); };
    return Field(f.time, f.radial, lag_convolution(dtw, f, 1).cast<cplx>());
}

MaxRegResult maximal_regularity_ratio(const BesselOrder& mu, double p, double q, const Field& f) {
    if (!(p > 1.0 && p < INFINITY) || !(q > 1.0 && q < INFINITY)) {
        throw DomainError("exponent-range: maximal regularity needs 1 < p, q < ∞");
    }
    MaxRegResult res;
    res.hypothesis_ok = mu.mu() > -0.5;
    const double denom = mixed_norm(f, p, q);
    if (denom == 0.0) return res;
    res.ratio = mixed_norm(maximal_regularity_operator(mu, f), p, q) / denom;
    return res;
}

} // namespace pbessel
