#include "pbessel/hankel.hpp"

#include "pbessel/errors.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <string>

namespace pbessel {

namespace {

// The FFTW planner is not reentrant.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

void fft_columns(Eigen::MatrixXcd& data, int sign) {
    const int m = static_cast<int>(data.rows());
    const int n = static_cast<int>(data.cols());
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_many_dft(1, &m, n, ptr, nullptr, 1, m, ptr, nullptr, 1, m, sign, FFTW_ESTIMATE);
    }
    if (plan == nullptr) throw NumericalError("FFTW could not create a plan");
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
}

} // namespace

HankelPlan::HankelPlan(double nu, const RadialGrid& grid)
    : nu_(nu), nodes_(grid.nodes()), weights_(grid.weights()) {
    if (!(nu > -1.0)) throw DomainError("Hankel order must exceed -1");
    const double err = grid.calibration_error(nu);
    if (!(err <= kCalibrationTolerance)) {
        throw NumericalError("grid-not-calibrated: order " + std::to_string(nu) + " has quadrature error " +
                             std::to_string(err));
    }
    const int n = grid.size();
    Eigen::MatrixXd kernel(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            const double z = nodes_[i] * nodes_[j];
            const double v = std::sqrt(z) * bessel_j(nu, z);
            kernel(i, j) = v;
            kernel(j, i) = v;
        }
    }
    matrix_.resize(n, n);
    for (int j = 0; j < n; ++j) matrix_.col(j) = kernel.col(j) * weights_[j];
    // The integrand behaves like y^{2ν+1} below the first node.
    matrix_.col(0) += kernel.col(0) * (nodes_[0] / (2.0 * nu + 2.0));
}

Eigen::VectorXd HankelPlan::apply(const Eigen::VectorXd& g) const {
    if (g.size() != matrix_.cols()) throw DomainError("Hankel input length does not match the grid");
    return matrix_ * g;
}

Eigen::MatrixXcd HankelPlan::apply_rows(const Eigen::MatrixXcd& rows) const {
    if (rows.cols() != matrix_.cols()) throw DomainError("Hankel input width does not match the grid");
    const Eigen::MatrixXd re = rows.real() * matrix_.transpose();
    const Eigen::MatrixXd im = rows.imag() * matrix_.transpose();
    Eigen::MatrixXcd out(rows.rows(), rows.cols());
    out.real() = re;
    out.imag() = im;
    return out;
}

Eigen::VectorXd HankelPlan::synthesize_at(const std::vector<double>& points, const Eigen::VectorXd& g) const {
    const auto n = static_cast<int>(nodes_.size());
    Eigen::VectorXd out(static_cast<Eigen::Index>(points.size()));
    for (std::size_t p = 0; p < points.size(); ++p) {
        const double x = points[p];
        double sum = 0.0;
        for (int j = 0; j < n; ++j) {
            const double z = x * nodes_[j];
            double w = weights_[j];
            if (j == 0) w += nodes_[0] / (2.0 * nu_ + 2.0);
            sum += std::sqrt(z) * bessel_j(nu_, z) * g[j] * w;
        }
        out[static_cast<Eigen::Index>(p)] = sum;
    }
    return out;
}

Eigen::VectorXd hankel_transform(const BesselOrder& mu, const Eigen::VectorXd& g, const RadialGrid& grid) {
    return HankelPlan(mu.mu(), grid).apply(g);
}

SpectralField time_fourier(const Field& f) {
    Eigen::MatrixXcd data = f.values;
    fft_columns(data, FFTW_FORWARD);
    const TimeGrid& tg = f.time;
    for (int k = 0; k < tg.size(); ++k) {
        const cplx phase = std::polar(tg.dt(), -tg.frequency(k) * tg.t0());
        data.row(k) *= phase;
    }
    return {f.time, f.radial, std::move(data)};
}

Field inverse_time_fourier(const SpectralField& s) {
    Eigen::MatrixXcd data = s.values;
    const TimeGrid& tg = s.time;
    for (int k = 0; k < tg.size(); ++k) {
        const cplx phase = std::polar(1.0 / (tg.size() * tg.dt()), tg.frequency(k) * tg.t0());
        data.row(k) *= phase;
    }
    fft_columns(data, FFTW_BACKWARD);
    return Field(s.time, s.radial, std::move(data));
}

void check_support(const Field& f, double relative_floor) {
    const double peak = f.values.cwiseAbs().maxCoeff();
    if (peak == 0.0) return;
    const double floor = relative_floor * peak;
    const int m = f.rows();
    const int n = f.cols();
    const int quarter = m / 4;
    for (int k = 0; k < m; ++k) {
        if (k >= quarter && k < m - quarter) continue;
        if (f.values.row(k).cwiseAbs().maxCoeff() > floor) {
            throw DomainError("support-violation: data reach the outer half of the time window");
        }
    }
    for (int j : {0, 1, 2, n - 3, n - 2, n - 1}) {
        if (f.values.col(j).cwiseAbs().maxCoeff() > floor) {
            throw DomainError("support-violation: data reach the radial grid boundary");
        }
    }
}

double rtilde_sign_factor(RtildeSign sign) noexcept { return sign == RtildeSign::convention ? 1.0 : -1.0; }

cplx multiplier_L(double z, double rho) noexcept { return 1.0 / cplx(z * z, rho); }

cplx multiplier_R(double z, double rho) noexcept { return z * z / cplx(z * z, rho); }

cplx multiplier_Rtilde(double z, double rho, RtildeSign sign) noexcept {
    return rtilde_sign_factor(sign) * cplx(0.0, rho) / cplx(z * z, rho);
}

SpectralEngine::SpectralEngine(BesselOrder mu, RadialGrid grid) : mu_(mu), grid_(std::move(grid)) {}

const HankelPlan& SpectralEngine::plan(double nu) const {
    std::lock_guard<std::mutex> lock(plans_mutex_);
    auto it = plans_.find(nu);
    if (it == plans_.end()) {
        it = plans_.emplace(nu, std::make_shared<const HankelPlan>(nu, grid_)).first;
    }
    return *it->second;
}

template <class M>
Field SpectralEngine::apply_multiplier(const Field& f, double in_order, double out_order, M multiplier) const {
    if (f.cols() != grid_.size()) throw DomainError("field does not live on the engine grid");
    SpectralField s = time_fourier(f);
    s.values = plan(in_order).apply_rows(s.values);
    for (int j = 0; j < s.values.cols(); ++j) {
        const double z = grid_.node(j);
        for (int k = 0; k < s.values.rows(); ++k) s.values(k, j) *= multiplier(z, f.time.frequency(k));
    }
    s.values = plan(out_order).apply_rows(s.values);
    return inverse_time_fourier(s);
}

Field SpectralEngine::op_L(const Field& f) const {
    return apply_multiplier(f, mu_.mu(), mu_.mu(), multiplier_L);
}

Field SpectralEngine::op_R(const Field& f) const {
    return apply_multiplier(f, mu_.mu(), mu_.mu() + 2.0, multiplier_R);
}

Field SpectralEngine::op_Rtilde(const Field& f, RtildeSign sign) const {
    return apply_multiplier(f, mu_.mu(), mu_.mu(),
                            [sign](double z, double rho) { return multiplier_Rtilde(z, rho, sign); });
}

Field SpectralEngine::op_R_adjoint(const Field& f) const {
    return apply_multiplier(f, mu_.mu() + 2.0, mu_.mu(),
                            [](double z, double rho) { return z * z / cplx(z * z, -rho); });
}

Eigen::VectorXd SpectralEngine::transplant(const Eigen::VectorXd& g) const {
    return plan(mu_.mu()).apply(plan(mu_.mu() + 2.0).apply(g));
}

Eigen::VectorXd SpectralEngine::transplant_adjoint(const Eigen::VectorXd& g) const {
    return plan(mu_.mu() + 2.0).apply(plan(mu_.mu()).apply(g));
}

Field SpectralEngine::transplant(const Field& f) const {
    return Field(f.time, f.radial, plan(mu_.mu()).apply_rows(plan(mu_.mu() + 2.0).apply_rows(f.values)));
}

Field SpectralEngine::transplant_adjoint(const Field& f) const {
    return Field(f.time, f.radial, plan(mu_.mu() + 2.0).apply_rows(plan(mu_.mu()).apply_rows(f.values)));
}

Field op_L(const BesselOrder& mu, const Field& f) { return SpectralEngine(mu, f.radial).op_L(f); }

Field op_R_spectral(const BesselOrder& mu, const Field& f) { return SpectralEngine(mu, f.radial).op_R(f); }

Field op_Rtilde_spectral(const BesselOrder& mu, const Field& f, RtildeSign sign) {
    return SpectralEngine(mu, f.radial).op_Rtilde(f, sign);
}

Eigen::VectorXd transplant(const BesselOrder& mu, const Eigen::VectorXd& g, const RadialGrid& grid) {
    return SpectralEngine(mu, grid).transplant(g);
}

} // namespace pbessel
