#include "pbessel/grid.hpp"

#include "pbessel/errors.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace pbessel {

RadialGrid::RadialGrid(std::vector<double> nodes, std::vector<double> weights, double log_step)
    : nodes_(std::move(nodes)), weights_(std::move(weights)), log_step_(log_step) {}

RadialGrid RadialGrid::log_uniform(double x_min, double x_max, int n) {
    if (!(x_min > 0.0) || !(x_max > x_min) || !std::isfinite(x_max)) {
        throw DomainError("radial grid needs 0 < x_min < x_max < inf");
    }
    if (n < 8) throw DomainError("radial grid needs at least 8 nodes");
    const double step = std::log(x_max / x_min) / (n - 1);
    std::vector<double> nodes(static_cast<std::size_t>(n));
    std::vector<double> weights(static_cast<std::size_t>(n));
    static constexpr double kEnd[3] = {3.0 / 8.0, 7.0 / 6.0, 23.0 / 24.0};
    for (int j = 0; j < n; ++j) {
        const double x = x_min * std::exp(j * step);
        double c = 1.0;
        if (j < 3) c = kEnd[j];
        if (n - 1 - j < 3) c = kEnd[n - 1 - j];
        nodes[static_cast<std::size_t>(j)] = x;
        weights[static_cast<std::size_t>(j)] = c * x * step;
    }
    nodes.back() = x_max;
    return RadialGrid(std::move(nodes), std::move(weights), step);
}

RadialGrid RadialGrid::alias_free(double x_min, int n, double aliasing_margin) {
    if (!(aliasing_margin > 0.0)) throw DomainError("aliasing margin must be positive");
    if (n < 8) throw DomainError("radial grid needs at least 8 nodes");
    // X² ln(X/x_min) = margin·(n−1) is increasing in X; bisection on log X.
    const double target = aliasing_margin * (n - 1);
    double lo = std::log(x_min) + 1e-9;
    double hi = std::log(x_min) + 200.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double value = std::exp(2.0 * mid) * (mid - std::log(x_min));
        (value < target ? lo : hi) = mid;
    }
    return log_uniform(x_min, std::exp(0.5 * (lo + hi)), n);
}

double RadialGrid::calibration_error(double nu) const {
    const double p = nu + 0.5;
    double sum = 0.0;
    for (std::size_t j = 0; j < nodes_.size(); ++j) {
        const double x = nodes_[j];
        sum += weights_[j] * std::pow(x, p) * std::exp(-0.5 * x * x);
    }
    const double s = 0.5 * (p + 1.0);
    const double a = 0.5 * x_min() * x_min();
    const double b = 0.5 * x_max() * x_max();
    const double exact = std::pow(2.0, 0.5 * (p - 1.0)) *
                         (boost::math::tgamma_lower(s, b) - boost::math::tgamma_lower(s, a));
    return std::abs(sum - exact) / exact;
}

int RadialGrid::lower_index(double x) const {
    return static_cast<int>(std::lower_bound(nodes_.begin(), nodes_.end(), x) - nodes_.begin());
}

TimeGrid::TimeGrid(double t0, double dt, int m) : t0_(t0), dt_(dt), m_(m) {
    if (!(dt > 0.0)) throw DomainError("time step must be positive");
    if (m < 2 || (m & (m - 1)) != 0) {
        throw DomainError("time sample count must be a power of two, got " + std::to_string(m));
    }
}

double TimeGrid::frequency(int k) const noexcept {
    const int kk = k < m_ / 2 ? k : k - m_;
    return 2.0 * std::numbers::pi * kk / (m_ * dt_);
}

Field::Field(TimeGrid t, RadialGrid r)
    : time(t), radial(std::move(r)), values(Eigen::MatrixXcd::Zero(time.size(), radial.size())) {}

Field::Field(TimeGrid t, RadialGrid r, Eigen::MatrixXcd v) : time(t), radial(std::move(r)), values(std::move(v)) {
    if (values.rows() != time.size() || values.cols() != radial.size()) {
        throw DomainError("field shape does not match its grids");
    }
}

Field Field::sample(const TimeGrid& t, const RadialGrid& r, const std::function<double(double, double)>& f) {
    Field out(t, r);
    for (int j = 0; j < r.size(); ++j) {
        for (int k = 0; k < t.size(); ++k) out.values(k, j) = f(t.time(k), r.node(j));
    }
    return out;
}

double Field::l2_norm() const {
    double sum = 0.0;
    for (int j = 0; j < cols(); ++j) sum += values.col(j).squaredNorm() * radial.weight(j);
    return std::sqrt(sum * time.dt());
}

double relative_l2(const Field& a, const Field& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("relative_l2 on mismatched fields");
    Field diff(b.time, b.radial, a.values - b.values);
    return diff.l2_norm() / b.l2_norm();
}

} // namespace pbessel
