#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <vector>

namespace pbessel {

using cplx = std::complex<double>;

/// Quadrature nodes and weights on [x_min, x_max] ⊂ (0, ∞).
///
/// Nodes are log-uniform, x_j = x_min·e^{jΔ}. Weights are x_jΔ with
/// fourth-order Gregory end corrections, i.e. the trapezoid rule in log x.
/// The same node set serves as the dual (frequency) grid of the Hankel
/// transform.
class RadialGrid {
public:
    static RadialGrid log_uniform(double x_min, double x_max, int n);

    /// Log-uniform grid whose upper end X solves X²·Δ = aliasing_margin.
    ///
    /// The discrete transform samples √(xz)J(xz) with phase step x·z·Δ, so
    /// keeping X²Δ below π makes h∘h alias-free on the whole node set.
    /// Doubling n raises X and halves Δ together.
    static RadialGrid alias_free(double x_min, int n, double aliasing_margin = kDefaultAliasingMargin);

    static constexpr double kDefaultAliasingMargin = 2.4;

    int size() const noexcept { return static_cast<int>(nodes_.size()); }
    double x_min() const noexcept { return nodes_.front(); }
    double x_max() const noexcept { return nodes_.back(); }
    double log_step() const noexcept { return log_step_; }
    const std::vector<double>& nodes() const noexcept { return nodes_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    double node(int j) const { return nodes_[static_cast<std::size_t>(j)]; }
    double weight(int j) const { return weights_[static_cast<std::size_t>(j)]; }

    /// Relative error of the weights on ∫ x^{ν+1/2} e^{−x²/2} dx over [x_min, x_max].
    double calibration_error(double nu) const;

    /// First index with node ≥ x (size() if none).
    int lower_index(double x) const;

private:
    RadialGrid(std::vector<double> nodes, std::vector<double> weights, double log_step);

    std::vector<double> nodes_;
    std::vector<double> weights_;
    double log_step_;
};

/// Uniform time samples t_k = t0 + k·dt, k = 0..M−1, read as one period.
class TimeGrid {
public:
    TimeGrid(double t0, double dt, int m);

    double t0() const noexcept { return t0_; }
    double dt() const noexcept { return dt_; }
    int size() const noexcept { return m_; }
    double time(int k) const noexcept { return t0_ + k * dt_; }
    double length() const noexcept { return m_ * dt_; }

    /// Dual frequency of FFT slot k: 2πk'/(M·dt) with k' = k or k − M, k' ∈ [−M/2, M/2).
    double frequency(int k) const noexcept;

private:
    double t0_;
    double dt_;
    int m_;
};

/// Complex samples f(t_k, x_j); rows are times, columns radial nodes.
struct Field {
    TimeGrid time;
    RadialGrid radial;
    Eigen::MatrixXcd values;

    Field(TimeGrid t, RadialGrid r);
    Field(TimeGrid t, RadialGrid r, Eigen::MatrixXcd v);

    static Field sample(const TimeGrid& t, const RadialGrid& r, const std::function<double(double, double)>& f);

    int rows() const noexcept { return static_cast<int>(values.rows()); }
    int cols() const noexcept { return static_cast<int>(values.cols()); }

    /// Weighted ℓ² norm: (Σ |f|² w_j dt)^{1/2}.
    double l2_norm() const;
};

/// Samples in (ρ_k, z_j); the z nodes coincide with the radial grid.
struct SpectralField {
    TimeGrid time;
    RadialGrid radial;
    Eigen::MatrixXcd values;
};

/// Relative weighted ℓ² distance ‖a − b‖ / ‖b‖ on a common grid.
double relative_l2(const Field& a, const Field& b);

} // namespace pbessel
