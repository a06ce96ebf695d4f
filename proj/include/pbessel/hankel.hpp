#pragma once

#include "pbessel/grid.hpp"
#include "pbessel/specfun.hpp"

#include <Eigen/Dense>

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace pbessel {

/// Discrete Hankel transform h_ν(g)(x_i) = Σ_j √(x_i x_j) J_ν(x_i x_j) g_j w_j.
///
/// The node set doubles as its own dual grid, so h_ν∘h_ν ≈ id. Construction
/// checks the grid calibration for ν and throws NumericalError
/// ("grid-not-calibrated") when it exceeds 1e−8. A plan is immutable and can
/// be shared between threads.
class HankelPlan {
public:
    HankelPlan(double nu, const RadialGrid& grid);

    double order() const noexcept { return nu_; }
    const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }

    Eigen::VectorXd apply(const Eigen::VectorXd& g) const;

    /// Transforms every row of `rows` (time × radial layout).
    Eigen::MatrixXcd apply_rows(const Eigen::MatrixXcd& rows) const;

    /// Evaluates the transform of grid samples `g` at arbitrary points.
    Eigen::VectorXd synthesize_at(const std::vector<double>& points, const Eigen::VectorXd& g) const;

private:
    double nu_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
    Eigen::MatrixXd matrix_;
};

/// Calibration tolerance enforced by HankelPlan.
inline constexpr double kCalibrationTolerance = 1e-8;

Eigen::VectorXd hankel_transform(const BesselOrder& mu, const Eigen::VectorXd& g, const RadialGrid& grid);

/// Discrete 𝓕(φ)(ρ_k) = Σ_n e^{−iρ_k t_n} φ(t_n) dt along the time axis.
SpectralField time_fourier(const Field& f);
Field inverse_time_fourier(const SpectralField& s);

/// Throws DomainError ("support-violation") when f is not negligible outside
/// the central half of its time window or near the radial grid ends.
void check_support(const Field& f, double relative_floor = 1e-10);

/// Sign of the time Riesz multiplier ±iρ/(z² + iρ).
///
/// convention: +iρ/(z²+iρ), the symbol of ∂_t L_μ under 𝓕(∂_tφ) = iρ𝓕(φ).
/// paper: the opposite sign.
enum class RtildeSign { paper, convention };

double rtilde_sign_factor(RtildeSign sign) noexcept;

cplx multiplier_L(double z, double rho) noexcept;
cplx multiplier_R(double z, double rho) noexcept;
cplx multiplier_Rtilde(double z, double rho, RtildeSign sign) noexcept;

/// Spectral realization of L_μ, R_μ, R̃_μ and the transplantation S_μ on one grid.
///
/// Plans for the orders μ and μ+2 are built on first use.
class SpectralEngine {
public:
    SpectralEngine(BesselOrder mu, RadialGrid grid);

    const BesselOrder& order() const noexcept { return mu_; }
    const RadialGrid& grid() const noexcept { return grid_; }
    const HankelPlan& plan(double nu) const;

    Field op_L(const Field& f) const;
    Field op_R(const Field& f) const;
    Field op_Rtilde(const Field& f, RtildeSign sign = RtildeSign::convention) const;

    /// Adjoint-side space transform h_μ[z²/(z²−iρ) h_{μ+2}(·)] (the dual of R_μ).
    Field op_R_adjoint(const Field& f) const;

    /// S_μ = h_μ h_{μ+2}.
    Eigen::VectorXd transplant(const Eigen::VectorXd& g) const;
    /// S_μ* = h_{μ+2} h_μ.
    Eigen::VectorXd transplant_adjoint(const Eigen::VectorXd& g) const;
    Field transplant(const Field& f) const;
    Field transplant_adjoint(const Field& f) const;

private:
    template <class M>
    Field apply_multiplier(const Field& f, double in_order, double out_order, M multiplier) const;

    BesselOrder mu_;
    RadialGrid grid_;
    mutable std::mutex plans_mutex_;
    mutable std::map<double, std::shared_ptr<const HankelPlan>> plans_;
};

Field op_L(const BesselOrder& mu, const Field& f);
Field op_R_spectral(const BesselOrder& mu, const Field& f);
Field op_Rtilde_spectral(const BesselOrder& mu, const Field& f, RtildeSign sign = RtildeSign::convention);
Eigen::VectorXd transplant(const BesselOrder& mu, const Eigen::VectorXd& g, const RadialGrid& grid);

} // namespace pbessel
