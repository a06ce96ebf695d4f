#pragma once

#include <cstdint>

namespace pbessel {

/// Order μ of the Bessel operator Δ_μ = ∂²ₓ + (1/4 − μ²)x⁻².
///
/// Construction enforces μ > −1. The classification helpers are pure
/// functions of μ and describe which boundedness statements apply.
class BesselOrder {
public:
    explicit BesselOrder(double mu);

    double mu() const noexcept { return mu_; }

    /// μ = −1/2: Δ_μ is the Neumann Laplacian on the half-line.
    bool is_neumann() const noexcept;
    /// μ = 1/2: Dirichlet Laplacian.
    bool is_dirichlet() const noexcept;
    /// μ > 1/2 or μ = −1/2: the Riesz kernels are standard Calderón–Zygmund
    /// kernels and weighted A_p* bounds hold.
    bool cz_class() const noexcept;

    /// Unweighted L^p strong type of the time Riesz transform R̃_μ (1 < p < ∞).
    bool rtilde_bounded_on_lp(double p) const noexcept;
    /// Unweighted L^p strong type of the space Riesz transform R_μ (1 < p < ∞).
    bool r_bounded_on_lp(double p) const noexcept;

    BesselOrder shifted(double by) const { return BesselOrder(mu_ + by); }

private:
    double mu_;
};

/// Γ(x) for x > 0. Throws NumericalError above the double overflow threshold.
double gamma(double x);

/// ln Γ(x) for x > 0.
double log_gamma(double x);

double erf(double x);

/// Asymptotic coefficient [ν,k] = (4ν²−1)(4ν²−9)…(4ν²−(2k−1)²) / (2^{2k} k!).
double asymptotic_coeff(double nu, int k);

/// e^{−z} I_ν(z) for ν > −1, z ≥ 0.
///
/// Power series below z* = max(30, ν²), the large-argument expansion with
/// twelve correction terms above it. At z = 0 returns 1 for ν = 0, 0 for
/// ν > 0 and +∞ for ν < 0.
double bessel_i_scaled(double nu, double z);

/// J_ν(z) for ν > −1, z ≥ 0.
double bessel_j(double nu, double z);

struct BesselJResult {
    double value;
    /// Set when z exceeds the range where the 1e−10 accuracy budget is
    /// maintained (z > 1e4 or ν too large for the switch point).
    bool degraded;
};

BesselJResult bessel_j_checked(double nu, double z);

namespace detail {

/// Switch point between the series and the asymptotic branch of bessel_i_scaled.
double bessel_i_switch(double nu) noexcept;

/// Series branch of e^{−z}I_ν(z), usable at any z (cost grows like z).
double bessel_i_scaled_series(double nu, double z);

/// Large-argument branch of e^{−z}I_ν(z) with terms k = 0..n.
double bessel_i_scaled_asymptotic(double nu, double z, int n = 12);

double bessel_j_series(double nu, double z);
double bessel_j_asymptotic(double nu, double z, int n = 20);
double bessel_j_switch(double nu) noexcept;

} // namespace detail

} // namespace pbessel
