#pragma once

#include "pbessel/specfun.hpp"

namespace pbessel {

/// A pair of half-line points at time lag s = t − τ.
///
/// s ≤ 0 is allowed and maps every causal kernel to 0.
struct KernelPoint {
    double x;
    double y;
    double s;

    KernelPoint(double x_, double y_, double s_);

    /// Parabolic distance √|s| + |x − y|.
    double distance() const noexcept;
};

/// W_t^μ(x, y), the kernel of exp(tΔ_μ).
double heat_kernel_bessel(const BesselOrder& mu, double t, double x, double y);

/// Gaussian e^{−z²/4t}/√(4πt).
double heat_kernel_classical(double t, double z);

/// δ_{μ+1}δ_μ W_s^μ(x, y), the kernel of the space Riesz transform; 0 for s ≤ 0.
double kernel_K(const BesselOrder& mu, const KernelPoint& p);

/// ∂_s W_s^μ(x, y), the kernel of the time Riesz transform; 0 for s ≤ 0.
double kernel_Ktilde(const BesselOrder& mu, const KernelPoint& p);

/// ∂_x W_s^μ(x, y); requires s > 0.
double kernel_dx_W(const BesselOrder& mu, const KernelPoint& p);

/// Which Riesz kernel an envelope probe differentiates.
enum class RieszKernel { space, time };

double riesz_kernel(RieszKernel which, const BesselOrder& mu, const KernelPoint& p);

enum class EnvelopeKind { size3, grad_x4, grad_y4, dt5 };

/// C/(√s + |x − y|)^exponent.
struct Envelope {
    int exponent;
    double constant;

    double value(const KernelPoint& p) const;
};

int envelope_exponent(EnvelopeKind kind) noexcept;

/// |kernel quantity| · d^exponent, the quantity the CZ size and smoothness
/// estimates bound by a constant.
///
/// Gradient and time-derivative kinds use centered differences with step
/// ε_mach^{1/3} times the local scale. Returns 0 for s ≤ 0 and throws
/// NumericalError when d < 1e−12.
double envelope_ratio(EnvelopeKind kind, const BesselOrder& mu, const KernelPoint& p,
                      RieszKernel which = RieszKernel::space);

/// Centered-difference step used by envelope_ratio for a coordinate of size `scale`.
double fd_step(double scale) noexcept;

namespace detail {

/// e^{−z}(I_ν, I_{ν+1} − I_ν, I_{ν+2} − 2I_{ν+1} + I_ν)(z).
///
/// The differences are formed from combined asymptotic coefficients when z is
/// large, which avoids the cancellation of the direct subtraction.
struct ScaledDifferences {
    double d0;
    double d1;
    double d2;
};

ScaledDifferences scaled_differences(double nu, double z);

} // namespace detail

} // namespace pbessel
