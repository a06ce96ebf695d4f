#include "pbessel/kernels.hpp"

#include "pbessel/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace pbessel {

namespace {

constexpr int kAsymptoticTerms = 12;

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(name) + " must be positive and finite, got " + std::to_string(v));
    }
}

double combo_switch(double nu) { return std::max(30.0, (nu + 2.0) * (nu + 2.0)); }

// exp(log(prefactor) − gaussian_exponent) without forming either factor on its own.
double scaled_gaussian(double log_prefactor, double x, double y, double s) {
    const double u = x - y;
    return std::exp(log_prefactor - u * u / (4.0 * s));
}

} // namespace

namespace detail {

ScaledDifferences scaled_differences(double nu, double z) {
    if (z < combo_switch(nu)) {
        const double i0 = bessel_i_scaled(nu, z);
        const double i1 = bessel_i_scaled(nu + 1.0, z);
        const double i2 = bessel_i_scaled(nu + 2.0, z);
        return {i0, i1 - i0, i2 - 2.0 * i1 + i0};
    }
    const double inv_2z = 1.0 / (2.0 * z);
    double a = 1.0;
    double b = 1.0;
    double c = 1.0;
    double power = 1.0;
    double d0 = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    const double q0 = 4.0 * nu * nu;
    const double q1 = 4.0 * (nu + 1.0) * (nu + 1.0);
    const double q2 = 4.0 * (nu + 2.0) * (nu + 2.0);
    for (int k = 0; k <= kAsymptoticTerms; ++k) {
        if (k > 0) {
            const double odd2 = (2.0 * k - 1.0) * (2.0 * k - 1.0);
            const double den = 4.0 * k;
            a *= (q0 - odd2) / den;
            b *= (q1 - odd2) / den;
            c *= (q2 - odd2) / den;
            power *= -inv_2z;
        }
        d0 += a * power;
        d1 += (b - a) * power;
        d2 += (c - 2.0 * b + a) * power;
    }
    const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * z);
    return {d0 * norm, d1 * norm, d2 * norm};
}

} // namespace detail

KernelPoint::KernelPoint(double x_, double y_, double s_) : x(x_), y(y_), s(s_) {
    require_positive(x, "x");
    require_positive(y, "y");
    if (!std::isfinite(s)) throw DomainError("time lag must be finite");
}

double KernelPoint::distance() const noexcept { return std::sqrt(std::abs(s)) + std::abs(x - y); }

double heat_kernel_bessel(const BesselOrder& mu, double t, double x, double y) {
    require_positive(t, "t");
    require_positive(x, "x");
    require_positive(y, "y");
    const double xy = x * y;
    const double z = xy / (2.0 * t);
    const double log_pref = 0.5 * std::log(xy) - std::log(2.0 * t);
    return scaled_gaussian(log_pref, x, y, t) * bessel_i_scaled(mu.mu(), z);
}

double heat_kernel_classical(double t, double z) {
    require_positive(t, "t");
    return std::exp(-z * z / (4.0 * t)) / std::sqrt(4.0 * std::numbers::pi * t);
}

double kernel_K(const BesselOrder& mu, const KernelPoint& p) {
    if (p.s <= 0.0) return 0.0;
    const double x = p.x;
    const double y = p.y;
    const double two_s = 2.0 * p.s;
    const auto d = detail::scaled_differences(mu.mu(), x * y / two_s);
    const double r = y / x;
    const double delta = (y - x) / x;
    const double bracket = r * r * d.d2 + 2.0 * delta * r * d.d1 + delta * delta * d.d0;
    const double log_pref = 2.5 * std::log(x) + 0.5 * std::log(y) - 3.0 * std::log(two_s);
    return scaled_gaussian(log_pref, x, y, p.s) * bracket;
}

double kernel_Ktilde(const BesselOrder& mu, const KernelPoint& p) {
    if (p.s <= 0.0) return 0.0;
    const double x = p.x;
    const double y = p.y;
    const double two_s = 2.0 * p.s;
    const auto d = detail::scaled_differences(mu.mu(), x * y / two_s);
    const double u = x - y;
    const double bracket = (u * u - 2.0 * (mu.mu() + 1.0) * two_s) * d.d0 - 2.0 * x * y * d.d1;
    const double log_pref = 0.5 * std::log(x * y) - 3.0 * std::log(two_s);
    return scaled_gaussian(log_pref, x, y, p.s) * bracket;
}

double kernel_dx_W(const BesselOrder& mu, const KernelPoint& p) {
    require_positive(p.s, "s");
    const double x = p.x;
    const double y = p.y;
    const double two_s = 2.0 * p.s;
    const auto d = detail::scaled_differences(mu.mu(), x * y / two_s);
    const double bracket = ((mu.mu() + 0.5) / x + (y - x) / two_s) * d.d0 + (y / two_s) * d.d1;
    const double log_pref = 0.5 * std::log(x * y) - std::log(two_s);
    return scaled_gaussian(log_pref, x, y, p.s) * bracket;
}

double riesz_kernel(RieszKernel which, const BesselOrder& mu, const KernelPoint& p) {
    return which == RieszKernel::space ? kernel_K(mu, p) : kernel_Ktilde(mu, p);
}

double Envelope::value(const KernelPoint& p) const {
    const double d = p.distance();
    if (!(d > 0.0)) throw NumericalError("envelope evaluated on the diagonal");
    return constant / std::pow(d, exponent);
}

int envelope_exponent(EnvelopeKind kind) noexcept {
    switch (kind) {
    case EnvelopeKind::size3: return 3;
    case EnvelopeKind::grad_x4:
    case EnvelopeKind::grad_y4: return 4;
    case EnvelopeKind::dt5: return 5;
    }
    return 0;
}

double fd_step(double scale) noexcept {
    return std::cbrt(std::numeric_limits<double>::epsilon()) * scale;
}

double envelope_ratio(EnvelopeKind kind, const BesselOrder& mu, const KernelPoint& p, RieszKernel which) {
    if (p.s <= 0.0) return 0.0;
    const double d = p.distance();
    if (d < 1e-12) {
        throw NumericalError("point too close to the diagonal for an envelope ratio (d = " +
                             std::to_string(d) + ")");
    }
    auto k = [&](double x, double y, double s) { return riesz_kernel(which, mu, KernelPoint(x, y, s)); };
    double quantity = 0.0;
    switch (kind) {
    case EnvelopeKind::size3:
        quantity = k(p.x, p.y, p.s);
        break;
    case EnvelopeKind::grad_x4: {
        const double h = fd_step(std::min(p.x, d));
        quantity = (k(p.x + h, p.y, p.s) - k(p.x - h, p.y, p.s)) / (2.0 * h);
        break;
    }
    case EnvelopeKind::grad_y4: {
        const double h = fd_step(std::min(p.y, d));
        quantity = (k(p.x, p.y + h, p.s) - k(p.x, p.y - h, p.s)) / (2.0 * h);
        break;
    }
    case EnvelopeKind::dt5: {
        const double h = fd_step(p.s);
        quantity = (k(p.x, p.y, p.s + h) - k(p.x, p.y, p.s - h)) / (2.0 * h);
        break;
    }
    }
    return std::abs(quantity) * std::pow(d, envelope_exponent(kind));
}

} // namespace pbessel
