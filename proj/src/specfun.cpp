#include "pbessel/specfun.hpp"

#include "pbessel/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace pbessel {

namespace {

constexpr double kPi = std::numbers::pi;

// Largest x with Γ(x) finite in double precision.
constexpr double kGammaOverflow = 171.62437695630272;

void require_order(double nu) {
    if (!(nu > -1.0)) {
        throw DomainError("Bessel order must satisfy nu > -1, got " + std::to_string(nu));
    }
}

void require_nonnegative(double z) {
    if (!(z >= 0.0)) {
        throw DomainError("Bessel argument must satisfy z >= 0, got " + std::to_string(z));
    }
}

} // namespace

BesselOrder::BesselOrder(double mu) : mu_(mu) {
    if (!(mu > -1.0) || !std::isfinite(mu)) {
        throw DomainError("BesselOrder requires mu > -1, got " + std::to_string(mu));
    }
}

bool BesselOrder::is_neumann() const noexcept { return mu_ == -0.5; }
bool BesselOrder::is_dirichlet() const noexcept { return mu_ == 0.5; }
bool BesselOrder::cz_class() const noexcept { return mu_ > 0.5 || mu_ == -0.5; }

bool BesselOrder::rtilde_bounded_on_lp(double p) const noexcept {
    if (!(p > 1.0) || !std::isfinite(p)) return false;
    if (mu_ > -0.5) return true;
    const double inv_p = 1.0 / p;
    return -mu_ - 0.5 < inv_p && inv_p < mu_ + 1.5;
}

bool BesselOrder::r_bounded_on_lp(double p) const noexcept {
    if (!(p > 1.0) || !std::isfinite(p)) return false;
    if (mu_ > -0.5) return true;
    return p > 1.0 / (mu_ + 1.5);
}

double gamma(double x) {
    if (!(x > 0.0)) {
        throw DomainError("gamma requires x > 0, got " + std::to_string(x));
    }
    if (x > kGammaOverflow) {
        throw NumericalError("gamma overflows for x = " + std::to_string(x));
    }
    return std::tgamma(x);
}

double log_gamma(double x) {
    if (!(x > 0.0)) {
        throw DomainError("log_gamma requires x > 0, got " + std::to_string(x));
    }
    return std::lgamma(x);
}

double erf(double x) { return std::erf(x); }

double asymptotic_coeff(double nu, int k) {
    if (k < 0) {
        throw DomainError("asymptotic_coeff requires k >= 0");
    }
    const double four_nu2 = 4.0 * nu * nu;
    double value = 1.0;
    for (int j = 1; j <= k; ++j) {
        const double odd = 2.0 * j - 1.0;
        value *= (four_nu2 - odd * odd) / (4.0 * j);
    }
    return value;
}

namespace detail {

double bessel_i_switch(double nu) noexcept { return std::max(30.0, nu * nu); }

double bessel_i_scaled_series(double nu, double z) {
    if (z == 0.0) {
        if (nu == 0.0) return 1.0;
        return nu > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    // All terms are positive, so the sum is well conditioned at any z.
    const double half = 0.5 * z;
    const double q = half * half;
    double term = std::exp(nu * std::log(half) - std::lgamma(nu + 1.0) - z);
    double sum = term;
    for (int k = 1; k < 100000; ++k) {
        term *= q / (k * (k + nu));
        sum += term;
        if (term <= 1e-17 * sum && k > half) break;
    }
    return sum;
}

double bessel_i_scaled_asymptotic(double nu, double z, int n) {
    const double inv_2z = 1.0 / (2.0 * z);
    double sum = 0.0;
    double coeff = 1.0;
    double power = 1.0;
    const double four_nu2 = 4.0 * nu * nu;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) {
            const double odd = 2.0 * k - 1.0;
            coeff *= (four_nu2 - odd * odd) / (4.0 * k);
            power *= -inv_2z;
        }
        sum += coeff * power;
    }
    return sum / std::sqrt(2.0 * kPi * z);
}

double bessel_j_switch(double nu) noexcept { return std::max(20.0, nu * nu); }

double bessel_j_series(double nu, double z) {
    if (z == 0.0) {
        if (nu == 0.0) return 1.0;
        return nu > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    // Alternating series; extended precision absorbs the cancellation for z ≲ 20.
    const long double half = 0.5L * static_cast<long double>(z);
    const long double q = half * half;
    const long double lnu = nu;
    long double term = std::exp(lnu * std::log(half) - std::lgamma(lnu + 1.0L));
    long double sum = term;
    long double magnitude = std::fabs(term);
    for (int k = 1; k < 10000; ++k) {
        term *= -q / (k * (k + lnu));
        sum += term;
        magnitude = std::fabs(term);
        if (k > half && magnitude <= 1e-21L * std::fabs(sum)) break;
        if (k > half + 60) break;
    }
    return static_cast<double>(sum);
}

double bessel_j_asymptotic(double nu, double z, int n) {
    const double inv_2z = 1.0 / (2.0 * z);
    const double four_nu2 = 4.0 * nu * nu;
    double p = 0.0;
    double q = 0.0;
    double coeff = 1.0;
    double power = 1.0;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) {
            const double odd = 2.0 * k - 1.0;
            coeff *= (four_nu2 - odd * odd) / (4.0 * k);
            power *= inv_2z;
        }
        const double term = coeff * power;
        switch (k % 4) {
        case 0: p += term; break;
        case 1: q += term; break;
        case 2: p -= term; break;
        default: q -= term; break;
        }
    }
    const double phase = z - (0.5 * nu + 0.25) * kPi;
    return std::sqrt(2.0 / (kPi * z)) * (p * std::cos(phase) - q * std::sin(phase));
}

} // namespace detail

double bessel_i_scaled(double nu, double z) {
    require_order(nu);
    require_nonnegative(z);
    if (z < detail::bessel_i_switch(nu)) {
        return detail::bessel_i_scaled_series(nu, z);
    }
    return detail::bessel_i_scaled_asymptotic(nu, z, 12);
}

BesselJResult bessel_j_checked(double nu, double z) {
    require_order(nu);
    require_nonnegative(z);
    const bool degraded = z > 1e4 || nu > 5.0;
    if (z < detail::bessel_j_switch(nu)) {
        return {detail::bessel_j_series(nu, z), degraded};
    }
    return {detail::bessel_j_asymptotic(nu, z, 20), degraded};
}

double bessel_j(double nu, double z) { return bessel_j_checked(nu, z).value; }

} // namespace pbessel
