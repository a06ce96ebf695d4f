#include "pbessel/bumps.hpp"

#include <cmath>
#include <random>

namespace pbessel {

namespace {

constexpr double kGaussianCut = 8.6;

double reach(BumpShape shape) { return shape == BumpShape::compact ? 1.0 : kGaussianCut; }

} // namespace

double Bump1D::value(double x) const noexcept {
    const double r = (x - center) / width;
    if (shape == BumpShape::compact) {
        if (std::abs(r) >= 1.0) return 0.0;
        return std::exp(1.0 - 1.0 / (1.0 - r * r));
    }
    if (std::abs(r) >= kGaussianCut) return 0.0;
    return std::exp(-0.5 * r * r);
}

double Bump1D::d1(double x) const noexcept {
    const double r = (x - center) / width;
    const double v = value(x);
    if (v == 0.0) return 0.0;
    if (shape == BumpShape::compact) {
        const double q = 1.0 - r * r;
        return v * (-2.0 * r / (q * q)) / width;
    }
    return -r * v / width;
}

double Bump1D::d2(double x) const noexcept {
    const double r = (x - center) / width;
    const double v = value(x);
    if (v == 0.0) return 0.0;
    if (shape == BumpShape::compact) {
        const double q = 1.0 - r * r;
        const double g1 = -2.0 * r / (q * q);
        const double g2 = -2.0 / (q * q) - 8.0 * r * r / (q * q * q);
        return v * (g1 * g1 + g2) / (width * width);
    }
    return (r * r - 1.0) * v / (width * width);
}

double Bump1D::lo() const noexcept { return center - reach(shape) * width; }
double Bump1D::hi() const noexcept { return center + reach(shape) * width; }

std::vector<Bump> bump_suite(std::uint64_t seed, int count, const BumpRanges& ranges) {
    std::mt19937_64 rng(seed);
    auto draw = [&rng](double lo, double hi) {
        return lo + (hi - lo) * std::generate_canonical<double, 53>(rng);
    };
    std::vector<Bump> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        Bump b;
        b.time = {draw(ranges.t_center_lo, ranges.t_center_hi), draw(ranges.t_width_lo, ranges.t_width_hi),
                  ranges.shape};
        b.space = {draw(ranges.x_center_lo, ranges.x_center_hi), draw(ranges.x_width_lo, ranges.x_width_hi),
                   ranges.shape};
        b.amplitude = 1.0;
        out.push_back(b);
    }
    return out;
}

} // namespace pbessel
