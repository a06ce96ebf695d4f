#pragma once

#include <cstdint>
#include <vector>

namespace pbessel {

/// Profile of a one-dimensional test bump.
///
/// compact: e^{1 − 1/(1−r²)} on |r| < 1, C^∞ with support [−1, 1].
/// gaussian: e^{−r²/2} cut at |r| = 8.6, where it is below 1e−16.
enum class BumpShape { compact, gaussian };

/// r ↦ profile((x − center)/width) with analytic first and second derivatives.
struct Bump1D {
    double center;
    double width;
    BumpShape shape = BumpShape::gaussian;

    double value(double x) const noexcept;
    double d1(double x) const noexcept;
    double d2(double x) const noexcept;
    double lo() const noexcept;
    double hi() const noexcept;
};

/// Separable test datum a·T(t)·X(x).
struct Bump {
    Bump1D time;
    Bump1D space;
    double amplitude = 1.0;

    double operator()(double t, double x) const noexcept {
        return amplitude * time.value(t) * space.value(x);
    }
};

/// Bounds from which randomized bump suites are drawn.
///
/// The radial defaults keep every bump below 1e−10 near x = 0 and leave its
/// Hankel spectrum negligible beyond z ≈ 16, the band of the default grid.
struct BumpRanges {
    double t_center_lo = -0.5;
    double t_center_hi = 0.5;
    double t_width_lo = 0.15;
    double t_width_hi = 0.3;
    double x_center_lo = 2.0;
    double x_center_hi = 3.0;
    double x_width_lo = 0.25;
    double x_width_hi = 0.28;
    BumpShape shape = BumpShape::gaussian;
};

/// A reproducible family of `count` bumps drawn from `ranges` with the given seed.
std::vector<Bump> bump_suite(std::uint64_t seed, int count, const BumpRanges& ranges = {});

} // namespace pbessel
