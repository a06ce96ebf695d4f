#pragma once

#include "pbessel/bumps.hpp"
#include "pbessel/grid.hpp"
#include "pbessel/kernels.hpp"
#include "pbessel/specfun.hpp"

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace pbessel {

/// Shape of the set removed around the output point (t, x).
///
/// In terms of the lag s = t − τ ≥ 0 and y:
/// parabolic_full removes max(√s, |x − y|) ≤ ε,
/// spatial_slice removes √s + |x − y| ≤ ε,
/// causal removes every lag s ≤ ε².
enum class RegionKind { parabolic_full, spatial_slice, causal };

struct TruncationRegion {
    RegionKind kind;
    double epsilon;

    TruncationRegion(RegionKind k, double eps);

    /// True when the point at lag s and position y is removed for center x.
    bool excludes(double x, double s, double y) const noexcept;
};

/// Constants of the local terms.
///
/// A = erf(1/2) belongs to the parabolic_full region. For spatial_slice the
/// same derivation gives slice = (1/√π)∫₀^∞ e^{−w²/4}/(1+w) dw.
struct LocalConstants {
    double A;
    double one_minus_A;
    double slice;

    static const LocalConstants& get();
};

/// Multiple of f(t, x) that turns the ε → 0 limit of the truncated integral into the operator.
///
/// time: A, slice or 1 for the three region kinds; space: the time value minus one.
double local_term(RieszKernel which, RegionKind kind);

/// A smooth datum f(τ, y) known to vanish outside [t_lo, t_hi] × [x_lo, x_hi].
struct SmoothDatum {
    std::function<double(double, double)> f;
    double t_lo;
    double t_hi;
    double x_lo;
    double x_hi;

    static SmoothDatum from_bump(const Bump& b);

    /// The datum with f(τ, ·) = 0 for τ < 0 enforced.
    SmoothDatum zero_extended() const;

    double operator()(double t, double x) const { return f(t, x); }
};

/// Output points: the tensor product times × xs.
struct EvalPoints {
    std::vector<double> times;
    std::vector<double> xs;

    /// Nodes of a field layout picked by index.
    static EvalPoints from_grid(const TimeGrid& tg, const std::vector<int>& time_index, const RadialGrid& rg,
                                const std::vector<int>& radial_index);
};

struct PVOptions {
    /// Cell size in the (√lag, y) plane.
    double step = 0.005;
    /// Radius of the cutoff multiplying f(t, x) in the subtracted part.
    double cutoff_radius = 0.3;
};

/// Truncated integrals ∫∫ kernel(x, y, s) f(t − s, y) dy ds over the complement of a region.
///
/// The integrand is split as f = f(t,x)·φ + r with φ a smooth cutoff equal to 1
/// near the singular point. The remainder r vanishes there and is summed on a
/// uniform (√s, y) cell grid, dropping every cell that meets the region; the
/// φ part is integrated adaptively over the exact complement.
class PVIntegrator {
public:
    PVIntegrator(RieszKernel which, BesselOrder mu, SmoothDatum f, PVOptions options = {});

    /// One matrix (times × xs) per region. Throws NumericalError
    /// ("region-too-small") when a region is below twice the cell size.
    std::vector<Eigen::MatrixXd> truncated(const std::vector<TruncationRegion>& regions, const EvalPoints& points) const;

    const SmoothDatum& datum() const noexcept { return f_; }

private:
    RieszKernel which_;
    BesselOrder mu_;
    SmoothDatum f_;
    PVOptions options_;
};

Eigen::MatrixXd pv_R(const BesselOrder& mu, const SmoothDatum& f, const TruncationRegion& region,
                     const EvalPoints& points, const PVOptions& options = {});
Eigen::MatrixXd pv_Rtilde(const BesselOrder& mu, const SmoothDatum& f, const TruncationRegion& region,
                          const EvalPoints& points, const PVOptions& options = {});

/// Truncated values along ε_k = 2^{−k}ε₀ and their extrapolated limit.
struct PVLimit {
    std::vector<double> epsilons;
    std::vector<Eigen::MatrixXd> iterates;
    Eigen::MatrixXd limit;
    /// Max-norm of iterate k+1 minus iterate k.
    std::vector<double> step_changes;
};

/// The principal value (local term included) by Richardson extrapolation of
/// the last three iterates, assuming errors of order ε and ε².
PVLimit pv_limit(RieszKernel which, const BesselOrder& mu, const SmoothDatum& f, RegionKind kind,
                 const EvalPoints& points, double epsilon0 = 0.2, int levels = 4, const PVOptions& options = {});

/// Causal truncation ∫_{ε²}^t ∫ kernel·f(t − s, y) dy ds of the zero-extended datum; no local term.
Eigen::MatrixXd bold_R(const BesselOrder& mu, const SmoothDatum& f, double epsilon, const EvalPoints& points,
                       const PVOptions& options = {});
Eigen::MatrixXd bold_Rtilde(const BesselOrder& mu, const SmoothDatum& f, double epsilon,
                            const EvalPoints& points, const PVOptions& options = {});

/// sup over ε in the set with ε < √t of |spatial_slice − causal| truncated integrals
/// of the zero-extended datum.
Eigen::MatrixXd maximal_T_star(RieszKernel which, const BesselOrder& mu, const SmoothDatum& f,
                               const std::vector<double>& epsilons, const EvalPoints& points,
                               const PVOptions& options = {});

/// Centered maximal function over parabolic balls {|t − τ|^{1/2} + |x − y| < r}.
///
/// Radii are dyadic, r_k = r_max·2^{−k}; a ball is averaged over the cells whose
/// nodes it contains, with quadrature weights, and balls containing no node
/// are skipped.
Eigen::MatrixXd parabolic_maximal(const Field& f, const EvalPoints& points, int radii = 30);
Field parabolic_maximal(const Field& f, int radii = 30);

} // namespace pbessel
