#pragma once

#include "pbessel/bumps.hpp"
#include "pbessel/grid.hpp"
#include "pbessel/kernels.hpp"
#include "pbessel/specfun.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace pbessel {

/// Power weight on ℝ × (0, ∞).
///
/// spatial: x^α; temporal: |t − t_c|^β; parabolic_power: (|t − t_c|^{1/2} + x)^α,
/// a power of the parabolic distance to (t_c, 0).
struct WeightSpec {
    enum class Kind { spatial, temporal, parabolic_power };

    Kind kind = Kind::spatial;
    double space_exponent = 0.0;
    double time_exponent = 0.0;
    double time_center = 0.0;

    static WeightSpec unweighted() { return {}; }
    static WeightSpec spatial(double alpha) { return {Kind::spatial, alpha, 0.0, 0.0}; }
    static WeightSpec temporal(double beta, double center = 0.0) { return {Kind::temporal, 0.0, beta, center}; }
    static WeightSpec parabolic(double alpha, double center = 0.0) {
        return {Kind::parabolic_power, alpha, 0.0, center};
    }

    double operator()(double t, double x) const;

    /// −1 < exponent < p − 1, the range where the one-dimensional power is in A_p.
    /// A false value marks a deliberate out-of-class probe.
    bool admissible(double p) const noexcept;
};

/// (Σ |f|^p w(t, x) w_j dt)^{1/p}; p = ∞ gives the max over nodes with positive weight.
double lp_norm(const Field& f, double p, const WeightSpec& w = WeightSpec::unweighted());

/// Iterated norm: inner p_inner-norm over x weighted by v, outer q_outer-norm over t weighted by u.
double mixed_norm(const Field& f, double q_outer, double p_inner, const WeightSpec& u = WeightSpec::unweighted(),
                  const WeightSpec& v = WeightSpec::unweighted());

/// {(s, y) : |t − s|^{1/2} + |x − y| < r, y > 0}.
struct ParabolicBall {
    double t;
    double x;
    double r;
};

/// Largest A_p quotient (1/|B|∫_B w)·((1/|B|)∫_B w^{−1/(p−1)})^{p−1} over the balls.
///
/// p = 1 uses (1/|B|∫_B w) / inf_B w. Divergent averages give +∞.
double ap_constant(const WeightSpec& w, double p, const std::vector<ParabolicBall>& balls);

/// Empirical suprema of the Calderón–Zygmund ratios of one Riesz kernel.
struct CZReport {
    enum Kind { size, gradient, time_derivative, holder, kind_count };

    BesselOrder mu{1.0};
    RieszKernel kernel = RieszKernel::space;
    long samples = 0;
    /// μ outside (1/2, ∞) ∪ {−1/2}: the estimates are not claimed there.
    bool report_only = false;
    std::array<double, kind_count> sup{};
    /// 50%, 90% and 99% quantiles of the raw samples per kind, then the sup.
    std::array<std::array<double, 4>, kind_count> quantiles{};
    /// sup over all partitions divided by sup over the first tenth of them, minus one.
    std::array<double, kind_count> drift{};

    static const char* kind_name(Kind k) noexcept;
    bool stable(double tolerance = 0.2) const noexcept;
};

struct CZOptions {
    std::uint64_t seed = 20240601;
    int workers = 1;
};

/// Samples log-uniform base points x ∈ [10⁻², 10²], distances d ∈ x·[10⁻³, 10] split at
/// random between √s and |x − y|, and for the smoothness ratio a perturbation of
/// either point at distance ρ < d/2.
///
/// Samples come in partitions of 10⁴ with their own seed. In each partition the
/// best few samples per kind are refined by a bounded compass search, since the
/// smoothness sup sits in a thin corner (ρ → d/2) that plain sampling reaches
/// slowly. Results do not depend on the worker count.
CZReport cz_verify(const BesselOrder& mu, RieszKernel kernel, long n_samples, const CZOptions& options = {});

enum class SweepOperator { space_riesz, time_riesz, transplantation };

const char* sweep_operator_name(SweepOperator op) noexcept;

enum class Verdict { bounded, growing, inconclusive };

const char* verdict_name(Verdict v) noexcept;

/// Probe setup of an operator-norm sweep.
///
/// Resolution ℓ uses an alias-free radial grid from x_mins[ℓ] to about x_max; lower
/// x_min exposes the x^{μ+1/2} behaviour of Tf near the origin, which is where
/// unboundedness shows. Every bump is used twice: ‖Tf‖_p/‖f‖_p and, since
/// ‖T‖_p = ‖T*‖_{p'}, ‖T*f‖_{p'}/‖f‖_{p'}.
struct SweepOptions {
    std::vector<double> x_mins{1e-3, 1e-7, 1e-11};
    double x_max = 10.0;
    int time_samples = 64;
    double window = 80.0;
    int suite_size = 20;
    std::uint64_t seed = 7;
    BumpRanges ranges = default_ranges();
    double growth_threshold = 1.5;
    double flat_threshold = 1.1;

    static BumpRanges default_ranges();
};

/// One (μ, 1/p) cell.
///
/// Verdict rule: growing when some probe's ratio grows by more than
/// growth_threshold over the last resolution step; bounded when no probe grows by
/// more than flat_threshold in any step and no probe's growth speeds up;
/// inconclusive otherwise.
struct SweepCell {
    double mu = 0.0;
    double inv_p = 0.0;
    /// Largest probe ratio per resolution, a lower bound for the operator norm.
    std::vector<double> norms;
    double last_step_growth = 0.0;
    double max_step_growth = 0.0;
    Verdict verdict = Verdict::inconclusive;
};

struct RegionSweep {
    SweepOperator op;
    std::vector<double> mus;
    std::vector<double> inv_ps;
    /// Row-major over (μ, 1/p).
    std::vector<SweepCell> cells;

    const SweepCell& at(std::size_t mu_index, std::size_t p_index) const {
        return cells[mu_index * inv_ps.size() + p_index];
    }
};

RegionSweep opnorm_sweep(SweepOperator op, const std::vector<double>& mus, const std::vector<double>& inv_ps,
                         const SweepOptions& options = {});

/// Where a sample point lies relative to the known L^p boundedness region.
enum class RegionClass { interior, exterior, boundary, unknown };

const char* region_class_name(RegionClass c) noexcept;

/// Classifies (μ, 1/p) for R̃ (strip −μ − 1/2 < 1/p < μ + 3/2 when μ ≤ −1/2) and
/// R (1/p < μ + 3/2); points within `tolerance` of a boundary line are boundary
/// points. The transplantation has no stored region and gives unknown.
RegionClass classify_region(SweepOperator op, double mu, double inv_p, double tolerance = 1e-9);

/// Applies the operator (spectrally, on the field's grid) to f.
Field apply_operator(SweepOperator op, const BesselOrder& mu, const Field& f);

struct WeakProfile {
    std::vector<double> lambdas;
    /// λ·|{|Tf| > λ}| per λ.
    std::vector<double> values;
    /// sup of values divided by ‖f‖₁; 0 for f = 0.
    double ratio = 0.0;
};

WeakProfile weak_l1_profile(SweepOperator op, const BesselOrder& mu, const Field& f,
                            const std::vector<double>& lambdas);

} // namespace pbessel
