#pragma once

#include "pbessel/grid.hpp"
#include "pbessel/specfun.hpp"

#include <Eigen/Dense>

namespace pbessel {

/// ∂_t u = Δ_μ u + f on (0, ∞) × (0, ∞) with u(0, ·) = g.
///
/// The time grid must start at t = 0; f and g live on the same radial grid.
struct CauchyProblem {
    BesselOrder mu;
    Field f;
    Eigen::VectorXd g;
};

/// Discrete residual of the Bessel heat equation.
///
/// Norms are weighted ℓ² norms; the interior excludes a 3-cell margin at every
/// grid edge and the boundary layer is its complement. `relative_interior`
/// divides by the interior norm of f, or of Δ_μ u when f vanishes there.
struct ResidualReport {
    double interior_norm = 0.0;
    double boundary_layer_norm = 0.0;
    double relative_interior = 0.0;
    double dt = 0.0;
    double dx_min = 0.0;
    double dx_max = 0.0;
};

/// u(t, x) = ∫₀^∞ ∫ W_τ^μ(x, y) f(t − τ, y) dy dτ on the grid of f.
///
/// The lag integral uses the midpoint rule on cells of width dt with f averaged
/// at the cell ends; f is taken to vanish before the window. Throws DomainError
/// ("support-violation") when f reaches the first three time rows or the
/// three outermost radial nodes.
Field solve_wholespace(const BesselOrder& mu, const Field& f);

/// u(t) = ∫₀^t W_{t−s} f(s) ds + W_t g.
Field solve_cauchy(const CauchyProblem& problem);

/// Pointwise ∂_t u − Δ_μ u − f by centered differences in t and in ln x, with
/// one-sided second-order stencils at the edges.
Field residual_field(const Field& u, const Field& f, const BesselOrder& mu);

/// Norms of residual_field split into interior and boundary layer.
ResidualReport residual_check(const Field& u, const Field& f, const BesselOrder& mu);

struct MaxRegResult {
    double ratio = 0.0;
    /// False when μ ≤ −1/2, outside the range where maximal regularity is known.
    bool hypothesis_ok = true;
};

/// 𝓡f(t) = ∫₀^t ∂_t W_{t−s} f(s) ds, by the same lag quadrature with the time-derivative kernel.
Field maximal_regularity_operator(const BesselOrder& mu, const Field& f);

/// ‖𝓡f‖ / ‖f‖ in L^p_t(L^q_x); 0 for f = 0.
MaxRegResult maximal_regularity_ratio(const BesselOrder& mu, double p, double q, const Field& f);

} // namespace pbessel
