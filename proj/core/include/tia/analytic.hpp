// SPDX-License-Identifier: Apache-2.0
//
// Closed-form distributions of the per-pair DoF alpha and the sum DoF phi
// under uniformly random normalized delays, plus the duty-cycle optimizer.

#ifndef TIA_ANALYTIC_HPP
#define TIA_ANALYTIC_HPP

#include <vector>

#include "tia/dof.hpp"

namespace tia {

/// Point mass of a mixed distribution.
struct Atom {
    double location = 0.0;
    double weight = 0.0;
};

/// Polynomial density piece on the half-open interval (lo, hi].
/// coeffs are ascending powers: f(x) = c0 + c1*x + c2*x^2 + ...
struct DensityPiece {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<double> coeffs;
};

/// Distribution with finitely many atoms plus a piecewise-polynomial density.
/// Construction validates: non-negative weights, total mass 1 within 1e-9,
/// density non-negative (up to -1e-12) on a sampled grid of each piece.
class MixedDistribution {
public:
    MixedDistribution(std::vector<Atom> atoms, std::vector<DensityPiece> pieces);

    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    const std::vector<DensityPiece>& pieces() const noexcept { return pieces_; }

    /// Density at x; pieces own their right endpoint, 0 off-support.
    double density(double x) const noexcept;

    /// Weight of an atom located exactly at x, else 0.
    double atom_weight_at(double x) const noexcept;

    /// Total weight of atoms strictly above x.
    double atom_mass_above(double x) const noexcept;

    /// Integral of the density over (x, inf), via exact antiderivatives.
    double density_integral_above(double x) const noexcept;

    double total_mass() const noexcept;
    double mean() const noexcept;

    /// P(X > x) = atom_mass_above(x) + density_integral_above(x).
    double ccdf(double x) const noexcept;

    /// P(X <= x).
    double cdf(double x) const noexcept { return 1.0 - ccdf(x); }

    /// Largest point carrying mass (atom location or piece endpoint).
    double support_max() const noexcept;

private:
    std::vector<Atom> atoms_;
    std::vector<DensityPiece> pieces_;
};

/// CDF of a single pair's DoF: rho^2 - 2*alpha*rho + 4*alpha - 3*alpha^2 on
/// [0, rho), 1 at alpha = rho. Throws std::domain_error outside [0, rho].
double cdf_alpha(double alpha, const DutyCycle& rho);

/// Distribution of one pair's DoF: atom at 0 (weight rho^2, burst fully
/// covered), atom at rho (weight (1-2*rho)^2, burst untouched), linear
/// density in between.
MixedDistribution pdf_alpha(const DutyCycle& rho);

/// Distribution of phi = alpha_1 + alpha_2 + alpha_3 for independent pairs:
/// four atoms at 0, rho, 2*rho, 3*rho and quintic density pieces between.
MixedDistribution pdf_phi(const DutyCycle& rho);

/// P(phi > x), exact.
double ccdf_phi(double phi, const DutyCycle& rho);

/// P(phi > 1): probability the three pairs jointly beat one full slot,
/// i.e. outperform orthogonal time sharing.
double prob_exceeds_one(const DutyCycle& rho);

struct RhoOpt {
    double rho = 0.0;
    double probability = 0.0;
};

/// Duty cycle in (1/3, 1/2] maximizing prob_exceeds_one, located by a coarse
/// 1e-3 scan refined with golden-section search to width 1e-5.
RhoOpt find_rho_opt();

}  // namespace tia

#endif  // TIA_ANALYTIC_HPP
