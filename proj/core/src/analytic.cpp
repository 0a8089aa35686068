// SPDX-License-Identifier: Apache-2.0

#include "tia/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace tia {

namespace {

double poly_eval(const std::vector<double>& c, double x) noexcept {
    double y = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) {
        y = y * x + c[k];
    }
    return y;
}

// Antiderivative with A(0) = 0.
double poly_antideriv(const std::vector<double>& c, double x) noexcept {
    double y = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) {
        y = y * x + c[k] / static_cast<double>(k + 1);
    }
    return y * x;
}

// Antiderivative of x*f(x) with value 0 at 0.
double poly_moment_antideriv(const std::vector<double>& c, double x) noexcept {
    double y = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) {
        y = y * x + c[k] / static_cast<double>(k + 2);
    }
    return y * x * x;
}

}  // namespace

MixedDistribution::MixedDistribution(std::vector<Atom> atoms, std::vector<DensityPiece> pieces)
    : atoms_(std::move(atoms)), pieces_(std::move(pieces)) {
    for (const Atom& a : atoms_) {
        if (!std::isfinite(a.location) || !(a.weight >= 0.0)) {
            throw std::invalid_argument("MixedDistribution: bad atom");
        }
    }
    std::sort(atoms_.begin(), atoms_.end(),
              [](const Atom& x, const Atom& y) { return x.location < y.location; });
    std::sort(pieces_.begin(), pieces_.end(),
              [](const DensityPiece& x, const DensityPiece& y) { return x.lo < y.lo; });
    for (std::size_t p = 0; p < pieces_.size(); ++p) {
        const DensityPiece& piece = pieces_[p];
        if (!(piece.lo < piece.hi) || piece.coeffs.empty()) {
            throw std::invalid_argument("MixedDistribution: bad density piece");
        }
        for (double c : piece.coeffs) {
            if (!std::isfinite(c)) {
                throw std::invalid_argument("MixedDistribution: non-finite coefficient");
            }
        }
        if (p > 0 && piece.lo < pieces_[p - 1].hi - 1e-12) {
            throw std::invalid_argument("MixedDistribution: overlapping density pieces");
        }
        constexpr int kSamples = 128;
        for (int s = 0; s <= kSamples; ++s) {
            const double x = piece.lo + (piece.hi - piece.lo) * s / kSamples;
            if (poly_eval(piece.coeffs, x) < -1e-12) {
                throw std::invalid_argument("MixedDistribution: negative density");
            }
        }
    }
    const double mass = total_mass();
    if (std::abs(mass - 1.0) > 1e-9) {
        throw std::invalid_argument("MixedDistribution: total mass not 1");
    }
}

double MixedDistribution::density(double x) const noexcept {
    for (const DensityPiece& p : pieces_) {
        if (x > p.lo && x <= p.hi) {
            return poly_eval(p.coeffs, x);
        }
    }
    return 0.0;
}

double MixedDistribution::atom_weight_at(double x) const noexcept {
    double w = 0.0;
    for (const Atom& a : atoms_) {
        if (a.location == x) {
            w += a.weight;
        }
    }
    return w;
}

double MixedDistribution::atom_mass_above(double x) const noexcept {
    double w = 0.0;
    for (const Atom& a : atoms_) {
        if (a.location > x) {
            w += a.weight;
        }
    }
    return w;
}

double MixedDistribution::density_integral_above(double x) const noexcept {
    double mass = 0.0;
    for (const DensityPiece& p : pieces_) {
        if (p.hi <= x) {
            continue;
        }
        const double lo = std::max(p.lo, x);
        mass += poly_antideriv(p.coeffs, p.hi) - poly_antideriv(p.coeffs, lo);
    }
    return mass;
}

double MixedDistribution::total_mass() const noexcept {
    double mass = 0.0;
    for (const Atom& a : atoms_) {
        mass += a.weight;
    }
    for (const DensityPiece& p : pieces_) {
        mass += poly_antideriv(p.coeffs, p.hi) - poly_antideriv(p.coeffs, p.lo);
    }
    return mass;
}

double MixedDistribution::mean() const noexcept {
    double m = 0.0;
    for (const Atom& a : atoms_) {
        m += a.weight * a.location;
    }
    for (const DensityPiece& p : pieces_) {
        m += poly_moment_antideriv(p.coeffs, p.hi) - poly_moment_antideriv(p.coeffs, p.lo);
    }
    return m;
}

double MixedDistribution::ccdf(double x) const noexcept {
    return atom_mass_above(x) + density_integral_above(x);
}

double MixedDistribution::support_max() const noexcept {
    double hi = 0.0;
    for (const Atom& a : atoms_) {
        hi = std::max(hi, a.location);
    }
    for (const DensityPiece& p : pieces_) {
        hi = std::max(hi, p.hi);
    }
    return hi;
}

double cdf_alpha(double alpha, const DutyCycle& rho) {
    const double r = rho.value();
    if (!(alpha >= 0.0 && alpha <= r)) {
        throw std::domain_error("cdf_alpha: alpha outside [0, rho]");
    }
    if (alpha == r) {
        return 1.0;
    }
    return r * r - 2.0 * alpha * r + 4.0 * alpha - 3.0 * alpha * alpha;
}

MixedDistribution pdf_alpha(const DutyCycle& rho) {
    const double r = rho.value();
    const double one_minus_2r = 1.0 - 2.0 * r;
    std::vector<Atom> atoms = {
        {0.0, r * r},
        {r, one_minus_2r * one_minus_2r},
    };
    std::vector<DensityPiece> pieces = {
        {0.0, r, {4.0 - 2.0 * r, -6.0}},
    };
    return MixedDistribution(std::move(atoms), std::move(pieces));
}

MixedDistribution pdf_phi(const DutyCycle& rho) {
    const double r = rho.value();
    const double r2 = r * r;
    const double r3 = r2 * r;
    const double r4 = r3 * r;
    const double r5 = r4 * r;
    const double a = r2;
    const double b = (1.0 - 2.0 * r) * (1.0 - 2.0 * r);

    std::vector<Atom> atoms = {
        {0.0, a * a * a},
        {r, 3.0 * a * a * b},
        {2.0 * r, 3.0 * a * b * b},
        {3.0 * r, b * b * b},
    };

    // Triple convolution of the single-pair law; quintic on each of the
    // three inter-atom intervals, discontinuous only at the atom locations.
    std::vector<DensityPiece> pieces;
    pieces.push_back({0.0, r,
                      {-6.0 * r5 + 12.0 * r4,
                       -6.0 * r4 - 48.0 * r3 + 48.0 * r2,
                       32.0 * r3 - 48.0 * r2 - 48.0 * r + 32.0,
                       6.0 * r2 + 48.0 * r - 48.0,
                       18.0 - 9.0 * r,
                       -9.0 / 5.0}});
    pieces.push_back({r, 2.0 * r,
                      {303.0 * r5 / 5.0 - 198.0 * r4 + 78.0 * r3 + 96.0 * r2 - 48.0 * r,
                       39.0 * r4 + 240.0 * r3 - 426.0 * r2 + 96.0 * r + 48.0,
                       -118.0 * r3 + 204.0 * r2 + 78.0 * r - 136.0,
                       -12.0 * r2 - 96.0 * r + 114.0,
                       18.0 * r - 36.0,
                       18.0 / 5.0}});
    pieces.push_back({2.0 * r, 3.0 * r,
                      {-273.0 * r5 / 5.0 + 186.0 * r4 - 42.0 * r3 - 168.0 * r2 + 78.0 * r + 12.0,
                       -33.0 * r4 - 192.0 * r3 + 378.0 * r2 - 96.0 * r - 66.0,
                       86.0 * r3 - 156.0 * r2 - 30.0 * r + 104.0,
                       6.0 * r2 + 48.0 * r - 66.0,
                       18.0 - 9.0 * r,
                       -9.0 / 5.0}});
    return MixedDistribution(std::move(atoms), std::move(pieces));
}

double ccdf_phi(double phi, const DutyCycle& rho) {
    return pdf_phi(rho).ccdf(phi);
}

double prob_exceeds_one(const DutyCycle& rho) {
    return ccdf_phi(1.0, rho);
}

RhoOpt find_rho_opt() {
    const double lo_limit = 1.0 / 3.0;
    const double hi_limit = 0.5;
    const auto objective = [](double r) { return prob_exceeds_one(DutyCycle(r)); };

    double best_rho = hi_limit;
    double best_p = objective(hi_limit);
    constexpr double kStep = 1e-3;
    for (double r = lo_limit + kStep; r < hi_limit; r += kStep) {
        const double p = objective(r);
        if (p > best_p) {
            best_p = p;
            best_rho = r;
        }
    }

    double lo = std::max(lo_limit + kStep / 16.0, best_rho - kStep);
    double hi = std::min(hi_limit, best_rho + kStep);
    constexpr double kInvGolden = 0.6180339887498949;
    double x1 = hi - kInvGolden * (hi - lo);
    double x2 = lo + kInvGolden * (hi - lo);
    double f1 = objective(x1);
    double f2 = objective(x2);
    while (hi - lo > 1e-5) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvGolden * (hi - lo);
            f2 = objective(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvGolden * (hi - lo);
            f1 = objective(x1);
        }
    }
    const double rho_opt = 0.5 * (lo + hi);
    return RhoOpt{rho_opt, objective(rho_opt)};
}

}  // namespace tia
