#pragma once

// Affine maps T(x) = Mx + alpha on the torus T^s with unipotent M: exact
// closed-form iteration, return-time sets, product systems, the polynomial
// alpha selection making the first orbit coordinate n^s * beta, and the
// indicator-weighted exponential averages.

#include <recurrence_lab/torus.hpp>
#include <recurrence_lab/unipotent.hpp>

#include <complex>
#include <map>
#include <vector>

namespace reclab {

class AffineSystem {
public:
    AffineSystem(UnipotentMatrix m, TorusPoint alpha);

    int dim() const { return m_.dim(); }
    Backend backend() const { return alpha_.backend(); }
    UnipotentMatrix const& matrix() const { return m_; }
    TorusPoint const& alpha() const { return alpha_; }

    TorusPoint apply(TorusPoint const& x) const;

    // T^n x = M^n x + (sum_{k<n} M^k) alpha, via the binomial closed form.
    TorusPoint iterate(TorusPoint const& x, BigInt const& n) const;

    // Minimality is diagnosed, not decided: for a single Jordan block the
    // system is minimal iff alpha_s is irrational; with a rational surrogate
    // the effective period bound is the surrogate's denominator.
    std::string minimality_note() const;

private:
    UnipotentMatrix m_;
    TorusPoint alpha_;
};

// Sup-metric ball, optionally restricted to a subset of coordinates
// (cylinder set: unmasked coordinates range over the full torus).
struct BallSpec {
    TorusPoint center;
    Rat radius;
    std::vector<bool> mask;  // empty = all coordinates

    BallSpec(TorusPoint c, Rat r, std::vector<bool> m = {});

    bool coordinate_active(int i) const { return mask.empty() || mask[static_cast<size_t>(i)]; }
    // Strict sup-metric membership over the active coordinates.
    bool contains(TorusPoint const& x) const;
};

// Block-diagonal matrix, concatenated translation; same scalar backend required.
AffineSystem product_system(AffineSystem const& a, AffineSystem const& b);

// alpha with alpha_j = S(s,j) * j! * beta, so that (T^n 0)_1 = n^s beta.
TorusPoint choose_alpha_polynomial(int s, TorusScalar const& beta);

// Convenience: the s-step system T(x) = Jx + choose_alpha_polynomial(s, beta).
AffineSystem flw_system(int s, TorusScalar const& beta);

// { n in [1,N] : T^n x in U }
std::vector<long long> return_times_point(AffineSystem const& sys, TorusPoint const& x,
                                          BallSpec const& u, long long n_max);

enum class WitnessSource { GridAndOrbit, OrbitOnly, GridOnly };

struct MultiReturn {
    std::vector<long long> times;                 // sorted
    std::map<long long, TorusPoint> witnesses;    // first witness found per time
    long grid_resolution;
    int ell;
};

// Certified under-approximation of N^ell(U) on [1, n_max]: n is reported only
// when some witness x (grid points inside U, and/or orbit points of the
// center landing in U) has T^(kn) x in U for all 1 <= k <= ell. Every
// reported n carries its witness.
MultiReturn multi_return_times(AffineSystem const& sys, BallSpec const& u, int ell,
                               long long n_max, long grid,
                               WitnessSource source = WitnessSource::GridAndOrbit);

// Grid points of the stated per-coordinate resolution inside U (cylinder
// coordinates get grid points spread over the whole circle).
std::vector<TorusPoint> witness_grid(BallSpec const& u, long grid, Backend backend);

// (1/N) sum_{n=1..N} 1_I(n^2 beta) e^(2 pi i n t) with I = [lo, hi) half-open.
std::complex<double> weyl_average(TorusScalar const& beta, TorusScalar const& t, long long n_max,
                                  Rat const& lo = Rat(1, 4), Rat const& hi = Rat(3, 4));

}  // namespace reclab
