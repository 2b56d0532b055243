#include <recurrence_lab/affine.hpp>

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace reclab {

namespace {

TorusPoint apply_int_matrix(IntMatrix const& m, TorusPoint const& x) {
    int s = static_cast<int>(m.size());
    std::vector<TorusScalar> out;
    out.reserve(static_cast<size_t>(s));
    for (int i = 0; i < s; ++i) {
        TorusScalar acc = TorusScalar::zero(x.backend());
        for (int j = 0; j < s; ++j) {
            BigInt const& e = m[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (e == 0) continue;
            acc = acc + x.coord(j).scaled(e);
        }
        out.push_back(acc);
    }
    return TorusPoint(std::move(out));
}

}  // namespace

AffineSystem::AffineSystem(UnipotentMatrix m, TorusPoint alpha)
    : m_(std::move(m)), alpha_(std::move(alpha)) {
    if (m_.dim() != alpha_.dim())
        throw std::invalid_argument("AffineSystem: matrix/translation dimension mismatch");
}

TorusPoint AffineSystem::apply(TorusPoint const& x) const {
    if (x.dim() != dim()) throw std::invalid_argument("apply: dimension mismatch");
    if (x.backend() != backend()) throw std::invalid_argument("apply: backend mismatch");
    return apply_int_matrix(m_.entries(), x) + alpha_;
}

TorusPoint AffineSystem::iterate(TorusPoint const& x, BigInt const& n) const {
    if (n < 0) throw std::invalid_argument("iterate: n must be >= 0");
    if (x.dim() != dim()) throw std::invalid_argument("iterate: dimension mismatch");
    if (x.backend() != backend()) throw std::invalid_argument("iterate: backend mismatch");
    TorusPoint mx = apply_int_matrix(m_.power(n), x);
    TorusPoint sa = apply_int_matrix(m_.geometric_sum(n), alpha_);
    return mx + sa;
}

std::string AffineSystem::minimality_note() const {
    std::ostringstream os;
    if (!m_.is_single_jordan_block()) {
        os << "minimality diagnostic available only for single Jordan blocks";
        return os.str();
    }
    TorusScalar last = alpha_.coord(dim() - 1);
    if (last.backend() == Backend::Fixed) {
        os << "alpha_s stored in 128-bit fixed point; effective period bound 2^128";
    } else {
        Rat r = last.as_rational();
        os << "alpha_s = " << numerator(r) << "/" << denominator(r)
           << " (rational surrogate; effective period bound " << denominator(r) << ")";
    }
    return os.str();
}

BallSpec::BallSpec(TorusPoint c, Rat r, std::vector<bool> m)
    : center(std::move(c)), radius(std::move(r)), mask(std::move(m)) {
    if (radius <= 0 || radius >= Rat(1, 2))
        throw std::invalid_argument("BallSpec: radius must lie in (0, 1/2)");
    if (!mask.empty()) {
        if (static_cast<int>(mask.size()) != center.dim())
            throw std::invalid_argument("BallSpec: mask/center dimension mismatch");
        bool any = false;
        for (bool b : mask) any = any || b;
        if (!any) throw std::invalid_argument("BallSpec: mask must keep at least one coordinate");
    }
}

bool BallSpec::contains(TorusPoint const& x) const {
    if (x.dim() != center.dim()) throw std::invalid_argument("BallSpec: dimension mismatch");
    for (int i = 0; i < x.dim(); ++i) {
        if (!coordinate_active(i)) continue;
        if (circle_norm(x.coord(i) - center.coord(i)) >= radius) return false;
    }
    return true;
}

AffineSystem product_system(AffineSystem const& a, AffineSystem const& b) {
    if (a.backend() != b.backend()) throw std::invalid_argument("product_system: backend mismatch");
    UnipotentMatrix m = UnipotentMatrix::direct_sum(a.matrix(), b.matrix());
    std::vector<TorusScalar> coords = a.alpha().coords();
    for (auto const& c : b.alpha().coords()) coords.push_back(c);
    return AffineSystem(std::move(m), TorusPoint(std::move(coords)));
}

TorusPoint choose_alpha_polynomial(int s, TorusScalar const& beta) {
    if (s < 1) throw std::invalid_argument("choose_alpha_polynomial: s must be >= 1");
    std::vector<TorusScalar> coords;
    coords.reserve(static_cast<size_t>(s));
    for (int j = 1; j <= s; ++j) coords.push_back(beta.scaled(stirling2(s, j) * factorial(j)));
    return TorusPoint(std::move(coords));
}

AffineSystem flw_system(int s, TorusScalar const& beta) {
    return AffineSystem(UnipotentMatrix::jordan_block(s), choose_alpha_polynomial(s, beta));
}

std::vector<long long> return_times_point(AffineSystem const& sys, TorusPoint const& x,
                                          BallSpec const& u, long long n_max) {
    if (n_max < 1) throw std::invalid_argument("return_times_point: window must be >= 1");
    std::vector<long long> out;
    TorusPoint p = x;
    for (long long n = 1; n <= n_max; ++n) {
        p = sys.apply(p);
        if (u.contains(p)) out.push_back(n);
    }
    return out;
}

std::vector<TorusPoint> witness_grid(BallSpec const& u, long grid, Backend backend) {
    if (grid < 1) throw std::invalid_argument("witness_grid: resolution must be >= 1");
    int s = u.center.dim();
    double total = 1;
    for (int i = 0; i < s; ++i) total *= static_cast<double>(grid);
    if (total > 1e6) throw std::invalid_argument("witness_grid: grid too large; reduce resolution");

    // per-coordinate offsets: inside the ball for active coordinates,
    // spread over the circle for cylinder coordinates
    std::vector<std::vector<TorusScalar>> choices(static_cast<size_t>(s));
    for (int i = 0; i < s; ++i) {
        auto& c = choices[static_cast<size_t>(i)];
        if (u.coordinate_active(i)) {
            for (long t = 0; t < grid; ++t) {
                Rat off = -u.radius + Rat(2 * t + 1) * u.radius / Rat(grid);
                c.push_back(u.center.coord(i) + TorusScalar::from_rational(off, backend));
            }
        } else {
            for (long t = 0; t < grid; ++t)
                c.push_back(TorusScalar::from_rational(Rat(2 * t + 1, 2 * grid), backend));
        }
    }
    std::vector<TorusPoint> pts;
    std::vector<size_t> idx(static_cast<size_t>(s), 0);
    for (;;) {
        std::vector<TorusScalar> coords;
        coords.reserve(static_cast<size_t>(s));
        for (int i = 0; i < s; ++i) coords.push_back(choices[static_cast<size_t>(i)][idx[static_cast<size_t>(i)]]);
        pts.emplace_back(std::move(coords));
        int i = s - 1;
        while (i >= 0 && ++idx[static_cast<size_t>(i)] == choices[static_cast<size_t>(i)].size()) {
            idx[static_cast<size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
    }
    return pts;
}

MultiReturn multi_return_times(AffineSystem const& sys, BallSpec const& u, int ell,
                               long long n_max, long grid, WitnessSource source) {
    if (ell < 1) throw std::invalid_argument("multi_return_times: ell must be >= 1");
    if (n_max < 1) throw std::invalid_argument("multi_return_times: window must be >= 1");
    MultiReturn out;
    out.grid_resolution = grid;
    out.ell = ell;

    std::vector<char> qualifies(static_cast<size_t>(n_max) + 1, 0);

    // Orbit witnesses share one extended membership table: for x = T^m c the
    // return condition at n reads off membership at m + kn.
    if (source != WitnessSource::GridOnly) {
        long long horizon = n_max + static_cast<long long>(ell) * n_max;
        std::vector<char> inu(static_cast<size_t>(horizon) + 1, 0);
        std::vector<TorusPoint> orbit_pt;
        orbit_pt.reserve(static_cast<size_t>(n_max) + 1);
        TorusPoint p = u.center;
        for (long long m = 0; m <= horizon; ++m) {
            if (m > 0) p = sys.apply(p);
            inu[static_cast<size_t>(m)] = u.contains(p) ? 1 : 0;
            if (m <= n_max) orbit_pt.push_back(p);
        }
        for (long long n = 1; n <= n_max; ++n) {
            for (long long m = 0; m <= n_max; ++m) {
                if (!inu[static_cast<size_t>(m)]) continue;
                bool ok = true;
                for (int k = 1; k <= ell && ok; ++k)
                    ok = inu[static_cast<size_t>(m + static_cast<long long>(k) * n)] != 0;
                if (ok) {
                    qualifies[static_cast<size_t>(n)] = 1;
                    out.witnesses.emplace(n, orbit_pt[static_cast<size_t>(m)]);
                    break;
                }
            }
        }
    }

    if (source != WitnessSource::OrbitOnly) {
        for (auto const& x : witness_grid(u, grid, sys.backend())) {
            if (!u.contains(x)) continue;
            long long horizon = static_cast<long long>(ell) * n_max;
            std::vector<char> inu(static_cast<size_t>(horizon) + 1, 0);
            TorusPoint p = x;
            for (long long m = 0; m <= horizon; ++m) {
                if (m > 0) p = sys.apply(p);
                inu[static_cast<size_t>(m)] = u.contains(p) ? 1 : 0;
            }
            for (long long n = 1; n <= n_max; ++n) {
                if (qualifies[static_cast<size_t>(n)]) continue;
                bool ok = true;
                for (int k = 1; k <= ell && ok; ++k)
                    ok = inu[static_cast<size_t>(static_cast<long long>(k) * n)] != 0;
                if (ok) {
                    qualifies[static_cast<size_t>(n)] = 1;
                    out.witnesses.emplace(n, x);
                }
            }
        }
    }

    for (long long n = 1; n <= n_max; ++n)
        if (qualifies[static_cast<size_t>(n)]) out.times.push_back(n);
    return out;
}

std::complex<double> weyl_average(TorusScalar const& beta, TorusScalar const& t, long long n_max,
                                  Rat const& lo, Rat const& hi) {
    if (n_max < 1) throw std::invalid_argument("weyl_average: N must be >= 1");
    Backend b = beta.backend();
    // n^2 beta by second differences: a_{n+1} = a_n + (2n+1) beta
    TorusScalar quad = TorusScalar::zero(b);
    TorusScalar step = beta;                      // (2n+1) beta at n = 0
    TorusScalar two_beta = beta.scaled(2);
    TorusScalar phase = TorusScalar::zero(t.backend());
    std::complex<double> acc(0.0, 0.0);
    for (long long n = 1; n <= n_max; ++n) {
        quad = quad + step;                       // n^2 beta
        step = step + two_beta;
        phase = phase + t;                        // n t
        Rat f = quad.as_rational();
        if (f >= lo && f < hi) {
            double theta = 2.0 * std::numbers::pi * phase.to_double();
            acc += std::complex<double>(std::cos(theta), std::sin(theta));
        }
    }
    return acc / static_cast<double>(n_max);
}

}  // namespace reclab
