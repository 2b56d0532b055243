#pragma once

// Arithmetic on the torus T = R/Z with two interchangeable exact-width
// scalar backends:
//
//   * Exact  — reduced fraction p/q, arbitrary precision, canonical 0 <= p < q.
//   * Fixed  — unsigned 128-bit word w interpreted as w / 2^128 in [0, 1).
//              Addition, negation and integer multiples wrap mod 2^128,
//              which is exactly arithmetic mod 1.
//
// All values are immutable after construction and all operations are pure.

#include <recurrence_lab/numeric.hpp>

#include <optional>
#include <string>
#include <vector>

namespace reclab {

enum class Backend { Exact, Fixed };

inline char const* backend_name(Backend b) { return b == Backend::Exact ? "exact" : "fixed"; }

constexpr int kFixedFractionalBits = 128;

class TorusScalar {
public:
    TorusScalar() : backend_(Backend::Exact), frac_(0), word_(0) {}

    static TorusScalar zero(Backend b) {
        TorusScalar t;
        t.backend_ = b;
        return t;
    }

    // Reduce an arbitrary rational mod 1. The fixed backend truncates the
    // fractional part to 128 bits (exact when the denominator is a power of two).
    static TorusScalar from_rational(Rat const& r, Backend b);

    static TorusScalar from_word(uint128 w) {
        TorusScalar t;
        t.backend_ = Backend::Fixed;
        t.word_ = w;
        return t;
    }

    Backend backend() const { return backend_; }

    // Exact representative in [0, 1). For the fixed backend this is w / 2^128,
    // a faithful rational image of the stored word.
    Rat as_rational() const;

    uint128 word() const;  // fixed backend only

    TorusScalar operator+(TorusScalar const& o) const;
    TorusScalar operator-(TorusScalar const& o) const;
    TorusScalar operator-() const;

    // c * x mod 1 for an integer c (either sign), exact within the backend.
    TorusScalar scaled(BigInt const& c) const;

    // Representative division: maps the canonical representative in [0,1) to
    // representative/k. Used to derive coloring frequencies (e.g. beta = alpha/l!).
    // Exact backend: p/(q*k). Fixed backend: floor(w/k), error < k / 2^128.
    TorusScalar divided_by(BigInt const& k) const;

    bool operator==(TorusScalar const& o) const;
    bool operator!=(TorusScalar const& o) const { return !(*this == o); }

    bool is_zero() const;

    // floor(r * frac), in [0, r). Cell index for a partition of T into r
    // half-open arcs [(j-1)/r, j/r).
    long cell_index(long r) const;

    double to_double() const;

    std::string to_string() const;

private:
    Backend backend_;
    Rat frac_;      // canonical p/q in [0,1); exact backend
    uint128 word_;  // fixed backend
};

// Distance to the nearest integer, exact as a rational in both backends.
Rat circle_norm(TorusScalar const& t);

class TorusPoint {
public:
    explicit TorusPoint(std::vector<TorusScalar> coords);

    static TorusPoint zero(int dim, Backend b);

    int dim() const { return static_cast<int>(coords_.size()); }
    Backend backend() const { return coords_.front().backend(); }
    TorusScalar const& coord(int i) const { return coords_[static_cast<size_t>(i)]; }
    std::vector<TorusScalar> const& coords() const { return coords_; }

    TorusPoint operator+(TorusPoint const& o) const;
    TorusPoint operator-(TorusPoint const& o) const;

    bool operator==(TorusPoint const& o) const;

private:
    std::vector<TorusScalar> coords_;
};

// Sup metric: max over coordinates of circle_norm(x_i - y_i).
Rat torus_distance(TorusPoint const& x, TorusPoint const& y);

enum class SurrogateName { Sqrt2, Golden, EFrac, CustomCF };

std::optional<SurrogateName> surrogate_from_string(std::string const& s);
std::string surrogate_to_string(SurrogateName n);

// Desk-scale stand-ins for irrational rotation numbers. Exact backend: the
// first continued-fraction convergent with denominator >= 2^64. Fixed backend:
// the 128-bit truncation of the real value (computed from a convergent with
// denominator >= 2^200, so the truncation is correct for these numbers).
// CustomCF takes the partial quotients [a0; a1, a2, ...]; a finite expansion
// yields its exact rational value.
TorusScalar irrational_surrogate(SurrogateName name, Backend b,
                                 std::vector<long> const& cf_terms = {});

// Continued-fraction convergents of the named constant; oracle-facing helper.
// Returns (p, q) of the first convergent with q >= min_den.
std::pair<BigInt, BigInt> surrogate_convergent(SurrogateName name, BigInt const& min_den,
                                               std::vector<long> const& cf_terms = {});

}  // namespace reclab
