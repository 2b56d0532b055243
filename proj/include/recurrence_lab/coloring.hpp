#pragma once

// Finite-window colorings and the combinatorics built on them: rotation and
// power-map colorings, monochromatic-AP search, the syndetic encoding with
// its decoder, coloring joins, and a seeded heuristic search mode.

#include <recurrence_lab/integer_sets.hpp>

#include <cstdint>
#include <optional>

namespace reclab {

class Coloring {
public:
    // assignment is 1-indexed by n in [1, N]; colors take values in [1, r].
    Coloring(long long n_max, int colors, std::vector<uint32_t> assignment, Json provenance);

    static Coloring constant(long long n_max, int colors = 1, uint32_t color = 1);

    long long window() const { return n_max_; }
    int colors() const { return colors_; }
    uint32_t color(long long n) const { return assign_[static_cast<size_t>(n - 1)]; }
    Json const& provenance() const { return provenance_; }

    // Compact run-length serialization.
    Json to_json() const;
    static Coloring from_json(Json const& j);

    bool operator==(Coloring const& o) const {
        return n_max_ == o.n_max_ && colors_ == o.colors_ && assign_ == o.assign_;
    }

private:
    long long n_max_;
    int colors_;
    std::vector<uint32_t> assign_;
    Json provenance_;
};

// color(n) = j iff frac(n alpha) lies in the half-open arc [(j-1)/r, j/r).
Coloring rotation_coloring(TorusScalar const& alpha, int r, long long n_max);

// color(p) = j iff frac(p^ell beta) lies in [(j-1)/m, j/m).
Coloring power_coloring(TorusScalar const& beta, int ell, int m, long long n_max);

// The forbidden progression length of the rotation construction: 1 + ceil(1/(2 eps)).
int not_two_large_length(Rat const& eps);

// The color count of the power-map construction: ceil(2^(ell-1) / delta).
int affine_color_count(int ell, Rat const& delta);

struct MonoAP {
    long long start;
    long long step;
    uint32_t color;
    int length;
};

// Exhaustive scan for a monochromatic AP of the given number of terms with
// step in `steps`; returns the lexicographically smallest (step, start).
std::optional<MonoAP> find_mono_ap(Coloring const& coloring, int length, IntegerSetSpec const& steps);

struct SyndeticEncoding {
    int r;
    long long source_window;
    std::vector<long long> elements;       // E = { r n + i : n in C_i }
    long long max_consecutive_gap;         // certified <= 2r - 1
    Coloring source;

    // Maps an AP of ell*r terms and step n inside E to the monochromatic AP
    // of ell terms and step n it encodes. Throws if the AP is not in E.
    MonoAP decode(long long a, long long n, int ell) const;
};

SyndeticEncoding syndetic_encode(Coloring const& coloring);

// r1*r2 colors; an AP monochromatic for the join is monochromatic for both inputs.
Coloring join_colorings(Coloring const& c1, Coloring const& c2);

struct HeuristicSearchResult {
    Coloring best;
    long long violations;  // count of mono APs of the target length remaining
    int restarts_used;
};

// Heuristic (seeded random restarts + local repair) search for an r-coloring
// of [1, N] avoiding monochromatic APs of `length` terms with step in R.
// Window evidence only; never a certificate of non-largeness.
HeuristicSearchResult heuristic_avoiding_coloring(IntegerSetSpec const& steps, int r, int length,
                                                  long long n_max, uint64_t seed, int restarts);

}  // namespace reclab
