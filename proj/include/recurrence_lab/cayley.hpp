#pragma once

// Windowed Cayley graphs G_R on [0, N] with edges (m, m+n), n in R, and the
// chromatic diagnostics built on them: DSATUR/greedy upper bounds with
// verifiable coloring certificates, and certified lower bounds from budgeted
// exact search (max-clique branch and bound, plus exact chromatic numbers of
// prefix windows). Asymptotics are never claimed; every bound is per-window.

#include <recurrence_lab/integer_sets.hpp>

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace reclab {

class WindowGraph {
public:
    WindowGraph(long long n_max, std::vector<long long> diffs);

    long long window() const { return n_max_; }                       // vertices 0..N
    long long vertex_count() const { return n_max_ + 1; }
    std::vector<long long> const& diffs() const { return diffs_; }    // R cap [1, N], sorted
    unsigned long long edge_count() const;
    bool adjacent(long long u, long long v) const;
    int degree(long long v) const;

    template <typename F>
    void for_each_neighbor(long long v, F&& f) const {
        for (long long d : diffs_) {
            if (v + d <= n_max_) f(v + d);
            if (v - d >= 0) f(v - d);
        }
    }

    // Induced subgraph on [0, T].
    WindowGraph prefix(long long t) const;

    // Text export: header "p edge n m", then one "u v" line per edge.
    void export_edge_list(std::ostream& os) const;

private:
    long long n_max_;
    std::vector<long long> diffs_;
    std::vector<char> is_diff_;  // membership table for adjacency tests
};

WindowGraph build_window_graph(IntegerSetSpec const& r_set, long long n_max);

enum class ColoringStrategy { Greedy, Dsatur };

struct UpperBound {
    int colors;
    std::vector<int> coloring;  // proper coloring certificate, 0-based colors
};

UpperBound chromatic_upper(WindowGraph const& g, ColoringStrategy strategy);
bool verify_proper(WindowGraph const& g, std::vector<int> const& coloring);

enum class KColorResult { Sat, Unsat, Budget };

// DSATUR branch and bound, deterministic; nodes_used reports search effort.
// A clique may be precolored to break color symmetry.
KColorResult k_colorable(WindowGraph const& g, int k, uint64_t node_cap, uint64_t& nodes_used,
                         std::vector<int>* coloring_out = nullptr,
                         std::vector<long long> const& seed_clique = {});

struct CliqueBound {
    std::vector<long long> clique;
    bool exhausted;  // search tree fully explored: the clique is maximum
    uint64_t nodes_used;
};

// Branch-and-bound max clique; cliques are anchored at their minimum vertex
// (window graphs are translation invariant). Certified by construction.
CliqueBound max_clique(WindowGraph const& g, uint64_t node_cap);

struct LowerBudget {
    long long prefix_cap;   // largest prefix window handed to exact search
    uint64_t node_cap;      // total search-tree budget across the ladder
};

// Default budget schedule used by the growth diagnostic; node budget grows
// quadratically with the window so larger windows may certify deeper prefixes.
LowerBudget default_lower_budget(long long n_max);

struct LowerBound {
    int value;
    std::string kind;                 // "edgeless" | "clique" | "prefix-chromatic" | "exact"
    std::vector<long long> clique;    // clique certificate when that bound won
    long long certificate_prefix;     // prefix T with chi([0,T]) >= value, when applicable
    uint64_t nodes_used;
    bool exact;                       // value is chi(g) exactly
};

// Certified lower bound: max of the clique bound and the exact chromatic
// numbers of budget-bounded prefix windows (an anytime ladder; every value
// returned is backed by a finished refutation or clique).
LowerBound chromatic_lower(WindowGraph const& g, LowerBudget budget);
inline LowerBound chromatic_lower(WindowGraph const& g, long long budget) {
    return chromatic_lower(g, LowerBudget{budget, default_lower_budget(budget).node_cap});
}

struct GrowthRow {
    long long n;
    int lower;
    int upper;
    std::string lower_kind;
};

// Bounds per window; lower bounds are carried forward, so they are
// nondecreasing along the schedule.
std::vector<GrowthRow> chromatic_growth(IntegerSetSpec const& r_set,
                                        std::vector<long long> const& schedule,
                                        ColoringStrategy strategy);

}  // namespace reclab
