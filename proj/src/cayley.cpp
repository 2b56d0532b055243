#include <recurrence_lab/cayley.hpp>

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace reclab {

WindowGraph::WindowGraph(long long n_max, std::vector<long long> diffs)
    : n_max_(n_max), diffs_(std::move(diffs)) {
    if (n_max_ < 1) throw std::invalid_argument("WindowGraph: window must be >= 1");
    std::sort(diffs_.begin(), diffs_.end());
    diffs_.erase(std::unique(diffs_.begin(), diffs_.end()), diffs_.end());
    if (!diffs_.empty() && (diffs_.front() < 1 || diffs_.back() > n_max_))
        throw std::invalid_argument("WindowGraph: differences must lie in [1, N]");
    is_diff_.assign(static_cast<size_t>(n_max_) + 1, 0);
    for (long long d : diffs_) is_diff_[static_cast<size_t>(d)] = 1;
}

unsigned long long WindowGraph::edge_count() const {
    unsigned long long e = 0;
    for (long long d : diffs_) e += static_cast<unsigned long long>(n_max_ + 1 - d);
    return e;
}

bool WindowGraph::adjacent(long long u, long long v) const {
    long long d = u > v ? u - v : v - u;
    return d >= 1 && d <= n_max_ && is_diff_[static_cast<size_t>(d)] != 0;
}

int WindowGraph::degree(long long v) const {
    // #{d <= N - v} + #{d <= v}
    auto up = std::upper_bound(diffs_.begin(), diffs_.end(), n_max_ - v) - diffs_.begin();
    auto dn = std::upper_bound(diffs_.begin(), diffs_.end(), v) - diffs_.begin();
    return static_cast<int>(up + dn);
}

WindowGraph WindowGraph::prefix(long long t) const {
    std::vector<long long> d;
    for (long long x : diffs_)
        if (x <= t) d.push_back(x);
    return WindowGraph(t, std::move(d));
}

void WindowGraph::export_edge_list(std::ostream& os) const {
    os << "p edge " << vertex_count() << " " << edge_count() << "\n";
    for (long long d : diffs_)
        for (long long v = 0; v + d <= n_max_; ++v) os << v << " " << (v + d) << "\n";
}

WindowGraph build_window_graph(IntegerSetSpec const& r_set, long long n_max) {
    return WindowGraph(n_max, r_set.enumerate(n_max));
}

bool verify_proper(WindowGraph const& g, std::vector<int> const& coloring) {
    if (static_cast<long long>(coloring.size()) != g.vertex_count()) return false;
    for (long long d : g.diffs())
        for (long long v = 0; v + d <= g.window(); ++v)
            if (coloring[static_cast<size_t>(v)] == coloring[static_cast<size_t>(v + d)]) return false;
    return true;
}

namespace {

UpperBound greedy_color(WindowGraph const& g) {
    long long n = g.vertex_count();
    std::vector<int> color(static_cast<size_t>(n), -1);
    std::vector<char> used;
    int max_color = -1;
    for (long long v = 0; v < n; ++v) {
        used.assign(static_cast<size_t>(max_color) + 2, 0);
        g.for_each_neighbor(v, [&](long long u) {
            int c = color[static_cast<size_t>(u)];
            if (c >= 0 && c < static_cast<int>(used.size())) used[static_cast<size_t>(c)] = 1;
        });
        int c = 0;
        while (used[static_cast<size_t>(c)]) ++c;
        color[static_cast<size_t>(v)] = c;
        max_color = std::max(max_color, c);
    }
    return UpperBound{max_color + 1, std::move(color)};
}

UpperBound dsatur_color(WindowGraph const& g) {
    long long n = g.vertex_count();
    std::vector<int> color(static_cast<size_t>(n), -1);
    std::vector<uint64_t> satmask(static_cast<size_t>(n), 0);  // first 64 colors tracked exactly
    std::vector<int> satcnt(static_cast<size_t>(n), 0);
    std::vector<int> deg(static_cast<size_t>(n));
    for (long long v = 0; v < n; ++v) deg[static_cast<size_t>(v)] = g.degree(v);
    std::vector<char> used;
    int max_color = -1;
    for (long long step = 0; step < n; ++step) {
        long long best = -1;
        for (long long v = 0; v < n; ++v) {
            if (color[static_cast<size_t>(v)] >= 0) continue;
            if (best < 0 || satcnt[static_cast<size_t>(v)] > satcnt[static_cast<size_t>(best)] ||
                (satcnt[static_cast<size_t>(v)] == satcnt[static_cast<size_t>(best)] &&
                 deg[static_cast<size_t>(v)] > deg[static_cast<size_t>(best)]))
                best = v;
        }
        used.assign(static_cast<size_t>(max_color) + 2, 0);
        g.for_each_neighbor(best, [&](long long u) {
            int c = color[static_cast<size_t>(u)];
            if (c >= 0 && c < static_cast<int>(used.size())) used[static_cast<size_t>(c)] = 1;
        });
        int c = 0;
        while (used[static_cast<size_t>(c)]) ++c;
        color[static_cast<size_t>(best)] = c;
        max_color = std::max(max_color, c);
        g.for_each_neighbor(best, [&](long long u) {
            if (color[static_cast<size_t>(u)] >= 0) return;
            if (c < 64) {
                uint64_t bit = 1ull << c;
                if (!(satmask[static_cast<size_t>(u)] & bit)) {
                    satmask[static_cast<size_t>(u)] |= bit;
                    ++satcnt[static_cast<size_t>(u)];
                }
            } else {
                ++satcnt[static_cast<size_t>(u)];  // coarse beyond 64 colors
            }
        });
    }
    return UpperBound{max_color + 1, std::move(color)};
}

}  // namespace

UpperBound chromatic_upper(WindowGraph const& g, ColoringStrategy strategy) {
    UpperBound ub = strategy == ColoringStrategy::Greedy ? greedy_color(g) : dsatur_color(g);
    if (!verify_proper(g, ub.coloring))
        throw std::logic_error("chromatic_upper: produced an improper coloring");
    return ub;
}

namespace {

struct KColorSearch {
    WindowGraph const* g;
    int k;
    uint64_t nodes = 0, cap = 0;
    std::vector<uint32_t> satmask;
    std::vector<int> satcnt, color, deg;
    bool budget_hit = false;

    bool bt(long long colored, int maxused) {
        if (++nodes > cap) {
            budget_hit = true;
            return false;
        }
        long long n = g->vertex_count();
        if (colored == n) return true;
        long long bv = -1;
        int bs = -1, bd = -1;
        for (long long v = 0; v < n; ++v) {
            if (color[static_cast<size_t>(v)] >= 0) continue;
            int sc = satcnt[static_cast<size_t>(v)], dg = deg[static_cast<size_t>(v)];
            if (sc > bs || (sc == bs && dg > bd)) {
                bs = sc;
                bd = dg;
                bv = v;
            }
        }
        if (bs >= k) return false;
        int cmax = std::min(maxused + 1, k - 1);
        for (int c = 0; c <= cmax; ++c) {
            if (satmask[static_cast<size_t>(bv)] & (1u << c)) continue;
            color[static_cast<size_t>(bv)] = c;
            std::vector<long long> touched;
            g->for_each_neighbor(bv, [&](long long u) {
                if (color[static_cast<size_t>(u)] < 0 && !(satmask[static_cast<size_t>(u)] & (1u << c))) {
                    satmask[static_cast<size_t>(u)] |= 1u << c;
                    ++satcnt[static_cast<size_t>(u)];
                    touched.push_back(u);
                }
            });
            if (bt(colored + 1, std::max(maxused, c))) return true;
            if (budget_hit) return false;
            for (long long u : touched) {
                satmask[static_cast<size_t>(u)] &= ~(1u << c);
                --satcnt[static_cast<size_t>(u)];
            }
            color[static_cast<size_t>(bv)] = -1;
        }
        return false;
    }
};

}  // namespace

KColorResult k_colorable(WindowGraph const& g, int k, uint64_t node_cap, uint64_t& nodes_used,
                         std::vector<int>* coloring_out, std::vector<long long> const& seed_clique) {
    if (k < 1) throw std::invalid_argument("k_colorable: k must be >= 1");
    if (k > 31) throw std::invalid_argument("k_colorable: k > 31 unsupported in exact search");
    KColorSearch s;
    s.g = &g;
    s.k = k;
    s.cap = node_cap;
    long long n = g.vertex_count();
    s.satmask.assign(static_cast<size_t>(n), 0);
    s.satcnt.assign(static_cast<size_t>(n), 0);
    s.color.assign(static_cast<size_t>(n), -1);
    s.deg.resize(static_cast<size_t>(n));
    for (long long v = 0; v < n; ++v) s.deg[static_cast<size_t>(v)] = g.degree(v);

    // Precolor a clique: valid symmetry breaking for both outcomes.
    long long colored = 0;
    int maxused = -1;
    if (static_cast<int>(seed_clique.size()) > k) return KColorResult::Unsat;
    for (size_t i = 0; i < seed_clique.size(); ++i) {
        long long v = seed_clique[i];
        int c = static_cast<int>(i);
        s.color[static_cast<size_t>(v)] = c;
        ++colored;
        maxused = c;
        g.for_each_neighbor(v, [&](long long u) {
            if (s.color[static_cast<size_t>(u)] < 0 && !(s.satmask[static_cast<size_t>(u)] & (1u << c))) {
                s.satmask[static_cast<size_t>(u)] |= 1u << c;
                ++s.satcnt[static_cast<size_t>(u)];
            }
        });
    }

    bool sat = s.bt(colored, maxused);
    nodes_used = s.nodes;
    if (s.budget_hit) return KColorResult::Budget;
    if (sat && coloring_out) *coloring_out = s.color;
    return sat ? KColorResult::Sat : KColorResult::Unsat;
}

namespace {

struct CliqueSearch {
    WindowGraph const* g;
    uint64_t nodes = 0, cap = 0;
    bool budget_hit = false;
    std::vector<long long> best, current;

    void extend(std::vector<long long> const& cand) {
        if (++nodes > cap) {
            budget_hit = true;
            return;
        }
        if (current.size() > best.size()) best = current;
        if (current.size() + cand.size() <= best.size()) return;
        for (size_t i = 0; i < cand.size(); ++i) {
            if (current.size() + (cand.size() - i) <= best.size()) return;
            long long v = cand[i];
            std::vector<long long> next;
            for (size_t j = i + 1; j < cand.size(); ++j)
                if (g->adjacent(cand[j], v)) next.push_back(cand[j]);
            current.push_back(v);
            extend(next);
            current.pop_back();
            if (budget_hit) return;
        }
    }
};

}  // namespace

CliqueBound max_clique(WindowGraph const& g, uint64_t node_cap) {
    CliqueSearch s;
    s.g = &g;
    s.cap = node_cap;
    if (g.diffs().empty()) return CliqueBound{{0}, true, 0};
    // Any clique translates to one containing 0 as its minimum vertex, so the
    // candidate set is just the difference set.
    s.current = {0};
    s.best = {0};
    std::vector<long long> cand = g.diffs();
    s.extend(cand);
    return CliqueBound{s.best, !s.budget_hit, s.nodes};
}

LowerBudget default_lower_budget(long long n_max) {
    // Quadratic node schedule: small windows stay cheap, large windows may
    // afford refutations of deeper prefixes.
    long double cap = 0.15L * static_cast<long double>(n_max) * static_cast<long double>(n_max);
    uint64_t nodes = static_cast<uint64_t>(std::min<long double>(cap, 4e8L));
    return LowerBudget{n_max, std::max<uint64_t>(nodes, 4096)};
}

LowerBound chromatic_lower(WindowGraph const& g, LowerBudget budget) {
    LowerBound out{1, "edgeless", {}, 0, 0, false};
    if (g.diffs().empty()) {
        out.exact = true;
        return out;
    }

    uint64_t clique_cap = std::min<uint64_t>(budget.node_cap / 4, 2'000'000);
    CliqueBound cb = max_clique(g, clique_cap);
    out.nodes_used += cb.nodes_used;
    out.value = static_cast<int>(cb.clique.size());
    out.kind = "clique";
    out.clique = cb.clique;

    // Exact ladder over doubling prefixes: every bound promotion is backed by
    // a finished refutation of (value)-colorability of some prefix.
    long long pmax = std::min(budget.prefix_cap, g.window());
    uint64_t remaining = budget.node_cap > out.nodes_used ? budget.node_cap - out.nodes_used : 0;
    std::vector<long long> prefixes;
    for (long long t = 4; t < pmax; t *= 2) prefixes.push_back(t);
    prefixes.push_back(pmax);
    bool resolved_full_window = false;
    for (long long t : prefixes) {
        if (remaining == 0) break;
        WindowGraph sub = g.prefix(t);
        std::vector<long long> seed = max_clique(sub, std::min<uint64_t>(remaining, 100'000)).clique;
        bool sat_here = false;
        while (remaining > 0) {
            uint64_t used = 0;
            KColorResult r = k_colorable(sub, out.value, remaining, used,
                                         nullptr, seed);
            remaining = used >= remaining ? 0 : remaining - used;
            out.nodes_used += used;
            if (r == KColorResult::Unsat) {
                ++out.value;
                out.kind = "prefix-chromatic";
                out.certificate_prefix = t;
                out.clique.clear();
            } else if (r == KColorResult::Sat) {
                sat_here = true;
                if (t == g.window()) resolved_full_window = true;
                break;
            } else {
                break;  // budget exhausted mid-search; keep certified value
            }
        }
        if (!sat_here && remaining == 0) break;
    }
    out.exact = resolved_full_window && g.window() <= budget.prefix_cap;
    if (out.exact) out.kind = "exact";
    return out;
}

std::vector<GrowthRow> chromatic_growth(IntegerSetSpec const& r_set,
                                        std::vector<long long> const& schedule,
                                        ColoringStrategy strategy) {
    for (size_t i = 1; i < schedule.size(); ++i)
        if (schedule[i] <= schedule[i - 1])
            throw std::invalid_argument("chromatic_growth: schedule must be increasing");
    std::vector<GrowthRow> rows;
    int carried_lower = 1;
    std::string carried_kind = "edgeless";
    for (long long n : schedule) {
        WindowGraph g = build_window_graph(r_set, n);
        UpperBound ub = chromatic_upper(g, strategy);
        LowerBound lb = chromatic_lower(g, default_lower_budget(n));
        if (lb.value > carried_lower) {
            carried_lower = lb.value;
            carried_kind = lb.kind;
        }
        rows.push_back(GrowthRow{n, carried_lower, ub.colors, carried_kind});
    }
    return rows;
}

}  // namespace reclab
