#include <recurrence_lab/coloring.hpp>

#include <algorithm>
#include <random>
#include <stdexcept>

namespace reclab {

Coloring::Coloring(long long n_max, int colors, std::vector<uint32_t> assignment, Json provenance)
    : n_max_(n_max), colors_(colors), assign_(std::move(assignment)), provenance_(std::move(provenance)) {
    if (n_max_ < 1) throw std::invalid_argument("Coloring: window must be >= 1");
    if (colors_ < 1) throw std::invalid_argument("Coloring: need at least one color");
    if (static_cast<long long>(assign_.size()) != n_max_)
        throw std::invalid_argument("Coloring: assignment must be total on [1, N]");
    for (uint32_t c : assign_)
        if (c < 1 || c > static_cast<uint32_t>(colors_))
            throw std::invalid_argument("Coloring: color value out of range");
}

Coloring Coloring::constant(long long n_max, int colors, uint32_t color) {
    return Coloring(n_max, colors, std::vector<uint32_t>(static_cast<size_t>(n_max), color),
                    Json{{"constructor", "constant"}, {"color", color}});
}

Json Coloring::to_json() const {
    // run-length pairs [color, count]
    Json runs = Json::array();
    size_t i = 0;
    while (i < assign_.size()) {
        size_t j = i;
        while (j < assign_.size() && assign_[j] == assign_[i]) ++j;
        runs.push_back(Json::array({assign_[i], j - i}));
        i = j;
    }
    return Json{{"window", n_max_}, {"colors", colors_}, {"runs", runs}, {"provenance", provenance_}};
}

Coloring Coloring::from_json(Json const& j) {
    long long n_max = j.at("window").get<long long>();
    int colors = j.at("colors").get<int>();
    std::vector<uint32_t> assign;
    assign.reserve(static_cast<size_t>(n_max));
    for (auto const& run : j.at("runs")) {
        uint32_t c = run.at(0).get<uint32_t>();
        size_t len = run.at(1).get<size_t>();
        assign.insert(assign.end(), len, c);
    }
    return Coloring(n_max, colors, std::move(assign), j.value("provenance", Json::object()));
}

Coloring rotation_coloring(TorusScalar const& alpha, int r, long long n_max) {
    if (r < 2) throw std::invalid_argument("rotation_coloring: need r >= 2");
    std::vector<uint32_t> assign(static_cast<size_t>(n_max));
    TorusScalar acc = TorusScalar::zero(alpha.backend());
    for (long long n = 1; n <= n_max; ++n) {
        acc = acc + alpha;
        assign[static_cast<size_t>(n - 1)] = static_cast<uint32_t>(acc.cell_index(r)) + 1;
    }
    return Coloring(n_max, r, std::move(assign),
                    Json{{"constructor", "rotation"}, {"alpha", scalar_to_json(alpha)}, {"r", r}});
}

Coloring power_coloring(TorusScalar const& beta, int ell, int m, long long n_max) {
    if (ell < 1) throw std::invalid_argument("power_coloring: ell must be >= 1");
    if (m < 2) throw std::invalid_argument("power_coloring: need m >= 2");
    std::vector<uint32_t> assign(static_cast<size_t>(n_max));
    for (long long p = 1; p <= n_max; ++p) {
        BigInt pw = 1;
        for (int i = 0; i < ell; ++i) pw *= p;
        assign[static_cast<size_t>(p - 1)] = static_cast<uint32_t>(beta.scaled(pw).cell_index(m)) + 1;
    }
    return Coloring(n_max, m, std::move(assign),
                    Json{{"constructor", "power"},
                         {"beta", scalar_to_json(beta)},
                         {"ell", ell},
                         {"m", m}});
}

int not_two_large_length(Rat const& eps) {
    if (eps <= 0 || eps >= Rat(1, 2)) throw std::invalid_argument("not_two_large_length: eps in (0, 1/2)");
    return 1 + static_cast<int>(rat_ceil(Rat(1) / (Rat(2) * eps)));
}

int affine_color_count(int ell, Rat const& delta) {
    if (ell < 1) throw std::invalid_argument("affine_color_count: ell must be >= 1");
    if (delta <= 0 || delta > Rat(1, 2)) throw std::invalid_argument("affine_color_count: delta in (0, 1/2]");
    return static_cast<int>(rat_ceil(Rat(BigInt(1) << (ell - 1)) / delta));
}

std::optional<MonoAP> find_mono_ap(Coloring const& coloring, int length, IntegerSetSpec const& steps) {
    if (length < 2) throw std::invalid_argument("find_mono_ap: length must be >= 2");
    long long n_max = coloring.window();
    long long max_step = (n_max - 1) / (length - 1);
    if (max_step < 1) return std::nullopt;
    for (long long step : steps.enumerate(max_step)) {
        long long last_start = n_max - static_cast<long long>(length - 1) * step;
        for (long long a = 1; a <= last_start; ++a) {
            uint32_t c = coloring.color(a);
            bool mono = true;
            for (int k = 1; k < length && mono; ++k)
                mono = coloring.color(a + static_cast<long long>(k) * step) == c;
            if (mono) return MonoAP{a, step, c, length};
        }
    }
    return std::nullopt;
}

SyndeticEncoding syndetic_encode(Coloring const& coloring) {
    int r = coloring.colors();
    SyndeticEncoding enc{r, coloring.window(), {}, 0, coloring};
    enc.elements.reserve(static_cast<size_t>(coloring.window()));
    for (long long n = 1; n <= coloring.window(); ++n)
        enc.elements.push_back(static_cast<long long>(r) * n + coloring.color(n));
    // rn + i is increasing in n since i <= r; one element per block (rn, r(n+1)]
    long long gap = 0;
    for (size_t i = 1; i < enc.elements.size(); ++i)
        gap = std::max(gap, enc.elements[i] - enc.elements[i - 1]);
    enc.max_consecutive_gap = gap;
    return enc;
}

MonoAP SyndeticEncoding::decode(long long a, long long n, int ell) const {
    if (ell < 1 || n < 1) throw std::invalid_argument("decode: need ell >= 1 and step >= 1");
    for (int j = 0; j < ell * r; ++j) {
        long long x = a + static_cast<long long>(j) * n;
        if (!std::binary_search(elements.begin(), elements.end(), x))
            throw std::invalid_argument("decode: progression leaves E at term " + std::to_string(j));
    }
    long long i = (a - 1) % r + 1;  // a = r b + i with 1 <= i <= r
    long long b = (a - i) / r;
    MonoAP ap{b, n, static_cast<uint32_t>(source.color(b)), ell};
    for (int j = 0; j < ell; ++j) {
        long long m = b + static_cast<long long>(j) * n;
        if (m < 1 || m > source.window() || source.color(m) != ap.color)
            throw std::logic_error("decode: encoded progression is not monochromatic");
    }
    return ap;
}

Coloring join_colorings(Coloring const& c1, Coloring const& c2) {
    if (c1.window() != c2.window()) throw std::invalid_argument("join_colorings: window mismatch");
    int r1 = c1.colors(), r2 = c2.colors();
    std::vector<uint32_t> assign(static_cast<size_t>(c1.window()));
    for (long long n = 1; n <= c1.window(); ++n)
        assign[static_cast<size_t>(n - 1)] = (c1.color(n) - 1) * static_cast<uint32_t>(r2) + c2.color(n);
    return Coloring(c1.window(), r1 * r2, std::move(assign),
                    Json{{"constructor", "join"},
                         {"left", c1.provenance()},
                         {"right", c2.provenance()}});
}

namespace {

long long count_violations(std::vector<uint32_t> const& assign, std::vector<long long> const& steps,
                           int length, long long n_max) {
    long long bad = 0;
    for (long long step : steps) {
        long long last_start = n_max - static_cast<long long>(length - 1) * step;
        for (long long a = 1; a <= last_start; ++a) {
            uint32_t c = assign[static_cast<size_t>(a - 1)];
            bool mono = true;
            for (int k = 1; k < length && mono; ++k)
                mono = assign[static_cast<size_t>(a + static_cast<long long>(k) * step - 1)] == c;
            if (mono) ++bad;
        }
    }
    return bad;
}

}  // namespace

HeuristicSearchResult heuristic_avoiding_coloring(IntegerSetSpec const& steps, int r, int length,
                                                  long long n_max, uint64_t seed, int restarts) {
    if (r < 2) throw std::invalid_argument("heuristic search: r must be >= 2");
    if (length < 2) throw std::invalid_argument("heuristic search: length must be >= 2");
    long long max_step = (n_max - 1) / (length - 1);
    std::vector<long long> step_list = max_step >= 1 ? steps.enumerate(max_step) : std::vector<long long>{};

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<uint32_t> pick(1, static_cast<uint32_t>(r));

    std::vector<uint32_t> best;
    long long best_bad = -1;
    int used = 0;
    for (int t = 0; t < restarts; ++t) {
        ++used;
        std::vector<uint32_t> assign(static_cast<size_t>(n_max));
        for (auto& c : assign) c = pick(rng);
        // local repair: recolor the first offender's last term
        for (int pass = 0; pass < 4 * r; ++pass) {
            bool fixed_any = false;
            for (long long step : step_list) {
                long long last_start = n_max - static_cast<long long>(length - 1) * step;
                for (long long a = 1; a <= last_start; ++a) {
                    uint32_t c = assign[static_cast<size_t>(a - 1)];
                    bool mono = true;
                    for (int k = 1; k < length && mono; ++k)
                        mono = assign[static_cast<size_t>(a + static_cast<long long>(k) * step - 1)] == c;
                    if (mono) {
                        long long tail = a + static_cast<long long>(length - 1) * step;
                        uint32_t nc = pick(rng);
                        while (nc == c) nc = pick(rng);
                        assign[static_cast<size_t>(tail - 1)] = nc;
                        fixed_any = true;
                    }
                }
            }
            if (!fixed_any) break;
        }
        long long bad = count_violations(assign, step_list, length, n_max);
        if (best_bad < 0 || bad < best_bad) {
            best_bad = bad;
            best = assign;
        }
        if (best_bad == 0) break;
    }
    Coloring c(n_max, r, std::move(best),
               Json{{"constructor", "heuristic"},
                    {"note", "seeded random-restart search; window evidence only"},
                    {"seed", seed},
                    {"target_length", length}});
    return HeuristicSearchResult{std::move(c), best_bad, used};
}

}  // namespace reclab
