#include <recurrence_lab/recurrence.hpp>

#include <stdexcept>

namespace reclab {

namespace {

Json point_to_json(TorusPoint const& p) {
    Json arr = Json::array();
    for (auto const& c : p.coords()) arr.push_back(scalar_to_json(c));
    return arr;
}

}  // namespace

Json RecurrenceReport::to_json() const {
    Json j;
    j["mode"] = mode;
    j["window"] = window;
    j["exhausted"] = exhausted;
    if (!exhausted) j["witness"] = witness;
    j["parameters"] = parameters;
    return j;
}

RecurrenceReport recurrence_witness(AffineSystem const& sys, IntegerSetSpec const& r_set,
                                    BallSpec const& u, int ell, long long n_max, long grid) {
    if (ell < 1) throw std::invalid_argument("recurrence_witness: ell must be >= 1");
    MultiReturn mr = multi_return_times(sys, u, ell, n_max, grid);
    RecurrenceReport rep;
    rep.mode = "system-witness";
    rep.window = n_max;
    rep.parameters = Json{{"ell", ell},
                          {"grid", grid},
                          {"set", r_set.to_json()},
                          {"radius", rat_to_json(u.radius)}};
    std::vector<char> hit(static_cast<size_t>(n_max) + 1, 0);
    for (long long t : mr.times) hit[static_cast<size_t>(t)] = 1;
    for (long long n : r_set.enumerate(n_max)) {
        if (hit[static_cast<size_t>(n)]) {
            rep.exhausted = false;
            rep.witness = Json{{"n", n}, {"point", point_to_json(mr.witnesses.at(n))}};
            return rep;
        }
    }
    rep.exhausted = true;
    return rep;
}

Profile pointwise_profile(AffineSystem const& sys, TorusPoint const& x, IntegerSetSpec const& r_set,
                          int ell, long long n_max) {
    if (ell < 1) throw std::invalid_argument("pointwise_profile: ell must be >= 1");
    auto candidates = r_set.enumerate(n_max);
    if (candidates.empty()) throw std::domain_error("pointwise_profile: R empty on window");
    // one orbit pass up to ell * n_max; distances to the base point reused per n
    long long horizon = static_cast<long long>(ell) * n_max;
    std::vector<Rat> dist(static_cast<size_t>(horizon) + 1, Rat(0));
    TorusPoint p = x;
    for (long long m = 1; m <= horizon; ++m) {
        p = sys.apply(p);
        dist[static_cast<size_t>(m)] = torus_distance(p, x);
    }
    Profile best{Rat(2), -1};
    for (long long n : candidates) {
        Rat worst = 0;
        for (int k = 1; k <= ell; ++k) {
            Rat const& d = dist[static_cast<size_t>(static_cast<long long>(k) * n)];
            if (d > worst) worst = d;
        }
        if (worst < best.value) best = Profile{worst, n};
    }
    return best;
}

RecurrenceReport partition_witness(Coloring const& coloring, IntegerSetSpec const& r_set, int ell) {
    if (ell < 1) throw std::invalid_argument("partition_witness: ell must be >= 1");
    auto ap = find_mono_ap(coloring, ell + 1, r_set);
    RecurrenceReport rep;
    rep.mode = "partition";
    rep.window = coloring.window();
    rep.parameters = Json{{"ell", ell}, {"colors", coloring.colors()}, {"set", r_set.to_json()}};
    if (ap) {
        rep.exhausted = false;
        rep.witness = Json{{"start", ap->start}, {"step", ap->step}, {"color", ap->color}};
    }
    return rep;
}

RecurrenceReport intersective_witness(IntegerSetSpec const& e_set, IntegerSetSpec const& r_set,
                                      int ell, long long n_max) {
    if (ell < 1) throw std::invalid_argument("intersective_witness: ell must be >= 1");
    auto elems = e_set.enumerate(n_max);
    RecurrenceReport rep;
    rep.mode = "intersective";
    rep.window = n_max;
    rep.parameters = Json{{"ell", ell}, {"E", e_set.to_json()}, {"set", r_set.to_json()}};
    if (elems.empty()) throw std::domain_error("intersective_witness: E empty on window");
    std::vector<char> in_e(static_cast<size_t>(n_max) + 1, 0);
    for (long long e : elems) in_e[static_cast<size_t>(e)] = 1;
    int length = ell + 1;
    long long max_step = (n_max - 1) / ell;
    if (max_step >= 1) {
        for (long long step : r_set.enumerate(max_step)) {
            for (long long a = 1; a + static_cast<long long>(ell) * step <= n_max; ++a) {
                bool ok = in_e[static_cast<size_t>(a)] != 0;
                for (int k = 1; k < length && ok; ++k)
                    ok = in_e[static_cast<size_t>(a + static_cast<long long>(k) * step)] != 0;
                if (ok) {
                    rep.exhausted = false;
                    rep.witness = Json{{"start", a}, {"step", step}};
                    return rep;
                }
            }
        }
    }
    rep.exhausted = true;
    return rep;
}

Profile bohr_min_profile(IntegerSetSpec const& r_set, std::vector<TorusScalar> const& alphas,
                         long long n_max) {
    if (alphas.empty()) throw std::invalid_argument("bohr_min_profile: empty frequency list");
    auto candidates = r_set.enumerate(n_max);
    if (candidates.empty()) throw std::domain_error("bohr_min_profile: R empty on window");
    Profile best{Rat(2), -1};
    for (long long n : candidates) {
        Rat worst = 0;
        for (auto const& a : alphas) {
            Rat d = circle_norm(a.scaled(n));
            if (d > worst) worst = d;
        }
        if (worst < best.value) best = Profile{worst, n};
    }
    return best;
}

RecurrenceReport pointwise_profile_report(AffineSystem const& sys, TorusPoint const& x,
                                          IntegerSetSpec const& r_set, int ell, long long n_max) {
    Profile p = pointwise_profile(sys, x, r_set, ell, n_max);
    RecurrenceReport rep;
    rep.mode = "pointwise-profile";
    rep.window = n_max;
    rep.exhausted = false;
    rep.witness = Json{{"n", p.argmin_n},
                       {"value", rat_to_json(p.value)},
                       {"value_approx", static_cast<double>(numerator(p.value)) /
                                            static_cast<double>(denominator(p.value))}};
    rep.parameters = Json{{"ell", ell}, {"set", r_set.to_json()}};
    return rep;
}

RecurrenceReport bohr_min_profile_report(IntegerSetSpec const& r_set,
                                         std::vector<TorusScalar> const& alphas, long long n_max) {
    Profile p = bohr_min_profile(r_set, alphas, n_max);
    RecurrenceReport rep;
    rep.mode = "bohr-profile";
    rep.window = n_max;
    rep.exhausted = false;
    Json freq = Json::array();
    for (auto const& a : alphas) freq.push_back(scalar_to_json(a));
    rep.witness = Json{{"n", p.argmin_n},
                       {"value", rat_to_json(p.value)},
                       {"value_approx", static_cast<double>(numerator(p.value)) /
                                            static_cast<double>(denominator(p.value))}};
    rep.parameters = Json{{"alphas", freq}, {"set", r_set.to_json()}};
    return rep;
}

}  // namespace reclab
