#include <recurrence_lab/report.hpp>

#include <recurrence_lab/cayley.hpp>
#include <recurrence_lab/recurrence.hpp>
#include <recurrence_lab/spec_text.hpp>

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace reclab {

namespace {

std::string const* find_arg(RunConfig const& cfg, std::string const& key) {
    auto it = cfg.args.find(key);
    return it == cfg.args.end() ? nullptr : &it->second;
}

std::string require_arg(RunConfig const& cfg, std::string const& key) {
    auto* v = find_arg(cfg, key);
    if (!v) throw std::invalid_argument("missing required argument --" + key);
    return *v;
}

Json echo_parameters(RunConfig const& cfg) {
    Json args = Json::object();
    for (auto const& [k, v] : cfg.args) args[k] = v;
    return Json{{"command", cfg.command},     {"subcommand", cfg.subcommand},
                {"backend", backend_name(cfg.backend)}, {"window", cfg.window},
                {"grid", cfg.grid},           {"seed", cfg.seed},
                {"format", cfg.format},       {"args", args}};
}

Json envelope(RunConfig const& cfg) {
    return Json{{"schema", "recurrence-lab/1"}, {"parameters", echo_parameters(cfg)}};
}

BallSpec parse_ball(RunConfig const& cfg, Backend backend, int dim) {
    TorusPoint center = find_arg(cfg, "center") ? parse_point(require_arg(cfg, "center"), backend)
                                                : TorusPoint::zero(dim, backend);
    Rat radius = parse_rational(require_arg(cfg, "radius"));
    std::vector<bool> mask;
    if (auto* m = find_arg(cfg, "mask")) {
        std::string s = *m;
        if (!s.empty() && s.front() == '[') s = s.substr(1, s.size() - 2);
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) mask.push_back(tok == "1" || tok == "true");
    }
    return BallSpec(std::move(center), std::move(radius), std::move(mask));
}

double rat_to_double(Rat const& r) {
    return static_cast<double>(numerator(r)) / static_cast<double>(denominator(r));
}

ExecResult run_sets(RunConfig const& cfg) {
    SpecPtr spec = parse_spec(require_arg(cfg, "set"), cfg.backend);
    auto elems = spec->enumerate(cfg.window);
    ExecResult res;
    res.report = envelope(cfg);
    res.report["result"] = Json{{"canonical", print_spec(*spec)},
                                {"spec", spec->to_json()},
                                {"count", elems.size()},
                                {"elements", elems},
                                {"depth_truncated", spec->depth_truncated()}};
    if (!elems.empty())
        res.report["result"]["syndeticity_constant"] = syndeticity_constant(*spec, cfg.window);
    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "n\n";
        for (long long e : elems) os << e << "\n";
        res.csv = os.str();
    }
    return res;
}

ExecResult run_orbit(RunConfig const& cfg) {
    AffineSystem sys = parse_system(require_arg(cfg, "system"), cfg.backend);
    TorusPoint x = find_arg(cfg, "x") ? parse_point(require_arg(cfg, "x"), cfg.backend)
                                      : TorusPoint::zero(sys.dim(), cfg.backend);
    ExecResult res;
    res.report = envelope(cfg);
    if (find_arg(cfg, "radius")) {
        BallSpec u = parse_ball(cfg, cfg.backend, sys.dim());
        auto times = return_times_point(sys, x, u, cfg.window);
        res.report["result"] = Json{{"mode", "return-times"},
                                    {"minimality", sys.minimality_note()},
                                    {"count", times.size()},
                                    {"times", times}};
        res.exit_code = times.empty() ? 2 : 0;
        if (cfg.format == "csv") {
            std::ostringstream os;
            os << "n\n";
            for (long long t : times) os << t << "\n";
            res.csv = os.str();
        }
        return res;
    }
    Json pts = Json::array();
    std::ostringstream csv;
    csv << "n";
    for (int i = 0; i < sys.dim(); ++i) csv << ",x" << (i + 1);
    csv << "\n";
    TorusPoint p = x;
    for (long long n = 0; n <= cfg.window; ++n) {
        if (n > 0) p = sys.apply(p);
        Json row = Json::array();
        csv << n;
        for (int i = 0; i < sys.dim(); ++i) {
            row.push_back(p.coord(i).to_double());
            csv << "," << p.coord(i).to_double();
        }
        csv << "\n";
        pts.push_back(row);
    }
    res.report["result"] = Json{{"mode", "orbit"}, {"minimality", sys.minimality_note()}, {"points", pts}};
    if (cfg.format == "csv") res.csv = csv.str();
    return res;
}

ExecResult run_recur_test(RunConfig const& cfg) {
    AffineSystem sys = parse_system(require_arg(cfg, "system"), cfg.backend);
    SpecPtr r_set = parse_spec(require_arg(cfg, "set"), cfg.backend);
    int ell = find_arg(cfg, "ell") ? std::stoi(require_arg(cfg, "ell")) : 1;
    ExecResult res;
    res.report = envelope(cfg);
    if (find_arg(cfg, "radius")) {
        BallSpec u = parse_ball(cfg, cfg.backend, sys.dim());
        RecurrenceReport rep = recurrence_witness(sys, *r_set, u, ell, cfg.window, cfg.grid);
        res.report["result"] = rep.to_json();
        res.exit_code = rep.exhausted ? 2 : 0;
        return res;
    }
    // default diagnostic: pointwise profile at x (default 0)
    TorusPoint x = find_arg(cfg, "x") ? parse_point(require_arg(cfg, "x"), cfg.backend)
                                      : TorusPoint::zero(sys.dim(), cfg.backend);
    RecurrenceReport rep = pointwise_profile_report(sys, x, *r_set, ell, cfg.window);
    res.report["result"] = rep.to_json();
    return res;
}

ExecResult run_multi_recur(RunConfig const& cfg) {
    AffineSystem sys = parse_system(require_arg(cfg, "system"), cfg.backend);
    BallSpec u = parse_ball(cfg, cfg.backend, sys.dim());
    int ell = find_arg(cfg, "ell") ? std::stoi(require_arg(cfg, "ell")) : 1;
    MultiReturn mr = multi_return_times(sys, u, ell, cfg.window, cfg.grid);
    ExecResult res;
    res.report = envelope(cfg);
    Json wit = Json::object();
    for (auto const& [n, pt] : mr.witnesses) {
        Json coords = Json::array();
        for (auto const& c : pt.coords()) coords.push_back(scalar_to_json(c));
        wit[std::to_string(n)] = coords;
    }
    res.report["result"] = Json{{"mode", "multi-return-under-approximation"},
                                {"ell", ell},
                                {"grid_resolution", mr.grid_resolution},
                                {"note", "witness-grid under-approximation of N^ell(U)"},
                                {"count", mr.times.size()},
                                {"times", mr.times},
                                {"witnesses", wit}};
    res.exit_code = mr.times.empty() ? 2 : 0;
    return res;
}

ExecResult run_coloring(RunConfig const& cfg) {
    ExecResult res;
    res.report = envelope(cfg);
    if (cfg.subcommand == "not2large") {
        TorusScalar alpha = parse_scalar(require_arg(cfg, "alpha"), cfg.backend);
        Rat eps = parse_rational(require_arg(cfg, "eps"));
        int len = not_two_large_length(eps);
        Coloring col = rotation_coloring(alpha, 2, cfg.window);
        SpecPtr steps = IntegerSetSpec::power_bohr(1, alpha, eps, true);
        auto ap = find_mono_ap(col, len, *steps);
        Json result{{"construction", "rotation 2-coloring"},
                    {"forbidden_length", len},
                    {"steps", steps->to_json()}};
        if (ap) {
            result["witness"] = Json{{"start", ap->start}, {"step", ap->step}, {"color", ap->color}};
            res.exit_code = 0;
        } else {
            result["witness"] = nullptr;
            result["note"] = "none found at this window";
            res.exit_code = 2;
        }
        res.report["result"] = result;
        return res;
    }
    if (cfg.subcommand == "affine") {
        TorusScalar beta = parse_scalar(require_arg(cfg, "beta"), cfg.backend);
        int ell = std::stoi(require_arg(cfg, "ell"));
        Rat delta = parse_rational(require_arg(cfg, "delta"));
        int m = affine_color_count(ell, delta);
        TorusScalar freq = beta.divided_by(factorial(ell));
        Coloring col = power_coloring(freq, ell, m, cfg.window);
        SpecPtr steps = IntegerSetSpec::power_bohr(ell, beta, delta, true);
        auto ap = find_mono_ap(col, ell + 1, *steps);
        Json result{{"construction", "power coloring on beta/ell!"},
                    {"colors", m},
                    {"target_length", ell + 1},
                    {"steps", steps->to_json()}};
        if (ap) {
            result["witness"] = Json{{"start", ap->start}, {"step", ap->step}, {"color", ap->color}};
            res.exit_code = 0;
        } else {
            result["witness"] = nullptr;
            result["note"] = "none found at this window";
            res.exit_code = 2;
        }
        res.report["result"] = result;
        return res;
    }
    if (cfg.subcommand == "join") {
        TorusScalar a1 = parse_scalar(require_arg(cfg, "alpha1"), cfg.backend);
        TorusScalar a2 = parse_scalar(require_arg(cfg, "alpha2"), cfg.backend);
        int r1 = std::stoi(require_arg(cfg, "r1")), r2 = std::stoi(require_arg(cfg, "r2"));
        Coloring j = join_colorings(rotation_coloring(a1, r1, cfg.window),
                                    rotation_coloring(a2, r2, cfg.window));
        res.report["result"] = Json{{"colors", j.colors()}, {"coloring", j.to_json()}};
        return res;
    }
    if (cfg.subcommand == "encode") {
        TorusScalar alpha = parse_scalar(require_arg(cfg, "alpha"), cfg.backend);
        int r = std::stoi(require_arg(cfg, "r"));
        Coloring col = rotation_coloring(alpha, r, cfg.window);
        SyndeticEncoding enc = syndetic_encode(col);
        res.report["result"] = Json{{"r", enc.r},
                                    {"max_consecutive_gap", enc.max_consecutive_gap},
                                    {"gap_bound", 2 * enc.r - 1},
                                    {"size", enc.elements.size()},
                                    {"first_elements", std::vector<long long>(
                                                           enc.elements.begin(),
                                                           enc.elements.begin() +
                                                               std::min<size_t>(enc.elements.size(), 32))}};
        return res;
    }
    throw std::invalid_argument("coloring: unknown subcommand '" + cfg.subcommand + "'");
}

ExecResult run_cayley(RunConfig const& cfg) {
    SpecPtr r_set = parse_spec(require_arg(cfg, "set"), cfg.backend);
    ExecResult res;
    res.report = envelope(cfg);
    ColoringStrategy strat = ColoringStrategy::Dsatur;
    if (auto* s = find_arg(cfg, "strategy"))
        strat = (*s == "greedy") ? ColoringStrategy::Greedy : ColoringStrategy::Dsatur;
    if (cfg.subcommand == "build") {
        WindowGraph g = build_window_graph(*r_set, cfg.window);
        std::ostringstream os;
        g.export_edge_list(os);
        res.csv = os.str();  // edge list rides the text channel
        res.report["result"] = Json{{"vertices", g.vertex_count()},
                                    {"edges", g.edge_count()},
                                    {"differences", g.diffs().size()}};
        return res;
    }
    if (cfg.subcommand == "chroma") {
        WindowGraph g = build_window_graph(*r_set, cfg.window);
        UpperBound ub = chromatic_upper(g, strat);
        LowerBound lb = chromatic_lower(g, default_lower_budget(cfg.window));
        res.report["result"] = Json{{"upper", ub.colors},
                                    {"lower", lb.value},
                                    {"lower_kind", lb.kind},
                                    {"lower_prefix", lb.certificate_prefix},
                                    {"exact", lb.exact},
                                    {"nodes_used", lb.nodes_used}};
        return res;
    }
    if (cfg.subcommand == "growth") {
        std::vector<long long> schedule;
        std::stringstream ss(require_arg(cfg, "schedule"));
        std::string tok;
        while (std::getline(ss, tok, ',')) schedule.push_back(std::stoll(tok));
        auto rows = chromatic_growth(*r_set, schedule, strat);
        Json arr = Json::array();
        std::ostringstream csv;
        csv << "N,lower,upper,lower_kind\n";
        for (auto const& r : rows) {
            arr.push_back(Json{{"N", r.n}, {"lower", r.lower}, {"upper", r.upper}, {"lower_kind", r.lower_kind}});
            csv << r.n << "," << r.lower << "," << r.upper << "," << r.lower_kind << "\n";
        }
        res.report["result"] = Json{{"rows", arr}};
        if (cfg.format == "csv") res.csv = csv.str();
        return res;
    }
    throw std::invalid_argument("cayley: unknown subcommand '" + cfg.subcommand + "'");
}

ExecResult run_flw(RunConfig const& cfg) {
    TorusScalar beta = parse_scalar(require_arg(cfg, "beta"), cfg.backend);
    std::vector<std::pair<std::string, TorusScalar>> ts;
    std::string tlist = find_arg(cfg, "t") ? require_arg(cfg, "t") : "0";
    std::stringstream ss(tlist);
    std::string tok;
    while (std::getline(ss, tok, ';')) ts.emplace_back(tok, parse_scalar(tok, cfg.backend));
    ExecResult res;
    res.report = envelope(cfg);
    Json arr = Json::array();
    std::ostringstream csv;
    csv << "t,re,im,abs\n";
    for (auto const& [name, t] : ts) {
        auto avg = weyl_average(beta, t, cfg.window);
        arr.push_back(Json{{"t", name}, {"re", avg.real()}, {"im", avg.imag()}, {"abs", std::abs(avg)}});
        csv << name << "," << avg.real() << "," << avg.imag() << "," << std::abs(avg) << "\n";
    }
    res.report["result"] = Json{{"interval", "[1/4,3/4)"}, {"averages", arr}};
    if (cfg.format == "csv") res.csv = csv.str();
    return res;
}

ExecResult run_lift(RunConfig const& cfg) {
    int s = std::stoi(require_arg(cfg, "s"));
    int r = std::stoi(require_arg(cfg, "r"));
    long n = std::stol(require_arg(cfg, "n"));
    std::vector<RatVector> w;
    if (auto* wjson = find_arg(cfg, "w")) {
        Json jw = Json::parse(*wjson);
        for (auto const& row : jw) {
            RatVector v;
            for (auto const& e : row) v.push_back(parse_rational(e.get<std::string>()));
            w.push_back(std::move(v));
        }
    } else {
        // deterministic default perturbations of size 1/100 from the seed
        std::mt19937_64 rng(cfg.seed);
        std::uniform_int_distribution<long> num(-100, 100);
        for (int k = 0; k < r; ++k) {
            RatVector v(static_cast<size_t>(s), Rat(0));
            v[0] = Rat(num(rng), 10000);
            w.push_back(std::move(v));
        }
    }
    LiftCertificate cert = lift_perturbation(s, r, n, w);
    ExecResult res;
    res.report = envelope(cfg);
    Json norms = Json::array();
    for (auto const& rn : cert.residual_sup_norms) norms.push_back(rat_to_double(rn));
    res.report["result"] = Json{{"s1_zero", cert.s1_zero},
                                {"s2_equals_v", cert.s2_equals_v},
                                {"residual_equals_tail", cert.residual_equals_tail},
                                {"y_in_target_subgroup", cert.y_in_target_subgroup},
                                {"y_sup_norm", rat_to_double(cert.y_sup_norm)},
                                {"y_sup_norm_exact", rat_to_json(cert.y_sup_norm)},
                                {"residual_sup_norms", norms}};
    bool ok = cert.s1_zero && cert.s2_equals_v && cert.residual_equals_tail && cert.y_in_target_subgroup;
    res.exit_code = ok ? 0 : 2;
    return res;
}

}  // namespace

RunConfig RunConfig::from_echo(Json const& parameters) {
    RunConfig cfg;
    cfg.command = parameters.at("command").get<std::string>();
    cfg.subcommand = parameters.at("subcommand").get<std::string>();
    cfg.backend = parameters.at("backend").get<std::string>() == "fixed" ? Backend::Fixed : Backend::Exact;
    cfg.window = parameters.at("window").get<long long>();
    cfg.grid = parameters.at("grid").get<long>();
    cfg.seed = parameters.at("seed").get<uint64_t>();
    cfg.format = parameters.at("format").get<std::string>();
    for (auto const& [k, v] : parameters.at("args").items()) cfg.args[k] = v.get<std::string>();
    return cfg;
}

ExecResult execute(RunConfig const& cfg) {
    if (cfg.window < 1) throw std::invalid_argument("window must be >= 1");
    if (cfg.grid < 1) throw std::invalid_argument("grid must be >= 1");
    if (cfg.command == "sets") return run_sets(cfg);
    if (cfg.command == "orbit") return run_orbit(cfg);
    if (cfg.command == "recur-test") return run_recur_test(cfg);
    if (cfg.command == "multi-recur") return run_multi_recur(cfg);
    if (cfg.command == "coloring") return run_coloring(cfg);
    if (cfg.command == "cayley") return run_cayley(cfg);
    if (cfg.command == "flw") return run_flw(cfg);
    if (cfg.command == "lift") return run_lift(cfg);
    throw std::invalid_argument("unknown command '" + cfg.command + "'");
}

std::string dump_report(Json const& report) { return report.dump(2) + "\n"; }

}  // namespace reclab
