// recurrence-lab: define integer sets and affine torus systems, run
// finite-window recurrence testers, coloring certificates and Cayley-graph
// chromatic diagnostics, and emit machine-readable reports.

#include <recurrence_lab/report.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace reclab;

namespace {

struct CommonOpts {
    std::string backend = "exact";
    long long window = 1000;
    long grid = 16;
    uint64_t seed = 0;
    std::string out;
    std::string format = "json";
};

void add_common(CLI::App* app, CommonOpts& c) {
    app->add_option("--backend", c.backend, "scalar backend: exact|fixed")
        ->check(CLI::IsMember({"exact", "fixed"}));
    app->add_option("--window", c.window, "window bound N");
    app->add_option("--grid", c.grid, "witness grid resolution");
    app->add_option("--seed", c.seed, "random seed (heuristics and default data)");
    app->add_option("--out", c.out, "output path (default stdout)");
    app->add_option("--format", c.format, "report format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
}

int run(RunConfig cfg, CommonOpts const& c) {
    cfg.backend = c.backend == "fixed" ? Backend::Fixed : Backend::Exact;
    cfg.window = c.window;
    cfg.grid = c.grid;
    cfg.seed = c.seed;
    cfg.format = c.format;
    try {
        ExecResult res = execute(cfg);
        std::string payload = cfg.format == "csv" && !res.csv.empty() ? res.csv
                                                                      : dump_report(res.report);
        if (c.out.empty()) {
            std::cout << payload;
        } else {
            std::ofstream f(c.out, std::ios::binary);
            if (!f) {
                std::cerr << "error: cannot open output path '" << c.out << "'\n";
                return 1;
            }
            f << payload;
        }
        return res.exit_code;
    } catch (std::exception const& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"recurrence-lab: finite-window exploration of topological recurrence"};
    app.require_subcommand(1);
    CommonOpts c;

    std::map<std::string, std::string> args;
    auto opt = [&](CLI::App* cmd, std::string const& key, std::string const& help) {
        cmd->add_option_function<std::string>(
            "--" + key, [&args, key](std::string const& v) { args[key] = v; }, help);
    };

    auto* sets = app.add_subcommand("sets", "define and enumerate an integer set");
    add_common(sets, c);
    opt(sets, "set", "set spec (mini-grammar)");

    auto* orbit = app.add_subcommand("orbit", "orbit of a point; optional return times");
    add_common(orbit, c);
    opt(orbit, "system", "system spec");
    opt(orbit, "x", "start point [a,b,...] (default 0)");
    opt(orbit, "center", "ball center");
    opt(orbit, "radius", "ball radius (rational)");
    opt(orbit, "mask", "cylinder mask, e.g. 1,0");

    auto* rt = app.add_subcommand("recur-test", "recurrence witness / pointwise profile");
    add_common(rt, c);
    for (auto k : {"system", "set", "x", "center", "radius", "mask", "ell"}) opt(rt, k, k);

    auto* mr = app.add_subcommand("multi-recur", "witness-grid under-approximation of N^ell(U)");
    add_common(mr, c);
    for (auto k : {"system", "center", "radius", "mask", "ell"}) opt(mr, k, k);

    auto* col = app.add_subcommand("coloring", "coloring constructions and AP search");
    add_common(col, c);
    col->require_subcommand(1);
    for (auto sub : {"not2large", "affine", "join", "encode"}) {
        auto* sc = col->add_subcommand(sub);
        add_common(sc, c);
        for (auto k : {"alpha", "eps", "beta", "ell", "delta", "alpha1", "alpha2", "r1", "r2", "r"})
            opt(sc, k, k);
    }

    auto* cay = app.add_subcommand("cayley", "Cayley graph diagnostics");
    add_common(cay, c);
    cay->require_subcommand(1);
    for (auto sub : {"build", "chroma", "growth"}) {
        auto* sc = cay->add_subcommand(sub);
        add_common(sc, c);
        for (auto k : {"set", "strategy", "schedule"}) opt(sc, k, k);
    }

    auto* flw = app.add_subcommand("flw", "indicator-weighted exponential averages");
    add_common(flw, c);
    opt(flw, "beta", "frequency");
    opt(flw, "t", "semicolon-separated test frequencies");

    auto* lift = app.add_subcommand("lift", "perturbation lift certificate");
    add_common(lift, c);
    for (auto k : {"s", "r", "n", "w", "w-file"}) opt(lift, k, k);

    CLI11_PARSE(app, argc, argv);

    RunConfig cfg;
    auto* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    if (!sub->get_subcommands().empty()) cfg.subcommand = sub->get_subcommands().front()->get_name();

    if (args.count("w-file")) {
        std::ifstream f(args["w-file"]);
        if (!f) {
            std::cerr << "error: cannot read w-file '" << args["w-file"] << "'\n";
            return 1;
        }
        std::string content((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
        args.erase("w-file");
        args["w"] = content;
    }
    cfg.args = args;
    return run(cfg, c);
}
