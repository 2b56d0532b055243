#pragma once

// Orchestration layer behind the CLI: a validated run configuration, a
// dispatcher to the library operations, and deterministic JSON/CSV reports.
// Exit-code convention: 0 success with a positive result, 2 for a clean
// "no witness / none found" outcome, 1 for operational errors.

#include <recurrence_lab/integer_sets.hpp>

#include <map>
#include <string>

namespace reclab {

struct RunConfig {
    std::string command;   // sets | orbit | recur-test | multi-recur | coloring | cayley | flw | lift
    std::string subcommand;
    std::map<std::string, std::string> args;
    Backend backend = Backend::Exact;
    long long window = 1000;
    long grid = 16;
    uint64_t seed = 0;
    std::string format = "json";  // json | csv

    static RunConfig from_echo(Json const& parameters);
};

struct ExecResult {
    int exit_code = 0;
    Json report;
    std::string csv;  // populated when format == "csv"
};

// Pure dispatch: no file I/O, no clock; identical configs yield identical
// reports byte for byte.
ExecResult execute(RunConfig const& cfg);

std::string dump_report(Json const& report);

}  // namespace reclab
