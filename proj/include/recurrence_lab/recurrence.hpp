#pragma once

// Finite-window testers for the equivalent characterizations of (multiple)
// recurrence: system witnesses, pointwise orbit profiles, partition and
// syndetic-set progression searches, and rotation profiles. Reports always
// distinguish a positive witness from exhaustion of the stated window; no
// operation claims the infinite property.

#include <recurrence_lab/affine.hpp>
#include <recurrence_lab/coloring.hpp>
#include <recurrence_lab/integer_sets.hpp>

#include <optional>

namespace reclab {

struct RecurrenceReport {
    std::string mode;
    long long window = 0;
    bool exhausted = true;   // witness present xor exhausted
    Json witness;            // operation-specific payload
    Json parameters;

    Json to_json() const;
};

// Characterization (1): search R inside the witness-grid under-approximation
// of N^ell(U); smallest qualifying n wins.
RecurrenceReport recurrence_witness(AffineSystem const& sys, IntegerSetSpec const& r_set,
                                    BallSpec const& u, int ell, long long n_max, long grid);

struct Profile {
    Rat value;
    long long argmin_n;
};

// Characterization (6): min over n in R of max_{1<=k<=ell} d(T^(kn) x, x).
// Throws if R is empty on the window.
Profile pointwise_profile(AffineSystem const& sys, TorusPoint const& x, IntegerSetSpec const& r_set,
                          int ell, long long n_max);

// Characterization (3): monochromatic AP of ell+1 terms with step in R.
RecurrenceReport partition_witness(Coloring const& coloring, IntegerSetSpec const& r_set, int ell);

// Characterization (4): AP of ell+1 terms inside E with step in R.
RecurrenceReport intersective_witness(IntegerSetSpec const& e_set, IntegerSetSpec const& r_set,
                                      int ell, long long n_max);

// Bohr profile: min over n in R of max_i ||alpha_i n||.
Profile bohr_min_profile(IntegerSetSpec const& r_set, std::vector<TorusScalar> const& alphas,
                         long long n_max);

// Report wrappers for the profile diagnostics.
RecurrenceReport pointwise_profile_report(AffineSystem const& sys, TorusPoint const& x,
                                          IntegerSetSpec const& r_set, int ell, long long n_max);
RecurrenceReport bohr_min_profile_report(IntegerSetSpec const& r_set,
                                         std::vector<TorusScalar> const& alphas, long long n_max);

}  // namespace reclab
