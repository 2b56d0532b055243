#pragma once

// Algebraic descriptions of subsets of N: Bohr sets, polynomial Bohr sets,
// difference sets, finite-sum (IP) sets, polynomial images, primes, and
// boolean combinations. Membership and window enumeration agree exactly;
// everything is immutable and serializable to a JSON tree.

#include <recurrence_lab/torus.hpp>

#include <json.hpp>

#include <memory>
#include <string>
#include <vector>

namespace reclab {

using Json = nlohmann::ordered_json;

Json rat_to_json(Rat const& r);
Rat rat_from_json(Json const& j);
Json scalar_to_json(TorusScalar const& t);
TorusScalar scalar_from_json(Json const& j);

enum class SetKind {
    All,
    Explicit,
    Bohr,
    PowerBohr,
    Difference,
    IP,
    PolyImage,
    Primes,
    Powers,
    Union,
    Intersection,
    ComplementWithin,
    Dilate,
};

class IntegerSetSpec;
using SpecPtr = std::shared_ptr<IntegerSetSpec const>;

class IntegerSetSpec {
public:
    static SpecPtr all();
    static SpecPtr explicit_set(std::vector<long long> elements);
    // {n : ||alpha_i n|| < eps for all i}, strict inequality
    static SpecPtr bohr(std::vector<TorusScalar> alphas, Rat eps);
    // inside:  {n : ||n^s beta|| < eps};  outside: {n : ||n^s beta|| > eps}
    static SpecPtr power_bohr(int degree, TorusScalar beta, Rat eps, bool outside);
    // {b' - b : b, b' in base, b' > b} with the base enumerated on [1, base_window].
    // base_window defaults to max(base) for explicit bases and is required otherwise.
    static SpecPtr difference(SpecPtr base, long long base_window = 0);
    // nonempty subset sums of the first `depth` generators
    static SpecPtr ip(std::vector<long long> generators, int depth);
    // {p(m) : m >= 1} for p with positive leading coefficient; coeffs ascending
    static SpecPtr poly_image(std::vector<long long> coeffs);
    static SpecPtr primes(long long offset = 0);
    static SpecPtr powers(long long base);
    static SpecPtr set_union(SpecPtr a, SpecPtr b);
    static SpecPtr set_intersection(SpecPtr a, SpecPtr b);
    // complement interpreted inside the enumeration window
    static SpecPtr complement_within_window(SpecPtr a);
    static SpecPtr dilate(SpecPtr a, long long factor);

    SetKind kind() const { return kind_; }

    bool membership(long long n) const;
    std::vector<long long> enumerate(long long n_max) const;

    // The IP variant only ever enumerates sums of its first `depth`
    // generators; this flags that the description was cut off there.
    bool depth_truncated() const;

    Json to_json() const;
    static SpecPtr from_json(Json const& j);

    std::string describe() const;  // canonical mini-grammar text (see spec_text)

    bool equals(IntegerSetSpec const& o) const { return to_json() == o.to_json(); }

    // payload accessors used by the parser/printer
    std::vector<long long> const& ints() const { return ints_; }
    std::vector<TorusScalar> const& alphas() const { return alphas_; }
    Rat const& eps() const { return eps_; }
    int degree() const { return degree_; }
    bool outside() const { return outside_; }
    long long aux() const { return aux_; }  // base_window / offset / base / factor
    SpecPtr const& child_a() const { return a_; }
    SpecPtr const& child_b() const { return b_; }

private:
    IntegerSetSpec() = default;

    SetKind kind_ = SetKind::All;
    std::vector<long long> ints_;        // explicit elements / ip generators / poly coeffs
    std::vector<TorusScalar> alphas_;    // bohr frequencies; power_bohr beta at [0]
    Rat eps_;
    int degree_ = 0;                     // power_bohr s / ip depth
    bool outside_ = false;
    long long aux_ = 0;                  // difference base_window / primes offset / powers base / dilate factor
    SpecPtr a_, b_;
};

// All sums of nonempty subsets of distinct generators, truncated at n_max.
std::vector<long long> ip_sums(std::vector<long long> const& generators, long long n_max);

// Max gap of the window enumeration, counting the leading gap from 0 to the
// first element; a window-relative diagnostic. Throws if the set is empty
// on the window.
long long syndeticity_constant(IntegerSetSpec const& spec, long long n_max);

bool is_prime_u64(unsigned long long n);

}  // namespace reclab
