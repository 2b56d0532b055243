#pragma once

// Text mini-grammar for sets, scalars, points and systems, used by the CLI:
// variant name, colon, comma-separated parameters; nested specs in
// parentheses. parse/print round-trip exactly on canonical forms.

#include <recurrence_lab/affine.hpp>
#include <recurrence_lab/integer_sets.hpp>

#include <string>

namespace reclab {

struct ParseError : std::runtime_error {
    size_t position;
    ParseError(std::string const& what, size_t pos)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

// Scalars: sqrt2 | golden | e-frac | cf[0;a1,a2,...] | p/q | decimal | integer | fx:<32 hex digits>
TorusScalar parse_scalar(std::string const& text, Backend backend);
std::string print_scalar(TorusScalar const& s);

// Sets: all | explicit:... | bohr:[..],eps=.. | powerbohr:s=..,beta=..,eps=..,side |
// diff(spec[,window=B]) | ip:[..],depth=d | poly:c0,c1,.. | primes[:offset=o] |
// powers:base=b | union((a),(b)) | intersect((a),(b)) | complement(spec) |
// dilate(spec,factor=k).  Aliases: odds, evens, squares, naturals, powers2.
SpecPtr parse_spec(std::string const& text, Backend backend);
std::string print_spec(IntegerSetSpec const& spec);

// Systems: rotation:<scalar> | flw:s=<k>,beta=<scalar> | jordan:s=<k>,alpha=[..] |
// blocks:sizes=[..],alpha=[..] | product((sys),(sys))
AffineSystem parse_system(std::string const& text, Backend backend);

TorusPoint parse_point(std::string const& text, Backend backend);
std::string print_point(TorusPoint const& p);

Rat parse_rational(std::string const& text);

}  // namespace reclab
