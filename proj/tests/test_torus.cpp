#include <doctest.h>

#include <recurrence_lab/torus.hpp>

#include <random>

using namespace reclab;

namespace {

Rat rand_rat(std::mt19937_64& rng) {
    std::uniform_int_distribution<long long> num(-1000, 1000);
    std::uniform_int_distribution<long long> den(1, 1000);
    return Rat(num(rng), den(rng));
}

TorusScalar ex(Rat const& r) { return TorusScalar::from_rational(r, Backend::Exact); }

}  // namespace

TEST_CASE("circle_norm on the stated values") {
    CHECK(circle_norm(ex(Rat(0))) == Rat(0));
    CHECK(circle_norm(ex(Rat(3, 4))) == Rat(1, 4));
    CHECK(circle_norm(ex(Rat(1, 2))) == Rat(1, 2));
}

TEST_CASE("circle_norm bounds and symmetry") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        TorusScalar t = ex(rand_rat(rng));
        Rat n = circle_norm(t);
        CHECK(n >= 0);
        CHECK(n <= Rat(1, 2));
        CHECK(circle_norm(-t) == n);
    }
}

TEST_CASE("circle_norm triangle inequality") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        TorusScalar s = ex(rand_rat(rng)), t = ex(rand_rat(rng));
        CHECK(circle_norm(s + t) <= circle_norm(s) + circle_norm(t));
    }
}

TEST_CASE("torus_distance stated values") {
    TorusPoint a({ex(Rat(0)), ex(Rat(0))});
    TorusPoint b({ex(Rat(1, 2)), ex(Rat(1, 4))});
    CHECK(torus_distance(a, a) == Rat(0));
    CHECK(torus_distance(a, b) == Rat(1, 2));

    TorusPoint c({ex(Rat(9, 10)), ex(Rat(0))});
    TorusPoint d({ex(Rat(1, 10)), ex(Rat(0))});
    CHECK(torus_distance(c, d) == Rat(1, 5));
}

TEST_CASE("torus_distance is a metric on random triples") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 200; ++i) {
        TorusPoint x({ex(rand_rat(rng)), ex(rand_rat(rng)), ex(rand_rat(rng))});
        TorusPoint y({ex(rand_rat(rng)), ex(rand_rat(rng)), ex(rand_rat(rng))});
        TorusPoint z({ex(rand_rat(rng)), ex(rand_rat(rng)), ex(rand_rat(rng))});
        CHECK(torus_distance(x, y) == torus_distance(y, x));
        CHECK(torus_distance(x, z) <= torus_distance(x, y) + torus_distance(y, z));
        CHECK((torus_distance(x, y) == 0) == (x == y));
    }
}

TEST_CASE("exact backend satisfies ring identities bit-exactly") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 300; ++i) {
        Rat a = rand_rat(rng), b = rand_rat(rng), c = rand_rat(rng);
        TorusScalar ta = ex(a), tb = ex(b), tc = ex(c);
        CHECK((ta + tb) + tc == ta + (tb + tc));
        CHECK(ta + tb == tb + ta);
        CHECK(ta - ta == ex(Rat(0)));
        CHECK((ta + tb).as_rational() == rat_frac(a + b));
        long long k = static_cast<long long>(rng() % 2001) - 1000;
        CHECK(ta.scaled(BigInt(k)).as_rational() == rat_frac(Rat(k) * rat_frac(a)));
    }
}

TEST_CASE("fixed backend wraps mod 1 exactly") {
    TorusScalar h = TorusScalar::from_rational(Rat(1, 2), Backend::Fixed);
    CHECK((h + h).is_zero());
    TorusScalar q = TorusScalar::from_rational(Rat(3, 4), Backend::Fixed);
    CHECK((q + q).as_rational() == Rat(1, 2));  // 3/4 is exactly representable
    CHECK(circle_norm(q) == Rat(1, 4));
    CHECK(q.scaled(BigInt(2)) == h);
    CHECK((-h) == h);
}

TEST_CASE("backend mixing is rejected") {
    TorusScalar a = ex(Rat(1, 3));
    TorusScalar b = TorusScalar::from_rational(Rat(1, 3), Backend::Fixed);
    CHECK_THROWS(a + b);
    CHECK_THROWS(torus_distance(TorusPoint({a}), TorusPoint({b})));
}

TEST_CASE("golden surrogate, fixed point: truncation matches Fibonacci convergents") {
    TorusScalar g = irrational_surrogate(SurrogateName::Golden, Backend::Fixed);
    // independent oracle: F_k / F_{k+1} with a large k, computed here
    BigInt f0 = 0, f1 = 1;
    for (int i = 0; i < 400; ++i) {
        BigInt f2 = f0 + f1;
        f0 = f1;
        f1 = f2;
    }
    // truncation of the true value: floor(p * 2^128 / q) with |x - p/q| < 1/q^2
    BigInt expect = ((f0 << 128) / f1);
    CHECK(to_bigint(g.word()) == expect);
    CHECK(g.to_double() == doctest::Approx(0.6180339887).epsilon(1e-9));
}

TEST_CASE("sqrt2 surrogate, exact: convergent quality via the Pell identity") {
    TorusScalar s = irrational_surrogate(SurrogateName::Sqrt2, Backend::Exact);
    Rat r = s.as_rational();
    BigInt p = numerator(r), q = denominator(r);
    CHECK(q >= (BigInt(1) << 64));
    // p/q approximates sqrt(2)-1, so (p+q)/q approximates sqrt(2);
    // convergents satisfy |2 q^2 - (p+q)^2| = 1, which forces |sqrt2-1 - p/q| < 1/q^2
    BigInt pell = 2 * q * q - (p + q) * (p + q);
    CHECK((pell == 1 || pell == -1));
    // and it is reproduced by the continued-fraction recurrence [0;2,2,2,...]
    BigInt hp = 1, h = 0, kp = 0, k = 1;
    bool found = false;
    for (int i = 0; i < 200 && !found; ++i) {
        BigInt hn = 2 * h + hp, kn = 2 * k + kp;
        hp = h; h = hn; kp = k; k = kn;
        found = (h == p && k == q);
    }
    CHECK(found);
}

TEST_CASE("custom-cf [0;2] is exactly 1/2") {
    TorusScalar s = irrational_surrogate(SurrogateName::CustomCF, Backend::Exact, {0, 2});
    CHECK(s.as_rational() == Rat(1, 2));
}

TEST_CASE("e-frac surrogate approximates e - 2") {
    TorusScalar s = irrational_surrogate(SurrogateName::EFrac, Backend::Exact);
    CHECK(s.to_double() == doctest::Approx(0.718281828459045).epsilon(1e-12));
    CHECK(denominator(s.as_rational()) >= (BigInt(1) << 64));
}

TEST_CASE("cell_index partitions into half-open arcs") {
    CHECK(ex(Rat(0)).cell_index(4) == 0);
    CHECK(ex(Rat(1, 4)).cell_index(4) == 1);       // boundary goes right
    CHECK(ex(Rat(4, 5)).cell_index(5) == 4);
    CHECK(TorusScalar::from_rational(Rat(1, 2), Backend::Fixed).cell_index(2) == 1);
    std::mt19937_64 rng(23);
    for (int i = 0; i < 300; ++i) {
        Rat r = rat_frac(rand_rat(rng));
        long idx = ex(r).cell_index(7);
        CHECK(Rat(idx, 7) <= r);
        CHECK(r < Rat(idx + 1, 7));
    }
}

TEST_CASE("unknown surrogate names are rejected") {
    CHECK(!surrogate_from_string("pi"));
    CHECK(surrogate_from_string("golden").has_value());
}
