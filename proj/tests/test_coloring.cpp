#include <doctest.h>

#include <recurrence_lab/coloring.hpp>

#include <random>

using namespace reclab;

namespace {

TorusScalar ex(Rat const& r) { return TorusScalar::from_rational(r, Backend::Exact); }

Coloring random_coloring(std::mt19937_64& rng, long long n_max, int r) {
    std::vector<uint32_t> a(static_cast<size_t>(n_max));
    for (auto& c : a) c = 1 + static_cast<uint32_t>(rng() % static_cast<uint32_t>(r));
    return Coloring(n_max, r, std::move(a), Json{{"constructor", "random"}});
}

}  // namespace

TEST_CASE("rotation coloring: parity, golden first color, degenerate alpha") {
    Coloring parity = rotation_coloring(ex(Rat(1, 2)), 2, 10);
    for (long long n = 1; n <= 10; ++n) CHECK(parity.color(n) == (n % 2 == 0 ? 1 : 2));

    TorusScalar g = irrational_surrogate(SurrogateName::Golden, Backend::Exact);
    Coloring cg = rotation_coloring(g, 2, 5);
    CHECK(cg.color(1) == 2);  // 0.618... lies in [1/2, 1)

    Coloring zero = rotation_coloring(ex(Rat(0)), 3, 8);
    for (long long n = 1; n <= 8; ++n) CHECK(zero.color(n) == 1);
}

TEST_CASE("power coloring: degree one reduces to rotation; rational check") {
    TorusScalar g = irrational_surrogate(SurrogateName::Golden, Backend::Exact);
    CHECK(power_coloring(g, 1, 4, 200) == rotation_coloring(g, 4, 200));

    // p = 2, beta = 1/5, ell = 2, m = 5: frac(4/5) in [4/5, 1) -> color 5
    Coloring c = power_coloring(ex(Rat(1, 5)), 2, 5, 10);
    CHECK(c.color(2) == 5);
}

TEST_CASE("the paper recipes for lengths and color counts") {
    CHECK(not_two_large_length(Rat(1, 10)) == 6);
    CHECK(not_two_large_length(Rat(1, 20)) == 11);
    CHECK(not_two_large_length(Rat(1, 5)) == 4);
    CHECK(affine_color_count(2, Rat(1, 4)) == 8);
    CHECK(affine_color_count(1, Rat(1, 10)) == 10);
    CHECK(affine_color_count(3, Rat(1, 4)) == 16);
}

TEST_CASE("find_mono_ap basics") {
    Coloring mono = Coloring::constant(50, 1);
    auto ap = find_mono_ap(mono, 5, *IntegerSetSpec::all());
    REQUIRE(ap);
    CHECK(ap->start == 1);
    CHECK(ap->step == 1);

    Coloring parity = rotation_coloring(ex(Rat(1, 2)), 2, 100);
    CHECK(!find_mono_ap(parity, 2, *IntegerSetSpec::poly_image({-1, 2})));  // odd steps flip parity

    // lexicographically smallest (step, start)
    auto ap2 = find_mono_ap(parity, 3, *IntegerSetSpec::all());
    REQUIRE(ap2);
    CHECK(ap2->step == 2);
    CHECK(ap2->start == 1);
}

TEST_CASE("rotation construction avoids its forbidden length on a window") {
    TorusScalar g = irrational_surrogate(SurrogateName::Golden, Backend::Exact);
    Rat eps(1, 10);
    Coloring c = rotation_coloring(g, 2, 2000);
    auto steps = IntegerSetSpec::power_bohr(1, g, eps, true);
    CHECK(!find_mono_ap(c, not_two_large_length(eps), *steps));
}

TEST_CASE("power construction avoids length ell+1 on a window") {
    TorusScalar s2 = irrational_surrogate(SurrogateName::Sqrt2, Backend::Exact);
    int ell = 2;
    Rat delta(1, 4);
    int m = affine_color_count(ell, delta);
    Coloring c = power_coloring(s2.divided_by(factorial(ell)), ell, m, 1000);
    auto steps = IntegerSetSpec::power_bohr(ell, s2, delta, true);
    CHECK(!find_mono_ap(c, ell + 1, *steps));
}

TEST_CASE("colorings partition the window") {
    TorusScalar g = irrational_surrogate(SurrogateName::Golden, Backend::Exact);
    Coloring c = power_coloring(g, 2, 6, 500);
    std::vector<long long> counts(7, 0);
    for (long long n = 1; n <= 500; ++n) {
        REQUIRE(c.color(n) >= 1);
        REQUIRE(c.color(n) <= 6);
        ++counts[c.color(n)];
    }
    long long total = 0;
    for (int j = 1; j <= 6; ++j) total += counts[static_cast<size_t>(j)];
    CHECK(total == 500);
}

TEST_CASE("syndetic encoding: stated examples and the gap certificate") {
    Coloring mono = Coloring::constant(20, 1);
    SyndeticEncoding e1 = syndetic_encode(mono);
    std::vector<long long> expect;
    for (long long n = 1; n <= 20; ++n) expect.push_back(n + 1);
    CHECK(e1.elements == expect);
    CHECK(e1.max_consecutive_gap <= 1);

    Coloring parity = rotation_coloring(ex(Rat(1, 2)), 2, 10);
    SyndeticEncoding e2 = syndetic_encode(parity);
    CHECK(std::binary_search(e2.elements.begin(), e2.elements.end(), 5));  // n=2, color 1
    CHECK(std::binary_search(e2.elements.begin(), e2.elements.end(), 8));  // n=3, color 2
    CHECK(e2.max_consecutive_gap <= 3);
}

TEST_CASE("syndetic encoding: decoder recovers planted progressions") {
    std::mt19937_64 rng(107);
    int done = 0;
    for (int trial = 0; trial < 400 && done < 100; ++trial) {
        int r = 2 + static_cast<int>(rng() % 4);
        long long n_max = 400 + static_cast<long long>(rng() % 600);
        Coloring col = random_coloring(rng, n_max, r);
        SyndeticEncoding enc = syndetic_encode(col);
        CHECK(enc.max_consecutive_gap <= 2 * r - 1);

        // Plant a full AP of ell*r terms with step n inside E: with n >= r no
        // two terms share a block, so each term's block color can be forced.
        int ell = 2 + static_cast<int>(rng() % 3);
        long long n = r + static_cast<long long>(rng() % 15);
        long long b0 = 1 + static_cast<long long>(rng() % 20);
        uint32_t i0 = 1 + static_cast<uint32_t>(rng() % static_cast<uint32_t>(r));
        long long a = static_cast<long long>(r) * b0 + i0;
        if (a + static_cast<long long>(ell * r - 1) * n > static_cast<long long>(r) * n_max) continue;
        ++done;
        std::vector<uint32_t> assign(static_cast<size_t>(n_max));
        for (long long m = 1; m <= n_max; ++m) assign[static_cast<size_t>(m - 1)] = col.color(m);
        for (int j = 0; j < ell * r; ++j) {
            long long t = a + static_cast<long long>(j) * n;
            uint32_t res = static_cast<uint32_t>((t - 1) % r) + 1;
            long long block = (t - res) / r;
            REQUIRE(block >= 1);
            REQUIRE(block <= n_max);
            assign[static_cast<size_t>(block - 1)] = res;
        }
        Coloring planted(n_max, r, std::move(assign), Json{{"constructor", "planted"}});
        SyndeticEncoding enc2 = syndetic_encode(planted);

        MonoAP ap = enc2.decode(a, n, ell);
        CHECK(ap.start == b0);
        CHECK(ap.step == n);
        CHECK(ap.color == i0);
        for (int j = 0; j < ell; ++j)
            CHECK(planted.color(b0 + static_cast<long long>(j) * n) == i0);
    }
    CHECK(done == 100);
}

TEST_CASE("decoder rejects progressions leaving E") {
    Coloring parity = rotation_coloring(ex(Rat(1, 2)), 2, 50);
    SyndeticEncoding enc = syndetic_encode(parity);
    CHECK_THROWS(enc.decode(enc.elements.front() + 1, 1, 2));
}

TEST_CASE("join: color count multiplies, mono for join implies mono for both") {
    Coloring parity = rotation_coloring(ex(Rat(1, 2)), 2, 60);
    Coloring mod3 = rotation_coloring(ex(Rat(1, 3)), 3, 60);
    Coloring j = join_colorings(parity, mod3);
    CHECK(j.colors() == 6);
    for (long long a = 1; a + 12 <= 60; ++a)
        for (long long n : {1LL, 2LL, 3LL, 6LL}) {
            bool mono_join = true, mono_1 = true, mono_2 = true;
            for (int k = 1; k <= 2; ++k) {
                mono_join = mono_join && j.color(a + k * n) == j.color(a);
                mono_1 = mono_1 && parity.color(a + k * n) == parity.color(a);
                mono_2 = mono_2 && mod3.color(a + k * n) == mod3.color(a);
            }
            if (mono_join) {
                CHECK(mono_1);
                CHECK(mono_2);
            }
        }
    // parity joined with the mod-3 rotation separates residues mod 6
    for (long long a = 1; a + 6 <= 60; ++a) CHECK(j.color(a) == j.color(a + 6));
    for (long long a = 1; a + 5 <= 12; ++a)
        for (long long b = a + 1; b <= a + 5; ++b) CHECK(j.color(a) != j.color(b));

    Coloring c1 = Coloring::constant(60, 1);
    Coloring jj = join_colorings(c1, mod3);
    for (long long n = 1; n <= 60; ++n) CHECK(jj.color(n) == mod3.color(n));
}

TEST_CASE("join window mismatch is rejected") {
    CHECK_THROWS(join_colorings(Coloring::constant(10, 1), Coloring::constant(11, 1)));
}

TEST_CASE("run-length serialization round-trips") {
    std::mt19937_64 rng(109);
    for (int trial = 0; trial < 20; ++trial) {
        Coloring c = random_coloring(rng, 50 + static_cast<long long>(rng() % 200),
                                     2 + static_cast<int>(rng() % 5));
        Coloring back = Coloring::from_json(c.to_json());
        CHECK(back == c);
    }
}

TEST_CASE("heuristic search is seeded and deterministic") {
    auto steps = IntegerSetSpec::all();
    auto r1 = heuristic_avoiding_coloring(*steps, 3, 4, 120, 42, 4);
    auto r2 = heuristic_avoiding_coloring(*steps, 3, 4, 120, 42, 4);
    CHECK(r1.best == r2.best);
    CHECK(r1.violations == r2.violations);
    CHECK(r1.best.provenance().at("note").get<std::string>().find("window evidence") !=
          std::string::npos);
}
