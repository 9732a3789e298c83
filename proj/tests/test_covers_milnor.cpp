#include "arrcover/catalog.hpp"
#include "arrcover/covers_milnor.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

using namespace arrcover;
using Catch::Matchers::ContainsSubstring;

namespace {

const OSAlgebra& dec_icosi_f2() {
    static OSAlgebra os(catalog_get("icosidodecahedral-decone-16"),
                        Field(FieldContext::prime(2)));
    return os;
}

const Rank2Census& icosi_census() {
    static Rank2Census census = rank2_census(catalog_get("icosidodecahedral"));
    return census;
}

const TorsionCertificate& icosi_certificate() {
    static TorsionCertificate cert = two_torsion_certificate(catalog_get("icosidodecahedral"));
    return cert;
}

// Independent degree-1 kernel test: w ^ x vanishes in A^2 exactly when its
// component at every rank-2 flat vanishes. At a flat with members
// i1 < i2 < ... < im the classes e_{i1 ij} form a local basis and
// e_{ia ib} = e_{i1 ib} - e_{i1 ia}, so the pair (p, q) feeds w_p x_q - w_q x_p
// into the q slot and, when p > i1, its negative into the p slot.
bool local_wedge_zero_f2(const Rank2Census& census, SubsetMask w, SubsetMask x) {
    for (SubsetMask flat : census.flats) {
        std::vector<int> mem = mask_indices(flat);
        std::vector<int> coef(mem.size(), 0);
        for (std::size_t pa = 0; pa + 1 < mem.size(); ++pa) {
            for (std::size_t pb = pa + 1; pb < mem.size(); ++pb) {
                bool wp = w & (SubsetMask(1) << (mem[pa] - 1));
                bool xp = x & (SubsetMask(1) << (mem[pa] - 1));
                bool wq = w & (SubsetMask(1) << (mem[pb] - 1));
                bool xq = x & (SubsetMask(1) << (mem[pb] - 1));
                if ((wp && xq) == (wq && xp)) continue;
                coef[pb] ^= 1;
                if (pa != 0) coef[pa] ^= 1;
            }
        }
        for (std::size_t j = 1; j < mem.size(); ++j)
            if (coef[j]) return false;
    }
    return true;
}

std::vector<SubsetMask> brute_force_cocycles(const Rank2Census& census, std::size_t n,
                                             SubsetMask w) {
    std::vector<SubsetMask> out;
    for (SubsetMask x = 0; x < (SubsetMask(1) << n); ++x)
        if (local_wedge_zero_f2(census, w, x)) out.push_back(x);
    return out;
}

BigRat r(long long num, long long den) { return BigRat(num, den); }

}  // namespace

TEST_CASE("double covers of pencils") {
    Arrangement p3 = catalog_get("pencil:3");
    DoubleCoverReport odd = double_cover_mod2_betti(p3, mask_of({1, 2, 3}));
    CHECK(odd.rows.at(0).bbar == 1);
    CHECK(odd.rows.at(1).h == 0);
    CHECK(odd.bbar(1) == 3);
    CHECK(odd.bbar(2) == 2);

    Arrangement p4 = catalog_get("pencil:4");
    OSAlgebra os(p4, Field(FieldContext::prime(2)));
    DoubleCoverReport ones = double_cover_mod2_betti(os, mask_of({1, 2, 3, 4}));
    CHECK(ones.rows.at(1).b == 4);
    CHECK(ones.rows.at(1).h == 2);
    CHECK(ones.bbar(1) == 6);
    CHECK(ones.bbar(2) == 5);
    DoubleCoverReport single = double_cover_mod2_betti(os, mask_of({1}));
    CHECK(single.bbar(1) == 4);
    CHECK(single.bbar(2) == 3);

    // for any nonzero class the cover stays connected and doubles chi
    for (SubsetMask w = 1; w < 16; ++w) {
        DoubleCoverReport rep = double_cover_mod2_betti(os, w);
        CHECK(rep.bbar(0) == 1);
        CHECK(rep.bbar(0) - rep.bbar(1) + rep.bbar(2) == 0);
    }
}

TEST_CASE("double cover input validation") {
    Arrangement p3 = catalog_get("pencil:3");
    CHECK_THROWS_WITH(double_cover_mod2_betti(p3, 0),
                      ContainsSubstring("needs a nonzero class"));
    OSAlgebra osq(p3, Field(FieldContext::rationals()));
    CHECK_THROWS_WITH(double_cover_mod2_betti(osq, 1),
                      ContainsSubstring("needs F2 coefficients"));
}

TEST_CASE("mod-2 covers of the deconed icosidodecahedral arrangement") {
    const OSAlgebra& os = dec_icosi_f2();
    SubsetMask reds = mask_of({1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    SubsetMask blues = mask_of({11, 12, 13, 14, 15});
    SubsetMask all = reds | blues;

    DoubleCoverReport ones = double_cover_mod2_betti(os, all);
    CHECK(ones.rows.at(0).h == 0);
    CHECK(ones.rows.at(1).h == 1);
    CHECK(ones.rows.at(2).h == 47);
    CHECK(ones.bbar(0) == 1);
    CHECK(ones.bbar(1) == 16);
    CHECK(ones.bbar(2) == 107);

    std::vector<SubsetMask> cocycles = enumerate_cocycles_f2(os, all);
    std::sort(cocycles.begin(), cocycles.end());
    CHECK(cocycles == std::vector<SubsetMask>{0, reds, blues, all});

    DoubleCoverReport half = double_cover_mod2_betti(os, blues);
    CHECK(half.rows.at(1).h == 6);
    CHECK(half.rows.at(2).h == 52);
    CHECK(half.bbar(1) == 21);
    CHECK(half.bbar(2) == 112);
    std::vector<SubsetMask> blue_cocycles = enumerate_cocycles_f2(os, blues);
    CHECK(blue_cocycles.size() == 128);

    // cross-check both kernels against the flat-local computation
    Rank2Census census = rank2_census(os.arrangement());
    CHECK(brute_force_cocycles(census, 15, all) == cocycles);
    std::sort(blue_cocycles.begin(), blue_cocycles.end());
    CHECK(brute_force_cocycles(census, 15, blues) == blue_cocycles);
}

TEST_CASE("admissible weights for a small pencil") {
    Arrangement p4 = catalog_get("pencil:4");
    Rank2Census census = rank2_census(p4);
    for (int d = 1; d <= 3; ++d) {
        AdmissibleWeights aw = find_admissible_weights(census, 4, d);
        CHECK(aw.admissible);
        CHECK(aw.naive);
        for (int i = 0; i < 3; ++i) CHECK(aw.a[i] == r(d, 4));
        CHECK(aw.a[3] == r(d - 4 * d, 4));
        CHECK(aw.flat_sums.size() == 1);
        CHECK(aw.flat_sums[0].second == 0);
    }
    CHECK_THROWS_AS(find_admissible_weights(census, 4, 0), Error);
    CHECK_THROWS_AS(find_admissible_weights(census, 4, 4), Error);
}

TEST_CASE("naive weights fail the dense flats at the half eigenvalue") {
    const Rank2Census& census = icosi_census();
    std::vector<BigRat> naive(16, r(1, 2));
    naive[15] = r(-15, 2);
    std::vector<FlatViolation> bad = admissibility_violations(census, 16, 8, naive);
    CHECK(bad.size() == 10);
    for (const FlatViolation& v : bad) {
        CHECK(std::popcount(v.flat) == 4);
        CHECK(v.sum == 2);
    }

    AdmissibleWeights fixed = find_admissible_weights(census, 16, 8);
    CHECK(fixed.admissible);
    CHECK_FALSE(fixed.naive);
    CHECK(admissibility_violations(census, 16, 8, fixed.a).empty());
}

TEST_CASE("Milnor fiber of a pencil of four lines") {
    MilnorReport rep = milnor_fiber_b1(catalog_get("pencil:4"));
    CHECK(rep.N == 4);
    CHECK(rep.deconed_index == 4);
    // the decone of four concurrent lines is three points on a line
    CHECK(rep.decone_betti == std::vector<long long>{1, 3});
    REQUIRE(rep.rows.size() == 3);
    for (const EigenRow& row : rep.rows) {
        CHECK(row.weights.naive);
        CHECK(row.h1 == 2);
    }
    CHECK(rep.complete);
    CHECK(rep.b1 == 9);
}

TEST_CASE("Milnor fiber of the rank-3 braid arrangement") {
    MilnorReport rep = milnor_fiber_b1(catalog_get("braid:3"));
    CHECK(rep.N == 6);
    CHECK(rep.decone_betti == std::vector<long long>{1, 5, 6});
    REQUIRE(rep.rows.size() == 5);
    // monodromy eigenspaces live only at the primitive cube roots of unity
    std::vector<long long> ranks;
    for (const EigenRow& row : rep.rows) ranks.push_back(row.h1);
    CHECK(ranks == std::vector<long long>{0, 1, 0, 1, 0});
    for (int d = 1; d <= 5; ++d) CHECK(rep.rows[d - 1].h1 == rep.rows[5 - d].h1);
    CHECK(rep.complete);
    CHECK(rep.b1 == 7);
}

TEST_CASE("icosidodecahedral torsion certificate") {
    const TorsionCertificate& cert = icosi_certificate();
    CHECK(cert.N == 16);
    CHECK(cert.power_of_two);
    CHECK(cert.cover_h1 == 1);
    CHECK(cert.certified);
    CHECK(cert.failures.empty());
    CHECK(cert.b1M == 15);
    CHECK(cert.bbar1_lower == 16);
    CHECK(cert.b1F == 15);

    const MilnorReport& m = cert.milnor;
    CHECK(m.decone_betti == std::vector<long long>{1, 15, 60});
    CHECK(m.complete);
    CHECK(m.b1 == 15);
    REQUIRE(m.rows.size() == 15);
    for (const EigenRow& row : m.rows) {
        CHECK(row.weights.admissible);
        CHECK(row.h1 == 0);
        CHECK(row.weights.naive == (row.d % 4 != 0));
        CHECK(admissibility_violations(icosi_census(), 16, row.d, row.weights.a).empty());
    }
}

TEST_CASE("icosidodecahedral eigenvalue weight vectors") {
    const MilnorReport& m = icosi_certificate().milnor;

    std::vector<BigRat> half(10, r(1, 2));
    half.insert(half.end(), 5, r(-1, 2));
    half.push_back(r(-5, 2));
    CHECK(m.rows[7].d == 8);
    CHECK(m.rows[7].weights.a == half);
    REQUIRE(m.rows[7].weights.flat_sums.size() == 15);
    std::size_t zeros = 0, twos = 0;
    for (const auto& [flat, sum] : m.rows[7].weights.flat_sums) {
        if (sum == 0) ++zeros;
        if (sum == -2) ++twos;
    }
    CHECK(zeros == 10);
    CHECK(twos == 5);

    std::vector<BigRat> quarter(7, r(1, 4));
    quarter.push_back(r(5, 4));
    quarter.push_back(r(1, 4));
    quarter.push_back(r(5, 4));
    quarter.insert(quarter.end(), 6, r(-3, 4));
    CHECK(m.rows[3].d == 4);
    CHECK(m.rows[3].weights.a == quarter);

    std::vector<BigRat> three_quarter(10, r(3, 4));
    three_quarter.push_back(r(-1, 4));
    three_quarter.insert(three_quarter.end(), 4, r(-5, 4));
    three_quarter.push_back(r(-9, 4));
    CHECK(m.rows[11].d == 12);
    CHECK(m.rows[11].weights.a == three_quarter);

    // the deterministic search reproduces the stored row
    AdmissibleWeights again = find_admissible_weights(icosi_census(), 16, 8);
    CHECK(again.a == m.rows[7].weights.a);
}

TEST_CASE("certificate failure modes") {
    TorsionCertificate braid = two_torsion_certificate(catalog_get("braid:3"));
    CHECK_FALSE(braid.certified);
    CHECK_FALSE(braid.power_of_two);
    REQUIRE_FALSE(braid.failures.empty());
    CHECK_THAT(braid.failures[0], ContainsSubstring("6 is not a power of 2"));
    CHECK(braid.b1F == 7);

    TorsionCertificate coned = two_torsion_certificate(cone(catalog_get("pencil:3")));
    CHECK_FALSE(coned.certified);
    CHECK(coned.power_of_two);
    REQUIRE(coned.failures.size() == 1);
    CHECK_THAT(coned.failures[0], ContainsSubstring("cover cohomology vanishes"));
    CHECK(coned.b1F == 3);

    TorsionCertificate pencil = two_torsion_certificate(catalog_get("pencil:4"));
    CHECK_FALSE(pencil.certified);
    CHECK(pencil.cover_h1 == 2);
    REQUIRE(pencil.failures.size() == 3);
    for (const std::string& f : pencil.failures)
        CHECK_THAT(f, ContainsSubstring("eigenspace rank 2 is nonzero"));
    CHECK(pencil.bbar1_lower == 5);
    CHECK(pencil.b1F == 9);

    const Arrangement& dec = dec_icosi_f2().arrangement();
    CHECK_THROWS_WITH(two_torsion_certificate(dec), ContainsSubstring("central"));
    CHECK_THROWS_WITH(milnor_fiber_b1(dec), ContainsSubstring("central"));
}

TEST_CASE("eigenspace rank input validation") {
    Arrangement p4 = catalog_get("pencil:4");
    AdmissibleWeights aw = find_admissible_weights(rank2_census(p4), 4, 1);
    REQUIRE(aw.admissible);
    OSAlgebra dec_f2(decone(p4, 4), Field(FieldContext::prime(2)));
    CHECK_THROWS_WITH(eigenspace_rank(dec_f2, aw, 4),
                      ContainsSubstring("rational coefficients"));
    AdmissibleWeights bad = aw;
    bad.admissible = false;
    CHECK_THROWS_WITH(eigenspace_rank(p4, bad), ContainsSubstring("admissible"));
    CHECK(eigenspace_rank(p4, aw) == 2);
}
