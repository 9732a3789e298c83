// End-to-end gate: nine pinned checks over the built-in catalog, one
// pass/fail line each. Exit code = number of failing checks.

#include "arrcover/arrcover.hpp"
#include "arrcover/cli.hpp"

#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>

using namespace arrcover;

namespace {

struct Fail : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void expect(bool cond, const std::string& msg) {
    if (!cond) throw Fail(msg);
}

std::string run_cli(std::vector<std::string> args, int expected_code) {
    std::ostringstream out, err;
    int code = cli_run(args, out, err);
    if (code != expected_code) {
        std::string joined;
        for (const std::string& a : args) joined += a + " ";
        throw Fail("cli " + joined + "exited " + std::to_string(code) + ", expected " +
                   std::to_string(expected_code) + (err.str().empty() ? "" : ": " + err.str()));
    }
    return out.str();
}

void expect_contains(const std::string& text, const std::string& needle) {
    if (text.find(needle) == std::string::npos)
        throw Fail("output lacks '" + needle + "'");
}

long long alternating(const std::vector<long long>& v) {
    long long sum = 0, sign = 1;
    for (long long x : v) {
        sum += sign * x;
        sign = -sign;
    }
    return sum;
}

}  // namespace

int main() {
    int failures = 0;
    auto criterion = [&](int id, const std::string& label,
                         const std::function<std::string()>& body) {
        std::string detail;
        bool ok = true;
        try {
            detail = body();
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << id << ": " << label;
        if (!detail.empty()) std::cout << " -- " << detail;
        std::cout << "\n" << std::flush;
        if (!ok) ++failures;
    };

    const Field f2{FieldContext::prime(2)};
    const Field f3{FieldContext::prime(3)};
    const Field q{FieldContext::rationals()};

    OSAlgebra dec_f2(catalog_get("icosidodecahedral-decone-16"), f2);
    const SubsetMask reds = mask_of({1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    const SubsetMask blues = mask_of({11, 12, 13, 14, 15});

    criterion(1, "all-ones mod-2 weight on the 15-line decone", [&] {
        std::string out = run_cli({"aomoto", "--catalog", "icosidodecahedral-decone-16",
                                   "--field", "f2", "--w-subset", "1..15"},
                                  0);
        expect_contains(out, "k=1 dim=15 rankD=13 h=1\n");
        std::vector<SubsetMask> cocycles = enumerate_cocycles_f2(dec_f2, reds | blues);
        std::sort(cocycles.begin(), cocycles.end());
        expect(cocycles == std::vector<SubsetMask>{0, reds, blues, reds | blues},
               "cocycle set is not {empty, S0, S1, S0+S1}");
        return "h1 = 1; 2^15 scan found exactly the 4 expected cocycles";
    });

    criterion(2, "Milnor fiber b1 of the 16-plane arrangement", [&] {
        MilnorReport rep = milnor_fiber_b1(catalog_get("icosidodecahedral"));
        expect(rep.complete, "some eigenvalue has no admissible weights");
        expect(rep.b1 == 15, "b1 = " + std::to_string(rep.b1) + ", expected 15");
        for (const EigenRow& row : rep.rows)
            expect(row.h1 == 0, "eigenvalue d=" + std::to_string(row.d) + " has rank " +
                                    std::to_string(row.h1));
        std::vector<BigRat> half(10, BigRat(1, 2));
        half.insert(half.end(), 5, BigRat(-1, 2));
        half.push_back(BigRat(-5, 2));
        expect(rep.rows[7].weights.a == half, "d=8 weight vector differs from the pinned one");
        for (const auto& [flat, sum] : rep.rows[7].weights.flat_sums)
            expect(sum == 0 || sum == BigRat(-2),
                   "d=8 flat sum " + detail::rational_str(sum) + " outside {0, -2}");
        return "b1(F) = 15, all 15 eigenspace ranks 0, pinned d=8 weights admissible";
    });

    criterion(3, "double cover of the decone at the all-ones class", [&] {
        std::string out = run_cli({"double-cover", "--catalog", "icosidodecahedral-decone-16",
                                   "--w-subset", "1..15"},
                                  0);
        expect_contains(out, "k=1 b=15 h=1 bbar=16\n");
        DoubleCoverReport rep = double_cover_mod2_betti(dec_f2, reds | blues);
        expect(rep.bbar(1) == 16, "bbar1 = " + std::to_string(rep.bbar(1)));
        expect(rep.rows.at(1).b == 15 && rep.rows.at(1).h == 1, "bbar1 is not 15 + 1");
        return "bbar1 = 16 = 15 + 1";
    });

    criterion(4, "2-torsion certificate", [&] {
        std::string out = run_cli({"certify-torsion", "--catalog", "icosidodecahedral"}, 0);
        expect_contains(out, "verdict: 2-torsion certified\n");
        expect_contains(out, "bbar1 >= 16, b1(fiber) = 15\n");
        return "exit 0, certified, evidence bbar1 >= 16 > 15 = b1(fiber)";
    });

    std::map<std::string, OSAlgebra> algebras_f2;
    std::map<std::string, std::vector<long long>> betti;

    criterion(5, "cohomology ring dimensions match the Betti numbers", [&] {
        for (const std::string& name : catalog_roster()) {
            Arrangement a = catalog_get(name);
            betti[name] = betti_numbers(a);
            auto [it, fresh] = algebras_f2.emplace(name, OSAlgebra(std::move(a), f2));
            expect(fresh, "duplicate roster entry");
            expect(it->second.dimensions() == betti[name], "dimension mismatch for " + name);
        }
        return std::to_string(algebras_f2.size()) + " arrangements, every degree";
    });

    criterion(6, "Euler identity and chain condition for random weights", [&] {
        std::mt19937 rng(20260816);
        std::uniform_int_distribution<long long> num(-5, 5);
        std::uniform_int_distribution<long long> den(1, 4);
        int checked = 0;
        auto drive = [&](const OSAlgebra& os, const std::vector<long long>& b, int count) {
            const Field& f = os.coeff();
            std::size_t n = os.arrangement().n();
            for (int t = 0; t < count; ++t) {
                AomotoWeights w{f, {}};
                for (std::size_t i = 0; i < n; ++i) {
                    if (f.kind() == FieldKind::Rationals)
                        w.entries.push_back(f.from_rational(BigRat(num(rng), den(rng))));
                    else
                        w.entries.push_back(f.from_int(num(rng)));
                }
                AomotoComplex cx = aomoto(os, w);
                expect(alternating(cx.h) == alternating(b), "Euler identity broken");
                for (std::size_t k = 0; k + 1 < cx.D.size(); ++k) {
                    Matrix prod = multiply(cx.D[k + 1], cx.D[k]);
                    for (const Scalar& s : prod.data)
                        expect(f.is_zero(s), "D_{k+1} D_k has a nonzero entry");
                }
                ++checked;
            }
        };
        for (const std::string& name : catalog_roster()) {
            if (name.rfind("icosidodecahedral", 0) == 0) continue;
            const std::vector<long long>& b = betti.at(name);
            drive(algebras_f2.at(name), b, 5);
            Arrangement a = catalog_get(name);
            drive(OSAlgebra(a, f3), b, 5);
            drive(OSAlgebra(std::move(a), q), b, 5);
        }
        drive(algebras_f2.at("icosidodecahedral-decone-16"),
              betti.at("icosidodecahedral-decone-16"), 10);
        drive(algebras_f2.at("icosidodecahedral"), betti.at("icosidodecahedral"), 10);
        expect(checked == 200, "expected 200 weight vectors, drove " + std::to_string(checked));
        return "200 weight vectors over F2, F3, Q";
    });

    criterion(7, "pencil wedge-kernel criterion against the matrix computation", [&] {
        int agreements = 0;
        auto compare = [&](const OSAlgebra& os, const AomotoWeights& eta,
                           const AomotoWeights& omega) {
            const Field& f = os.coeff();
            bool zero = true;
            for (const Scalar& s : wedge_pair_coords(os, eta, omega))
                if (!f.is_zero(s)) zero = false;
            expect(zero == pencil_kernel_oracle(os.arrangement().n(), eta, omega, f),
                   "criterion disagrees with the matrix rank");
            ++agreements;
        };
        for (std::size_t n = 3; n <= 5; ++n) {
            Arrangement a = catalog_get("pencil:" + std::to_string(n));
            for (std::uint32_t p : {2u, 3u}) {
                Field f{FieldContext::prime(p)};
                OSAlgebra os(a, f);
                std::vector<long long> tuple(2 * n, 0);
                while (true) {
                    AomotoWeights eta{f, {}}, omega{f, {}};
                    for (std::size_t i = 0; i < n; ++i)
                        eta.entries.push_back(f.from_int(tuple[i]));
                    for (std::size_t i = 0; i < n; ++i)
                        omega.entries.push_back(f.from_int(tuple[n + i]));
                    compare(os, eta, omega);
                    std::size_t carry = 0;
                    while (carry < tuple.size() &&
                           ++tuple[carry] == static_cast<long long>(p))
                        tuple[carry++] = 0;
                    if (carry == tuple.size()) break;
                }
            }
        }
        std::mt19937 rng(777);
        std::uniform_int_distribution<long long> num(-6, 6);
        std::uniform_int_distribution<long long> den(1, 3);
        for (std::size_t n = 3; n <= 7; ++n) {
            OSAlgebra os(catalog_get("pencil:" + std::to_string(n)), q);
            for (int t = 0; t < 20; ++t) {
                AomotoWeights eta{q, {}}, omega{q, {}};
                for (std::size_t i = 0; i < n; ++i) {
                    eta.entries.push_back(q.from_rational(BigRat(num(rng), den(rng))));
                    omega.entries.push_back(q.from_rational(BigRat(num(rng), den(rng))));
                }
                if (t % 4 == 1) {
                    Scalar se = q.zero(), so = q.zero();
                    for (std::size_t i = 0; i + 1 < n; ++i) {
                        se = q.add(se, eta.entries[i]);
                        so = q.add(so, omega.entries[i]);
                    }
                    eta.entries[n - 1] = q.neg(se);
                    omega.entries[n - 1] = q.neg(so);
                }
                if (t % 4 == 2)
                    for (std::size_t i = 0; i < n; ++i)
                        omega.entries[i] = q.mul(q.from_int(2), eta.entries[i]);
                compare(os, eta, omega);
            }
        }
        return std::to_string(agreements) + " weight pairs, exhaustive F2/F3 and random Q";
    });

    criterion(8, "double-cover Betti identities for every small catalog entry", [&] {
        int masks = 0;
        for (const std::string& name : catalog_roster()) {
            const OSAlgebra& os = algebras_f2.at(name);
            std::size_t n = os.arrangement().n();
            if (n > 8) continue;
            long long chi2 = 2 * alternating(betti.at(name));
            for (SubsetMask w = 1; w < (SubsetMask(1) << n); ++w) {
                DoubleCoverReport rep = double_cover_mod2_betti(os, w);
                expect(rep.bbar(0) == 1, name + ": cover not connected at w=" +
                                             std::to_string(w));
                std::vector<long long> bbar;
                for (const DoubleCoverRow& r : rep.rows) bbar.push_back(r.bbar);
                expect(alternating(bbar) == chi2,
                       name + ": cover Euler characteristic is not doubled");
                ++masks;
            }
        }
        return std::to_string(masks) + " nonzero classes across every entry with n <= 8";
    });

    criterion(9, "two models of the 16-plane arrangement", [&] {
        Rank2Census dec = rank2_census(dec_f2.arrangement());
        for (const auto& [mult, count] : dec.table) {
            (void)count;
            expect(mult == 2 || mult == 4,
                   "decone census has multiplicity " + std::to_string(mult));
        }
        Rank2Census coned = rank2_census(catalog_get("icosidodecahedral"));
        expect(coned.table == std::map<std::size_t, std::size_t>{{2, 30}, {4, 15}},
               "cone census is not 30 doubles + 15 quadruples");
        for (const Rank2Census* census : {&dec, &coned}) {
            for (SubsetMask flat : census->flats) {
                std::vector<int> idx = mask_indices(flat);
                if (idx.size() != 4) continue;
                int low = 0;
                for (int i : idx)
                    if (i <= 10) ++low;
                expect(low == 2, "a quadruple flat does not split 2 + 2 across the classes");
            }
        }
        expect(poset_isomorphic(catalog_get("icosidodecahedral"), icosidodecahedral_from_axes()),
               "line model and axis model have different posets");
        return "census multiplicities {2, 4}, quadruples split 2+2, models poset-isomorphic";
    });

    if (failures == 0)
        std::cout << "all 9 criteria passed\n";
    else
        std::cout << failures << " criteria failed\n";
    return failures;
}
