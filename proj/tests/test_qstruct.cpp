#include "pearl/errors.hpp"
#include "pearl/qstruct.hpp"
#include "structures.hpp"

#include <doctest.h>

using namespace pearl;
using namespace pearl::testing;

TEST_CASE("comb arithmetic") {
    Comb a = Comb::unit(Coeffs::Z, 0, 1, 3);
    a.add(1, 0, -2);
    Comb b = a.scaled(-1);
    CHECK((a + b).is_zero());
    CHECK(a.shifted(2).coeff(0, 3) == 3);
    CHECK(a.reduced_mod2().terms().size() == 1);
    Comb z2(Coeffs::Z2);
    z2.add(0, 0, 1);
    z2.add(0, 0, 1);
    CHECK(z2.is_zero());
    std::vector<BasisElement> basis{{"x", 0}, {"y", 1}};
    CHECK(a.str(basis, "t") == "-2y + 3x t");
    CHECK(Comb(Coeffs::Z).str(basis, "t") == "0");
}

TEST_CASE("clifford torus tables") {
    auto S = clifford2_structure();
    auto L = [&](const char* id, long long p = 0) { return S.lag_elem(id, p); };
    auto H = [&](const char* id, long long p = 0) { return S.amb_elem(id, p); };
    CHECK(qprod(S, L("a"), L("b")) == L("m") + L("w", 1));
    CHECK(qprod(S, L("b"), L("a")) == L("m"));
    CHECK(qprod(S, L("a"), L("a")) == L("w", 1));
    CHECK(qprod(S, L("b"), L("b")) == L("w", 1));
    CHECK(qprod(S, L("m"), L("m")) == L("m", 1) + L("w", 2));
    for (auto x : {"a", "b", "w", "m"}) CHECK(qmod(S, H("h"), L(x)) == L(x, 1));
    CHECK(qprod(S, L("w"), L("a")) == L("a"));
    CHECK(amb_mul(S, H("h"), H("h")) == H("pt"));
    CHECK(amb_mul(S, H("h"), H("pt")) == H("M", 1));
    CHECK(amb_to_lambda(S, H("M", 1)) == H("M", 3));

    auto two = two_sided_check(S);
    for (auto& f : two.failures()) MESSAGE(f.name << ": " << f.detail);
    CHECK(two.ok());
    CHECK(degree_check(S).ok());

    auto inc = inclusion_from_module(S);
    CHECK(inc.size() == 1);
    CHECK(inc.at(S.lag("m")) == H("pt") + H("h", 1) + H("M", 2));
    CHECK(inclusion_check(S).ok());
    CHECK(mod_inclusion_identity(S).ok());

    CHECK(augment(S, L("m", 2)).str() == "t^2");
    CHECK(augment(S, L("w")).is_zero());

    auto per = periodicity_check(S, H("h"));
    CHECK(per.invertible);
    CHECK(per.shift == -2);
    CHECK(per.report.ok());
    auto unit = periodicity_check(S, H("M"));
    CHECK(unit.shift == 0);
    CHECK(unit.report.ok());
}

TEST_CASE("corrupted tables are located") {
    auto S = clifford2_structure();
    S.prod[{S.lag("b"), S.lag("a")}] = S.lag_elem("m") + S.lag_elem("w", 1);  // now commutative
    auto r = two_sided_check(S);
    CHECK_FALSE(r.ok());
    bool located = false;
    for (auto& f : r.failures())
        if (f.detail.find("fails at (") != std::string::npos) located = true;
    CHECK(located);

    auto D = clifford2_structure();
    D.prod[{D.lag("a"), D.lag("b")}] += D.lag_elem("a");
    CHECK_FALSE(degree_check(D).ok());

    auto I = clifford2_structure();
    I.incl[I.lag("m")] = I.amb_elem("pt");
    CHECK_FALSE(inclusion_check(I).ok());
}

TEST_CASE("rpn tables") {
    for (int n = 2; n <= 6; ++n) {
        CAPTURE(n);
        auto S = rpn_structure(n);
        const int N = n + 1;
        // Oracle: a_i o a_j = a_{i+j-n}, h * a_i = a_{i-2}, read as a_k t^p with k in [0, n].
        auto elem = [&](int k) {
            long long p = 0;
            while (k < 0) k += N, ++p;
            return S.lag_elem("a" + std::to_string(k), p);
        };
        for (int i = 0; i <= n; ++i) {
            auto ai = S.lag_elem("a" + std::to_string(i));
            for (int j = 0; j <= n; ++j)
                CHECK(qprod(S, ai, S.lag_elem("a" + std::to_string(j))) == elem(i + j - n));
            CHECK(qmod(S, S.amb_elem("h" + std::to_string(2 * n - 2)), ai) == elem(i - 2));
        }
        auto rep = two_sided_check(S);
        for (auto& f : rep.failures()) MESSAGE(f.name << ": " << f.detail);
        CHECK(rep.ok());
        CHECK(inclusion_check(S).ok());
        CHECK(mod_inclusion_identity(S).ok());
        auto derived = inclusion_from_module(S);
        auto h = [&](int j, long long p) { return S.amb_elem("h" + std::to_string(j), p); };
        for (int i = 0; i <= n; ++i) {
            Comb want(Coeffs::Z2);
            if (n % 2 == 0) want = i % 2 == 0 ? h(i, 0) : h(i + n + 1, 1);
            else if (i % 2 == 0) want = h(i, 0) + h(i + n + 1, 1);
            Comb got = derived.count(static_cast<std::size_t>(i)) ? derived.at(static_cast<std::size_t>(i))
                                                                  : S.zero();
            CHECK(got == want);
        }
        auto per = periodicity_check(S, S.amb_elem("h" + std::to_string(2 * n - 2)));
        CHECK(per.shift == -2);
        CHECK(per.report.ok());
        // The point class is invertible too.
        CHECK(periodicity_check(S, S.amb_elem("h0")).report.ok());
    }
}

TEST_CASE("periodicity rejects non-units") {
    TableBuilder b;
    b.s.meta = {1, 2, std::nullopt, Rational(1), 2, Coeffs::Z2};
    b.lag("x", 0);
    b.lag("L", 1);
    b.amb("p", 0);
    b.amb("M", 2);
    b.ring("M", "M", "M", 0);
    b.ring("M", "p", "p", 0);
    b.ring("p", "M", "p", 0);
    auto per = periodicity_check(b.s, b.s.amb_elem("p"));
    CHECK_FALSE(per.invertible);
    CHECK_FALSE(per.report.ok());
    CHECK_THROWS_AS(periodicity_check(b.s, b.s.zero()), ArgumentError);
}

TEST_CASE("singular pairing is rejected") {
    auto S = clifford2_structure();
    S.amb_pairing.erase({S.amb("h"), S.amb("h")});
    CHECK_THROWS_AS(inclusion_from_module(S), InvariantError);
}

TEST_CASE("product op on a matching complex") {
    auto S = rpn_structure(2);
    PearlComplex c;
    c.ring = RingDescriptor::lambda(3, 3, Coeffs::Z2, true);
    c.n = 2;
    for (auto& g : S.lag_basis) c.add_generator(g.id, g.degree);
    auto op = product_op(S, c);
    CHECK(op.shift == 2);
    CHECK(op.apply(c.gen(2), c.gen(1)).support == std::vector<std::size_t>{1});
    CHECK(format_tables(S).find("a1 o a1 = a0") != std::string::npos);
}
