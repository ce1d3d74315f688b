#include "pearl/chaincx.hpp"
#include "pearl/errors.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace pearl;
using namespace pearl::testing;

namespace {

PearlComplex make(int N, std::vector<std::pair<std::string, int>> gens,
                  std::vector<std::tuple<std::string, std::string, int>> terms, int n = 0) {
    PearlComplex c;
    c.ring = RingDescriptor::lambda(N, std::nullopt, Coeffs::Z2, true);
    c.n = n;
    for (auto& [id, d] : gens) c.add_generator(id, d);
    for (auto& [x, y, e] : terms) c.toggle_term(*c.index_of(x), *c.index_of(y), e);
    return c;
}

PearlComplex narrow_torus() {
    auto c = make(2, {{"m", 0}, {"a", 1}, {"b", 1}, {"w", 2}}, {{"m", "a", 1}, {"b", "w", 1}}, 2);
    c.fundamental = 3;
    c.point = 0;
    return c;
}

PearlComplex rpn_like(int n) {
    std::vector<std::pair<std::string, int>> g;
    for (int i = 0; i <= n; ++i) g.emplace_back("a" + std::to_string(i), i);
    auto c = make(n + 1, g, {}, n);
    c.fundamental = static_cast<std::size_t>(n);
    return c;
}

void check_against_oracles(const PearlComplex& c) {
    auto hl = homology_lambda(c);
    auto hp = homology_lambda_plus(c);
    auto [lo, hi] = degree_window(c);
    for (long long D = lo; D <= hi; ++D) {
        // Lambda: every generator of the residue class appears exactly once.
        CHECK(hl.residue_ranks[static_cast<std::size_t>(residue(D, c.N_L()))] ==
              oracle_dim(c, D, false));
        CHECK(hp.plus_dim(D) == oracle_dim(c, D, true));
        for (long long j = 1; j <= 3; ++j) CHECK(hp.plus_t_rank(D, j) == oracle_t_rank(c, D, j));
    }
    // Free Lambda+ ranks match Lambda ranks per residue; torsion dies over Lambda.
    std::vector<std::size_t> agg(static_cast<std::size_t>(c.N_L()), 0);
    for (auto& [d, k] : hp.free_ranks) agg[static_cast<std::size_t>(residue(d, c.N_L()))] += k;
    CHECK(agg == hl.residue_ranks);
    for (const auto& z : hl.cycle_basis) CHECK(c.apply_d(z).is_zero());
    for (const auto& t : hp.torsion) CHECK(c.apply_d(t.generator).is_zero());
}

}  // namespace

TEST_CASE("validate") {
    CHECK(validate(make(2, {{"m", 0}, {"a", 1}, {"b", 1}, {"w", 2}}, {})).ok());
    CHECK(validate(PearlComplex{}).ok());
    auto bad = make(2, {{"x", 1}, {"y", 1}}, {{"x", "y", 0}});
    auto r = validate(bad);
    CHECK_FALSE(r.ok());
    CHECK(r.failures().front().name == "degree");
    auto dd = make(2, {{"x", 2}, {"y", 1}, {"z", 0}}, {{"x", "y", 0}, {"y", "z", 0}});
    CHECK_FALSE(validate(dd).ok());
    CHECK_THROWS_AS(homology_lambda(dd), InvariantError);
    CHECK_FALSE(validate(make(2, {{"x", 1}, {"x", 0}}, {})).ok());
}

TEST_CASE("narrow torus homology") {
    auto c = narrow_torus();
    auto hl = homology_lambda(c);
    for (auto& [d, k] : hl.free_ranks) CHECK(k == 0);
    auto hp = homology_lambda_plus(c);
    CHECK(hp.free_ranks.empty());
    REQUIRE(hp.torsion.size() == 2);
    CHECK(hp.torsion[0].degree == 2);
    CHECK(hp.torsion[0].exponent == 1);
    CHECK(hp.torsion[1].degree == 1);
    CHECK(hp.torsion[1].exponent == 1);
    check_against_oracles(c);
    CHECK(torsion_ideal(c).kind == TorsionIdealKind::Everything);
    CHECK(homology_lambda(dual_complex(c)).residue_ranks == std::vector<std::size_t>{0, 0});
}

TEST_CASE("rank one per degree and zero differential") {
    for (int n = 2; n <= 6; ++n) {
        auto c = rpn_like(n);
        auto hl = homology_lambda(c);
        for (auto& [d, k] : hl.free_ranks) CHECK(k == 1);
        CHECK(torsion_ideal(c).kind == TorsionIdealKind::Zero);
        auto e = e1_page(c);
        CHECK(e.d1_zero);
        CHECK(e.collapses);
    }
    auto c = make(3, {{"p", 0}, {"q", 0}, {"r", 2}}, {});
    auto hl = homology_lambda(c);
    CHECK(hl.free_ranks.at(0) == 2);
    CHECK(hl.free_ranks.at(-1) == 1);
    CHECK(hl.free_ranks.at(1) == 0);
    auto hp = homology_lambda_plus(c);
    CHECK(hp.torsion.empty());
    CHECK(hp.free_ranks.at(0) == 2);
}

TEST_CASE("acyclic classical pair") {
    auto c = make(2, {{"y", 0}, {"x", 1}}, {{"x", "y", 0}});
    auto hp = homology_lambda_plus(c);
    CHECK(hp.free_ranks.empty());
    CHECK(hp.torsion.empty());
    auto e = e1_page(c);
    CHECK(e.ranks.empty());
}

TEST_CASE("mixed torsion ideal") {
    auto c = make(2, {{"m", 0}, {"a", 1}, {"b", 1}, {"w", 2}}, {{"m", "a", 1}}, 2);
    CHECK(torsion_ideal(c).kind == TorsionIdealKind::Proper);
}

TEST_CASE("E1 page of the narrow torus") {
    auto e = e1_page(narrow_torus());
    CHECK(e.ranks.at(0) == 1);
    CHECK(e.ranks.at(1) == 2);
    CHECK(e.ranks.at(2) == 1);
    CHECK_FALSE(e.d1_zero);
    CHECK(e.d1.size() == 2);
    CHECK_FALSE(e.collapses);
}

TEST_CASE("dual complex") {
    auto c = make(2, {{"y", 0}, {"x", 1}}, {{"x", "y", 0}});
    auto d = dual_complex(c);
    CHECK(d.degree(0) == 0);
    CHECK(d.degree(1) == -1);
    REQUIRE(d.d[0].size() == 1);
    CHECK(d.d[0][0].target == 1);
    CHECK(dual_complex(d) == c);
    auto z = dual_complex(rpn_like(3));
    for (auto& v : z.d) CHECK(v.empty());
}

TEST_CASE("theta pairing") {
    auto c = rpn_like(2);
    auto d = dual_complex(c);
    CHECK(theta_pairing(c, c.gen(1), d.gen(1)) == 1);
    CHECK(theta_pairing(c, HChain{1, {}}, d.gen(1)) == 0);
    CHECK_THROWS(theta_pairing(c, c.gen(1), d.gen(2)));
    CHECK(theta_gram(c).all_invertible());
}

TEST_CASE("random complexes against oracles") {
    std::mt19937_64 rng(20240917);
    for (int N : {2, 3, 5}) {
        for (int it = 0; it < 25; ++it) {
            RandomSpec s;
            s.N_L = N;
            s.rank = 4 + static_cast<std::size_t>(it % 9);
            s.max_deg = 2 + it % 4;
            auto c = random_complex(rng, s);
            REQUIRE(validate(c).ok());
            check_against_oracles(c);
            CHECK(theta_gram(c).all_invertible());
            // Degrees above n - N_L + 1 see only the classical differential.
            auto hp = homology_lambda_plus(c);
            auto betti = classical_homology(c).betti();
            for (int D = s.max_deg - N + 2; D <= s.max_deg; ++D)
                CHECK(hp.plus_dim(D) == (betti.count(D) ? betti.at(D) : 0));
            // Collapse at E1 iff the Lambda ranks equal the classical Betti sums.
            auto e = e1_page(c);
            std::vector<std::size_t> agg(static_cast<std::size_t>(N), 0);
            for (auto& [k, b] : e.ranks) agg[static_cast<std::size_t>(residue(k, N))] += b;
            CHECK(e.collapses == (agg == homology_lambda(c).residue_ranks));
        }
    }
}

TEST_CASE("cycle split and graded complement") {
    std::mt19937_64 rng(99);
    for (int it = 0; it < 20; ++it) {
        RandomSpec s;
        s.N_L = 2 + it % 2;
        s.rank = 8;
        auto c = random_complex(rng, s);
        auto cs = cycle_split(c);
        // Z' + dE + E has the full rank of the complex.
        CHECK(cs.zprime.size() + cs.e.size() + cs.de.size() == c.size());
        gf2::Span span(c.size());
        auto add = [&](const HChain& h) {
            gf2::BitVec v(c.size());
            for (auto g : h.support) v.set(g);
            return span.insert(v);
        };
        for (auto& z : cs.zprime) CHECK(add(z));
        for (auto& z : cs.de) CHECK(add(z));
        for (auto& z : cs.e) CHECK(add(z));
        for (auto& z : cs.zprime) CHECK(c.apply_d(z).is_zero());
    }
    std::vector<int> degs{0, 1, 2};
    auto comp = graded_complement(degs, 2, {HChain{0, {0, 2}}});
    CHECK(comp == std::vector<std::size_t>{1, 2});
}

TEST_CASE("acyclic classical part kills everything") {
    // delta_0 acyclic: E1 vanishes and so does total homology.
    auto c = make(2, {{"y", 0}, {"x", 1}, {"v", 2}, {"u", 3}},
                  {{"x", "y", 0}, {"u", "v", 0}, {"x", "v", 1}});
    REQUIRE(validate(c).ok());
    CHECK(e1_page(c).ranks.empty());
    CHECK(homology_lambda(c).residue_ranks == std::vector<std::size_t>{0, 0});
}
