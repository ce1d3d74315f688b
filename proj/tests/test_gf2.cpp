#include "pearl/gf2.hpp"

#include <doctest.h>

#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace pearl::gf2;

namespace {

BitMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int density) {
    BitMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (static_cast<int>(rng() % 100) < density) m.set(i, j);
    return m;
}

}  // namespace

TEST_CASE("serial and parallel row reduction agree") {
#ifdef _OPENMP
    // Oversubscribe so the parallel path really splits rows.
    const int saved = omp_get_max_threads();
    omp_set_num_threads(4);
#endif
    std::mt19937_64 rng(31);
    for (int it = 0; it < 60; ++it) {
        const std::size_t r = 1 + rng() % 150, c = 1 + rng() % 150;
        auto a = random_matrix(rng, r, c, it % 2 ? 50 : 5);
        auto b = a;
        CHECK(rref_serial(a) == rref_parallel(b));
        CHECK(a == b);
        CHECK(rank(a, Exec::Serial) == rank(b, Exec::Parallel));
    }
#ifdef _OPENMP
    omp_set_num_threads(saved);
#endif
}

TEST_CASE("nullspace, solve and inverse") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 40; ++it) {
        const std::size_t r = 1 + rng() % 40, c = 1 + rng() % 40;
        auto A = random_matrix(rng, r, c, 30);
        auto ker = nullspace(A, Exec::Parallel);
        CHECK(ker.size() + rank(A) == c);
        for (const auto& v : ker) CHECK_FALSE(A.apply(v).any());

        BitVec x(c);
        for (std::size_t j = 0; j < c; ++j) x.set(j, rng() & 1);
        auto sol = solve(A, A.apply(x));
        REQUIRE(sol);
        CHECK(A.apply(*sol) == A.apply(x));

        auto S = random_matrix(rng, r, r, 50);
        auto inv = inverse(S);
        CHECK(inv.has_value() == (rank(S) == r));
        if (inv) {
            BitMatrix I(r, r);
            for (std::size_t k = 0; k < r; ++k) I.set(k, k);
            CHECK(S * *inv == I);
        }
    }
    BitMatrix z(3, 3);
    BitVec b(3);
    b.set(1);
    CHECK_FALSE(solve(z, b).has_value());
}

TEST_CASE("span keeps reduced vectors") {
    Span s(5);
    BitVec a(5), b(5);
    a.set(0);
    a.set(2);
    b.set(2);
    CHECK(s.insert(a));
    CHECK(s.insert(b));
    BitVec c(5);
    c.set(0);
    CHECK(s.contains(c));
    CHECK_FALSE(s.insert(c));
    CHECK(s.dim() == 2);
}
