// Shared test helpers: seeded random complexes and brute-force oracles that work
// directly on explicit slice matrices, independent of the library's reductions.
#pragma once

#include "pearl/chaincx.hpp"
#include "pearl/gf2.hpp"
#include "pearl/minimal.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace pearl::testing {

// Adjacency matrix D[y][x] of d; over Lambda+ the exponent is implied by degrees.
inline gf2::BitMatrix d_matrix(const PearlComplex& c) {
    gf2::BitMatrix m(c.size(), c.size());
    for (std::size_t x = 0; x < c.size(); ++x)
        for (const auto& t : c.d[x]) m.flip(t.target, x);
    return m;
}

inline PearlComplex from_matrix(const PearlComplex& shape, const gf2::BitMatrix& m) {
    PearlComplex r = shape;
    const int N = shape.N_L();
    for (auto& v : r.d) v.clear();
    for (std::size_t x = 0; x < r.size(); ++x)
        for (std::size_t y = 0; y < r.size(); ++y)
            if (m.get(y, x)) r.toggle_term(x, y, (r.degree(y) - r.degree(x) + 1) / N);
    return r;
}

struct RandomSpec {
    int N_L = 2;
    std::size_t rank = 8;
    int min_deg = 0;
    int max_deg = 4;
    int conjugations = 30;
    bool with_fundamental = false;
};

// Direct sum of free generators and elementary pairs d x = y t^e, conjugated by
// random positive elementary changes of basis g_i -> g_i + g_j t^a.
inline PearlComplex random_complex(std::mt19937_64& rng, const RandomSpec& s) {
    const int N = s.N_L;
    PearlComplex c;
    c.ring = RingDescriptor::lambda(N, std::nullopt, Coeffs::Z2, true);
    c.n = s.max_deg;
    std::uniform_int_distribution<int> deg(s.min_deg, s.max_deg);
    std::uniform_int_distribution<int> coin(0, 2);
    std::size_t id = 0;
    auto name = [&] { return "g" + std::to_string(id++); };
    if (s.with_fundamental) c.fundamental = c.add_generator(name(), s.max_deg);
    while (c.size() < s.rank) {
        const int lo = s.with_fundamental ? s.max_deg - 1 : s.max_deg;
        if (c.size() + 2 <= s.rank && coin(rng) != 0) {
            // x of degree k, y of degree k - 1 + e N with e >= 0, both inside the range.
            int k = std::uniform_int_distribution<int>(s.min_deg + 1, std::max(s.min_deg + 1, lo))(rng);
            std::vector<int> es;
            for (int e = 0; k - 1 + e * N <= lo; ++e) es.push_back(e);
            if (es.empty() || k > lo) continue;
            int e = es[std::uniform_int_distribution<std::size_t>(0, es.size() - 1)(rng)];
            std::size_t x = c.add_generator(name(), k);
            std::size_t y = c.add_generator(name(), k - 1 + e * N);
            c.toggle_term(x, y, e);
        } else {
            int k = std::min(deg(rng), lo);
            c.add_generator(name(), k);
        }
    }
    std::uniform_int_distribution<std::size_t> pick(0, c.size() - 1);
    gf2::BitMatrix d = d_matrix(c);
    for (int it = 0; it < s.conjugations; ++it) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i == j) continue;
        // The fundamental generator stays a cycle that no other generator absorbs.
        if (c.fundamental && i == *c.fundamental) continue;
        int di = c.degree(i), dj = c.degree(j);
        if (dj < di || residue(dj - di, N) != 0) continue;
        gf2::BitMatrix E(c.size(), c.size());
        for (std::size_t k = 0; k < c.size(); ++k) E.set(k, k);
        E.set(j, i);
        d = E * d * E;
    }
    return from_matrix(c, d);
}

// Matrix of d : slice(D) -> slice(D - 1).
inline gf2::BitMatrix slice_d(const PearlComplex& c, long long D, bool plus) {
    auto src = c.slice(D, plus), dst = c.slice(D - 1, plus);
    gf2::BitMatrix m(dst.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j)
        for (const auto& t : c.d[src[j]]) {
            auto it = std::find(dst.begin(), dst.end(), t.target);
            if (it == dst.end()) throw std::logic_error("slice_d: target outside slice");
            m.flip(static_cast<std::size_t>(it - dst.begin()), j);
        }
    return m;
}

inline std::size_t oracle_dim(const PearlComplex& c, long long D, bool plus) {
    auto out = slice_d(c, D, plus), in = slice_d(c, D + 1, plus);
    std::size_t n = c.slice(D, plus).size();
    return n - gf2::rank(out, gf2::Exec::Serial) - gf2::rank(in, gf2::Exec::Serial);
}

// Rank of t^j : H_D -> H_{D - jN} over Lambda+, via explicit cycle and boundary spans.
inline std::size_t oracle_t_rank(const PearlComplex& c, long long D, long long j) {
    const int N = c.N_L();
    const long long E = D - j * N;
    auto src = c.slice(D, true), dst = c.slice(E, true);
    auto z = gf2::nullspace(slice_d(c, D, true), gf2::Exec::Serial);
    gf2::BitMatrix b = slice_d(c, E + 1, true);
    std::size_t rb = gf2::rank(b, gf2::Exec::Serial);
    gf2::BitMatrix both(dst.size(), b.cols() + z.size());
    for (std::size_t r = 0; r < dst.size(); ++r)
        for (std::size_t k = 0; k < b.cols(); ++k)
            if (b.get(r, k)) both.set(r, k);
    for (std::size_t k = 0; k < z.size(); ++k)
        for (auto i : z[k].ones()) {
            auto it = std::find(dst.begin(), dst.end(), src[i]);
            both.set(static_cast<std::size_t>(it - dst.begin()), b.cols() + k);
        }
    return gf2::rank(both, gf2::Exec::Serial) - rb;
}

// Degrees at which Lambda+ homology can be nonzero, padded by one period.
inline std::pair<long long, long long> degree_window(const PearlComplex& c) {
    if (c.size() == 0) return {0, 0};
    return {c.min_degree() - 3LL * c.N_L(), c.max_degree() + 1};
}

// Exterior algebra on r generators: e_S of degree r - |S|, product e_S e_T =
// e_{S u T} for disjoint S, T, and d e_S = sum_{i in S, D_i = 1} e_{S - i} t (N_L = 2).
// Other N_L values are only meaningful with D = 0.
// Contraction by D is a derivation, so the product satisfies the Leibniz rule.
struct DgaInstance {
    PearlComplex c;
    BilinearOp op;
};

inline DgaInstance koszul_dga(int r, unsigned D, int N = 2) {
    DgaInstance out;
    auto& c = out.c;
    c.ring = RingDescriptor::lambda(N, std::nullopt, Coeffs::Z2, true);
    c.n = r;
    const unsigned full = (1u << r) - 1;
    for (unsigned S = 0; S <= full; ++S) {
        std::string id = "e";
        for (int i = 0; i < r; ++i)
            if (S >> i & 1) id += std::to_string(i + 1);
        if (S == 0) id = "L";
        c.add_generator(id, r - __builtin_popcount(S));
    }
    c.fundamental = 0;
    c.point = full;
    for (unsigned S = 0; S <= full; ++S)
        for (int i = 0; i < r; ++i)
            if ((S >> i & 1) && (D >> i & 1)) c.toggle_term(S, S & ~(1u << i), 1);
    out.op.shift = r;
    for (unsigned S = 0; S <= full; ++S)
        for (unsigned T = 0; T <= full; ++T)
            if ((S & T) == 0) out.op.table[{S, T}] = {S | T};
    return out;
}

// Random positive elementary changes of basis applied to both d and the product.
inline void conjugate(std::mt19937_64& rng, DgaInstance& inst, int steps) {
    auto& c = inst.c;
    const int N = c.N_L();
    std::uniform_int_distribution<std::size_t> pick(0, c.size() - 1);
    for (int it = 0; it < steps; ++it) {
        std::size_t i = pick(rng), j = pick(rng);
        if (i == j || (c.fundamental && (i == *c.fundamental || j == *c.fundamental))) continue;
        if (c.degree(j) < c.degree(i) || residue(c.degree(j) - c.degree(i), N) != 0) continue;
        // g_i' = g_i + g_j t^a. E sends g_i to g_i + g_j and is its own inverse.
        ChainMap E = identity_map(c.size());
        E.image[i] = {std::min(i, j), std::max(i, j)};
        gf2::BitMatrix d = d_matrix(c);
        gf2::BitMatrix Em(c.size(), c.size());
        for (std::size_t k = 0; k < c.size(); ++k) Em.set(k, k);
        Em.set(j, i);
        c = from_matrix(c, Em * d * Em);
        BilinearOp nop;
        nop.shift = inst.op.shift;
        for (std::size_t a = 0; a < c.size(); ++a)
            for (std::size_t b = 0; b < c.size(); ++b) {
                HChain ea = E.apply(c.gen(a)), eb = E.apply(c.gen(b));
                HChain v = E.apply(inst.op.apply(ea, eb));
                if (!v.is_zero()) nop.table[{a, b}] = v.support;
            }
        inst.op = nop;
    }
}

}  // namespace pearl::testing
