// Structures written out directly from the closed-form tables, used as oracles.
#pragma once

#include "pearl/qstruct.hpp"

#include <string>
#include <vector>

namespace pearl::testing {

struct TableBuilder {
    QuantumStructure s;

    void lag(const std::string& id, int deg) { s.lag_basis.push_back({id, deg}); }
    void amb(const std::string& id, int deg) { s.amb_basis.push_back({id, deg}); }
    void prod(const std::string& x, const std::string& y, const std::string& z, long long p, Int c = 1) {
        s.prod[{s.lag(x), s.lag(y)}] += Comb::unit(s.meta.coeffs, s.lag(z), p, c);
    }
    void mod(const std::string& a, const std::string& x, const std::string& z, long long p, Int c = 1) {
        s.modact[{s.amb(a), s.lag(x)}] += Comb::unit(s.meta.coeffs, s.lag(z), p, c);
    }
    void ring(const std::string& a, const std::string& b, const std::string& z, long long p, Int c = 1) {
        s.amb_ring[{s.amb(a), s.amb(b)}] += Comb::unit(s.meta.coeffs, s.amb(z), p, c);
    }
    void incl(const std::string& x, const std::string& h, long long p, Int c = 1) {
        s.incl[s.lag(x)] += Comb::unit(s.meta.coeffs, s.amb(h), p, c);
    }
    void pair(const std::string& a, const std::string& b, Int v = 1) {
        auto i = s.amb(a), j = s.amb(b);
        s.amb_pairing[{std::min(i, j), std::max(i, j)}] = v;
    }
};

// CP^n ambient ring on h0, h2, ..., h{2n}; h{2k} = h^(n-k), h^(n+1) = [CP^n] s.
inline void cpn_ambient(TableBuilder& b, int n) {
    auto id = [](int k) { return "h" + std::to_string(2 * k); };
    for (int k = 0; k <= n; ++k) b.amb(id(k), 2 * k);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            int e = 2 * n - i - j;  // total power of h
            if (e <= n) b.ring(id(i), id(j), id(n - e), 0);
            else b.ring(id(i), id(j), id(n - (e - n - 1)), 1);
        }
    for (int k = 0; k <= n; ++k)
        if (k <= n - k) b.pair(id(k), id(n - k));
    b.s.unit_amb = b.s.amb(id(n));
    b.s.point = b.s.amb(id(0));
    if (n >= 1) b.s.hyperplane = b.s.amb(id(n - 1));
}

// RP^n in CP^n, Z2: a_i o a_j = a_{i+j-n}, h * a_i = a_{i-2} with indices read mod n+1.
inline QuantumStructure rpn_structure(int n) {
    TableBuilder b;
    b.s.meta = {n, n + 1, n + 1, Rational(1, 2 * n + 2), 2 * n, Coeffs::Z2};
    const int N = n + 1;
    auto a = [](int i) { return "a" + std::to_string(i); };
    for (int i = 0; i <= n; ++i) b.lag(a(i), i);
    cpn_ambient(b, n);
    auto wrap = [&](int k, long long& p) {
        p = 0;
        while (k < 0) k += N, ++p;
        return k;
    };
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            long long p;
            int k = wrap(i + j - n, p);
            b.prod(a(i), a(j), a(k), p);
        }
    for (int m = 0; m <= n; ++m)  // h{2m} = h^(n-m)
        for (int i = 0; i <= n; ++i) {
            long long p;
            int k = wrap(i - 2 * (n - m), p);
            b.mod("h" + std::to_string(2 * m), a(i), a(k), p);
        }
    b.s.eps = {0};
    auto h = [&](int j) { return "h" + std::to_string(j); };
    for (int i = 0; i <= n; ++i) {
        if (n % 2 == 0) {
            if (i % 2 == 0) b.incl(a(i), h(i), 0);
            else b.incl(a(i), h(i + n + 1), 1);
        } else if (i % 2 == 0) {
            b.incl(a(i), h(i), 0);
            if (i + n + 1 <= 2 * n) b.incl(a(i), h(i + n + 1), 1);
        }
    }
    b.s.unit_lag = b.s.lag(a(n));
    return b.s;
}

// Clifford torus in CP^2 over Z2, N_L = 2, C_M = 3.
inline QuantumStructure clifford2_structure() {
    TableBuilder b;
    b.s.meta = {2, 2, 3, Rational(1, 6), 4, Coeffs::Z2};
    b.lag("m", 0);
    b.lag("a", 1);
    b.lag("b", 1);
    b.lag("w", 2);
    b.amb("pt", 0);
    b.amb("h", 2);
    b.amb("M", 4);
    b.ring("h", "h", "pt", 0);
    b.ring("h", "pt", "M", 1);
    b.ring("pt", "h", "M", 1);
    b.ring("pt", "pt", "h", 1);
    for (auto x : {"pt", "h", "M"}) {
        b.ring("M", x, x, 0);
        if (std::string(x) != "M") b.ring(x, "M", x, 0);
    }
    b.pair("pt", "M");
    b.pair("h", "h");
    for (auto x : {"m", "a", "b", "w"}) {
        b.prod("w", x, x, 0);
        if (std::string(x) != "w") b.prod(x, "w", x, 0);
    }
    b.prod("a", "b", "m", 0);
    b.prod("a", "b", "w", 1);
    b.prod("b", "a", "m", 0);
    b.prod("a", "a", "w", 1);
    b.prod("b", "b", "w", 1);
    b.prod("m", "m", "m", 1);
    b.prod("m", "m", "w", 2);
    // m = b o a and associativity fix the remaining entries.
    b.prod("m", "a", "b", 1);
    b.prod("m", "b", "a", 1);
    b.prod("m", "b", "b", 1);
    b.prod("a", "m", "a", 1);
    b.prod("a", "m", "b", 1);
    b.prod("b", "m", "a", 1);
    for (auto x : {"m", "a", "b", "w"}) {
        b.mod("h", x, x, 1);
        b.mod("pt", x, x, 2);
        b.mod("M", x, x, 0);
    }
    b.s.eps = {b.s.lag("m")};
    b.incl("m", "pt", 0);
    b.incl("m", "h", 1);
    b.incl("m", "M", 2);
    b.s.unit_lag = b.s.lag("w");
    b.s.unit_amb = b.s.amb("M");
    b.s.point = b.s.amb("pt");
    b.s.hyperplane = b.s.amb("h");
    return b.s;
}

}  // namespace pearl::testing
