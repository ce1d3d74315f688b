// Writes the shipped instance bundles. With --check, compares against the
// files on disk instead and exits 1 on any difference.
#include "pearl/errors.hpp"
#include "pearl/serialize.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <tuple>

using namespace pearl;

namespace {

struct Tables {
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

PearlComplex complex_of(const InstanceMeta& m, const std::vector<BasisElement>& basis) {
    PearlComplex c;
    c.ring = complex_ring(m);
    c.n = m.n;
    for (const auto& b : basis) c.add_generator(b.id, b.degree);
    return c;
}

std::map<std::string, Rational> wide_bounds(const InstanceMeta& m, long long k, std::optional<long long> i0,
                                            std::optional<long long> j) {
    std::map<std::string, Rational> b;
    const long long N = m.N_L;
    b["w(M,L:v) <= k*eta"] = Rational(k) * m.eta;
    b["w(M\\L) <= (k-N_L)*eta"] = Rational(k - N) * m.eta;
    b["w(M\\L) <= floor(2n/N_L)*N_L*eta"] = Rational(2LL * m.n / N * N) * m.eta;
    b["w(L)+2w(M\\L) <= 2*k*eta"] = Rational(2 * k) * m.eta;
    if (i0) b["w(M\\L) <= i0*N_L*eta"] = Rational(*i0 * N) * m.eta;
    if (j) b["w(M,L:(r;rho)) <= j*N_L*eta"] = Rational(*j * N) * m.eta;
    return b;
}

// ---- CP^n ------------------------------------------------------------------

// h{2k} is h^(n-k) in degree 2k; h^(n+1) = [CP^n] s.
void cpn_ring(Tables& t, int n) {
    auto id = [](int k) { return "h" + std::to_string(2 * k); };
    for (int k = 0; k <= n; ++k) t.amb(id(k), 2 * k);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            const int e = (n - i) + (n - j);
            if (e <= n) t.ring(id(i), id(j), id(n - e), 0);
            else t.ring(id(i), id(j), id(n - (e - n - 1)), 1);
        }
    for (int k = 0; 2 * k <= n; ++k) t.pair(id(k), id(n - k));
    t.s.unit_amb = t.s.amb(id(n));
    t.s.point = t.s.amb(id(0));
    t.s.hyperplane = t.s.amb(id(n - 1));
}

InstanceBundle cpn(int n) {
    InstanceBundle b;
    b.name = "cpn(" + std::to_string(n) + ")";
    b.meta = {n, 2, n + 1, Rational(1, 2 * n + 2), 2 * n, Coeffs::Z};
    Tables t;
    t.s.meta = b.meta;
    cpn_ring(t, n);
    b.structure = t.s;
    b.complex = complex_of(b.meta, {});
    b.expected.point_k = 2 * n + 2;
    return b;
}

// ---- RP^n in CP^n ----------------------------------------------------------

InstanceBundle rpn(int n) {
    InstanceBundle b;
    b.name = "rpn(" + std::to_string(n) + ")";
    const int N = n + 1;
    b.meta = {n, N, n + 1, Rational(1, 2 * n + 2), 2 * n, Coeffs::Z2};
    Tables t;
    t.s.meta = b.meta;
    auto a = [](int i) { return "a" + std::to_string(i); };
    for (int i = 0; i <= n; ++i) t.lag(a(i), i);
    cpn_ring(t, n);
    // a_k with k < 0 stands for a_{k+N} t.
    auto lift = [&](int k) {
        long long p = 0;
        while (k < 0) k += N, ++p;
        return std::make_pair(k, p);
    };
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            auto [k, p] = lift(i + j - n);
            t.prod(a(i), a(j), a(k), p);
        }
    for (int m = 0; m <= n; ++m)
        for (int i = 0; i <= n; ++i) {
            auto [k, p] = lift(i - 2 * (n - m));
            t.mod("h" + std::to_string(2 * m), a(i), a(k), p);
        }
    t.s.eps = {t.s.lag(a(0))};
    auto h = [](int j) { return "h" + std::to_string(j); };
    for (int i = 0; i <= n; ++i) {
        if (i % 2 == 0) t.incl(a(i), h(i), 0);
        if (i % 2 == 1 && n % 2 == 0) t.incl(a(i), h(i + n + 1), 1);
        if (i % 2 == 0 && n % 2 == 1 && i + n + 1 <= 2 * n) t.incl(a(i), h(i + n + 1), 1);
    }
    t.s.unit_lag = t.s.lag(a(n));
    b.structure = t.s;
    b.complex = complex_of(b.meta, t.s.lag_basis);
    b.complex.fundamental = b.complex.index_of(a(n));
    b.complex.point = b.complex.index_of(a(0));
    auto& e = b.expected;
    e.status = Status::Wide;
    e.l = 1;
    e.incl = t.s.incl;
    e.qh_rank = static_cast<std::size_t>(n + 1);
    e.point_k = 2 * n + 2;
    e.divisibility = Divisibility::NotDivisible;
    e.bounds = wide_bounds(b.meta, 2 * n + 2, 1, std::nullopt);
    return b;
}

// ---- Clifford tori ---------------------------------------------------------

InstanceBundle clifford2() {
    InstanceBundle b;
    b.name = "clifford2";
    b.meta = {2, 2, 3, Rational(1, 6), 4, Coeffs::Z2};
    Tables t;
    t.s.meta = b.meta;
    for (auto [id, d] : {std::pair{"m", 0}, {"a", 1}, {"b", 1}, {"w", 2}}) t.lag(id, d);
    t.amb("pt", 0);
    t.amb("h", 2);
    t.amb("M", 4);
    t.ring("h", "h", "pt", 0);
    t.ring("h", "pt", "M", 1);
    t.ring("pt", "h", "M", 1);
    t.ring("pt", "pt", "h", 1);
    for (std::string x : {"pt", "h", "M"}) {
        t.ring("M", x, x, 0);
        if (x != "M") t.ring(x, "M", x, 0);
    }
    t.pair("pt", "M");
    t.pair("h", "h");
    for (std::string x : {"m", "a", "b", "w"}) {
        t.prod("w", x, x, 0);
        if (x != "w") t.prod(x, "w", x, 0);
    }
    t.prod("a", "b", "m", 0);
    t.prod("a", "b", "w", 1);
    t.prod("b", "a", "m", 0);
    t.prod("a", "a", "w", 1);
    t.prod("b", "b", "w", 1);
    t.prod("m", "m", "m", 1);
    t.prod("m", "m", "w", 2);
    t.prod("m", "a", "b", 1);
    t.prod("m", "b", "a", 1);
    t.prod("m", "b", "b", 1);
    t.prod("a", "m", "a", 1);
    t.prod("a", "m", "b", 1);
    t.prod("b", "m", "a", 1);
    for (std::string x : {"m", "a", "b", "w"}) {
        t.mod("M", x, x, 0);
        t.mod("h", x, x, 1);
        t.mod("pt", x, x, 2);
    }
    t.s.eps = {t.s.lag("m")};
    t.incl("m", "pt", 0);
    t.incl("m", "h", 1);
    t.incl("m", "M", 2);
    t.s.unit_lag = t.s.lag("w");
    t.s.unit_amb = t.s.amb("M");
    t.s.point = t.s.amb("pt");
    t.s.hyperplane = t.s.amb("h");
    b.structure = t.s;
    b.complex = complex_of(b.meta, t.s.lag_basis);
    b.complex.fundamental = b.complex.index_of("w");
    b.complex.point = b.complex.index_of("m");
    b.disk_data = DiskClassData{2, {{"c0", {1, 1}, 1}, {"c1", {1, 0}, 1}, {"c2", {0, 1}, 1}}};
    auto& e = b.expected;
    e.status = Status::Wide;
    e.l = 1;
    e.incl = t.s.incl;
    e.d1 = std::vector<int>{0, 0};
    e.qh_rank = 4;
    e.point_k = 6;
    e.divisibility = Divisibility::NotDivisible;
    e.bounds = wide_bounds(b.meta, 6, 2, 2);
    return b;
}

// Torus T^n with the exterior basis; tables beyond the unit are not tabulated.
InstanceBundle cliffordn(int n) {
    InstanceBundle b;
    b.name = "cliffordn(" + std::to_string(n) + ")";
    b.meta = {n, 2, n + 1, Rational(1, 2 * n + 2), 2 * n, Coeffs::Z2};
    Tables t;
    t.s.meta = b.meta;
    const unsigned full = (1u << n) - 1;
    for (unsigned S = 0; S <= full; ++S) {
        std::string id = S == 0 ? "L" : "e";
        for (int i = 0; i < n; ++i)
            if (S >> i & 1) id += std::to_string(i + 1);
        t.lag(id, n - std::popcount(S));
    }
    t.s.eps = {full};
    t.s.unit_lag = 0;
    b.structure = t.s;
    b.complex = complex_of(b.meta, t.s.lag_basis);
    b.complex.fundamental = 0;
    b.complex.point = full;
    DiskClassData d;
    d.h1_rank = static_cast<std::size_t>(n);
    d.classes.push_back({"c0", std::vector<int>(static_cast<std::size_t>(n), 1), 1});
    for (int i = 0; i < n; ++i) {
        std::vector<int> v(static_cast<std::size_t>(n), 0);
        v[static_cast<std::size_t>(i)] = 1;
        d.classes.push_back({"c" + std::to_string(i + 1), v, 1});
    }
    b.disk_data = d;
    b.expected.status = Status::Wide;
    b.expected.l = 1;
    b.expected.d1 = std::vector<int>(static_cast<std::size_t>(n), 0);
    b.expected.qh_rank = std::size_t{1} << n;
    return b;
}

// ---- quadric Q^n -----------------------------------------------------------

// Rational model Q[h, e, s] / (h^{n+1} = 4hs, he = 0, e^2 = (-1)^k (h^n - 4s)),
// k = n/2, with e present only for even n. Keys are (h power, e power, s power).
class QuadricModel {
public:
    using Key = std::tuple<int, int, int>;
    using Poly = std::map<Key, Rational>;

    explicit QuadricModel(int n) : n_(n), even_(n % 2 == 0), k_(n / 2) {}

    Poly mul(const Poly& x, const Poly& y) const {
        Poly out;
        for (const auto& [a, ca] : x)
            for (const auto& [b, cb] : y) {
                auto [i1, e1, j1] = a;
                auto [i2, e2, j2] = b;
                add_reduced(out, i1 + i2, e1 + e2, j1 + j2, ca * cb);
            }
        return out;
    }

    // Basis id, degree and model image.
    std::vector<std::tuple<std::string, int, Poly>> basis() const {
        std::vector<std::tuple<std::string, int, Poly>> out;
        out.push_back({"p", 0, Poly{{{n_, 0, 0}, Rational(1, 2)}, {{0, 0, 1}, Rational(-1)}}});
        for (int j = 1; 2 * j < n_; ++j) out.push_back({"l" + std::to_string(j), 2 * j, Poly{{{n_ - j, 0, 0}, Rational(1, 2)}}});
        if (even_) {
            out.push_back({"a", n_, Poly{{{k_, 0, 0}, Rational(1, 2)}, {{0, 1, 0}, Rational(1, 2)}}});
            out.push_back({"b", n_, Poly{{{k_, 0, 0}, Rational(1, 2)}, {{0, 1, 0}, Rational(-1, 2)}}});
        }
        for (int i = (n_ - 1) / 2; i >= 1; --i)
            out.push_back({i == 1 ? "h" : "h" + std::to_string(i), 2 * n_ - 2 * i, Poly{{{i, 0, 0}, Rational(1)}}});
        out.push_back({"u", 2 * n_, Poly{{{0, 0, 0}, Rational(1)}}});
        return out;
    }

    // Normal form -> (id, s power) -> coefficient in the integral basis.
    std::map<std::pair<std::string, int>, Rational> to_basis(const Poly& x) const {
        std::map<std::pair<std::string, int>, Rational> out;
        auto put = [&](const std::string& id, int j, const Rational& c) {
            auto& v = out[{id, j}];
            v += c;
            if (v == 0) out.erase({id, j});
        };
        for (const auto& [key, c] : x) {
            auto [i, e, j] = key;
            if (e == 1) {
                put("a", j, c);
                put("b", j, -c);
            } else if (i == 0) {
                put("u", j, c);
            } else if (2 * i < n_) {
                put(i == 1 ? "h" : "h" + std::to_string(i), j, c);
            } else if (2 * i == n_) {
                put("a", j, c);
                put("b", j, c);
            } else if (i < n_) {
                put("l" + std::to_string(n_ - i), j, 2 * c);
            } else {
                put("p", j, 2 * c);
                put("u", j + 1, 2 * c);
            }
        }
        return out;
    }

private:
    void add_reduced(Poly& out, int i, int e, int j, const Rational& c) const {
        if (c == 0) return;
        if (e >= 1 && i >= 1) return;
        if (e >= 2) {
            const Rational sg = k_ % 2 == 0 ? 1 : -1;
            add_reduced(out, n_, e - 2, j, c * sg);
            add_reduced(out, 0, e - 2, j + 1, c * sg * -4);
            return;
        }
        if (i > n_) {
            add_reduced(out, i - n_, e, j + 1, c * 4);
            return;
        }
        auto& v = out[{i, e, j}];
        v += c;
        if (v == 0) out.erase({i, e, j});
    }

    int n_;
    bool even_;
    int k_;
};

void quadric_ring(Tables& t, int n) {
    QuadricModel Q(n);
    auto basis = Q.basis();
    for (const auto& [id, d, poly] : basis) t.amb(id, d);
    for (const auto& [x, dx, px] : basis)
        for (const auto& [y, dy, py] : basis)
            for (const auto& [key, c] : Q.to_basis(Q.mul(px, py))) {
                if (boost::multiprecision::denominator(c) != 1)
                    throw InvariantError("quadric product " + x + "*" + y + " is not integral");
                t.ring(x, y, key.first, key.second, boost::multiprecision::numerator(c));
            }
    t.pair("u", "p");
    for (int j = 1; 2 * j < n; ++j) t.pair(j == 1 ? "h" : "h" + std::to_string(j), "l" + std::to_string(j));
    if (n % 2 == 0) {
        if ((n / 2) % 2 == 1) {
            t.pair("a", "b");
        } else {
            t.pair("a", "a");
            t.pair("b", "b");
        }
    }
    t.s.unit_amb = t.s.amb("u");
    t.s.point = t.s.amb("p");
    if (n >= 3) t.s.hyperplane = t.s.amb("h");
}

InstanceBundle quadric_ambient(int n) {
    InstanceBundle b;
    b.name = "quadric_ambient(" + std::to_string(n) + ")";
    b.meta = {n, 2, n, Rational(1, 2 * n), 2 * n, Coeffs::Z};
    Tables t;
    t.s.meta = b.meta;
    quadric_ring(t, n);
    b.structure = t.s;
    b.complex = complex_of(b.meta, {});
    b.expected.point_k = 4 * n;
    return b;
}

// Lagrangian sphere S^n in Q^n, n even, N_L = 2n, so s = t.
InstanceBundle quadric_sphere_signed(int n) {
    InstanceBundle b;
    b.name = "quadric_sphere_signed(" + std::to_string(n) + ")";
    b.meta = {n, 2 * n, n, Rational(1, 2 * n), 2 * n, Coeffs::Z};
    Tables t;
    t.s.meta = b.meta;
    const std::string a0 = "alpha0", an = "alpha" + std::to_string(n);
    t.lag(a0, 0);
    t.lag(an, n);
    quadric_ring(t, n);
    const int k = n / 2;
    const Int c = k % 2 == 1 ? 1 : -1;  // (-1)^{k+1}
    t.prod(an, an, an, 0);
    t.prod(an, a0, a0, 0);
    t.prod(a0, an, a0, 0);
    t.prod(a0, a0, an, 1, c);
    for (const auto& x : {a0, an}) {
        t.mod("u", x, x, 0);
        t.mod("p", x, x, 1, -1);
    }
    t.mod("a", an, a0, 0);
    t.mod("a", a0, an, 1, c);
    t.mod("b", an, a0, 0, -1);
    t.mod("b", a0, an, 1, -c);
    t.s.eps = {t.s.lag(a0)};
    t.incl(a0, "p", 0);
    t.incl(a0, "u", 1, -1);
    t.incl(an, "b", 0, k % 2 == 1 ? 1 : -1);
    t.incl(an, "a", 0, k % 2 == 1 ? -1 : 1);
    t.s.unit_lag = t.s.lag(an);
    b.structure = t.s;
    b.complex = complex_of(b.meta, t.s.lag_basis);
    b.complex.fundamental = b.complex.index_of(an);
    b.complex.point = b.complex.index_of(a0);
    auto& e = b.expected;
    e.status = Status::Wide;
    e.l = n;
    e.incl = t.s.incl;
    e.qh_rank = 2;
    e.point_k = 4 * n;
    e.divisibility = Divisibility::Divisible;
    e.bounds = wide_bounds(b.meta, 4 * n, 1, 1);
    return b;
}

InstanceBundle quadric_sphere(int n) {
    InstanceBundle b = quadric_sphere_signed(n);
    b.name = "quadric_sphere(" + std::to_string(n) + ")";
    b.meta.coeffs = Coeffs::Z2;
    b.structure = b.structure.reduced_mod2();
    b.expected.incl = b.structure.incl;
    return b;
}

// ---- synthetic narrow torus ------------------------------------------------

InstanceBundle narrow_torus() {
    InstanceBundle b;
    b.name = "narrow_torus";
    b.meta = {2, 2, 3, Rational(1, 6), 4, Coeffs::Z2};
    Tables t;
    t.s.meta = b.meta;
    for (auto [id, d] : {std::pair{"m", 0}, {"a", 1}, {"b", 1}, {"w", 2}}) t.lag(id, d);
    for (std::string x : {"m", "a", "b", "w"}) {
        t.prod("w", x, x, 0);
        if (x != "w") t.prod(x, "w", x, 0);
    }
    t.prod("a", "b", "m", 0);
    t.prod("b", "a", "m", 0);
    t.s.eps = {t.s.lag("m")};
    t.s.unit_lag = t.s.lag("w");
    b.structure = t.s;
    b.complex = complex_of(b.meta, t.s.lag_basis);
    auto& c = b.complex;
    c.toggle_term(*c.index_of("m"), *c.index_of("a"), 1);
    c.toggle_term(*c.index_of("b"), *c.index_of("w"), 1);
    c.fundamental = c.index_of("w");
    c.point = c.index_of("m");
    auto& e = b.expected;
    e.status = Status::Narrow;
    e.l = 1;
    e.q = 1;
    e.K = 2;
    e.qh_rank = 0;
    e.divisibility = Divisibility::Unknown;
    e.bounds["w(L) <= 2*K*eta"] = Rational(4) * b.meta.eta;
    e.bounds["w(L) <= 2*(n+1)*eta"] = Rational(6) * b.meta.eta;
    return b;
}

std::string stem_of(const std::string& name) {
    auto open = name.find('(');
    if (open == std::string::npos) return name;
    return name.substr(0, open) + "_" + name.substr(open + 1, name.size() - open - 2);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Write the shipped instance bundles"};
    std::string dir = PEARL_FIXTURE_DIR;
    bool check = false;
    app.add_option("dir", dir, "output directory");
    app.add_flag("--check", check, "compare with the files on disk");
    CLI11_PARSE(app, argc, argv);

    std::vector<InstanceBundle> all;
    for (int n = 2; n <= 6; ++n) all.push_back(cpn(n));
    for (int n = 2; n <= 6; ++n) all.push_back(rpn(n));
    all.push_back(clifford2());
    for (int n = 2; n <= 5; ++n) all.push_back(cliffordn(n));
    for (int n = 2; n <= 6; ++n) all.push_back(quadric_ambient(n));
    for (int n : {2, 4, 6}) all.push_back(quadric_sphere(n));
    for (int n : {2, 4, 6}) all.push_back(quadric_sphere_signed(n));
    all.push_back(narrow_torus());

    std::filesystem::create_directories(dir);
    int stale = 0;
    for (const auto& b : all) {
        const auto path = std::filesystem::path(dir) / (stem_of(b.name) + ".json");
        const std::string text = serialize_bundle(b);
        if (check) {
            std::ifstream in(path, std::ios::binary);
            std::ostringstream ss;
            ss << in.rdbuf();
            if (ss.str() != text) {
                std::cerr << "stale: " << path.string() << "\n";
                ++stale;
            }
        } else {
            std::ofstream(path, std::ios::binary) << text;
        }
    }
    if (!check) std::cout << "wrote " << all.size() << " bundles to " << dir << "\n";
    return stale ? 1 : 0;
}
