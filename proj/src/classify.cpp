#include "pearl/classify.hpp"

#include "pearl/errors.hpp"
#include "pearl/gf2.hpp"
#include "pearl/qlinalg.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace pearl {

std::string to_string(Status s) {
    switch (s) {
        case Status::Wide: return "wide";
        case Status::Narrow: return "narrow";
        case Status::Undecided: return "undecided";
    }
    return "?";
}

std::string to_string(Clause c) { return c == Clause::Boundary ? "boundary" : "product"; }

std::string to_string(Divisibility d) {
    switch (d) {
        case Divisibility::NotDivisible: return "not-divisible";
        case Divisibility::Divisible: return "divisible";
        case Divisibility::Unknown: return "unknown";
    }
    return "?";
}

std::optional<long long> uniruling_K(int n, int l, int N_L) {
    if (N_L < l + 1) return std::max(l + 1, n + 1 - N_L);
    if (N_L == l + 1) return l + 1;
    return std::nullopt;
}

namespace {

void check_l(const PearlComplex& c, int l) {
    if (l < 0 || l > c.n)
        throw ArgumentError("l must lie in [0, n], got " + std::to_string(l));
    if (!c.fundamental) throw ArgumentError("no fundamental class marked");
}

// Product on cmin after checking the chain-level Leibniz rule.
BilinearOp checked_product(const MinimalModel& m, const BilinearOp& prod) {
    if (auto bad = leibniz_defect(prod, m.source))
        throw InvariantError("product is not a derivation for the differential at (" +
                             m.source.basis[bad->first].id + ", " + m.source.basis[bad->second].id + ")");
    return transport_bilinear(m, prod);
}

bool has(const std::vector<std::size_t>& v, std::size_t x) {
    return std::binary_search(v.begin(), v.end(), x);
}

}  // namespace

Verdict dichotomy_decide(const MinimalModel& m, const BilinearOp& prod, int l) {
    const auto& c = m.cmin;
    check_l(c, l);
    checked_product(m, prod);
    const int n = c.n, N = c.N_L();
    const bool delta_zero = is_wide(m);
    const auto K = uniruling_K(n, l, N);
    Verdict v;

    if (N > l + 1) {
        if (!delta_zero)
            throw InvariantError("differential of the minimal model is nonzero although N_L > l + 1");
        v.status = Status::Wide;
        v.by_theorem = true;
        v.reason = "N_L > l + 1 forces the minimal differential to vanish";
        return v;
    }
    if (N == l + 1) {
        v.by_theorem = true;
        if (delta_zero) {
            v.status = Status::Wide;
            v.reason = "N_L = l + 1 and the minimal differential vanishes";
            return v;
        }
        auto cert = is_narrow(m);
        if (!cert || cert->q != 1)
            throw InvariantError("N_L = l + 1 with nonzero differential but [L] t is not a boundary");
        v.status = Status::Narrow;
        v.certificate = Certificate{cert->x, 1, K};
        v.reason = "N_L = l + 1 and [L] t is a boundary";
        return v;
    }
    v.by_theorem = false;
    if (delta_zero) {
        v.status = Status::Wide;
        v.reason = "direct: minimal differential vanishes";
    } else if (auto cert = is_narrow(m)) {
        v.status = Status::Narrow;
        std::optional<long long> k;
        if (K && cert->q * N <= *K) k = K;
        v.certificate = Certificate{cert->x, cert->q, k};
        v.reason = "direct: [L] is torsion";
    } else {
        v.status = Status::Undecided;
        v.reason = "N_L <= l and the direct computation is inconclusive";
    }
    return v;
}

BoundaryOrder boundary_order_search(const MinimalModel& m, const BilinearOp& prod, int l) {
    const auto& c = m.cmin;
    check_l(c, l);
    BilinearOp op = checked_product(m, prod);
    if (!is_narrow(m)) throw InvariantError("no witness: instance is not narrow");
    const int n = c.n, N = c.N_L();
    const auto K = uniruling_K(n, l, N);
    if (!K) throw InvariantError("no witness: N_L > l + 1 but the instance is narrow");
    const std::size_t L = *c.fundamental;
    for (long long q = 1; q * N <= *K; ++q) {
        for (std::size_t x = 0; x < c.size(); ++x) {
            if (c.degree(x) != n + 1 - q * N) continue;
            for (const auto& t : c.d[x])
                if (t.target == L) return {q, Clause::Boundary, x, 0, 0, *K};
        }
        for (std::size_t y = 0; y < c.size(); ++y)
            for (std::size_t z = 0; z < c.size(); ++z) {
                if (c.degree(y) + c.degree(z) != 2 * n - q * N) continue;
                auto it = op.table.find({y, z});
                if (it != op.table.end() && has(it->second, L))
                    return {q, Clause::Product, 0, y, z, *K};
            }
    }
    throw InvariantError("no witness with 0 < q N_L <= K = " + std::to_string(*K));
}

D1Result d1_class(const DiskClassData& d) {
    D1Result r;
    r.d1.assign(d.h1_rank, 0);
    for (const auto& a : d.classes) {
        if (a.boundary.size() != d.h1_rank)
            throw ArgumentError("disk class " + a.name + ": boundary has " + std::to_string(a.boundary.size()) +
                                " entries, expected " + std::to_string(d.h1_rank));
        if ((a.ev_degree & 1) == 0) continue;
        for (std::size_t i = 0; i < d.h1_rank; ++i) r.d1[i] ^= (a.boundary[i] & 1);
    }
    r.status = std::any_of(r.d1.begin(), r.d1.end(), [](int b) { return b != 0; }) ? Status::Narrow
                                                                                     : Status::Undecided;
    return r;
}

PearlComplex d1_model(const DiskClassData& d) {
    const auto D = d1_class(d).d1;
    const int r = static_cast<int>(d.h1_rank);
    if (r > 20) throw ArgumentError("d1_model: h1_rank too large");
    PearlComplex c;
    c.ring = RingDescriptor::lambda(2, std::nullopt, Coeffs::Z2, true);
    c.n = r;
    const unsigned full = (1u << r) - 1;
    for (unsigned S = 0; S <= full; ++S) {
        std::string id = S == 0 ? "L" : "e";
        for (int i = 0; i < r; ++i)
            if (S >> i & 1) id += std::to_string(i + 1);
        c.add_generator(id, r - std::popcount(S));
    }
    c.fundamental = 0;
    c.point = full;
    for (unsigned S = 0; S <= full; ++S)
        for (int i = 0; i < r; ++i)
            if ((S >> i & 1) && D[static_cast<std::size_t>(i)]) c.toggle_term(S, S & ~(1u << i), 1);
    return c;
}

std::vector<std::vector<int>> betti_from_periodicity(int n, int N_L, int period, const BettiConstraints& c) {
    if (n < 1 || N_L < 1 || c.cap < 1) throw ArgumentError("betti_from_periodicity: need n, N_L, cap >= 1");
    const int free_slots = (n - 1) / 2 + ((n - 1) % 2);  // b_1 .. b_{ceil((n-1)/2)}
    double space = 1;
    for (int i = 0; i < free_slots; ++i) space *= c.cap + 1;
    if (space > 1e7) throw ArgumentError("betti_from_periodicity: search space too large");

    std::vector<std::vector<int>> out;
    std::vector<int> b(static_cast<std::size_t>(n + 1), 0);
    b[0] = b[static_cast<std::size_t>(n)] = 1;
    auto residue_ranks = [&] {
        std::vector<int> r(static_cast<std::size_t>(N_L), 0);
        for (int j = 0; j <= n; ++j) r[static_cast<std::size_t>(residue(j, N_L))] += b[static_cast<std::size_t>(j)];
        return r;
    };
    auto accept = [&] {
        for (const auto& [deg, val] : c.fixed) {
            int got = deg >= 0 && deg <= n ? b[static_cast<std::size_t>(deg)] : 0;
            if (got != val) return false;
        }
        auto r = residue_ranks();
        for (int i = 0; i < N_L; ++i)
            if (r[static_cast<std::size_t>(i)] != r[static_cast<std::size_t>(residue(i + period, N_L))]) return false;
        return true;
    };
    std::vector<int> slot(static_cast<std::size_t>(free_slots), 0);
    while (true) {
        for (int i = 0; i < free_slots; ++i) {
            b[static_cast<std::size_t>(i + 1)] = slot[static_cast<std::size_t>(i)];
            b[static_cast<std::size_t>(n - 1 - i)] = slot[static_cast<std::size_t>(i)];
        }
        if (accept()) out.push_back(b);
        int k = 0;
        while (k < free_slots && ++slot[static_cast<std::size_t>(k)] > c.cap) slot[static_cast<std::size_t>(k++)] = 0;
        if (k == free_slots) break;
    }
    if (out.empty())
        throw InvariantError("no Betti vector is consistent with period " + std::to_string(period));
    return out;
}

namespace {

// Writes sum_i c_i v_i = target with v_i ambient combinations; returns c or nullopt.
std::optional<std::vector<Int>> solve_combination(Coeffs coeffs, const std::vector<Comb>& v, const Comb& target) {
    std::map<std::pair<std::size_t, long long>, std::size_t> row;
    auto index = [&](const Comb& x) {
        for (const auto& [key, val] : x.terms()) row.try_emplace(key, row.size());
    };
    for (const auto& x : v) index(x);
    index(target);
    const std::size_t R = row.size(), C = v.size();
    if (coeffs == Coeffs::Z2) {
        gf2::BitMatrix A(R, C);
        gf2::BitVec b(R);
        for (std::size_t j = 0; j < C; ++j)
            for (const auto& [key, val] : v[j].terms())
                if (val % 2 != 0) A.set(row.at(key), j);
        for (const auto& [key, val] : target.terms())
            if (val % 2 != 0) b.set(row.at(key));
        auto x = gf2::solve(A, b);
        if (!x) return std::nullopt;
        std::vector<Int> out(C, 0);
        for (auto j : x->ones()) out[j] = 1;
        return out;
    }
    qla::Matrix A(R, C);
    std::vector<Rational> b(R, Rational(0));
    for (std::size_t j = 0; j < C; ++j)
        for (const auto& [key, val] : v[j].terms()) A.at(row.at(key), j) = Rational(val);
    for (const auto& [key, val] : target.terms()) b[row.at(key)] = Rational(val);
    auto x = qla::solve(A, b);
    if (!x) return std::nullopt;
    std::vector<Int> out(C, 0);
    for (std::size_t j = 0; j < C; ++j) {
        if (!qla::is_integral((*x)[j])) return std::nullopt;
        out[j] = boost::multiprecision::numerator((*x)[j]);
    }
    return out;
}

std::optional<long long> lowest_power(const Comb& c) {
    std::optional<long long> lo;
    for (const auto& [key, val] : c.terms())
        if (!lo || key.second < *lo) lo = key.second;
    return lo;
}

}  // namespace

std::optional<PointInverse> point_invertibility_order(const QuantumStructure& S, std::optional<int> s_bound) {
    if (!S.point || !S.unit_amb || !S.meta.C_M) return std::nullopt;
    const long long twoC = 2LL * *S.meta.C_M;
    const long long top = S.meta.ambient_dim;  // 2 n_M
    const int bound = s_bound ? *s_bound : static_cast<int>(2 * top / twoC + 1);
    const Comb pt = Comb::unit(S.meta.coeffs, *S.point);
    for (int j = 1; j <= bound; ++j) {
        const long long want = 2 * top - twoC * j;  // |a| in Gamma degrees
        std::vector<Comb> cols;
        std::vector<Comb> gens;
        for (std::size_t g = 0; g < S.amb_basis.size(); ++g) {
            long long num = S.amb_basis[g].degree - want;
            if (num < 0 || num % twoC != 0) continue;
            Comb a = Comb::unit(S.meta.coeffs, g, num / twoC);
            gens.push_back(a);
            cols.push_back(amb_mul(S, pt, a));
        }
        if (gens.empty()) continue;
        auto sol = solve_combination(S.meta.coeffs, cols, Comb::unit(S.meta.coeffs, *S.unit_amb, j));
        if (!sol) continue;
        PointInverse r{S.zero(), twoC * j};
        for (std::size_t i = 0; i < gens.size(); ++i)
            if ((*sol)[i] != 0) r.a += gens[i].scaled((*sol)[i]);
        return r;
    }
    return std::nullopt;
}

WidthInputs width_inputs(const QuantumStructure& S) {
    WidthInputs in;
    if (auto p = point_invertibility_order(S)) in.k = p->k;
    if (S.point) {
        const Comb pt = Comb::unit(S.meta.coeffs, *S.point);
        if (S.unit_lag) {
            const Comb z = qmod(S, pt, Comb::unit(S.meta.coeffs, *S.unit_lag));
            in.i0 = lowest_power(z);
        }
        if (S.eps.size() == 1) {
            const std::size_t m = S.eps.front();
            const Comb z = qmod(S, pt, Comb::unit(S.meta.coeffs, m));
            const auto poly = z.coeff_poly(m);
            if (!poly.empty()) in.j = poly.begin()->first;
        }
    }
    return in;
}

std::vector<NamedBound> width_bounds(const InstanceMeta& meta, Status status, const WidthInputs& in) {
    const Rational eta = meta.eta;
    const long long N = meta.N_L;
    std::vector<NamedBound> out;
    if (status == Status::Undecided) throw ArgumentError("width bounds need a wide or narrow verdict");
    if (status == Status::Narrow) {
        if (!in.K) throw ArgumentError("narrow width bounds need the uniruling order K");
        out.push_back({"w(L)", "2*K*eta", Rational(2 * *in.K) * eta});
        out.push_back({"w(L)", "2*(n+1)*eta", Rational(2 * (meta.n + 1)) * eta});
        return out;
    }
    if (in.k) {
        const long long k = *in.k;
        out.push_back({"w(M,L:v)", "k*eta", Rational(k) * eta});
        out.push_back({"w(M\\L)", "(k-N_L)*eta", Rational(k - N) * eta});
        out.push_back({"w(M\\L)", "floor(2n/N_L)*N_L*eta", Rational((2LL * meta.n / N) * N) * eta});
        out.push_back({"w(L)+2w(M\\L)", "2*k*eta", Rational(2 * k) * eta});
    }
    if (in.i0) out.push_back({"w(M\\L)", "i0*N_L*eta", Rational(*in.i0 * N) * eta});
    if (in.j) out.push_back({"w(M,L:(r;rho))", "j*N_L*eta", Rational(*in.j * N) * eta});
    return out;
}

DivisibilityResult divisibility_test(const QuantumStructure& S) {
    if (!S.unit_lag) return {Divisibility::Unknown, "[L] = 0"};
    if (!S.point) return {Divisibility::Unknown, "no point class"};
    if (!S.meta.C_M) return {Divisibility::Unknown, "C_M is infinite"};
    const Comb z = qmod(S, Comb::unit(S.meta.coeffs, *S.point), Comb::unit(S.meta.coeffs, *S.unit_lag));
    if (z.is_zero()) return {Divisibility::Unknown, "[pt] * [L] = 0"};
    const auto deg = lag_degree(S, z);
    if (!deg) return {Divisibility::Unknown, "[pt] * [L] is not homogeneous"};
    const long long twoC = 2LL * *S.meta.C_M;
    if (*deg + twoC > S.meta.n)
        return {Divisibility::NotDivisible,
                "a quotient would have degree " + std::to_string(*deg + twoC) + " > n"};
    const long long p = S.meta.s_to_t();
    if (*lowest_power(z) >= p) return {Divisibility::Divisible, "[pt] * [L] = t^" + std::to_string(p) + " y"};
    return {Divisibility::NotDivisible, "a t-power below " + std::to_string(p) + " occurs in [pt] * [L]"};
}

std::string JCircI::str(const QuantumStructure& S0, const QuantumStructure& S1) const {
    std::ostringstream os;
    for (std::size_t x = 0; x < image.size(); ++x) {
        os << "j(i(" << S0.lag_basis[x].id << ")) = ";
        if (image[x].empty()) os << "0";
        bool first = true;
        for (const auto& [y, c] : image[x]) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c.str() << ") " << S1.lag_basis[y].id;
        }
        os << "\n";
    }
    return os.str();
}

JCircI j_circ_i(const QuantumStructure& S0, const QuantumStructure& S1) {
    if (S0.amb_basis != S1.amb_basis || S0.amb_ring != S1.amb_ring || S0.meta.C_M != S1.meta.C_M ||
        S0.meta.coeffs != S1.meta.coeffs)
        throw ArgumentError("j o i needs both structures over the same ambient ring");
    JCircI r;
    r.ring = RingDescriptor{RingKind::Lambda01, S0.meta.N_L, S1.meta.N_L, S0.meta.C_M, S0.meta.coeffs};
    r.image.resize(S0.lag_basis.size());
    if (!S1.unit_lag) return r;
    const auto incl = S0.incl.empty() ? inclusion_from_module(S0) : S0.incl;
    const Comb L1 = Comb::unit(S1.meta.coeffs, *S1.unit_lag);
    for (const auto& [x, ix] : incl) {
        auto& row = r.image[x];
        for (const auto& [key, c] : ix.terms()) {
            const Comb jh = qmod(S1, Comb::unit(S1.meta.coeffs, key.first), L1);
            for (const auto& [k2, c2] : jh.terms()) {
                auto it = row.try_emplace(k2.first, Poly01(r.ring)).first;
                it->second += Poly01::monomial(r.ring, Mono01{key.second, k2.second}, c * c2);
            }
        }
        for (auto it = row.begin(); it != row.end();)
            it = it->second.is_zero() ? row.erase(it) : std::next(it);
        if (!row.empty()) r.nonzero = true;
    }
    return r;
}

}  // namespace pearl
