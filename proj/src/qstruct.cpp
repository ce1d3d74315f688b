#include "pearl/qstruct.hpp"

#include "pearl/errors.hpp"
#include "pearl/gf2.hpp"
#include "pearl/qlinalg.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace pearl {

int InstanceMeta::s_to_t() const {
    if (!C_M) throw std::domain_error("C_M is infinite");
    return 2 * *C_M / N_L;
}

namespace {

Int norm(const Int& c, Coeffs k) {
    if (k == Coeffs::Z) return c;
    Int r = c % 2;
    return r < 0 ? Int(-r) : r;
}

}  // namespace

Comb Comb::unit(Coeffs c, std::size_t idx, long long power, const Int& coeff) {
    Comb r(c);
    r.add(idx, power, coeff);
    return r;
}

void Comb::add(std::size_t idx, long long power, const Int& coeff) {
    Int v = norm(coeff, coeffs_);
    if (v == 0) return;
    auto key = std::make_pair(idx, power);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, v);
        return;
    }
    it->second = norm(it->second + v, coeffs_);
    if (it->second == 0) terms_.erase(it);
}

// An empty combination takes the coefficients of the operand.
Comb& Comb::operator+=(const Comb& o) {
    if (terms_.empty()) coeffs_ = o.coeffs_;
    for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
    return *this;
}

Comb& Comb::operator-=(const Comb& o) {
    if (terms_.empty()) coeffs_ = o.coeffs_;
    for (const auto& [k, c] : o.terms_) add(k.first, k.second, -c);
    return *this;
}

Comb Comb::scaled(const Int& c) const {
    Comb r(coeffs_);
    for (const auto& [k, v] : terms_) r.add(k.first, k.second, v * c);
    return r;
}

Comb Comb::shifted(long long p) const {
    Comb r(coeffs_);
    for (const auto& [k, v] : terms_) r.add(k.first, k.second + p, v);
    return r;
}

Comb Comb::reduced_mod2() const {
    Comb r(Coeffs::Z2);
    for (const auto& [k, v] : terms_) r.add(k.first, k.second, v);
    return r;
}

Int Comb::coeff(std::size_t idx, long long power) const {
    auto it = terms_.find({idx, power});
    return it == terms_.end() ? Int(0) : it->second;
}

std::map<long long, Int> Comb::coeff_poly(std::size_t idx) const {
    std::map<long long, Int> p;
    for (const auto& [k, v] : terms_)
        if (k.first == idx) p[k.second] = v;
    return p;
}

std::string Comb::str(const std::vector<BasisElement>& basis, const std::string& var) const {
    if (terms_.empty()) return "0";
    // Order by power, then basis position.
    std::vector<std::pair<std::pair<long long, std::size_t>, Int>> v;
    for (const auto& [k, c] : terms_) v.push_back({{k.second, k.first}, c});
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : v) {
        Int mag = c < 0 ? Int(-c) : c;
        if (first) os << (c < 0 ? "-" : "");
        else os << (c < 0 ? " - " : " + ");
        first = false;
        if (mag != 1) os << mag;
        os << basis[key.second].id;
        if (key.first == 1) os << " " << var;
        else if (key.first != 0) os << " " << var << "^" << key.first;
    }
    return os.str();
}

std::optional<std::size_t> QuantumStructure::lag_index(const std::string& id) const {
    for (std::size_t i = 0; i < lag_basis.size(); ++i)
        if (lag_basis[i].id == id) return i;
    return std::nullopt;
}

std::optional<std::size_t> QuantumStructure::amb_index(const std::string& id) const {
    for (std::size_t i = 0; i < amb_basis.size(); ++i)
        if (amb_basis[i].id == id) return i;
    return std::nullopt;
}

std::size_t QuantumStructure::lag(const std::string& id) const {
    auto i = lag_index(id);
    if (!i) throw ArgumentError("unknown Lagrangian class " + id);
    return *i;
}

std::size_t QuantumStructure::amb(const std::string& id) const {
    auto i = amb_index(id);
    if (!i) throw ArgumentError("unknown ambient class " + id);
    return *i;
}

Comb QuantumStructure::lag_elem(const std::string& id, long long power, const Int& c) const {
    return Comb::unit(meta.coeffs, lag(id), power, c);
}

Comb QuantumStructure::amb_elem(const std::string& id, long long power, const Int& c) const {
    return Comb::unit(meta.coeffs, amb(id), power, c);
}

QuantumStructure QuantumStructure::reduced_mod2() const {
    QuantumStructure r = *this;
    r.meta.coeffs = Coeffs::Z2;
    auto red = [](PairTable& t) {
        PairTable out;
        for (auto& [k, v] : t) {
            Comb c = v.reduced_mod2();
            if (!c.is_zero()) out[k] = c;
        }
        t = out;
    };
    red(r.prod);
    red(r.modact);
    red(r.amb_ring);
    std::map<std::size_t, Comb> inc;
    for (auto& [k, v] : r.incl) {
        Comb c = v.reduced_mod2();
        if (!c.is_zero()) inc[k] = c;
    }
    r.incl = inc;
    std::map<std::pair<std::size_t, std::size_t>, Int> pr;
    for (auto& [k, v] : r.amb_pairing) {
        Int m = norm(v, Coeffs::Z2);
        if (m != 0) pr[k] = m;
    }
    r.amb_pairing = pr;
    return r;
}

namespace {

Comb bilinear(const PairTable& table, Coeffs cf, const Comb& a, const Comb& b, long long a_factor) {
    Comb r(cf);
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms()) {
            auto it = table.find({ka.first, kb.first});
            if (it == table.end()) continue;
            r += it->second.shifted(ka.second * a_factor + kb.second).scaled(ca * cb);
        }
    return r;
}

}  // namespace

Comb qprod(const QuantumStructure& S, const Comb& x, const Comb& y) {
    return bilinear(S.prod, S.meta.coeffs, x, y, 1);
}

Comb qmod(const QuantumStructure& S, const Comb& a, const Comb& x) {
    long long f = 0;
    for (const auto& [k, c] : a.terms())
        if (k.second != 0) f = S.meta.s_to_t();
    return bilinear(S.modact, S.meta.coeffs, a, x, f);
}

Comb amb_mul(const QuantumStructure& S, const Comb& a, const Comb& b) {
    return bilinear(S.amb_ring, S.meta.coeffs, a, b, 1);
}

LaurentPoly augment(const QuantumStructure& S, const Comb& x) {
    LaurentPoly r(RingDescriptor::lambda(S.meta.N_L, S.meta.C_M, S.meta.coeffs));
    std::set<std::size_t> e(S.eps.begin(), S.eps.end());
    for (const auto& [k, c] : x.terms())
        if (e.count(k.first)) r += LaurentPoly::monomial(r.ring(), k.second, c);
    return r;
}

Comb qincl(const QuantumStructure& S, const Comb& x) {
    Comb r(S.meta.coeffs);
    for (const auto& [k, c] : x.terms()) {
        auto it = S.incl.find(k.first);
        if (it != S.incl.end()) r += it->second.shifted(k.second).scaled(c);
    }
    return r;
}

Comb amb_to_lambda(const QuantumStructure& S, const Comb& a) {
    Comb r(a.coeffs());
    for (const auto& [k, c] : a.terms())
        r.add(k.first, k.second == 0 ? 0 : k.second * S.meta.s_to_t(), c);
    return r;
}

std::optional<long long> lag_degree(const QuantumStructure& S, const Comb& x) {
    std::optional<long long> d;
    for (const auto& [k, c] : x.terms()) {
        long long v = S.lag_basis[k.first].degree - k.second * S.meta.N_L;
        if (d && *d != v) return std::nullopt;
        d = v;
    }
    return d;
}

std::optional<long long> amb_degree(const QuantumStructure& S, const Comb& a) {
    std::optional<long long> d;
    for (const auto& [k, c] : a.terms()) {
        long long v = S.amb_basis[k.first].degree;
        if (k.second != 0) v -= k.second * 2LL * *S.meta.C_M;
        if (d && *d != v) return std::nullopt;
        d = v;
    }
    return d;
}

Report degree_check(const QuantumStructure& S) {
    Report r;
    const int n = S.meta.n, N = S.meta.N_L, n2 = S.meta.ambient_dim;
    bool ok = true;
    auto fail = [&](const std::string& what, const std::string& detail) {
        ok = false;
        r.fail(what, detail);
    };
    for (const auto& [k, v] : S.prod) {
        long long want = S.lag_basis[k.first].degree + S.lag_basis[k.second].degree - n;
        for (const auto& [t, c] : v.terms())
            if (S.lag_basis[t.first].degree - t.second * N != want)
                fail("prod degree", S.lag_basis[k.first].id + " o " + S.lag_basis[k.second].id);
    }
    for (const auto& [k, v] : S.modact) {
        long long want = S.amb_basis[k.first].degree + S.lag_basis[k.second].degree - n2;
        for (const auto& [t, c] : v.terms())
            if (S.lag_basis[t.first].degree - t.second * N != want)
                fail("modact degree", S.amb_basis[k.first].id + " * " + S.lag_basis[k.second].id);
    }
    for (const auto& [k, v] : S.amb_ring) {
        long long want = S.amb_basis[k.first].degree + S.amb_basis[k.second].degree - n2;
        for (const auto& [t, c] : v.terms()) {
            if (t.second != 0 && !S.meta.C_M) {
                fail("amb_ring degree", "s power with C_M infinite");
                continue;
            }
            long long got = S.amb_basis[t.first].degree -
                            (t.second == 0 ? 0 : t.second * 2LL * *S.meta.C_M);
            if (got != want)
                fail("amb_ring degree", S.amb_basis[k.first].id + " * " + S.amb_basis[k.second].id);
        }
    }
    for (const auto& [x, v] : S.incl)
        for (const auto& [t, c] : v.terms())
            if (S.amb_basis[t.first].degree - t.second * N != S.lag_basis[x].degree)
                fail("incl degree", S.lag_basis[x].id);
    for (auto e : S.eps)
        if (S.lag_basis[e].degree != 0) fail("eps degree", S.lag_basis[e].id);
    if (ok) r.add("degree rules", true);
    return r;
}

Report two_sided_check(const QuantumStructure& S) {
    Report r;
    const std::size_t nl = S.lag_basis.size(), na = S.amb_basis.size();
    auto L = [&](std::size_t i) { return Comb::unit(S.meta.coeffs, i); };
    auto lid = [&](std::size_t i) { return S.lag_basis[i].id; };
    auto aid = [&](std::size_t i) { return S.amb_basis[i].id; };
    auto law = [&](const std::string& name, auto&& body) {
        std::string where;
        body(where);
        r.add(name, where.empty(), where.empty() ? "" : "fails at " + where);
    };
    const bool has_prod = !S.prod.empty(), has_mod = !S.modact.empty(), has_amb = !S.amb_ring.empty();
    if (has_amb && has_mod)
        law("(a*b)*x = a*(b*x)", [&](std::string& w) {
            for (std::size_t a = 0; a < na && w.empty(); ++a)
                for (std::size_t b = 0; b < na && w.empty(); ++b)
                    for (std::size_t x = 0; x < nl && w.empty(); ++x)
                        if (qmod(S, amb_mul(S, L(a), L(b)), L(x)) != qmod(S, L(a), qmod(S, L(b), L(x))))
                            w = "(" + aid(a) + ", " + aid(b) + ", " + lid(x) + ")";
        });
    if (has_prod && has_mod)
        law("a*(x o y) = (a*x) o y = x o (a*y)", [&](std::string& w) {
            for (std::size_t a = 0; a < na && w.empty(); ++a)
                for (std::size_t x = 0; x < nl && w.empty(); ++x)
                    for (std::size_t y = 0; y < nl && w.empty(); ++y) {
                        Comb lhs = qmod(S, L(a), qprod(S, L(x), L(y)));
                        if (lhs != qprod(S, qmod(S, L(a), L(x)), L(y)) ||
                            lhs != qprod(S, L(x), qmod(S, L(a), L(y))))
                            w = "(" + aid(a) + ", " + lid(x) + ", " + lid(y) + ")";
                    }
        });
    if (has_prod)
        law("(x o y) o z = x o (y o z)", [&](std::string& w) {
            for (std::size_t x = 0; x < nl && w.empty(); ++x)
                for (std::size_t y = 0; y < nl && w.empty(); ++y)
                    for (std::size_t z = 0; z < nl && w.empty(); ++z)
                        if (qprod(S, qprod(S, L(x), L(y)), L(z)) != qprod(S, L(x), qprod(S, L(y), L(z))))
                            w = "(" + lid(x) + ", " + lid(y) + ", " + lid(z) + ")";
        });
    if (has_amb)
        law("(a*b)*c = a*(b*c)", [&](std::string& w) {
            for (std::size_t a = 0; a < na && w.empty(); ++a)
                for (std::size_t b = 0; b < na && w.empty(); ++b)
                    for (std::size_t c = 0; c < na && w.empty(); ++c)
                        if (amb_mul(S, amb_mul(S, L(a), L(b)), L(c)) !=
                            amb_mul(S, L(a), amb_mul(S, L(b), L(c))))
                            w = "(" + aid(a) + ", " + aid(b) + ", " + aid(c) + ")";
        });
    if (has_prod && S.unit_lag)
        law("[L] o x = x o [L] = x", [&](std::string& w) {
            for (std::size_t x = 0; x < nl && w.empty(); ++x)
                if (qprod(S, L(*S.unit_lag), L(x)) != L(x) || qprod(S, L(x), L(*S.unit_lag)) != L(x))
                    w = lid(x);
        });
    if (has_mod && S.unit_amb)
        law("[M] * x = x", [&](std::string& w) {
            for (std::size_t x = 0; x < nl && w.empty(); ++x)
                if (qmod(S, L(*S.unit_amb), L(x)) != L(x)) w = lid(x);
        });
    if (has_amb && S.unit_amb)
        law("[M] * a = a * [M] = a", [&](std::string& w) {
            for (std::size_t a = 0; a < na && w.empty(); ++a)
                if (amb_mul(S, L(*S.unit_amb), L(a)) != L(a) || amb_mul(S, L(a), L(*S.unit_amb)) != L(a))
                    w = aid(a);
        });
    r.merge(degree_check(S));
    return r;
}

namespace {

qla::Matrix pairing_matrix(const QuantumStructure& S) {
    const std::size_t na = S.amb_basis.size();
    qla::Matrix G(na, na);
    for (const auto& [k, v] : S.amb_pairing) {
        G.at(k.first, k.second) = Rational(v);
        G.at(k.second, k.first) = Rational(v);
    }
    return G;
}

}  // namespace

std::map<std::size_t, Comb> inclusion_from_module(const QuantumStructure& S) {
    const std::size_t na = S.amb_basis.size(), nl = S.lag_basis.size();
    const bool mod2 = S.meta.coeffs == Coeffs::Z2;
    qla::Matrix G = pairing_matrix(S);
    if (!qla::invertible_over(G, mod2))
        throw InvariantError("intersection pairing is not invertible over the coefficients");
    std::map<std::size_t, Comb> out;
    for (std::size_t x = 0; x < nl; ++x) {
        // e_j(t) = eps(h_j * x), grouped by t power.
        std::map<long long, std::vector<Int>> rhs;
        for (std::size_t j = 0; j < na; ++j) {
            LaurentPoly e = augment(S, qmod(S, Comb::unit(S.meta.coeffs, j), Comb::unit(S.meta.coeffs, x)));
            for (const auto& [p, c] : e.terms()) {
                auto& v = rhs[static_cast<long long>(p)];
                v.resize(na, Int(0));
                v[j] = c;
            }
        }
        Comb cx(S.meta.coeffs);
        for (auto& [p, v] : rhs) {
            if (mod2) {
                gf2::BitMatrix g(na, na);
                for (std::size_t i = 0; i < na; ++i)
                    for (std::size_t j = 0; j < na; ++j)
                        if (boost::multiprecision::numerator(G.at(i, j)) % 2 != 0) g.set(i, j);
                gf2::BitVec b(na);
                for (std::size_t j = 0; j < na; ++j)
                    if (v[j] % 2 != 0) b.set(j);
                auto c = gf2::solve(g, b);
                for (auto k : c->ones()) cx.add(k, p, 1);
            } else {
                std::vector<Rational> b(na);
                for (std::size_t j = 0; j < na; ++j) b[j] = Rational(v[j]);
                auto c = qla::solve(G, b);
                for (std::size_t k = 0; k < na; ++k) {
                    if (!qla::is_integral((*c)[k]))
                        throw InvariantError("inclusion coefficients are not integral");
                    cx.add(k, p, boost::multiprecision::numerator((*c)[k]));
                }
            }
        }
        if (!cx.is_zero()) out[x] = cx;
    }
    return out;
}

Report inclusion_check(const QuantumStructure& S) {
    Report r;
    auto derived = inclusion_from_module(S);
    for (std::size_t x = 0; x < S.lag_basis.size(); ++x) {
        Comb d = derived.count(x) ? derived.at(x) : S.zero();
        Comb s = S.incl.count(x) ? S.incl.at(x) : S.zero();
        r.add("i_L(" + S.lag_basis[x].id + ")", d == s,
              d == s ? "" : "derived " + d.str(S.amb_basis, "t") + ", stored " + s.str(S.amb_basis, "t"));
    }
    return r;
}

Report mod_inclusion_identity(const QuantumStructure& S) {
    Report r;
    const std::size_t nl = S.lag_basis.size(), na = S.amb_basis.size();
    auto incl = S.incl.empty() ? inclusion_from_module(S) : S.incl;
    QuantumStructure T = S;
    T.incl = incl;
    qla::Matrix G = pairing_matrix(S);
    auto L = [&](std::size_t i) { return Comb::unit(S.meta.coeffs, i); };
    std::string where;
    for (std::size_t x = 0; x < nl && where.empty(); ++x)
        for (std::size_t y = 0; y < nl && where.empty(); ++y) {
            Comb ixy = qincl(T, qprod(S, L(x), L(y)));
            for (std::size_t j = 0; j < na && where.empty(); ++j) {
                LaurentPoly lhs(RingDescriptor::lambda(S.meta.N_L, S.meta.C_M, S.meta.coeffs));
                for (std::size_t k = 0; k < na; ++k) {
                    if (G.at(j, k) == 0) continue;
                    Int g = boost::multiprecision::numerator(G.at(j, k));
                    for (const auto& [p, c] : ixy.coeff_poly(k))
                        lhs += LaurentPoly::monomial(lhs.ring(), p, c * g);
                }
                LaurentPoly rhs = augment(S, qprod(S, L(y), qmod(S, L(j), L(x))));
                if (!(lhs == rhs))
                    where = "(" + S.amb_basis[j].id + ", " + S.lag_basis[x].id + ", " +
                            S.lag_basis[y].id + ")";
            }
        }
    r.add("<h, i_L(x o y)> = eps(y o (h * x))", where.empty(), where.empty() ? "" : "fails at " + where);
    return r;
}

Periodicity periodicity_check(const QuantumStructure& S, const Comb& a) {
    Periodicity out;
    auto deg = amb_degree(S, a);
    if (!deg) throw ArgumentError("periodicity: class must be homogeneous and nonzero");
    out.shift = static_cast<int>(*deg) - S.meta.ambient_dim;
    const bool mod2 = S.meta.coeffs == Coeffs::Z2;
    auto res = [](long long d, long long p) { return p == 0 ? d : ((d % p) + p) % p; };

    // Each residue slice must map isomorphically onto the slice shifted by |a| - 2n_M.
    auto check_slices = [&](std::size_t size, auto degree_of, long long period, auto apply) {
        std::set<long long> classes;
        for (std::size_t i = 0; i < size; ++i) classes.insert(res(degree_of(i), period));
        for (long long r : classes) {
            std::vector<std::size_t> src, dst;
            for (std::size_t i = 0; i < size; ++i) {
                if (res(degree_of(i), period) == r) src.push_back(i);
                if (res(degree_of(i), period) == res(r + out.shift, period)) dst.push_back(i);
            }
            if (src.size() != dst.size()) return false;
            qla::Matrix M(dst.size(), src.size());
            for (std::size_t j = 0; j < src.size(); ++j) {
                const Comb img = apply(src[j]);
                for (const auto& [k, c] : img.terms()) {
                    auto it = std::find(dst.begin(), dst.end(), k.first);
                    if (it == dst.end()) return false;
                    M.at(static_cast<std::size_t>(it - dst.begin()), j) += Rational(c);
                }
            }
            if (!qla::invertible_over(M, mod2)) return false;
        }
        return true;
    };

    const long long amb_period = S.meta.C_M ? 2LL * *S.meta.C_M : 0;
    bool inv = check_slices(
        S.amb_basis.size(), [&](std::size_t i) { return S.amb_basis[i].degree; }, amb_period,
        [&](std::size_t i) { return amb_mul(S, a, Comb::unit(S.meta.coeffs, i)); });
    out.invertible = inv;
    out.report.add("a invertible in the ambient ring", inv);
    if (!inv) return out;
    bool bij = check_slices(
        S.lag_basis.size(), [&](std::size_t i) { return S.lag_basis[i].degree; }, S.meta.N_L,
        [&](std::size_t i) { return qmod(S, a, Comb::unit(S.meta.coeffs, i)); });
    out.report.add("a * (-) bijective on QH(L), shift " + std::to_string(out.shift), bij);
    return out;
}

BilinearOp product_op(const QuantumStructure& S, const PearlComplex& c) {
    BilinearOp op;
    op.shift = S.meta.n;
    std::vector<std::size_t> map(S.lag_basis.size());
    for (std::size_t i = 0; i < S.lag_basis.size(); ++i) {
        auto k = c.index_of(S.lag_basis[i].id);
        if (!k) throw ArgumentError("product_op: complex lacks " + S.lag_basis[i].id);
        map[i] = *k;
    }
    for (const auto& [key, v] : S.prod) {
        std::vector<std::size_t> img;
        const Comb red = v.reduced_mod2();
        for (const auto& [t, coeff] : red.terms()) {
            if (t.second < 0) throw ArgumentError("product_op: negative t power");
            img.push_back(map[t.first]);
        }
        std::sort(img.begin(), img.end());
        if (!img.empty()) op.table[{map[key.first], map[key.second]}] = img;
    }
    return op;
}

std::string format_tables(const QuantumStructure& S) {
    std::ostringstream os;
    auto section = [&](const std::string& title, const PairTable& t, const std::vector<BasisElement>& A,
                       const std::vector<BasisElement>& B, const std::vector<BasisElement>& C,
                       const std::string& op, const std::string& var) {
        os << title << "\n";
        std::size_t w = 0;
        std::vector<std::pair<std::string, std::string>> rows;
        for (const auto& [k, v] : t) {
            rows.emplace_back(A[k.first].id + " " + op + " " + B[k.second].id, v.str(C, var));
            w = std::max(w, rows.back().first.size());
        }
        for (const auto& [l, r] : rows) os << "  " << l << std::string(w - l.size(), ' ') << " = " << r << "\n";
    };
    section("product", S.prod, S.lag_basis, S.lag_basis, S.lag_basis, "o", "t");
    section("module action", S.modact, S.amb_basis, S.lag_basis, S.lag_basis, "*", "t");
    section("ambient ring", S.amb_ring, S.amb_basis, S.amb_basis, S.amb_basis, "*", "s");
    os << "inclusion\n";
    std::size_t w = 0;
    for (const auto& [x, v] : S.incl) w = std::max(w, S.lag_basis[x].id.size());
    for (const auto& [x, v] : S.incl)
        os << "  i_L(" << S.lag_basis[x].id << ")" << std::string(w - S.lag_basis[x].id.size(), ' ')
           << " = " << v.str(S.amb_basis, "t") << "\n";
    os << "augmentation\n";
    for (auto e : S.eps) os << "  eps(" << S.lag_basis[e].id << ") = 1\n";
    return os.str();
}

}  // namespace pearl
