#include "pearl/novikov.hpp"

#include <sstream>
#include <stdexcept>

namespace pearl {

std::string to_string(Coeffs c) { return c == Coeffs::Z2 ? "Z2" : "Z"; }

std::string to_string(RingKind k) {
    switch (k) {
        case RingKind::LambdaPlus: return "LambdaPlus";
        case RingKind::Lambda: return "Lambda";
        case RingKind::GammaPlus: return "GammaPlus";
        case RingKind::Gamma: return "Gamma";
        case RingKind::Lambda01: return "Lambda01";
    }
    return "?";
}

int RingDescriptor::generator_degree() const {
    if (is_gamma()) {
        if (!C_M) throw std::domain_error("Gamma has no generator when C_M is infinite");
        return -2 * *C_M;
    }
    return -N_L;
}

void RingDescriptor::check() const {
    if (N_L < 2) throw std::invalid_argument("N_L must be at least 2");
    if (kind == RingKind::Lambda01 && N_L1 < 2)
        throw std::invalid_argument("Lambda01 needs N_L1 >= 2");
    if (C_M) {
        if (*C_M <= 0) throw std::invalid_argument("C_M must be positive");
        if ((2 * *C_M) % N_L != 0) throw std::invalid_argument("N_L must divide 2C_M");
        if (kind == RingKind::Lambda01 && (2 * *C_M) % N_L1 != 0)
            throw std::invalid_argument("N_L1 must divide 2C_M");
    }
}

RingDescriptor RingDescriptor::lambda(int N_L, std::optional<int> C_M, Coeffs c, bool plus) {
    RingDescriptor r{plus ? RingKind::LambdaPlus : RingKind::Lambda, N_L, 0, C_M, c};
    r.check();
    return r;
}

RingDescriptor RingDescriptor::gamma(int N_L, std::optional<int> C_M, Coeffs c, bool plus) {
    RingDescriptor r{plus ? RingKind::GammaPlus : RingKind::Gamma, N_L, 0, C_M, c};
    r.check();
    return r;
}

namespace {

Int normalize_coeff(const Int& c, Coeffs k) {
    if (k == Coeffs::Z) return c;
    Int r = c % 2;
    return r < 0 ? -r : r;
}

}  // namespace

void LaurentPoly::add_term(const Int& exp, const Int& c) {
    if (ring_.positive() && exp < 0)
        throw std::domain_error("negative exponent in a positive ring");
    if (ring_.is_gamma() && !ring_.C_M && exp != 0)
        throw std::domain_error("Gamma with C_M = infinity has no variable s");
    Int v = normalize_coeff(c, ring_.coeffs);
    if (v == 0) return;
    auto it = terms_.find(exp);
    if (it == terms_.end()) {
        terms_.emplace(exp, v);
        return;
    }
    it->second = normalize_coeff(it->second + v, ring_.coeffs);
    if (it->second == 0) terms_.erase(it);
}

LaurentPoly LaurentPoly::monomial(const RingDescriptor& r, const Int& exp, const Int& coeff) {
    LaurentPoly p(r);
    p.add_term(exp, coeff);
    return p;
}

Int LaurentPoly::coeff(const Int& exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? Int(0) : it->second;
}

Int LaurentPoly::degree() const {
    if (terms_.size() != 1) throw std::domain_error("degree of a non-homogeneous or zero element");
    if (terms_.begin()->first == 0) return 0;
    return terms_.begin()->first * ring_.generator_degree();
}

std::optional<Int> LaurentPoly::filtration_level() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first;
}

std::optional<Int> LaurentPoly::max_exponent() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.rbegin()->first;
}

void LaurentPoly::check_compatible(const LaurentPoly& o) const {
    if (!(ring_ == o.ring_)) throw std::invalid_argument("ring descriptor mismatch");
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r(ring_);
    for (const auto& [e, c] : terms_) r.add_term(e, -c);
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_compatible(b);
    LaurentPoly r(a.ring_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
}

LaurentPoly LaurentPoly::scaled(const Int& c) const {
    LaurentPoly r(ring_);
    for (const auto& [e, v] : terms_) r.add_term(e, v * c);
    return r;
}

LaurentPoly LaurentPoly::shifted(const Int& s) const {
    LaurentPoly r(ring_);
    for (const auto& [e, v] : terms_) r.add_term(e + s, v);
    return r;
}

LaurentPoly LaurentPoly::reduced_mod2() const {
    RingDescriptor rr = ring_;
    rr.coeffs = Coeffs::Z2;
    LaurentPoly r(rr);
    for (const auto& [e, v] : terms_) r.add_term(e, v);
    return r;
}

LaurentPoly LaurentPoly::in_ring(const RingDescriptor& rr) const {
    LaurentPoly r(rr);
    for (const auto& [e, v] : terms_) r.add_term(e, v);
    return r;
}

std::optional<LaurentPoly> LaurentPoly::inverse() const {
    if (terms_.size() != 1) return std::nullopt;
    const auto& [e, c] = *terms_.begin();
    if (c != 1 && c != -1) return std::nullopt;
    if (ring_.positive() && e != 0) return std::nullopt;
    return monomial(ring_, -e, c);
}

std::string LaurentPoly::str(const std::string& var) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Int mag = c < 0 ? Int(-c) : c;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (e == 0) {
            os << mag;
            continue;
        }
        if (mag != 1) os << mag;
        os << var;
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

LaurentPoly add(const LaurentPoly& p, const LaurentPoly& q) { return p + q; }
LaurentPoly mul(const LaurentPoly& p, const LaurentPoly& q) { return p * q; }

std::optional<LaurentPoly> exact_divide(const LaurentPoly& p, const LaurentPoly& q) {
    if (q.is_zero()) throw std::domain_error("division by zero");
    if (!(p.ring() == q.ring())) throw std::invalid_argument("ring descriptor mismatch");
    RingDescriptor work = p.ring();
    if (work.kind == RingKind::LambdaPlus) work.kind = RingKind::Lambda;
    if (work.kind == RingKind::GammaPlus) work.kind = RingKind::Gamma;
    if (p.is_zero()) return LaurentPoly(p.ring());

    // Long division on the top exponent, performed in the Laurent ring.
    LaurentPoly rem = p.in_ring(work);
    LaurentPoly den = q.in_ring(work);
    const Int qtop = *den.max_exponent();
    const Int qlow = *den.filtration_level();
    const Int qlead = den.coeff(qtop);
    const Int plow = *rem.filtration_level();
    LaurentPoly quot(work);
    while (!rem.is_zero()) {
        Int rtop = *rem.max_exponent();
        // Quotient exponents never drop below plow - qlow.
        if (rtop - qtop < plow - qlow) return std::nullopt;
        Int rc = rem.coeff(rtop);
        if (work.coeffs == Coeffs::Z && rc % qlead != 0) return std::nullopt;
        Int c = work.coeffs == Coeffs::Z ? Int(rc / qlead) : Int(1);
        LaurentPoly term = LaurentPoly::monomial(work, rtop - qtop, c);
        quot += term;
        rem -= term * den;
    }
    if (p.ring().positive()) {
        auto low = quot.filtration_level();
        if (low && *low < 0) return std::nullopt;
    }
    return quot.in_ring(p.ring());
}

LaurentPoly gamma_embed(const LaurentPoly& p, int N_L) {
    const RingDescriptor& g = p.ring();
    if (!g.is_gamma()) throw std::invalid_argument("gamma_embed expects a Gamma element");
    RingDescriptor l = g;
    l.kind = g.kind == RingKind::GammaPlus ? RingKind::LambdaPlus : RingKind::Lambda;
    l.N_L = N_L;
    if (!g.C_M) {
        l.check();
        return p.in_ring(l);
    }
    if ((2 * *g.C_M) % N_L != 0) throw std::invalid_argument("N_L must divide 2C_M");
    l.check();
    const int f = 2 * *g.C_M / N_L;
    LaurentPoly r(l);
    for (const auto& [e, c] : p.terms()) r += LaurentPoly::monomial(l, e * f, c);
    return r;
}

Mono01 lambda01_normalize(const Mono01& m, const RingDescriptor& r) {
    if (r.kind != RingKind::Lambda01) throw std::invalid_argument("Lambda01 descriptor expected");
    if (!r.C_M) return m;
    const Int c0 = 2 * *r.C_M / r.N_L;
    const Int c1 = 2 * *r.C_M / r.N_L1;
    Int q = m.e0 / c0;
    Int rem = m.e0 % c0;
    if (rem < 0) {
        rem += c0;
        q -= 1;
    }
    return Mono01{rem, m.e1 + q * c1};
}

Poly01::Poly01(RingDescriptor r) : ring_(r) {
    if (r.kind != RingKind::Lambda01) throw std::invalid_argument("Lambda01 descriptor expected");
}

void Poly01::add_term(const Mono01& m, const Int& c) {
    Int v = normalize_coeff(c, ring_.coeffs);
    if (v == 0) return;
    Mono01 k = lambda01_normalize(m, ring_);
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, v);
        return;
    }
    it->second = normalize_coeff(it->second + v, ring_.coeffs);
    if (it->second == 0) terms_.erase(it);
}

Poly01 Poly01::monomial(const RingDescriptor& r, const Mono01& m, const Int& c) {
    Poly01 p(r);
    p.add_term(m, c);
    return p;
}

Poly01 Poly01::from_lambda(const RingDescriptor& r, const LaurentPoly& p, int which) {
    Poly01 out(r);
    for (const auto& [e, c] : p.terms())
        out.add_term(which == 0 ? Mono01{e, 0} : Mono01{0, e}, c);
    return out;
}

Poly01& Poly01::operator+=(const Poly01& o) {
    if (!(ring_ == o.ring_)) throw std::invalid_argument("ring descriptor mismatch");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly01 operator*(const Poly01& a, const Poly01& b) {
    if (!(a.ring_ == b.ring_)) throw std::invalid_argument("ring descriptor mismatch");
    Poly01 r(a.ring_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term({ma.e0 + mb.e0, ma.e1 + mb.e1}, ca * cb);
    return r;
}

std::string Poly01::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Int mag = c < 0 ? Int(-c) : c;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool unit = m.e0 == 0 && m.e1 == 0;
        if (unit || mag != 1) os << mag;
        if (m.e0 != 0) os << "t0" << (m.e0 == 1 ? "" : "^" + m.e0.str());
        if (m.e1 != 0) os << "t1" << (m.e1 == 1 ? "" : "^" + m.e1.str());
    }
    return os.str();
}

std::string rational_str(const Rational& q) {
    Int n = boost::multiprecision::numerator(q);
    Int d = boost::multiprecision::denominator(q);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

}  // namespace pearl
