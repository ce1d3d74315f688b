// Graded coefficient rings: Lambda, Lambda+, Gamma, Gamma+ and Lambda_{0,1}.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <string>

namespace pearl {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class Coeffs { Z2, Z };
enum class RingKind { LambdaPlus, Lambda, GammaPlus, Gamma, Lambda01 };

std::string to_string(Coeffs c);
std::string to_string(RingKind k);

struct RingDescriptor {
    RingKind kind = RingKind::Lambda;
    int N_L = 2;
    int N_L1 = 0;            // second Maslov number, Lambda01 only
    std::optional<int> C_M;  // nullopt means C_M = infinity
    Coeffs coeffs = Coeffs::Z2;

    // -N_L for t, -2C_M for s. Throws for Gamma with C_M infinite.
    int generator_degree() const;
    bool positive() const { return kind == RingKind::LambdaPlus || kind == RingKind::GammaPlus; }
    bool is_gamma() const { return kind == RingKind::Gamma || kind == RingKind::GammaPlus; }
    // Throws std::invalid_argument when N_L does not divide 2C_M etc.
    void check() const;

    static RingDescriptor lambda(int N_L, std::optional<int> C_M, Coeffs c = Coeffs::Z2,
                                 bool plus = false);
    static RingDescriptor gamma(int N_L, std::optional<int> C_M, Coeffs c = Coeffs::Z2,
                                bool plus = false);

    friend bool operator==(const RingDescriptor&, const RingDescriptor&) = default;
};

// Finitely supported sum of c_k * X^k, X = t or s depending on the ring.
class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(RingDescriptor r) : ring_(r) {}

    static LaurentPoly monomial(const RingDescriptor& r, const Int& exp, const Int& coeff = 1);
    static LaurentPoly constant(const RingDescriptor& r, const Int& coeff) {
        return monomial(r, 0, coeff);
    }

    const RingDescriptor& ring() const { return ring_; }
    const std::map<Int, Int>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_homogeneous() const { return terms_.size() <= 1; }
    Int coeff(const Int& exp) const;

    // Degree of a nonzero homogeneous value; throws otherwise.
    Int degree() const;
    // Minimal exponent; nullopt stands for +infinity (the zero element).
    std::optional<Int> filtration_level() const;
    std::optional<Int> max_exponent() const;

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

    LaurentPoly scaled(const Int& c) const;
    LaurentPoly shifted(const Int& e) const;  // multiply by X^e
    LaurentPoly reduced_mod2() const;         // same ring with Z2 coefficients
    LaurentPoly in_ring(const RingDescriptor& r) const;  // re-tag, checks positivity

    // Inverse of a homogeneous unit (Lambda/Gamma, coefficient +-1 or Z2).
    std::optional<LaurentPoly> inverse() const;

    std::string str(const std::string& var = "t") const;

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.ring_ == b.ring_ && a.terms_ == b.terms_;
    }

private:
    void add_term(const Int& exp, const Int& c);
    void check_compatible(const LaurentPoly& o) const;

    RingDescriptor ring_;
    std::map<Int, Int> terms_;
};

LaurentPoly add(const LaurentPoly& p, const LaurentPoly& q);
LaurentPoly mul(const LaurentPoly& p, const LaurentPoly& q);

// r with q*r = p in the ring of p, or nullopt. Throws on q = 0.
std::optional<LaurentPoly> exact_divide(const LaurentPoly& p, const LaurentPoly& q);

// Gamma -> Lambda, s -> t^{2C_M/N_L}.
LaurentPoly gamma_embed(const LaurentPoly& p, int N_L);

// Monomial t0^e0 t1^e1 of Lambda_{0,1}.
struct Mono01 {
    Int e0 = 0;
    Int e1 = 0;
    friend bool operator<(const Mono01& a, const Mono01& b) {
        if (a.e0 != b.e0) return a.e0 < b.e0;
        return a.e1 < b.e1;
    }
    friend bool operator==(const Mono01&, const Mono01&) = default;
};

// Reduces the t0 exponent into [0, 2C_M/N_L0) using t0^{c0} = t1^{c1}.
Mono01 lambda01_normalize(const Mono01& m, const RingDescriptor& r);

class Poly01 {
public:
    Poly01() = default;
    explicit Poly01(RingDescriptor r);

    static Poly01 monomial(const RingDescriptor& r, const Mono01& m, const Int& c = 1);
    // Lambda element placed on variable t0 (which = 0) or t1 (which = 1).
    static Poly01 from_lambda(const RingDescriptor& r, const LaurentPoly& p, int which);

    const RingDescriptor& ring() const { return ring_; }
    const std::map<Mono01, Int>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Poly01& operator+=(const Poly01& o);
    friend Poly01 operator+(Poly01 a, const Poly01& b) { return a += b; }
    friend Poly01 operator*(const Poly01& a, const Poly01& b);

    std::string str() const;
    friend bool operator==(const Poly01& a, const Poly01& b) {
        return a.ring_ == b.ring_ && a.terms_ == b.terms_;
    }

private:
    void add_term(const Mono01& m, const Int& c);
    RingDescriptor ring_{RingKind::Lambda01, 2, 2, std::nullopt, Coeffs::Z2};
    std::map<Mono01, Int> terms_;
};

std::string rational_str(const Rational& q);

}  // namespace pearl
