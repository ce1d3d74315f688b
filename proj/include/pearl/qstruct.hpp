// Structure-constant tables for the quantum product, the module action over the
// ambient quantum ring, the augmentation and the quantum inclusion.
#pragma once

#include "pearl/chaincx.hpp"
#include "pearl/minimal.hpp"
#include "pearl/novikov.hpp"
#include "pearl/report.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pearl {

struct InstanceMeta {
    int n = 0;
    int N_L = 2;
    std::optional<int> C_M;  // nullopt = infinity
    Rational eta = 0;
    int ambient_dim = 0;  // 2 n_M
    Coeffs coeffs = Coeffs::Z2;
    friend bool operator==(const InstanceMeta&, const InstanceMeta&) = default;

    // 2C_M / N_L, the t-power of s. Throws when C_M is infinite.
    int s_to_t() const;
};

// Finite sum of c * e_idx * X^power over a fixed basis; X is t or s by context.
class Comb {
public:
    Comb() = default;
    explicit Comb(Coeffs c) : coeffs_(c) {}
    static Comb unit(Coeffs c, std::size_t idx, long long power = 0, const Int& coeff = 1);

    void add(std::size_t idx, long long power, const Int& coeff);
    Comb& operator+=(const Comb& o);
    Comb& operator-=(const Comb& o);
    friend Comb operator+(Comb a, const Comb& b) { return a += b; }
    friend Comb operator-(Comb a, const Comb& b) { return a -= b; }
    Comb scaled(const Int& c) const;
    Comb shifted(long long p) const;  // multiply by X^p
    Comb reduced_mod2() const;

    bool is_zero() const { return terms_.empty(); }
    Coeffs coeffs() const { return coeffs_; }
    const std::map<std::pair<std::size_t, long long>, Int>& terms() const { return terms_; }
    Int coeff(std::size_t idx, long long power) const;
    // Polynomial coefficient of basis element idx.
    std::map<long long, Int> coeff_poly(std::size_t idx) const;

    std::string str(const std::vector<BasisElement>& basis, const std::string& var) const;
    friend bool operator==(const Comb& a, const Comb& b) { return a.terms_ == b.terms_; }

private:
    Coeffs coeffs_ = Coeffs::Z2;
    std::map<std::pair<std::size_t, long long>, Int> terms_;
};

using PairTable = std::map<std::pair<std::size_t, std::size_t>, Comb>;

struct QuantumStructure {
    InstanceMeta meta;
    std::vector<BasisElement> lag_basis;
    std::vector<BasisElement> amb_basis;
    PairTable prod;      // lag x lag -> lag, t powers
    PairTable modact;    // amb x lag -> lag, t powers
    PairTable amb_ring;  // amb x amb -> amb, s powers
    std::vector<std::size_t> eps;  // lag generators with augmentation 1
    std::map<std::size_t, Comb> incl;  // lag -> amb, t powers
    std::map<std::pair<std::size_t, std::size_t>, Int> amb_pairing;  // intersection numbers
    std::optional<std::size_t> unit_lag, unit_amb, point, hyperplane;

    std::optional<std::size_t> lag_index(const std::string& id) const;
    std::optional<std::size_t> amb_index(const std::string& id) const;
    std::size_t lag(const std::string& id) const;  // throws ArgumentError
    std::size_t amb(const std::string& id) const;

    Comb zero() const { return Comb(meta.coeffs); }
    Comb lag_elem(const std::string& id, long long power = 0, const Int& c = 1) const;
    Comb amb_elem(const std::string& id, long long power = 0, const Int& c = 1) const;

    QuantumStructure reduced_mod2() const;
    friend bool operator==(const QuantumStructure&, const QuantumStructure&) = default;
};

// Bilinear extensions of the tables.
Comb qprod(const QuantumStructure& S, const Comb& x, const Comb& y);
Comb qmod(const QuantumStructure& S, const Comb& a, const Comb& x);  // a in s powers
Comb amb_mul(const QuantumStructure& S, const Comb& a, const Comb& b);
LaurentPoly augment(const QuantumStructure& S, const Comb& x);
Comb qincl(const QuantumStructure& S, const Comb& x);  // stored table
// Gamma -> Lambda on ambient combinations: s^j -> t^{j 2C_M/N_L}.
Comb amb_to_lambda(const QuantumStructure& S, const Comb& a);

// Every table entry obeys its degree rule; eps sits in degree 0.
Report degree_check(const QuantumStructure& S);
Report two_sided_check(const QuantumStructure& S);

// i_L from <PD(h_j), i_L(x)> = eps(h_j * x), solving G c = e with the intersection
// matrix G. Throws InvariantError when G is singular or the solution is not integral.
std::map<std::size_t, Comb> inclusion_from_module(const QuantumStructure& S);
Report inclusion_check(const QuantumStructure& S);  // derived vs stored

// sum_k G_jk i_L(x o y)_k = eps(y o (h_j * x)) on all basis triples.
Report mod_inclusion_identity(const QuantumStructure& S);

struct Periodicity {
    bool invertible = false;
    int shift = 0;  // |a| - 2 n_M
    Report report;
};
// a must be a homogeneous ambient class; checks invertibility of a * (-) on the
// ambient ring and bijectivity of a * (-) on the lag lattice per degree.
Periodicity periodicity_check(const QuantumStructure& S, const Comb& a);

// Homogeneous degree of an element, nullopt for 0 or mixed degrees.
std::optional<long long> lag_degree(const QuantumStructure& S, const Comb& x);
std::optional<long long> amb_degree(const QuantumStructure& S, const Comb& a);

// Lag product as a Z2 bilinear operation on a complex with the same basis ids.
BilinearOp product_op(const QuantumStructure& S, const PearlComplex& c);

// Aligned text rendering of the tables.
std::string format_tables(const QuantumStructure& S);

}  // namespace pearl
