// Free graded pearl complexes over Lambda+ / Lambda with Z2 coefficients.
#pragma once

#include "pearl/gf2.hpp"
#include "pearl/novikov.hpp"
#include "pearl/report.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pearl {

struct BasisElement {
    std::string id;
    int degree = 0;
    friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

// One summand y * t^e of d(x).
struct DiffTerm {
    std::size_t target = 0;
    long long t_power = 0;
    friend bool operator==(const DiffTerm&, const DiffTerm&) = default;
    friend auto operator<=>(const DiffTerm&, const DiffTerm&) = default;
};

// Exponent of g inside a homogeneous element of degree D: (|g| - D) / N_L.
inline long long implied_power(int gdeg, long long D, int N_L) { return (gdeg - D) / N_L; }

inline int residue(long long D, int N_L) {
    long long r = D % N_L;
    return static_cast<int>(r < 0 ? r + N_L : r);
}

// Homogeneous chain of total degree `degree`: sum over g in support of g t^{e_g}
// with e_g fixed by the degrees. Support is sorted and duplicate free.
struct HChain {
    long long degree = 0;
    std::vector<std::size_t> support;
    bool is_zero() const { return support.empty(); }
    friend bool operator==(const HChain&, const HChain&) = default;
};

HChain chain_xor(const HChain& a, const HChain& b);

struct PearlComplex {
    RingDescriptor ring{RingKind::LambdaPlus, 2, 0, std::nullopt, Coeffs::Z2};
    int n = 0;
    std::vector<BasisElement> basis;
    std::vector<std::vector<DiffTerm>> d;  // d[x] sorted by (target, t_power)
    std::optional<std::size_t> fundamental;
    std::optional<std::size_t> point;

    int N_L() const { return ring.N_L; }
    std::size_t size() const { return basis.size(); }
    int degree(std::size_t i) const { return basis[i].degree; }
    std::optional<std::size_t> index_of(const std::string& id) const;
    int min_degree() const;
    int max_degree() const;

    std::size_t add_generator(const std::string& id, int degree);
    // Adds y t^e to d(x); Z2 semantics, so adding twice cancels.
    void toggle_term(std::size_t x, std::size_t y, long long e);

    // d applied to a homogeneous chain (exponents are implied by degrees).
    HChain apply_d(const HChain& c) const;
    // Single generator as a homogeneous chain of its own degree.
    HChain gen(std::size_t i) const { return HChain{degree(i), {i}}; }

    // Generators of the degree-D slice: |g| = D mod N_L, and |g| >= D over Lambda+.
    std::vector<std::size_t> slice(long long D, bool plus) const;

    friend bool operator==(const PearlComplex&, const PearlComplex&) = default;
};

// Classical part delta_0 (t = 0) as its own complex over Lambda+.
PearlComplex classical_part(const PearlComplex& c);

Report validate(const PearlComplex& c);
void require_valid(const PearlComplex& c);  // throws InvariantError listing failures

struct TorsionSummand {
    int degree = 0;       // degree of the generator
    long long exponent = 0;  // summand Z2[t]/(t^exponent)
    HChain generator;
    friend bool operator==(const TorsionSummand&, const TorsionSummand&) = default;
};

struct HomologyResult {
    RingKind ring = RingKind::Lambda;
    int N_L = 2;
    // Lambda: rank per degree over the window [min - N_L, max].
    // Lambda+: number of free summands generated in each degree.
    std::map<int, std::size_t> free_ranks;
    std::vector<TorsionSummand> torsion;  // Lambda+ only
    std::vector<HChain> cycle_basis;      // generators of the free part
    std::vector<std::size_t> residue_ranks;  // rank over Lambda per class mod N_L

    // dim over Z2 of the degree-D piece of the Lambda+ homology.
    std::size_t plus_dim(long long D) const;
    // rank of t^j : H_D -> H_{D - j N_L} on the Lambda+ homology.
    std::size_t plus_t_rank(long long D, long long j) const;
};

HomologyResult homology_lambda(const PearlComplex& c);
HomologyResult homology_lambda_plus(const PearlComplex& c);

enum class TorsionIdealKind { Zero, Everything, Proper };
struct TorsionIdeal {
    TorsionIdealKind kind = TorsionIdealKind::Zero;
    std::string description;
};
TorsionIdeal torsion_ideal(const PearlComplex& c);

// Homology of delta_0 with chosen cycle representatives, per degree.
struct ClassicalHomology {
    std::map<int, std::vector<HChain>> reps;  // t-free chains, degree = generator degree
    std::map<int, std::size_t> betti() const;
    // Coordinates of a delta_0-cycle (t-free, single degree) in the chosen basis.
    std::optional<gf2::BitVec> coordinates(const PearlComplex& c, const HChain& z) const;
};
ClassicalHomology classical_homology(const PearlComplex& c);

struct E1Page {
    std::map<int, std::size_t> ranks;  // dim H(G, delta_0) per degree
    ClassicalHomology classical;
    // d1 on the classical basis: entries (source degree, source idx) -> targets.
    std::vector<std::pair<std::pair<int, std::size_t>, std::pair<int, std::size_t>>> d1;
    bool d1_zero = true;
    bool collapses = true;
};
E1Page e1_page(const PearlComplex& c);

PearlComplex dual_complex(const PearlComplex& c);

// Theta(a, g) = g(a) for a cycle of degree k and a dual cycle of degree -k.
int theta_pairing(const PearlComplex& c, const HChain& a, const HChain& g);

// Gram matrices of Theta per residue class, and whether each is invertible.
struct ThetaGram {
    std::vector<gf2::BitMatrix> gram;
    std::vector<bool> invertible;
    bool all_invertible() const;
};
ThetaGram theta_gram(const PearlComplex& c);

// Greedy homogeneous complement of span(gens) inside the free Lambda-module on
// `degrees`, scanning basis vectors in decreasing degree. Returns basis indices.
std::vector<std::size_t> graded_complement(const std::vector<int>& degrees, int N_L,
                                           const std::vector<HChain>& gens);

// Z = Z' + d(E) and C = Z' + d(E) + E over Lambda.
struct CycleSplit {
    std::vector<HChain> zprime, e, de;
};
CycleSplit cycle_split(const PearlComplex& c);

std::string chain_str(const PearlComplex& c, const HChain& h);

}  // namespace pearl
