// Decision procedures: wide/narrow dichotomy, boundary order, the D1 class,
// Betti numbers from periodicity, point invertibility, width bounds and the
// intersection criteria.
#pragma once

#include "pearl/chaincx.hpp"
#include "pearl/minimal.hpp"
#include "pearl/novikov.hpp"
#include "pearl/qstruct.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pearl {

enum class Status { Wide, Narrow, Undecided };
std::string to_string(Status s);

struct NamedBound {
    std::string name;     // e.g. "w(L)"
    std::string formula;  // e.g. "2*K*eta"
    Rational value;
};

struct Certificate {
    HChain x;  // delta x contains [L] t^q
    long long q = 0;
    std::optional<long long> K;
};

struct Verdict {
    Status status = Status::Undecided;
    bool by_theorem = false;  // false when only the direct computation decided
    std::optional<Certificate> certificate;
    std::vector<NamedBound> bounds;
    std::string reason;
};

// K = max{l+1, n+1-N_L} if N_L < l+1, K = l+1 if N_L = l+1; nullopt if N_L > l+1.
std::optional<long long> uniruling_K(int n, int l, int N_L);

// `l`: H_*(L) is generated as a ring by degrees >= n - l. n and N_L come from
// m.cmin. Throws InvariantError if prod is not a derivation for delta, or if
// delta contradicts the generation hypothesis.
Verdict dichotomy_decide(const MinimalModel& m, const BilinearOp& prod, int l);

enum class Clause { Boundary, Product };
std::string to_string(Clause c);

struct BoundaryOrder {
    long long q = 0;
    Clause clause = Clause::Boundary;
    std::size_t x = 0;            // Boundary: basis element of cmin
    std::size_t y = 0, z = 0;     // Product: basis pair of cmin
    long long K = 0;
};
// Minimal q with delta x or y * z containing [L] t^q and 0 < q N_L <= K. The
// [L]-coefficient is linear, so basis elements and basis pairs suffice. Throws
// InvariantError("no witness ...") for non-narrow input or a failed search.
BoundaryOrder boundary_order_search(const MinimalModel& m, const BilinearOp& prod, int l);

struct DiskClass {
    std::string name;
    std::vector<int> boundary;  // in H_1(L; Z2), entries 0/1
    int ev_degree = 0;          // mod 2
    friend bool operator==(const DiskClass&, const DiskClass&) = default;
};
struct DiskClassData {
    std::size_t h1_rank = 0;
    std::vector<DiskClass> classes;
    friend bool operator==(const DiskClassData&, const DiskClassData&) = default;
};

struct D1Result {
    std::vector<int> d1;
    Status status = Status::Undecided;  // Narrow when d1 != 0
};
// Throws ArgumentError on malformed boundary vectors.
D1Result d1_class(const DiskClassData& d);
// Torus model on h1_rank generators with N_L = 2 whose differential sends the
// degree n-1 class dual to e_i to <D1, e_i> [L] t, extended as a derivation.
PearlComplex d1_model(const DiskClassData& d);

struct BettiConstraints {
    int cap = 2;                    // b_i <= cap
    std::map<int, int> fixed;       // degree -> required value
};
// All symmetric b in N^{n+1} with b_0 = b_n = 1 whose N_L-aggregated ranks are
// invariant under the shift by `period`. Throws InvariantError when none exist.
std::vector<std::vector<int>> betti_from_periodicity(int n, int N_L, int period,
                                                      const BettiConstraints& c = {});

struct PointInverse {
    Comb a;  // ambient combination in s powers
    long long k = 0;
};
// Searches a in the Gamma+ span with [pt] * a = [M] s^j, j = 1..s_bound, and
// returns the smallest k = 2 C_M j. Default bound 4 n_M / (2 C_M) + 1.
std::optional<PointInverse> point_invertibility_order(const QuantumStructure& S,
                                                      std::optional<int> s_bound = std::nullopt);

struct WidthInputs {
    std::optional<long long> k;   // point invertibility order
    std::optional<long long> K;   // uniruling order for narrow L
    std::optional<long long> i0;  // lowest t power of [pt] * [L]
    std::optional<long long> j;   // [pt] * m = m t^j for the point class m of L
};
// Reads k, i0 and j from a structure; K is left empty.
WidthInputs width_inputs(const QuantumStructure& S);
// Throws ArgumentError for an Undecided verdict or a Narrow verdict without K.
std::vector<NamedBound> width_bounds(const InstanceMeta& meta, Status status, const WidthInputs& in);

enum class Divisibility { NotDivisible, Divisible, Unknown };
std::string to_string(Divisibility d);
struct DivisibilityResult {
    Divisibility verdict = Divisibility::Unknown;
    std::string reason;
};
// z = [pt] * [L] against t^{2C_M/N_L}; IQ+(L) is the Lambda+ span of the
// Lagrangian basis (structures are stored for wide L).
DivisibilityResult divisibility_test(const QuantumStructure& S);

struct JCircI {
    RingDescriptor ring;  // Lambda_{0,1}
    // image of each L0 basis element: L1 basis index -> coefficient
    std::vector<std::map<std::size_t, Poly01>> image;
    bool nonzero = false;
    std::string str(const QuantumStructure& S0, const QuantumStructure& S1) const;
};
// j_{L1}(i_{L0}(x)) with j_{L1}(a) = a * [L1]. Throws ArgumentError when the
// ambient data differ.
JCircI j_circ_i(const QuantumStructure& S0, const QuantumStructure& S1);

}  // namespace pearl
