// Minimal models: a complex on a basis of delta_0-homology with delta_0 = 0,
// together with chain maps phi : C -> C_min and psi : C_min -> C, phi psi = id.
#pragma once

#include "pearl/chaincx.hpp"
#include "pearl/report.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace pearl {

// Lambda+-linear map of Z2 complexes raising degree by `shift`. The image of a
// generator g is a homogeneous chain of degree |g| + shift; exponents are implied.
struct ChainMap {
    std::size_t source_size = 0;
    std::size_t target_size = 0;
    int shift = 0;
    std::vector<std::vector<std::size_t>> image;  // sorted supports

    HChain apply(const HChain& c) const;
    friend bool operator==(const ChainMap&, const ChainMap&) = default;
};

ChainMap identity_map(std::size_t n);
ChainMap compose(const ChainMap& g, const ChainMap& f);  // g after f
// Every image term has a nonnegative implied exponent.
bool is_positive_map(const ChainMap& f, const PearlComplex& src, const PearlComplex& tgt);
// f d = d f on every generator; returns the first failing generator.
std::optional<std::size_t> chain_map_defect(const ChainMap& f, const PearlComplex& src,
                                            const PearlComplex& tgt);

struct BasisSplit {
    std::vector<HChain> x, y, yp;  // t-free chains; delta_0 yp[j] = y[j]
};

enum class PivotOrder { Lex, ReverseLex, Shuffled };
struct ReduceOptions {
    PivotOrder order = PivotOrder::Lex;
    std::uint64_t seed = 0;  // used by Shuffled
};

BasisSplit split_basis(const PearlComplex& c, const ReduceOptions& opt = {});

struct MinimalModel {
    PearlComplex source;
    PearlComplex cmin;
    ChainMap phi;  // source -> cmin
    ChainMap psi;  // cmin -> source
    BasisSplit split;
};

MinimalModel reduce(const PearlComplex& c, const ReduceOptions& opt = {});

Report verify(const MinimalModel& m);
// c = phi_b psi_a : a.cmin -> b.cmin must be a degree preserving chain isomorphism.
Report compare(const MinimalModel& a, const MinimalModel& b);

struct NarrowCertificate {
    HChain x;  // chain in cmin with delta x = [L] t^q
    long long q = 0;
};
// Throws ArgumentError when no fundamental class is marked.
std::optional<NarrowCertificate> is_narrow(const MinimalModel& m);
bool is_wide(const MinimalModel& m);

// Z2 bilinear operation on basis pairs of a complex; the image of (g_i, g_j) is a
// chain of degree |g_i| + |g_j| - shift.
struct BilinearOp {
    int shift = 0;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> table;

    HChain apply(const HChain& a, const HChain& b) const;
};

// Positivity of every table entry on the given complex.
bool is_positive_op(const BilinearOp& op, const PearlComplex& c);
// d(a b) = (da) b + a (db) on all basis pairs; returns the first failing pair.
std::optional<std::pair<std::size_t, std::size_t>> leibniz_defect(const BilinearOp& op,
                                                                  const PearlComplex& c);

// x~ o y~ = phi(op(psi x~, psi y~)).
BilinearOp transport_bilinear(const MinimalModel& m, const BilinearOp& op);

}  // namespace pearl
