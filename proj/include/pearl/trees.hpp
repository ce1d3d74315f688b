// Planar labeled trees indexing pearl moduli spaces: validation, virtual
// dimension, exit-rule coloring, enumeration and codimension-one moves.
#pragma once

#include "pearl/report.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace pearl {

enum class VertexKind { Entry, Exit, Disk, Sphere, Break };
enum class EdgeType { L, M };
enum class MarkSelectorKind {
    Differential,
    Product,
    ProductSimplified,
    ModuleAction,
    Inclusion,
    FamilyTheta,
    FamilyTau
};

std::string to_string(VertexKind k);
std::string to_string(EdgeType e);
std::string to_string(MarkSelectorKind k);
// Accepts the to_string spellings ("differential", "product", ...).
std::optional<MarkSelectorKind> parse_selector(const std::string& s);

struct TreeVertex {
    VertexKind kind = VertexKind::Disk;
    std::string label;  // critical point id for entries, exit and breaks
    int degree = 0;     // entries, exit and breaks
    int mu = 0;         // disks: Maslov index, spheres: 2 c_1
    bool perturbed = false;
    std::vector<long long> classes;  // optional class label, empty when unused
    std::optional<std::size_t> parent;
    std::vector<std::size_t> children;  // arriving edges in planar order
    EdgeType edge = EdgeType::L;        // exiting edge, unused at the exit
    std::string color;                  // function on the exiting edge
    friend bool operator==(const TreeVertex&, const TreeVertex&) = default;
};

struct TreeGeometry {
    int n = 1;
    int N_L = 2;
    std::optional<int> C_M;  // nullopt: spheres are not allowed
    friend bool operator==(const TreeGeometry&, const TreeGeometry&) = default;
};

struct LabeledTree {
    TreeGeometry geom;
    std::vector<TreeVertex> v;
    std::size_t root = 0;  // the exit

    std::size_t add(TreeVertex x);
    void attach(std::size_t child, std::size_t parent);  // appended as the last arriving edge
    std::size_t valence(std::size_t i) const;
    std::size_t n_L(std::size_t i) const;
    std::size_t n_M(std::size_t i) const;
    int maslov() const;  // mu[T], sum over interior vertices
    // Entries in planar order (left to right).
    std::vector<std::size_t> entries() const;
    std::string canonical() const;
};

Report validate_tree(const LabeledTree& t);

// k entries, s of them on M, exit type; nullopt for shapes outside the kinds.
std::optional<MarkSelectorKind> infer_selector(const LabeledTree& t);

// sum |x_i| - |y| + mu[T] + eps(k) - (s + k - 1) n, eps = -1 when k = 1 and the
// exit lies on L; +1 for the family selectors. A single M edge counts |a| - |b| - 1.
// Throws ArgumentError for an invalid tree or a selector that does not fit the symbol.
int virtual_dimension(const LabeledTree& t, MarkSelectorKind sel);

struct ExitRule {
    std::map<std::pair<std::vector<std::string>, EdgeType>, std::string> table;
    void set(std::vector<std::string> in, EdgeType out_type, std::string out) {
        table[{std::move(in), out_type}] = std::move(out);
    }
    std::optional<std::string> lookup(const std::vector<std::string>& in, EdgeType out_type) const;
    // Rules of the standard operations on functions f1, f2, f3.
    static ExitRule for_kind(MarkSelectorKind k);
};

// Default entry colors for a kind: f1, f2, ... in symbol order.
std::vector<std::string> entry_colors_for(MarkSelectorKind k);

// Colors every edge from the entry colors, leaves to root. Throws ArgumentError
// when the rule is undefined on a configuration or the entry count differs.
LabeledTree color_tree(LabeledTree t, const std::vector<std::string>& entry_colors, const ExitRule& rule);

struct TreeSymbol {
    std::vector<int> entries;  // degrees in planar order
    int exit = 0;
};

// Trees of the given kind and symbol with mu[T] <= max_maslov and virtual
// dimension in dims, deduplicated and sorted by (mu, canonical form).
// Throws ArgumentError if max_maslov is not a multiple of N_L or the symbol
// does not match the kind.
std::vector<LabeledTree> enumerate_trees(const TreeSymbol& sym, MarkSelectorKind kind, int max_maslov,
                                         const std::set<int>& dims, const TreeGeometry& g);

enum class DegenerationType { BrokenFlowLine, CuspTwoComponents, ZeroLengthEdge };
std::string to_string(DegenerationType d);

struct Degeneration {
    DegenerationType type;
    LabeledTree tree;
    std::size_t site = 0;  // new break vertex, or the upper vertex of the 0-length edge
};

// Codimension-one neighbors. Splits color the new edge with `rule`, or with the
// rule of the inferred kind when none is given.
std::vector<Degeneration> degeneration_neighbors(const LabeledTree& t, const ExitRule* rule = nullptr);

// Contracts the 0-length edge above `upper`, the inverse of a cusp split.
LabeledTree merge_edge(const LabeledTree& t, std::size_t upper);

// The two trees on either side of a break vertex: (upper, lower).
std::pair<LabeledTree, LabeledTree> break_pieces(const LabeledTree& t, std::size_t brk);

}  // namespace pearl
