#include "pearl/trees.hpp"

#include "pearl/errors.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace pearl {

std::string to_string(VertexKind k) {
    switch (k) {
        case VertexKind::Entry: return "entry";
        case VertexKind::Exit: return "exit";
        case VertexKind::Disk: return "disk";
        case VertexKind::Sphere: return "sphere";
        case VertexKind::Break: return "break";
    }
    return "?";
}

std::string to_string(EdgeType e) { return e == EdgeType::L ? "L" : "M"; }

std::string to_string(MarkSelectorKind k) {
    switch (k) {
        case MarkSelectorKind::Differential: return "differential";
        case MarkSelectorKind::Product: return "product";
        case MarkSelectorKind::ProductSimplified: return "product-simplified";
        case MarkSelectorKind::ModuleAction: return "module";
        case MarkSelectorKind::Inclusion: return "inclusion";
        case MarkSelectorKind::FamilyTheta: return "family-theta";
        case MarkSelectorKind::FamilyTau: return "family-tau";
    }
    return "?";
}

std::optional<MarkSelectorKind> parse_selector(const std::string& s) {
    for (auto k : {MarkSelectorKind::Differential, MarkSelectorKind::Product, MarkSelectorKind::ProductSimplified,
                   MarkSelectorKind::ModuleAction, MarkSelectorKind::Inclusion, MarkSelectorKind::FamilyTheta,
                   MarkSelectorKind::FamilyTau})
        if (to_string(k) == s) return k;
    return std::nullopt;
}

std::string to_string(DegenerationType d) {
    switch (d) {
        case DegenerationType::BrokenFlowLine: return "brokenFlowLine";
        case DegenerationType::CuspTwoComponents: return "cuspTwoComponents";
        case DegenerationType::ZeroLengthEdge: return "zeroLengthEdge";
    }
    return "?";
}

std::size_t LabeledTree::add(TreeVertex x) {
    v.push_back(std::move(x));
    return v.size() - 1;
}

void LabeledTree::attach(std::size_t child, std::size_t parent) {
    v[child].parent = parent;
    v[parent].children.push_back(child);
}

std::size_t LabeledTree::valence(std::size_t i) const { return v[i].children.size() + (v[i].parent ? 1 : 0); }

std::size_t LabeledTree::n_L(std::size_t i) const {
    std::size_t k = (v[i].parent && v[i].edge == EdgeType::L) ? 1 : 0;
    for (auto c : v[i].children) k += v[c].edge == EdgeType::L;
    return k;
}

std::size_t LabeledTree::n_M(std::size_t i) const { return valence(i) - n_L(i); }

int LabeledTree::maslov() const {
    int m = 0;
    for (const auto& x : v)
        if (x.kind == VertexKind::Disk || x.kind == VertexKind::Sphere) m += x.mu;
    return m;
}

std::vector<std::size_t> LabeledTree::entries() const {
    std::vector<std::size_t> out;
    if (v.empty()) return out;
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
        if (v[i].kind == VertexKind::Entry) out.push_back(i);
        for (auto c : v[i].children) walk(c);
    };
    walk(root);
    return out;
}

std::string LabeledTree::canonical() const {
    std::function<std::string(std::size_t)> node = [&](std::size_t i) {
        const auto& x = v[i];
        std::ostringstream os;
        if (x.parent) os << "[" << to_string(x.edge) << "," << x.color << "]";
        switch (x.kind) {
            case VertexKind::Entry: os << "E(" << x.label << ":" << x.degree << ")"; break;
            case VertexKind::Exit: os << "X(" << x.label << ":" << x.degree << ")"; break;
            case VertexKind::Break: os << "B(" << x.label << ":" << x.degree << ")"; break;
            case VertexKind::Disk:
            case VertexKind::Sphere:
                os << (x.kind == VertexKind::Disk ? "D(" : "S(") << x.mu;
                if (x.perturbed) os << ",p";
                for (auto c : x.classes) os << ";" << c;
                os << ")";
                break;
        }
        if (!x.children.empty()) {
            os << "{";
            for (std::size_t k = 0; k < x.children.size(); ++k) os << (k ? "," : "") << node(x.children[k]);
            os << "}";
        }
        return os.str();
    };
    return v.empty() ? std::string() : node(root);
}

namespace {

bool interior(VertexKind k) { return k == VertexKind::Disk || k == VertexKind::Sphere; }

// Renumbers the vertices reachable from the root in preorder.
LabeledTree rebuild(const LabeledTree& t) {
    LabeledTree out;
    out.geom = t.geom;
    std::function<void(std::size_t, std::optional<std::size_t>)> copy = [&](std::size_t i,
                                                                           std::optional<std::size_t> p) {
        TreeVertex x = t.v[i];
        x.children.clear();
        x.parent.reset();
        std::size_t j = out.add(std::move(x));
        if (p) out.attach(j, *p);
        for (auto c : t.v[i].children) copy(c, j);
    };
    copy(t.root, std::nullopt);
    out.root = 0;
    return out;
}

struct Signature {
    std::size_t k = 0, s = 0;
    bool exit_on_L = true;
};

Signature signature(const LabeledTree& t) {
    Signature g;
    auto e = t.entries();
    g.k = e.size();
    for (auto i : e) g.s += t.v[i].edge == EdgeType::M;
    const auto& r = t.v[t.root];
    g.exit_on_L = r.children.empty() || t.v[r.children.front()].edge == EdgeType::L;
    return g;
}

bool fits(MarkSelectorKind sel, const Signature& g) {
    switch (sel) {
        case MarkSelectorKind::Differential: return g.k == 1 && g.s == 0 && g.exit_on_L;
        case MarkSelectorKind::Inclusion: return g.k == 1 && g.s == 0 && !g.exit_on_L;
        case MarkSelectorKind::Product:
        case MarkSelectorKind::ProductSimplified: return g.k == 2 && g.s == 0 && g.exit_on_L;
        case MarkSelectorKind::ModuleAction: return g.k == 2 && g.s == 1 && g.exit_on_L;
        case MarkSelectorKind::FamilyTheta: return g.k == 3 && g.s == 0 && g.exit_on_L;
        case MarkSelectorKind::FamilyTau: return g.k == 3 && g.s == 2 && g.exit_on_L;
    }
    return false;
}

bool pure_M_edge(const LabeledTree& t, const Signature& g) {
    if (g.k != 1 || g.s != 1 || g.exit_on_L) return false;
    for (const auto& x : t.v)
        if (interior(x.kind)) return false;
    return true;
}

}  // namespace

Report validate_tree(const LabeledTree& t) {
    Report r;
    auto fail = [&](const std::string& name, std::size_t i, const std::string& what) {
        r.fail(name, "vertex " + std::to_string(i) + ": " + what);
    };
    if (t.v.empty() || t.root >= t.v.size()) {
        r.fail("structure", "no root");
        return r;
    }
    const auto& g = t.geom;
    if (t.v[t.root].kind != VertexKind::Exit) fail("valence", t.root, "root is not the exit");
    if (t.v[t.root].parent) fail("structure", t.root, "root has a parent");
    if (t.v[t.root].children.size() != 1) fail("valence", t.root, "the exit must have valence one");

    // Parent and child links agree and every vertex hangs off the root exactly once.
    std::vector<int> seen(t.v.size(), 0);
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
        if (seen[i]++) return;
        for (auto c : t.v[i].children) {
            if (c >= t.v.size() || t.v[c].parent != i) {
                fail("structure", i, "inconsistent child link");
                continue;
            }
            walk(c);
        }
    };
    walk(t.root);
    for (std::size_t i = 0; i < t.v.size(); ++i) {
        if (seen[i] != 1) fail("structure", i, seen[i] ? "reached twice" : "not connected to the exit");
    }
    if (!r.ok()) return r;

    for (std::size_t i = 0; i < t.v.size(); ++i) {
        const auto& x = t.v[i];
        if (x.kind == VertexKind::Exit && i != t.root) fail("valence", i, "second exit");
        if (x.kind == VertexKind::Entry && !x.children.empty()) fail("valence", i, "entries must have valence one");
        if (x.kind == VertexKind::Break &&
            (x.children.size() != 1 || t.v[x.children[0]].edge != x.edge))
            fail("valence", i, "a break sits inside a single edge");
        if (x.perturbed && (x.kind != VertexKind::Disk || (t.valence(i) != 3 && t.valence(i) != 4)))
            fail("perturbation", i, "only disks of valence 3 or 4 carry perturbations");
        std::set<std::string> colors;
        for (auto c : x.children) {
            const auto& col = t.v[c].color;
            if (!col.empty() && !colors.insert(col).second) fail("colors", i, "repeated arriving color " + col);
        }
        if (!interior(x.kind)) continue;
        if (x.children.empty()) fail("valence", i, "interior vertex without arriving edges");
        const auto nL = t.n_L(i), nM = t.n_M(i);
        if (x.mu < 0) fail("labels", i, "negative index");
        if (x.kind == VertexKind::Disk) {
            if (nL == 0) fail("vertex types", i, "disk without L edges");
            if (g.N_L <= 0 || x.mu % g.N_L != 0) fail("labels", i, "Maslov index not a multiple of N_L");
            if (x.mu == 0 && nL <= 2 && nM == 0) fail("stability", i, "constant disk with n_L <= 2 and n_M = 0");
        } else {
            if (nL != 0) fail("vertex types", i, "sphere with an L edge");
            if (x.mu != 0 && (!g.C_M || x.mu % (2 * *g.C_M) != 0))
                fail("labels", i, "sphere index not a multiple of 2 C_M");
            if (x.mu == 0 && nM < 3) fail("stability", i, "constant sphere with n_M < 3");
        }
    }
    if (r.items.empty()) r.add("tree", true);
    return r;
}

std::optional<MarkSelectorKind> infer_selector(const LabeledTree& t) {
    const auto g = signature(t);
    for (auto k : {MarkSelectorKind::Differential, MarkSelectorKind::Inclusion, MarkSelectorKind::Product,
                   MarkSelectorKind::ModuleAction, MarkSelectorKind::FamilyTheta, MarkSelectorKind::FamilyTau})
        if (fits(k, g)) return k;
    return std::nullopt;
}

int virtual_dimension(const LabeledTree& t, MarkSelectorKind sel) {
    auto rep = validate_tree(t);
    if (!rep.ok()) throw ArgumentError("invalid tree: " + rep.failures().front().detail);
    const auto g = signature(t);
    int sum = 0;
    for (auto i : t.entries()) sum += t.v[i].degree;
    const int y = t.v[t.root].degree;
    if (pure_M_edge(t, g)) return sum - y - 1;
    if (!fits(sel, g)) throw ArgumentError("selector " + to_string(sel) + " does not fit the symbol");
    const int k = static_cast<int>(g.k), s = static_cast<int>(g.s);
    const int eps = (k == 1 && g.exit_on_L) ? -1 : 0;
    const int family = (sel == MarkSelectorKind::FamilyTheta || sel == MarkSelectorKind::FamilyTau) ? 1 : 0;
    return sum - y + t.maslov() + eps - (s + k - 1) * t.geom.n + family;
}

std::optional<std::string> ExitRule::lookup(const std::vector<std::string>& in, EdgeType out_type) const {
    auto it = table.find({in, out_type});
    if (it == table.end()) return std::nullopt;
    return it->second;
}

ExitRule ExitRule::for_kind(MarkSelectorKind k) {
    ExitRule r;
    auto singles = [&](std::initializer_list<const char*> fs) {
        for (auto f : fs) r.set({f}, EdgeType::L, f);
    };
    switch (k) {
        case MarkSelectorKind::Differential: singles({"f1"}); break;
        case MarkSelectorKind::Product:
            singles({"f1", "f2", "f3"});
            r.set({"f1", "f2"}, EdgeType::L, "f3");
            break;
        case MarkSelectorKind::ProductSimplified:
            singles({"f1", "f2"});
            r.set({"f1", "f2"}, EdgeType::L, "f2");
            break;
        case MarkSelectorKind::ModuleAction:
            singles({"f2"});
            r.set({"f1", "f2"}, EdgeType::L, "f2");
            break;
        case MarkSelectorKind::Inclusion:
            singles({"f1"});
            r.set({"f1"}, EdgeType::M, "f2");
            break;
        case MarkSelectorKind::FamilyTheta:
        case MarkSelectorKind::FamilyTau: {
            // Theta(f_{k1}, ..., f_{ki}) = f_max on every ordered subset.
            const std::vector<std::string> f{"f1", "f2", "f3"};
            for (unsigned mask = 1; mask < 8; ++mask) {
                std::vector<std::string> sub;
                for (unsigned i = 0; i < 3; ++i)
                    if (mask >> i & 1) sub.push_back(f[i]);
                std::string top = sub.back();
                std::sort(sub.begin(), sub.end());
                do {
                    r.set(sub, EdgeType::L, top);
                    if (k == MarkSelectorKind::FamilyTau && !(mask & 4)) r.set(sub, EdgeType::M, top);
                } while (std::next_permutation(sub.begin(), sub.end()));
            }
            break;
        }
    }
    return r;
}

std::vector<std::string> entry_colors_for(MarkSelectorKind k) {
    switch (k) {
        case MarkSelectorKind::Differential:
        case MarkSelectorKind::Inclusion: return {"f1"};
        case MarkSelectorKind::Product:
        case MarkSelectorKind::ProductSimplified:
        case MarkSelectorKind::ModuleAction: return {"f1", "f2"};
        case MarkSelectorKind::FamilyTheta:
        case MarkSelectorKind::FamilyTau: return {"f1", "f2", "f3"};
    }
    return {};
}

LabeledTree color_tree(LabeledTree t, const std::vector<std::string>& entry_colors, const ExitRule& rule) {
    auto e = t.entries();
    if (e.size() != entry_colors.size())
        throw ArgumentError("color_tree: " + std::to_string(e.size()) + " entries but " +
                            std::to_string(entry_colors.size()) + " colors");
    for (std::size_t i = 0; i < e.size(); ++i) t.v[e[i]].color = entry_colors[i];
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
        for (auto c : t.v[i].children) walk(c);
        auto& x = t.v[i];
        if (x.kind == VertexKind::Break) {
            x.color = t.v[x.children.front()].color;
        } else if (interior(x.kind)) {
            std::vector<std::string> in;
            for (auto c : x.children) in.push_back(t.v[c].color);
            auto out = rule.lookup(in, x.edge);
            if (!out) {
                std::string msg = "exit rule undefined on (";
                for (std::size_t k = 0; k < in.size(); ++k) msg += (k ? "," : "") + in[k];
                throw ArgumentError(msg + "; " + to_string(x.edge) + ")");
            }
            x.color = *out;
        }
    };
    walk(t.root);
    return t;
}

namespace {

std::vector<std::vector<int>> compositions(int budget, int step) {
    if (budget == 0) return {{}};
    std::vector<std::vector<int>> out;
    for (int first = step; first <= budget; first += step)
        for (auto rest : compositions(budget - first, step)) {
            rest.insert(rest.begin(), first);
            out.push_back(std::move(rest));
        }
    return out;
}

enum class Slot { Chain, Vertex, Sphere };

// Every assignment of Maslov budget to the slots with total at most max_mu.
// sphere_step 0 means the geometry has no spheres.
void distribute(const std::vector<Slot>& slots, std::size_t idx, int left, int N, int sphere_step,
                std::vector<std::vector<int>>& cur, const std::function<void(const std::vector<std::vector<int>>&)>& emit) {
    if (idx == slots.size()) {
        emit(cur);
        return;
    }
    const int step = slots[idx] == Slot::Sphere ? sphere_step : N;
    for (int mu = 0; mu <= left; mu += step) {
        if (slots[idx] == Slot::Chain) {
            for (auto& c : compositions(mu, N)) {
                cur.push_back(c);
                distribute(slots, idx + 1, left - mu, N, sphere_step, cur, emit);
                cur.pop_back();
            }
        } else {
            cur.push_back({mu});
            distribute(slots, idx + 1, left - mu, N, sphere_step, cur, emit);
            cur.pop_back();
        }
        if (step == 0) break;
    }
}

struct Builder {
    LabeledTree t;
    std::size_t vertex(VertexKind k, int mu, EdgeType e = EdgeType::L) {
        TreeVertex x;
        x.kind = k;
        x.mu = mu;
        x.edge = e;
        return t.add(std::move(x));
    }
    // Disks with the given indices hanging above `parent`, listed from the entry side.
    std::size_t hang(std::size_t parent, const std::vector<int>& parts) {
        std::size_t cur = parent;
        for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
            std::size_t d = vertex(VertexKind::Disk, *it);
            t.attach(d, cur);
            cur = d;
        }
        return cur;
    }
    void entry(std::size_t parent, const std::string& id, int deg, EdgeType e) {
        TreeVertex x;
        x.kind = VertexKind::Entry;
        x.label = id;
        x.degree = deg;
        x.edge = e;
        t.attach(t.add(std::move(x)), parent);
    }
};

std::size_t expected_entries(MarkSelectorKind k) {
    switch (k) {
        case MarkSelectorKind::Differential:
        case MarkSelectorKind::Inclusion: return 1;
        case MarkSelectorKind::Product:
        case MarkSelectorKind::ProductSimplified:
        case MarkSelectorKind::ModuleAction: return 2;
        case MarkSelectorKind::FamilyTheta:
        case MarkSelectorKind::FamilyTau: return 3;
    }
    return 0;
}

}  // namespace

std::vector<LabeledTree> enumerate_trees(const TreeSymbol& sym, MarkSelectorKind kind, int max_maslov,
                                         const std::set<int>& dims, const TreeGeometry& g) {
    if (g.N_L <= 0 || max_maslov < 0 || max_maslov % g.N_L != 0)
        throw ArgumentError("max Maslov index must be a nonnegative multiple of N_L");
    if (sym.entries.size() != expected_entries(kind))
        throw ArgumentError("symbol has " + std::to_string(sym.entries.size()) + " entries, " + to_string(kind) +
                            " needs " + std::to_string(expected_entries(kind)));
    const auto rule = ExitRule::for_kind(kind);
    const auto colors = entry_colors_for(kind);
    const auto& d = sym.entries;
    const int sphere_step = g.C_M ? 2 * *g.C_M : 0;  // 0: no spheres

    using Assign = std::vector<std::vector<int>>;
    using Shape = std::function<void(Builder&, const Assign&)>;
    const auto L = EdgeType::L, M = EdgeType::M;
    std::vector<std::pair<std::vector<Slot>, Shape>> shapes;
    auto V = Slot::Vertex, C = Slot::Chain;
    switch (kind) {
        case MarkSelectorKind::Differential:
            shapes.push_back({{C}, [&](Builder& b, const Assign& a) { b.entry(b.hang(0, a[0]), "x1", d[0], L); }});
            break;
        case MarkSelectorKind::Product:
        case MarkSelectorKind::ProductSimplified:
            shapes.push_back({{C, V, C, C}, [&](Builder& b, const Assign& a) {
                                  std::size_t v = b.vertex(VertexKind::Disk, a[1][0]);
                                  b.t.attach(v, b.hang(0, a[0]));
                                  b.entry(b.hang(v, a[2]), "x1", d[0], L);
                                  b.entry(b.hang(v, a[3]), "x2", d[1], L);
                              }});
            break;
        case MarkSelectorKind::ModuleAction:
            shapes.push_back({{C, V, C}, [&](Builder& b, const Assign& a) {
                                  std::size_t v = b.vertex(VertexKind::Disk, a[1][0]);
                                  b.t.attach(v, b.hang(0, a[0]));
                                  b.entry(v, "a1", d[0], M);
                                  b.entry(b.hang(v, a[2]), "x1", d[1], L);
                              }});
            break;
        case MarkSelectorKind::Inclusion:
            shapes.push_back({{V, C}, [&](Builder& b, const Assign& a) {
                                  std::size_t v = b.vertex(VertexKind::Disk, a[0][0], M);
                                  b.t.attach(v, 0);
                                  b.entry(b.hang(v, a[1]), "x1", d[0], L);
                              }});
            break;
        case MarkSelectorKind::FamilyTheta:
            shapes.push_back({{C, V, C, C, C}, [&](Builder& b, const Assign& a) {
                                  std::size_t v = b.vertex(VertexKind::Disk, a[1][0]);
                                  b.t.attach(v, b.hang(0, a[0]));
                                  for (int i = 0; i < 3; ++i)
                                      b.entry(b.hang(v, a[2 + i]), "x" + std::to_string(i + 1), d[i], L);
                              }});
            for (int left = 0; left < 2; ++left)
                shapes.push_back({{C, V, C, V, C, C, C}, [&, left](Builder& b, const Assign& a) {
                                      std::size_t v2 = b.vertex(VertexKind::Disk, a[1][0]);
                                      b.t.attach(v2, b.hang(0, a[0]));
                                      std::size_t v1 = b.vertex(VertexKind::Disk, a[3][0]);
                                      if (left) {
                                          b.t.attach(v1, b.hang(v2, a[2]));
                                          b.entry(b.hang(v1, a[4]), "x1", d[0], L);
                                          b.entry(b.hang(v1, a[5]), "x2", d[1], L);
                                          b.entry(b.hang(v2, a[6]), "x3", d[2], L);
                                      } else {
                                          b.entry(b.hang(v2, a[4]), "x1", d[0], L);
                                          b.t.attach(v1, b.hang(v2, a[2]));
                                          b.entry(b.hang(v1, a[5]), "x2", d[1], L);
                                          b.entry(b.hang(v1, a[6]), "x3", d[2], L);
                                      }
                                  }});
            break;
        case MarkSelectorKind::FamilyTau:
            shapes.push_back({{C, V, C}, [&](Builder& b, const Assign& a) {
                                  std::size_t v = b.vertex(VertexKind::Disk, a[1][0]);
                                  b.t.attach(v, b.hang(0, a[0]));
                                  b.entry(v, "a1", d[0], M);
                                  b.entry(v, "a2", d[1], M);
                                  b.entry(b.hang(v, a[2]), "x1", d[2], L);
                              }});
            shapes.push_back({{C, V, C, V, C}, [&](Builder& b, const Assign& a) {
                                  std::size_t v2 = b.vertex(VertexKind::Disk, a[1][0]);
                                  b.t.attach(v2, b.hang(0, a[0]));
                                  b.entry(v2, "a1", d[0], M);
                                  std::size_t v1 = b.vertex(VertexKind::Disk, a[3][0]);
                                  b.t.attach(v1, b.hang(v2, a[2]));
                                  b.entry(v1, "a2", d[1], M);
                                  b.entry(b.hang(v1, a[4]), "x1", d[2], L);
                              }});
            shapes.push_back({{C, V, Slot::Sphere, C}, [&](Builder& b, const Assign& a) {
                                  std::size_t v = b.vertex(VertexKind::Disk, a[1][0]);
                                  b.t.attach(v, b.hang(0, a[0]));
                                  std::size_t s = b.vertex(VertexKind::Sphere, a[2][0], M);
                                  b.t.attach(s, v);
                                  b.entry(s, "a1", d[0], M);
                                  b.entry(s, "a2", d[1], M);
                                  b.entry(b.hang(v, a[3]), "x1", d[2], L);
                              }});
            break;
    }

    std::map<std::string, LabeledTree> found;
    for (auto& [slots, build] : shapes) {
        std::vector<std::vector<int>> cur;
        distribute(slots, 0, max_maslov, g.N_L, sphere_step, cur, [&](const Assign& a) {
            Builder b;
            b.t.geom = g;
            TreeVertex exit;
            exit.kind = VertexKind::Exit;
            exit.label = "y";
            exit.degree = sym.exit;
            b.t.add(exit);
            build(b, a);
            LabeledTree t = color_tree(rebuild(b.t), colors, rule);
            if (!validate_tree(t).ok()) return;
            if (!dims.count(virtual_dimension(t, kind))) return;
            found.emplace(t.canonical(), std::move(t));
        });
    }
    std::vector<LabeledTree> out;
    for (auto& [key, t] : found) out.push_back(std::move(t));
    std::stable_sort(out.begin(), out.end(),
                     [](const LabeledTree& a, const LabeledTree& b) { return a.maslov() < b.maslov(); });
    return out;
}

LabeledTree merge_edge(const LabeledTree& t, std::size_t upper) {
    if (upper >= t.v.size() || !t.v[upper].parent) throw ArgumentError("merge_edge: no edge above vertex");
    const std::size_t w = *t.v[upper].parent;
    if (!interior(t.v[upper].kind) || !interior(t.v[w].kind))
        throw ArgumentError("merge_edge: both ends must be interior vertices");
    LabeledTree r = t;
    auto& W = r.v[w];
    const auto& U = t.v[upper];
    if (U.kind == VertexKind::Disk) W.kind = VertexKind::Disk;
    W.mu += U.mu;
    for (std::size_t k = 0; k < W.classes.size() && k < U.classes.size(); ++k) W.classes[k] += U.classes[k];
    auto pos = std::find(W.children.begin(), W.children.end(), upper);
    pos = W.children.erase(pos);
    W.children.insert(pos, U.children.begin(), U.children.end());
    for (auto c : U.children) r.v[c].parent = w;
    r.v[upper].children.clear();
    r.v[upper].parent.reset();
    return rebuild(r);
}

std::pair<LabeledTree, LabeledTree> break_pieces(const LabeledTree& t, std::size_t brk) {
    if (brk >= t.v.size() || t.v[brk].kind != VertexKind::Break) throw ArgumentError("break_pieces: not a break");
    const auto& B = t.v[brk];
    LabeledTree up;
    up.geom = t.geom;
    TreeVertex exit;
    exit.kind = VertexKind::Exit;
    exit.label = B.label;
    exit.degree = B.degree;
    up.add(exit);
    std::function<void(std::size_t, std::size_t)> copy = [&](std::size_t i, std::size_t p) {
        TreeVertex x = t.v[i];
        x.children.clear();
        x.parent.reset();
        std::size_t j = up.add(std::move(x));
        up.attach(j, p);
        for (auto c : t.v[i].children) copy(c, j);
    };
    copy(B.children.front(), 0);

    LabeledTree low = t;
    auto& E = low.v[brk];
    E.kind = VertexKind::Entry;
    E.children.clear();
    return {up, rebuild(low)};
}

std::vector<Degeneration> degeneration_neighbors(const LabeledTree& t, const ExitRule* rule) {
    auto rep = validate_tree(t);
    if (!rep.ok()) throw ArgumentError("invalid tree: " + rep.failures().front().detail);
    std::optional<ExitRule> inferred;
    if (!rule)
        if (auto k = infer_selector(t)) inferred = ExitRule::for_kind(*k);
    const ExitRule* R = rule ? rule : (inferred ? &*inferred : nullptr);
    std::vector<Degeneration> out;

    for (std::size_t c = 0; c < t.v.size(); ++c) {
        if (!t.v[c].parent || t.v[c].kind == VertexKind::Break) continue;
        LabeledTree b = t;
        const std::size_t p = *t.v[c].parent;
        TreeVertex x;
        x.kind = VertexKind::Break;
        x.label = "*";
        x.edge = t.v[c].edge;
        x.color = t.v[c].color;
        const std::size_t z = b.add(x);
        std::replace(b.v[p].children.begin(), b.v[p].children.end(), c, z);
        b.v[z].parent = p;
        b.v[z].children = {c};
        b.v[c].parent = z;
        // The placeholder degree makes the upper piece rigid.
        auto [up, low] = break_pieces(b, z);
        if (auto k = infer_selector(up); k || pure_M_edge(up, signature(up)))
            b.v[z].degree = virtual_dimension(up, k.value_or(MarkSelectorKind::Differential));
        b = rebuild(b);
        std::size_t site = 0;
        for (std::size_t i = 0; i < b.v.size(); ++i)
            if (b.v[i].kind == VertexKind::Break && b.v[i].children.size() == 1 &&
                b.v[i].label == "*" && b.v[i].color == x.color && b.v[i].edge == x.edge)
                site = i;
        out.push_back({DegenerationType::BrokenFlowLine, std::move(b), site});
    }

    const int N = t.geom.N_L;
    for (std::size_t i = 0; R && i < t.v.size(); ++i) {
        const auto& X = t.v[i];
        if (!interior(X.kind)) continue;
        const std::size_t m = X.children.size();
        struct Option {
            VertexKind u, w;
            EdgeType e;
        };
        std::vector<Option> opts;
        if (X.kind == VertexKind::Disk) {
            opts.push_back({VertexKind::Disk, VertexKind::Disk, EdgeType::L});
            opts.push_back({VertexKind::Sphere, VertexKind::Disk, EdgeType::M});
            if (X.edge == EdgeType::M) opts.push_back({VertexKind::Disk, VertexKind::Sphere, EdgeType::M});
        } else {
            opts.push_back({VertexKind::Sphere, VertexKind::Sphere, EdgeType::M});
        }
        auto step_of = [&](VertexKind k) { return k == VertexKind::Disk ? N : (t.geom.C_M ? 2 * *t.geom.C_M : 0); };
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t bnd = a + 1; bnd <= m; ++bnd)
                for (const auto& o : opts) {
                    std::vector<std::string> in;
                    for (std::size_t k = a; k < bnd; ++k) in.push_back(t.v[X.children[k]].color);
                    auto col = R->lookup(in, o.e);
                    if (!col) continue;
                    const int su = step_of(o.u);
                    for (int mu_u = 0; mu_u <= X.mu; mu_u += su) {
                        const int mu_w = X.mu - mu_u;
                        const int sw = step_of(o.w);
                        if (sw == 0 ? mu_w != 0 : mu_w % sw != 0) {
                            if (su == 0) break;
                            continue;
                        }
                        LabeledTree r = t;
                        TreeVertex U;
                        U.kind = o.u;
                        U.mu = mu_u;
                        U.edge = o.e;
                        U.color = *col;
                        const std::size_t u = r.add(U);
                        auto& W = r.v[i];
                        W.kind = o.w;
                        W.mu = mu_w;
                        std::vector<std::size_t> moved(X.children.begin() + static_cast<long>(a),
                                                       X.children.begin() + static_cast<long>(bnd));
                        std::vector<std::size_t> keep(X.children.begin(), X.children.begin() + static_cast<long>(a));
                        keep.push_back(u);
                        keep.insert(keep.end(), X.children.begin() + static_cast<long>(bnd), X.children.end());
                        W.children = keep;
                        r.v[u].parent = i;
                        r.v[u].children = moved;
                        for (auto c : moved) r.v[c].parent = u;
                        if (W.perturbed && r.valence(i) != 3 && r.valence(i) != 4) W.perturbed = false;
                        if (!validate_tree(r).ok()) {
                            if (su == 0) break;
                            continue;
                        }
                        // Locate the new upper vertex after renumbering.
                        r.v[u].label = "#";
                        LabeledTree rb = rebuild(r);
                        std::size_t site = 0;
                        for (std::size_t k = 0; k < rb.v.size(); ++k)
                            if (rb.v[k].label == "#") {
                                site = k;
                                rb.v[k].label.clear();
                            }
                        out.push_back({DegenerationType::CuspTwoComponents, std::move(rb), site});
                        if (su == 0) break;
                    }
                }
    }

    for (std::size_t u = 0; u < t.v.size(); ++u) {
        if (!interior(t.v[u].kind) || !t.v[u].parent || !interior(t.v[*t.v[u].parent].kind)) continue;
        LabeledTree r = merge_edge(t, u);
        if (!validate_tree(r).ok()) continue;
        out.push_back({DegenerationType::ZeroLengthEdge, std::move(r), u});
    }
    return out;
}

}  // namespace pearl
