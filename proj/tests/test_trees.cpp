#include "pearl/errors.hpp"
#include "pearl/trees.hpp"

#include <doctest.h>

#include <algorithm>
#include <functional>

using namespace pearl;

namespace {

// Compositions of m into positive parts: 2^{m-1}, and 1 for m = 0.
long long f(int m) { return m == 0 ? 1 : (1LL << (m - 1)); }

long long product_oracle(int m) {
    long long c = 0;
    for (int a = 0; a <= m; ++a)
        for (int b = 0; a + b <= m; ++b)
            for (int v = 0; a + b + v <= m; ++v) c += f(a) * f(b) * f(m - a - b - v);
    return c;
}

long long module_oracle(int m) {
    long long c = 0;
    for (int a = 0; a <= m; ++a)
        for (int v = 0; a + v <= m; ++v) c += f(a) * f(m - a - v);
    return c;
}

long long theta_oracle(int m) {
    long long c = 0;
    // One 4-valent vertex: chains below and above three entries.
    for (int a = 0; a <= m; ++a)
        for (int b = 0; a + b <= m; ++b)
            for (int d = 0; a + b + d <= m; ++d)
                for (int v = 0; a + b + d + v <= m; ++v) c += f(a) * f(b) * f(d) * f(m - a - b - d - v);
    // Two binary shapes: six chains and two vertices.
    long long two = 0;
    std::vector<int> parts(5);
    std::function<void(int, int, long long)> rec = [&](int i, int left, long long w) {
        if (i == 5) {
            two += w * (left + 1);  // two vertex indices absorb the rest
            return;
        }
        for (int p = 0; p <= left; ++p) rec(i + 1, left - p, w * f(p));
    };
    rec(0, m, 1);
    return c + 2 * two;
}

LabeledTree chain(const std::vector<int>& mus, int x, int y, TreeGeometry g = {1, 2, std::nullopt}) {
    LabeledTree t;
    t.geom = g;
    TreeVertex X;
    X.kind = VertexKind::Exit;
    X.label = "y";
    X.degree = y;
    std::size_t cur = t.add(X);
    for (auto it = mus.rbegin(); it != mus.rend(); ++it) {
        TreeVertex d;
        d.mu = *it;
        std::size_t k = t.add(d);
        t.attach(k, cur);
        cur = k;
    }
    TreeVertex e;
    e.kind = VertexKind::Entry;
    e.label = "x1";
    e.degree = x;
    t.attach(t.add(e), cur);
    return color_tree(t, {"f1"}, ExitRule::for_kind(MarkSelectorKind::Differential));
}

std::size_t count_type(const std::vector<Degeneration>& ds, DegenerationType ty) {
    return static_cast<std::size_t>(
        std::count_if(ds.begin(), ds.end(), [&](const Degeneration& d) { return d.type == ty; }));
}

}  // namespace

TEST_CASE("differential chains match the composition count") {
    TreeGeometry g{1, 2, std::nullopt};
    auto all = enumerate_trees({{1}, 0}, MarkSelectorKind::Differential, 4, {0, 2, 4}, g);
    CHECK(all.size() == 4);
    for (auto& t : all) CHECK(virtual_dimension(t, MarkSelectorKind::Differential) == t.maslov());
    CHECK(enumerate_trees({{1}, 0}, MarkSelectorKind::Differential, 4, {0}, g).size() == 1);
    CHECK(enumerate_trees({{1}, 0}, MarkSelectorKind::Differential, 0, {0, 1, 2}, g).size() == 1);
    CHECK(all.front().canonical() == "X(y:0){[L,f1]E(x1:1)}");

    for (int N : {2, 3, 5})
        for (int M = 0; M <= 5; ++M) {
            std::set<int> dims;
            for (int d = -10; d <= 40; ++d) dims.insert(d);
            TreeGeometry h{3, N, std::nullopt};
            CHECK(enumerate_trees({{2}, 0}, MarkSelectorKind::Differential, M * N, dims, h).size() ==
                  static_cast<std::size_t>(1LL << M));
        }
}

TEST_CASE("enumeration sorts by Maslov index and rejects bad input") {
    TreeGeometry g{1, 2, std::nullopt};
    auto all = enumerate_trees({{1}, 0}, MarkSelectorKind::Differential, 6, {0, 2, 4, 6}, g);
    for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].maslov() <= all[i].maslov());
    CHECK_THROWS_AS(enumerate_trees({{1}, 0}, MarkSelectorKind::Differential, 3, {0}, g), ArgumentError);
    CHECK_THROWS_AS(enumerate_trees({{1, 1}, 0}, MarkSelectorKind::Differential, 2, {0}, g), ArgumentError);
}

TEST_CASE("product, module and theta counts match brute force") {
    std::set<int> all;
    for (int d = -50; d <= 50; ++d) all.insert(d);
    for (int N : {2, 3})
        for (int m = 0; m <= 4; ++m) {
            TreeGeometry g{2, N, std::nullopt};
            auto up_to = [&](MarkSelectorKind k, std::vector<int> e) {
                return enumerate_trees({e, 0}, k, m * N, all, g).size();
            };
            long long p = 0, mo = 0, th = 0;
            for (int j = 0; j <= m; ++j) {
                p += product_oracle(j);
                mo += module_oracle(j);
                th += theta_oracle(j);
            }
            CHECK(up_to(MarkSelectorKind::Product, {1, 1}) == static_cast<std::size_t>(p));
            CHECK(up_to(MarkSelectorKind::ModuleAction, {1, 1}) == static_cast<std::size_t>(mo));
            CHECK(up_to(MarkSelectorKind::FamilyTheta, {1, 1, 1}) == static_cast<std::size_t>(th));
        }
}

TEST_CASE("the unit product tree") {
    for (int n : {1, 2, 5}) {
        TreeGeometry g{n, 2, std::nullopt};
        auto ts = enumerate_trees({{n, n}, n}, MarkSelectorKind::Product, 4, {0}, g);
        REQUIRE(ts.size() == 1);
        CHECK(ts[0].maslov() == 0);
        CHECK(ts[0].canonical() ==
              "X(y:" + std::to_string(n) + "){[L,f3]D(0){[L,f1]E(x1:" + std::to_string(n) + "),[L,f2]E(x2:" +
                  std::to_string(n) + ")}}");
    }
}

TEST_CASE("validation reports each violated condition") {
    auto unstable = chain({0}, 1, 0);
    auto r = validate_tree(unstable);
    REQUIRE_FALSE(r.ok());
    CHECK(r.failures().front().name == "stability");

    auto bad_index = chain({3}, 1, 0);
    CHECK(validate_tree(bad_index).failures().front().name == "labels");

    LabeledTree s = chain({2}, 1, 0, {1, 2, 1});
    s.v[1].kind = VertexKind::Sphere;
    auto rs = validate_tree(s);
    REQUIRE_FALSE(rs.ok());
    bool typed = false;
    for (auto& it : rs.failures()) typed |= it.name == "vertex types";
    CHECK(typed);

    LabeledTree cut = chain({2}, 1, 0);
    cut.v[2].parent.reset();
    CHECK(validate_tree(cut).failures().front().name == "structure");

    LabeledTree pert = chain({2}, 1, 0);
    pert.v[1].perturbed = true;
    CHECK(validate_tree(pert).failures().front().name == "perturbation");

    LabeledTree dup = enumerate_trees({{1, 1}, 1}, MarkSelectorKind::Product, 0, {0}, {1, 2, std::nullopt}).at(0);
    dup.v[dup.v[1].children[1]].color = "f1";
    CHECK(validate_tree(dup).failures().front().name == "colors");

    CHECK(validate_tree(chain({2, 4}, 1, 0)).ok());
}

TEST_CASE("virtual dimension by kind") {
    const int n = 3;
    TreeGeometry g{n, 2, std::nullopt};
    std::set<int> any;
    for (int d = -40; d <= 40; ++d) any.insert(d);

    for (auto& t : enumerate_trees({{2, 1}, 0}, MarkSelectorKind::ModuleAction, 4, any, g))
        CHECK(virtual_dimension(t, MarkSelectorKind::ModuleAction) == 2 + 1 - 0 + t.maslov() - 2 * n);
    for (auto& t : enumerate_trees({{2}, 1}, MarkSelectorKind::Inclusion, 4, any, g)) {
        CHECK(t.v[t.v[t.root].children[0]].edge == EdgeType::M);
        CHECK(virtual_dimension(t, MarkSelectorKind::Inclusion) == 2 - 1 + t.maslov());
    }
    for (auto& t : enumerate_trees({{2, 2}, 1}, MarkSelectorKind::Product, 4, any, g))
        CHECK(virtual_dimension(t, MarkSelectorKind::Product) == 2 + 2 - 1 + t.maslov() - n);
    for (auto& t : enumerate_trees({{1, 1, 1}, 0}, MarkSelectorKind::FamilyTheta, 2, any, g))
        CHECK(virtual_dimension(t, MarkSelectorKind::FamilyTheta) == 3 + t.maslov() - 2 * n + 1);

    TreeGeometry gm{n, 2, 2};
    auto tau = enumerate_trees({{4, 4, 1}, 0}, MarkSelectorKind::FamilyTau, 4, any, gm);
    bool sphere = false;
    for (auto& t : tau) {
        CHECK(virtual_dimension(t, MarkSelectorKind::FamilyTau) == 9 + t.maslov() - 4 * n + 1);
        for (auto& x : t.v) sphere |= x.kind == VertexKind::Sphere;
    }
    CHECK(sphere);

    // A bare M edge: |a| - |b| - 1.
    LabeledTree m;
    m.geom = g;
    TreeVertex X;
    X.kind = VertexKind::Exit;
    X.degree = 2;
    m.add(X);
    TreeVertex a;
    a.kind = VertexKind::Entry;
    a.degree = 5;
    a.edge = EdgeType::M;
    m.attach(m.add(a), 0);
    CHECK(virtual_dimension(m, MarkSelectorKind::Differential) == 2);

    CHECK_THROWS_AS(virtual_dimension(chain({2}, 1, 0), MarkSelectorKind::Product), ArgumentError);
    CHECK_THROWS_AS(virtual_dimension(chain({0}, 1, 0), MarkSelectorKind::Differential), ArgumentError);
    CHECK(infer_selector(chain({2}, 1, 0)) == MarkSelectorKind::Differential);
}

TEST_CASE("exit-rule coloring") {
    TreeGeometry g{2, 2, std::nullopt};
    auto t = enumerate_trees({{1, 1}, 0}, MarkSelectorKind::Product, 2, {-2, 0}, g).at(0);
    auto rule = ExitRule::for_kind(MarkSelectorKind::Product);
    CHECK(color_tree(t, {"f1", "f2"}, rule).canonical() == t.canonical());
    CHECK(t.v[t.v[t.root].children[0]].color == "f3");

    auto simp = color_tree(t, {"f1", "f2"}, ExitRule::for_kind(MarkSelectorKind::ProductSimplified));
    CHECK(simp.v[simp.v[simp.root].children[0]].color == "f2");

    CHECK_THROWS_AS(color_tree(t, {"f1"}, rule), ArgumentError);
    CHECK_THROWS_AS(color_tree(t, {"f1", "f2"}, ExitRule::for_kind(MarkSelectorKind::Differential)), ArgumentError);

    auto th = ExitRule::for_kind(MarkSelectorKind::FamilyTheta);
    CHECK(th.lookup({"f3", "f1"}, EdgeType::L) == "f3");
    CHECK(th.lookup({"f2", "f1"}, EdgeType::L) == "f2");
    CHECK_FALSE(th.lookup({"f1", "f2"}, EdgeType::M));
    auto in = ExitRule::for_kind(MarkSelectorKind::Inclusion);
    CHECK(in.lookup({"f1"}, EdgeType::M) == "f2");
    CHECK(parse_selector("module") == MarkSelectorKind::ModuleAction);
    CHECK_FALSE(parse_selector("nope"));
}

TEST_CASE("cusp splits, zero-length edges and the round trip") {
    auto t = chain({4}, 1, 0);
    auto ds = degeneration_neighbors(t);
    REQUIRE(count_type(ds, DegenerationType::CuspTwoComponents) == 1);
    for (auto& d : ds)
        if (d.type == DegenerationType::CuspTwoComponents) {
            CHECK(d.tree.canonical() == chain({2, 2}, 1, 0).canonical());
            CHECK(merge_edge(d.tree, d.site).canonical() == t.canonical());
        }
    CHECK(count_type(ds, DegenerationType::BrokenFlowLine) == 2);
    CHECK(count_type(ds, DegenerationType::ZeroLengthEdge) == 0);

    auto two = chain({2, 2}, 1, 0);
    auto dz = degeneration_neighbors(two);
    REQUIRE(count_type(dz, DegenerationType::ZeroLengthEdge) == 1);
    for (auto& d : dz)
        if (d.type == DegenerationType::ZeroLengthEdge) CHECK(d.tree.canonical() == t.canonical());

    std::set<int> any;
    for (int d = -40; d <= 40; ++d) any.insert(d);
    for (auto kind : {MarkSelectorKind::Product, MarkSelectorKind::ModuleAction, MarkSelectorKind::FamilyTau}) {
        std::vector<int> e = kind == MarkSelectorKind::FamilyTau ? std::vector<int>{4, 4, 1} : std::vector<int>{1, 1};
        for (auto& tree : enumerate_trees({e, 0}, kind, 4, any, {2, 2, 2}))
            for (auto& d : degeneration_neighbors(tree))
                if (d.type == DegenerationType::CuspTwoComponents) {
                    CHECK(validate_tree(d.tree).ok());
                    CHECK(merge_edge(d.tree, d.site).canonical() == tree.canonical());
                }
    }
    CHECK_THROWS_AS(merge_edge(t, 2), ArgumentError);
}

TEST_CASE("broken pieces of one-dimensional trees are rigid") {
    const int n = 2;
    TreeGeometry g{n, 2, std::nullopt};
    std::size_t checked = 0;
    auto run = [&](const TreeSymbol& sym, MarkSelectorKind kind) {
        for (auto& t : enumerate_trees(sym, kind, 6, {1}, g))
            for (auto& d : degeneration_neighbors(t)) {
                if (d.type != DegenerationType::BrokenFlowLine) continue;
                auto [up, low] = break_pieces(d.tree, d.site);
                auto ku = infer_selector(up);
                auto kl = infer_selector(low);
                REQUIRE(kl);
                // A bare M edge has no selector of its own.
                CHECK(virtual_dimension(up, ku.value_or(MarkSelectorKind::Differential)) == 0);
                CHECK(virtual_dimension(low, *kl) == 0);
                ++checked;
            }
    };
    run({{2}, 0}, MarkSelectorKind::Differential);
    run({{2}, 1}, MarkSelectorKind::Differential);
    run({{1, 2}, 0}, MarkSelectorKind::Product);
    run({{2}, 4}, MarkSelectorKind::Differential);
    run({{1, 2}, 2}, MarkSelectorKind::Product);
    run({{1, 2}, 0}, MarkSelectorKind::ModuleAction);
    CHECK(checked > 10);
}
