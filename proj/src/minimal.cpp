#include "pearl/minimal.hpp"

#include "pearl/errors.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace pearl {

namespace {

std::vector<std::size_t> xor_support(std::vector<std::size_t> acc) {
    std::sort(acc.begin(), acc.end());
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < acc.size();) {
        std::size_t j = i;
        while (j < acc.size() && acc[j] == acc[i]) ++j;
        if ((j - i) % 2) out.push_back(acc[i]);
        i = j;
    }
    return out;
}

}  // namespace

HChain ChainMap::apply(const HChain& c) const {
    std::vector<std::size_t> acc;
    for (auto g : c.support) acc.insert(acc.end(), image.at(g).begin(), image.at(g).end());
    return HChain{c.degree + shift, xor_support(std::move(acc))};
}

ChainMap identity_map(std::size_t n) {
    ChainMap f{n, n, 0, {}};
    for (std::size_t i = 0; i < n; ++i) f.image.push_back({i});
    return f;
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
    if (f.target_size != g.source_size) throw std::invalid_argument("compose: size mismatch");
    ChainMap r{f.source_size, g.target_size, f.shift + g.shift, {}};
    for (const auto& img : f.image) {
        std::vector<std::size_t> acc;
        for (auto h : img) acc.insert(acc.end(), g.image[h].begin(), g.image[h].end());
        r.image.push_back(xor_support(std::move(acc)));
    }
    return r;
}

bool is_positive_map(const ChainMap& f, const PearlComplex& src, const PearlComplex& tgt) {
    const int N = src.N_L();
    for (std::size_t g = 0; g < src.size(); ++g)
        for (auto h : f.image[g]) {
            long long D = src.degree(g) + f.shift;
            if (tgt.degree(h) < D || residue(tgt.degree(h) - D, N) != 0) return false;
        }
    return true;
}

std::optional<std::size_t> chain_map_defect(const ChainMap& f, const PearlComplex& src,
                                            const PearlComplex& tgt) {
    for (std::size_t g = 0; g < src.size(); ++g) {
        HChain lhs = f.apply(src.apply_d(src.gen(g)));
        HChain rhs = tgt.apply_d(f.apply(src.gen(g)));
        if (lhs.support != rhs.support) return g;
    }
    return std::nullopt;
}

namespace {

std::vector<std::size_t> ordered_gens(const PearlComplex& c, int k, const ReduceOptions& opt) {
    std::vector<std::size_t> g;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c.degree(i) == k) g.push_back(i);
    auto by_id = [&](std::size_t a, std::size_t b) { return c.basis[a].id < c.basis[b].id; };
    std::sort(g.begin(), g.end(), by_id);
    if (opt.order == PivotOrder::ReverseLex) std::reverse(g.begin(), g.end());
    if (opt.order == PivotOrder::Shuffled) {
        std::mt19937_64 rng(opt.seed + static_cast<std::uint64_t>(k + 1000));
        std::shuffle(g.begin(), g.end(), rng);
    }
    return g;
}

// Per-degree data of the basis split, in local coordinates of the ordered generators.
struct DegreeSplit {
    std::vector<std::size_t> gens;
    std::vector<gf2::BitVec> x, y, yp;
    std::vector<std::size_t> y_source;  // y[j] = delta_0 of yp[y_source[j]] one degree up
};

struct FullSplit {
    int lo = 0, hi = -1;
    std::map<int, DegreeSplit> deg;
};

FullSplit compute_split(const PearlComplex& c, const ReduceOptions& opt) {
    FullSplit s;
    if (c.size() == 0) return s;
    s.lo = c.min_degree();
    s.hi = c.max_degree();
    for (int k = s.lo; k <= s.hi; ++k) s.deg[k].gens = ordered_gens(c, k, opt);
    auto local = [&](int k) {
        std::map<std::size_t, std::size_t> pos;
        const auto& g = s.deg[k].gens;
        for (std::size_t i = 0; i < g.size(); ++i) pos[g[i]] = i;
        return pos;
    };
    // delta_0 images of chosen generators, degree by degree.
    for (int k = s.hi; k > s.lo; --k) {
        auto& top = s.deg[k];
        auto& low = s.deg[k - 1];
        auto pos = local(k - 1);
        gf2::Span span(low.gens.size());
        for (std::size_t j = 0; j < top.gens.size(); ++j) {
            gf2::BitVec img(low.gens.size());
            for (const auto& t : c.d[top.gens[j]])
                if (t.t_power == 0) img.flip(pos.at(t.target));
            if (!img.any() || !span.insert(img)) continue;
            gf2::BitVec u(top.gens.size());
            u.set(j);
            top.yp.push_back(u);
            low.y.push_back(img);
            low.y_source.push_back(top.yp.size() - 1);
        }
    }
    // Homology representatives, original cycles first.
    for (int k = s.lo; k <= s.hi; ++k) {
        auto& ds = s.deg[k];
        const std::size_t n = ds.gens.size();
        if (n == 0) continue;
        auto below = k > s.lo ? local(k - 1) : std::map<std::size_t, std::size_t>{};
        const std::size_t nb = k > s.lo ? s.deg[k - 1].gens.size() : 0;
        gf2::BitMatrix m(nb, n);
        for (std::size_t j = 0; j < n; ++j)
            for (const auto& t : c.d[ds.gens[j]])
                if (t.t_power == 0) m.flip(below.at(t.target), j);
        gf2::Span span(n);
        for (const auto& v : ds.y) span.insert(v);
        std::vector<gf2::BitVec> cand;
        for (std::size_t j = 0; j < n; ++j) {
            bool cyc = true;
            for (std::size_t i = 0; i < nb; ++i)
                if (m.get(i, j)) cyc = false;
            if (!cyc) continue;
            gf2::BitVec u(n);
            u.set(j);
            cand.push_back(u);
        }
        for (auto& v : gf2::nullspace(m)) cand.push_back(v);
        for (auto& v : cand)
            if (span.insert(v)) ds.x.push_back(v);
        if (ds.x.size() + ds.y.size() + ds.yp.size() != n)
            throw InvariantError("basis split does not span degree " + std::to_string(k));
    }
    return s;
}

HChain to_chain(const DegreeSplit& ds, const gf2::BitVec& v, int k) {
    HChain h{k, {}};
    for (auto i : v.ones()) h.support.push_back(ds.gens[i]);
    std::sort(h.support.begin(), h.support.end());
    return h;
}

std::string chain_name(const PearlComplex& c, const HChain& h) {
    std::string s;
    for (auto g : h.support) s += (s.empty() ? "" : "+") + c.basis[g].id;
    return s;
}

}  // namespace

BasisSplit split_basis(const PearlComplex& c, const ReduceOptions& opt) {
    require_valid(c);
    FullSplit s = compute_split(c, opt);
    BasisSplit out;
    for (auto& [k, ds] : s.deg) {
        for (auto& v : ds.x) out.x.push_back(to_chain(ds, v, k));
        for (auto& v : ds.yp) {
            out.yp.push_back(to_chain(ds, v, k));
            HChain img{k - 1, {}};
            for (const auto& t : c.d[out.yp.back().support.front()])
                if (t.t_power == 0) img.support.push_back(t.target);
            std::sort(img.support.begin(), img.support.end());
            out.y.push_back(img);
        }
    }
    return out;
}

MinimalModel reduce(const PearlComplex& c, const ReduceOptions& opt) {
    require_valid(c);
    const int N = c.N_L();
    FullSplit s = compute_split(c, opt);
    MinimalModel m;
    m.source = c;
    m.cmin.ring = c.ring;
    m.cmin.n = c.n;

    // Generators of C_min, top degree first; xtilde[k][i] is the index of x_i in degree k.
    std::map<int, std::vector<std::size_t>> xtilde;
    for (int k = s.hi; k >= s.lo; --k) {
        auto& ds = s.deg[k];
        for (auto& v : ds.x) {
            HChain h = to_chain(ds, v, k);
            xtilde[k].push_back(m.cmin.add_generator(chain_name(c, h), k));
            if (c.fundamental && h.support == std::vector<std::size_t>{*c.fundamental})
                m.cmin.fundamental = xtilde[k].back();
            if (c.point && h.support == std::vector<std::size_t>{*c.point})
                m.cmin.point = xtilde[k].back();
        }
    }

    // phi, top degree down. New basis at degree k: x's, then y's, then yp's.
    m.phi = ChainMap{c.size(), m.cmin.size(), 0, std::vector<std::vector<std::size_t>>(c.size())};
    for (int k = s.hi; k >= s.lo; --k) {
        auto& ds = s.deg[k];
        const std::size_t n = ds.gens.size();
        if (n == 0) continue;
        std::vector<std::vector<std::size_t>> newphi;
        gf2::BitMatrix P(n, n);
        std::size_t col = 0;
        auto put = [&](const gf2::BitVec& v) {
            for (auto i : v.ones()) P.set(i, col);
            ++col;
        };
        for (std::size_t i = 0; i < ds.x.size(); ++i) {
            put(ds.x[i]);
            newphi.push_back({xtilde[k][i]});
        }
        for (std::size_t j = 0; j < ds.y.size(); ++j) {
            put(ds.y[j]);
            // h = d(yp) + y has only terms of degree > k.
            const auto& up = s.deg[k + 1];
            HChain yp = to_chain(up, up.yp[ds.y_source[j]], k + 1);
            HChain h = chain_xor(c.apply_d(yp), to_chain(ds, ds.y[j], k));
            for (auto g : h.support)
                if (c.degree(g) <= k) throw InvariantError("reduce: h has a term of degree <= k");
            newphi.push_back(m.phi.apply(h).support);
        }
        for (auto& v : ds.yp) {
            put(v);
            newphi.push_back({});
        }
        auto Pinv = gf2::inverse(P);
        if (!Pinv) throw InvariantError("reduce: split is not a basis");
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::size_t> acc;
            for (std::size_t j = 0; j < n; ++j)
                if (Pinv->get(j, i)) acc.insert(acc.end(), newphi[j].begin(), newphi[j].end());
            m.phi.image[ds.gens[i]] = xor_support(std::move(acc));
        }
    }

    // delta on C_min: delta x~ = phi(d x).
    std::vector<HChain> xchain(m.cmin.size());
    for (int k = s.hi; k >= s.lo; --k) {
        auto& ds = s.deg[k];
        for (std::size_t i = 0; i < ds.x.size(); ++i) xchain[xtilde[k][i]] = to_chain(ds, ds.x[i], k);
    }
    for (std::size_t xi = 0; xi < m.cmin.size(); ++xi) {
        HChain img = m.phi.apply(c.apply_d(xchain[xi]));
        for (auto g : img.support)
            m.cmin.toggle_term(xi, g, implied_power(m.cmin.degree(g), img.degree, N));
    }

    // psi(x~) = x + tau with d tau = dx + psi(delta x~) and phi(tau) = 0, where tau
    // only uses generators of degree >= |x| + N_L.
    m.psi = ChainMap{m.cmin.size(), c.size(), 0, std::vector<std::vector<std::size_t>>(m.cmin.size())};
    for (std::size_t xi = 0; xi < m.cmin.size(); ++xi) {  // cmin is ordered top degree first
        const int k = m.cmin.degree(xi);
        HChain w = chain_xor(c.apply_d(xchain[xi]), m.psi.apply(m.cmin.apply_d(m.cmin.gen(xi))));
        w.degree = k - 1;
        std::vector<std::size_t> unk;
        for (std::size_t g = 0; g < c.size(); ++g)
            if (c.degree(g) >= k + N && residue(c.degree(g) - k, N) == 0) unk.push_back(g);
        std::vector<std::size_t> rows_d, rows_phi;
        for (std::size_t g = 0; g < c.size(); ++g)
            if (residue(c.degree(g) - (k - 1), N) == 0) rows_d.push_back(g);
        for (std::size_t g = 0; g < m.cmin.size(); ++g)
            if (residue(m.cmin.degree(g) - k, N) == 0) rows_phi.push_back(g);
        std::map<std::size_t, std::size_t> rd, rp;
        for (std::size_t i = 0; i < rows_d.size(); ++i) rd[rows_d[i]] = i;
        for (std::size_t i = 0; i < rows_phi.size(); ++i) rp[rows_phi[i]] = rows_d.size() + i;
        gf2::BitMatrix A(rows_d.size() + rows_phi.size(), unk.size());
        for (std::size_t j = 0; j < unk.size(); ++j) {
            for (const auto& t : c.d[unk[j]]) A.flip(rd.at(t.target), j);
            for (auto h : m.phi.image[unk[j]]) A.flip(rp.at(h), j);
        }
        gf2::BitVec b(A.rows());
        for (auto g : w.support) b.flip(rd.at(g));
        auto tau = gf2::solve(A, b);
        if (!tau) throw InvariantError("reduce: no correction term for " + m.cmin.basis[xi].id);
        std::vector<std::size_t> acc = xchain[xi].support;
        for (auto j : tau->ones()) acc.push_back(unk[j]);
        m.psi.image[xi] = xor_support(std::move(acc));
    }

    m.split = split_basis(c, opt);
    return m;
}

namespace {

// t^0 part of a map: image terms of the same degree as the input generator.
gf2::BitMatrix degree_zero_block(const ChainMap& f, const PearlComplex& src,
                                 const PearlComplex& tgt, const std::vector<std::size_t>& cols,
                                 const std::vector<std::size_t>& rows) {
    std::map<std::size_t, std::size_t> rpos;
    for (std::size_t i = 0; i < rows.size(); ++i) rpos[rows[i]] = i;
    gf2::BitMatrix m(rows.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (auto h : f.image[cols[j]])
            if (tgt.degree(h) == src.degree(cols[j]) + f.shift) m.flip(rpos.at(h), j);
    return m;
}

std::vector<std::size_t> of_degree(const PearlComplex& c, int k) {
    std::vector<std::size_t> g;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c.degree(i) == k) g.push_back(i);
    return g;
}

std::vector<std::pair<int, long long>> torsion_signature(const HomologyResult& h) {
    std::vector<std::pair<int, long long>> v;
    for (const auto& t : h.torsion) v.emplace_back(t.degree, t.exponent);
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

Report verify(const MinimalModel& m) {
    Report r;
    const auto& c = m.source;
    const auto& cm = m.cmin;
    bool id = true;
    ChainMap pp = compose(m.phi, m.psi);
    for (std::size_t i = 0; i < cm.size(); ++i)
        if (pp.image[i] != std::vector<std::size_t>{i}) id = false;
    r.add("phi psi = id", id);
    r.add("phi positive", is_positive_map(m.phi, c, cm));
    r.add("psi positive", is_positive_map(m.psi, cm, c));
    auto dphi = chain_map_defect(m.phi, c, cm);
    r.add("phi chain map", !dphi, dphi ? "fails on " + c.basis[*dphi].id : "");
    auto dpsi = chain_map_defect(m.psi, cm, c);
    r.add("psi chain map", !dpsi, dpsi ? "fails on " + cm.basis[*dpsi].id : "");
    bool d0 = true;
    for (const auto& terms : cm.d)
        for (const auto& t : terms)
            if (t.t_power == 0) d0 = false;
    r.add("delta_0 = 0", d0);
    Report vc = validate(cm);
    r.add("C_min valid", vc.ok());
    if (!vc.ok()) return r;

    auto hl = homology_lambda(c), hml = homology_lambda(cm);
    r.add("H over Lambda", hl.residue_ranks == hml.residue_ranks);
    auto hp = homology_lambda_plus(c), hmp = homology_lambda_plus(cm);
    r.add("H over Lambda+", hp.free_ranks == hmp.free_ranks &&
                                torsion_signature(hp) == torsion_signature(hmp));

    // phi_0 on delta_0-homology: coordinates of phi_0(rep) must form an invertible matrix.
    auto ch = classical_homology(c);
    bool iso0 = true;
    std::set<int> degs;
    for (const auto& b : c.basis) degs.insert(b.degree);
    for (int k : degs) {
        auto rows = of_degree(cm, k);
        auto it = ch.reps.find(k);
        const std::size_t nrep = it == ch.reps.end() ? 0 : it->second.size();
        if (nrep != rows.size()) {
            iso0 = false;
            continue;
        }
        gf2::BitMatrix M(rows.size(), nrep);
        std::map<std::size_t, std::size_t> rpos;
        for (std::size_t i = 0; i < rows.size(); ++i) rpos[rows[i]] = i;
        for (std::size_t j = 0; j < nrep; ++j) {
            HChain img = m.phi.apply(it->second[j]);
            for (auto h : img.support)
                if (cm.degree(h) == k) M.flip(rpos.at(h), j);
        }
        if (gf2::rank(M) != nrep) iso0 = false;
        // psi_0 sends the C_min basis to classes forming a basis.
        gf2::BitMatrix Q(nrep, rows.size());
        for (std::size_t j = 0; j < rows.size(); ++j) {
            HChain img = m.psi.apply(cm.gen(rows[j]));
            HChain z{k, {}};
            for (auto g : img.support)
                if (c.degree(g) == k) z.support.push_back(g);
            auto co = ch.coordinates(c, z);
            if (!co) {
                iso0 = false;
                continue;
            }
            for (auto i : co->ones()) Q.set(i, j);
        }
        if (gf2::rank(Q) != nrep) iso0 = false;
    }
    r.add("phi_0, psi_0 iso on delta_0-homology", iso0);
    return r;
}

Report compare(const MinimalModel& a, const MinimalModel& b) {
    Report r;
    ChainMap cmap = compose(b.phi, a.psi);
    auto def = chain_map_defect(cmap, a.cmin, b.cmin);
    r.add("comparison is a chain map", !def);
    r.add("comparison positive", is_positive_map(cmap, a.cmin, b.cmin));
    bool inv = a.cmin.size() == b.cmin.size();
    if (inv && a.cmin.size() > 0)
        for (int k = a.cmin.min_degree(); k <= a.cmin.max_degree(); ++k) {
            auto cols = of_degree(a.cmin, k), rows = of_degree(b.cmin, k);
            if (cols.size() != rows.size()) {
                inv = false;
                break;
            }
            if (cols.empty()) continue;
            if (!gf2::inverse(degree_zero_block(cmap, a.cmin, b.cmin, cols, rows))) inv = false;
        }
    r.add("comparison invertible", inv);
    return r;
}

std::optional<NarrowCertificate> is_narrow(const MinimalModel& m) {
    const auto& cm = m.cmin;
    if (!cm.fundamental) throw ArgumentError("is_narrow: no fundamental class marked");
    const int N = cm.N_L();
    const int n = cm.degree(*cm.fundamental);
    const int span = n + 1 - cm.min_degree();
    const int qmax = (span + N - 1) / N + 1;
    for (long long q = 1; q <= qmax; ++q) {
        const long long D = n + 1 - q * N;
        auto src = cm.slice(D, true), dst = cm.slice(D - 1, true);
        std::map<std::size_t, std::size_t> pos;
        for (std::size_t i = 0; i < dst.size(); ++i) pos[dst[i]] = i;
        if (!pos.count(*cm.fundamental)) continue;
        gf2::BitMatrix A(dst.size(), src.size());
        for (std::size_t j = 0; j < src.size(); ++j)
            for (const auto& t : cm.d[src[j]]) A.flip(pos.at(t.target), j);
        gf2::BitVec b(dst.size());
        b.set(pos.at(*cm.fundamental));
        auto x = gf2::solve(A, b);
        if (!x) continue;
        HChain h{D, {}};
        for (auto j : x->ones()) h.support.push_back(src[j]);
        std::sort(h.support.begin(), h.support.end());
        return NarrowCertificate{h, q};
    }
    return std::nullopt;
}

bool is_wide(const MinimalModel& m) {
    for (const auto& terms : m.cmin.d)
        if (!terms.empty()) return false;
    return true;
}

HChain BilinearOp::apply(const HChain& a, const HChain& b) const {
    std::vector<std::size_t> acc;
    for (auto i : a.support)
        for (auto j : b.support) {
            auto it = table.find({i, j});
            if (it != table.end()) acc.insert(acc.end(), it->second.begin(), it->second.end());
        }
    return HChain{a.degree + b.degree - shift, xor_support(std::move(acc))};
}

bool is_positive_op(const BilinearOp& op, const PearlComplex& c) {
    for (const auto& [key, img] : op.table)
        for (auto h : img) {
            long long D = c.degree(key.first) + c.degree(key.second) - op.shift;
            if (c.degree(h) < D || residue(c.degree(h) - D, c.N_L()) != 0) return false;
        }
    return true;
}

std::optional<std::pair<std::size_t, std::size_t>> leibniz_defect(const BilinearOp& op,
                                                                  const PearlComplex& c) {
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < c.size(); ++j) {
            HChain a = c.gen(i), b = c.gen(j);
            HChain lhs = c.apply_d(op.apply(a, b));
            HChain rhs = chain_xor(op.apply(c.apply_d(a), b), op.apply(a, c.apply_d(b)));
            if (lhs.support != rhs.support) return std::make_pair(i, j);
        }
    return std::nullopt;
}

BilinearOp transport_bilinear(const MinimalModel& m, const BilinearOp& op) {
    BilinearOp out;
    out.shift = op.shift;
    const auto& cm = m.cmin;
    for (std::size_t i = 0; i < cm.size(); ++i)
        for (std::size_t j = 0; j < cm.size(); ++j) {
            HChain v = m.phi.apply(op.apply(m.psi.apply(cm.gen(i)), m.psi.apply(cm.gen(j))));
            if (!v.is_zero()) out.table[{i, j}] = v.support;
        }
    return out;
}

}  // namespace pearl
