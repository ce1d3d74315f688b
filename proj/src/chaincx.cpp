#include "pearl/chaincx.hpp"

#include "pearl/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace pearl {

HChain chain_xor(const HChain& a, const HChain& b) {
    HChain r{a.degree, {}};
    std::set_symmetric_difference(a.support.begin(), a.support.end(), b.support.begin(),
                                  b.support.end(), std::back_inserter(r.support));
    return r;
}

std::optional<std::size_t> PearlComplex::index_of(const std::string& id) const {
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i].id == id) return i;
    return std::nullopt;
}

int PearlComplex::min_degree() const {
    int m = 0;
    bool first = true;
    for (const auto& b : basis)
        if (first || b.degree < m) m = b.degree, first = false;
    return m;
}

int PearlComplex::max_degree() const {
    int m = 0;
    bool first = true;
    for (const auto& b : basis)
        if (first || b.degree > m) m = b.degree, first = false;
    return m;
}

std::size_t PearlComplex::add_generator(const std::string& id, int deg) {
    basis.push_back({id, deg});
    d.emplace_back();
    return basis.size() - 1;
}

void PearlComplex::toggle_term(std::size_t x, std::size_t y, long long e) {
    auto& terms = d.at(x);
    DiffTerm t{y, e};
    auto it = std::lower_bound(terms.begin(), terms.end(), t);
    if (it != terms.end() && *it == t) terms.erase(it);
    else terms.insert(it, t);
}

HChain PearlComplex::apply_d(const HChain& c) const {
    std::vector<std::size_t> acc;
    for (auto g : c.support)
        for (const auto& t : d[g]) acc.push_back(t.target);
    std::sort(acc.begin(), acc.end());
    HChain r{c.degree - 1, {}};
    for (std::size_t i = 0; i < acc.size();) {
        std::size_t j = i;
        while (j < acc.size() && acc[j] == acc[i]) ++j;
        if ((j - i) % 2 == 1) r.support.push_back(acc[i]);
        i = j;
    }
    return r;
}

std::vector<std::size_t> PearlComplex::slice(long long D, bool plus) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (residue(basis[i].degree - D, N_L()) != 0) continue;
        if (plus && basis[i].degree < D) continue;
        out.push_back(i);
    }
    return out;
}

PearlComplex classical_part(const PearlComplex& c) {
    PearlComplex r = c;
    for (auto& terms : r.d)
        terms.erase(std::remove_if(terms.begin(), terms.end(),
                                   [](const DiffTerm& t) { return t.t_power != 0; }),
                    terms.end());
    return r;
}

Report validate(const PearlComplex& c) {
    Report rep;
    const int N = c.N_L();
    if (N < 2) rep.fail("ring", "N_L must be at least 2");
    if (c.ring.coeffs != Coeffs::Z2) rep.fail("ring", "chain complexes use Z2 coefficients");
    if (c.d.size() != c.basis.size()) {
        rep.fail("shape", "differential table size differs from basis size");
        return rep;
    }
    std::set<std::string> ids;
    for (const auto& b : c.basis)
        if (!ids.insert(b.id).second) rep.fail("unique ids", "duplicate id " + b.id);

    bool degree_ok = true, positive_ok = true;
    for (std::size_t x = 0; x < c.size(); ++x)
        for (const auto& t : c.d[x]) {
            if (t.target >= c.size()) {
                rep.fail("targets", "term of " + c.basis[x].id + " points outside the basis");
                degree_ok = false;
                continue;
            }
            long long want = static_cast<long long>(c.degree(x)) - 1 + t.t_power * N;
            if (want != c.degree(t.target)) {
                degree_ok = false;
                rep.fail("degree", "d(" + c.basis[x].id + ") term " + c.basis[t.target].id +
                                       " t^" + std::to_string(t.t_power) +
                                       " breaks |y| = |x| - 1 + e N_L");
            }
            if (t.t_power < 0) {
                positive_ok = false;
                rep.fail("positivity", "d(" + c.basis[x].id + ") has a negative t power");
            }
        }
    if (degree_ok) rep.add("degree", true);
    if (positive_ok) rep.add("positivity", true);
    if (!degree_ok) return rep;

    bool dd_ok = true, d0_ok = true;
    for (std::size_t x = 0; x < c.size(); ++x) {
        HChain dd = c.apply_d(c.apply_d(c.gen(x)));
        if (!dd.is_zero()) {
            dd_ok = false;
            rep.fail("d^2 = 0", "d(d(" + c.basis[x].id + ")) != 0");
        }
        // t^0 part of d applied twice.
        std::map<std::size_t, int> cnt;
        for (const auto& t : c.d[x])
            if (t.t_power == 0)
                for (const auto& u : c.d[t.target])
                    if (u.t_power == 0) cnt[u.target] ^= 1;
        for (auto& [k, v] : cnt)
            if (v) {
                d0_ok = false;
                rep.fail("delta_0^2 = 0", "classical part fails on " + c.basis[x].id);
                break;
            }
    }
    if (dd_ok) rep.add("d^2 = 0", true);
    if (d0_ok) rep.add("delta_0^2 = 0", true);

    if (c.fundamental) {
        std::size_t f = *c.fundamental;
        bool ok = f < c.size() && c.degree(f) == c.n;
        if (ok)
            for (std::size_t i = 0; i < c.size(); ++i)
                if (i != f && c.degree(i) >= c.n) ok = false;
        rep.add("fundamental", ok, ok ? "" : "[L] must be the unique generator of degree n");
    }
    if (c.point) {
        bool ok = *c.point < c.size() && c.degree(*c.point) == 0;
        rep.add("point", ok, ok ? "" : "point generator must have degree 0");
    }
    return rep;
}

void require_valid(const PearlComplex& c) {
    Report r = validate(c);
    if (r.ok()) return;
    std::string msg = "invalid complex:";
    for (const auto& f : r.failures()) msg += " [" + f.name + "] " + f.detail + ";";
    throw InvariantError(msg);
}

namespace {

// Generators of one residue class ordered by decreasing degree, then id.
struct ClassOrder {
    std::vector<std::size_t> gens;
    std::vector<long long> pos;  // basis index -> position, -1 outside the class
};

ClassOrder class_order(const PearlComplex& c, int r) {
    ClassOrder o;
    o.pos.assign(c.size(), -1);
    for (std::size_t i = 0; i < c.size(); ++i)
        if (residue(c.degree(i), c.N_L()) == r) o.gens.push_back(i);
    std::sort(o.gens.begin(), o.gens.end(), [&](std::size_t a, std::size_t b) {
        if (c.degree(a) != c.degree(b)) return c.degree(a) > c.degree(b);
        return c.basis[a].id < c.basis[b].id;
    });
    for (std::size_t k = 0; k < o.gens.size(); ++k) o.pos[o.gens[k]] = static_cast<long long>(k);
    return o;
}

// Column reduction of d : class r+1 -> class r, both ordered by birth time
// (decreasing degree). This is the graded Smith form over Z2[t]: multiplying a
// column by t^a with a >= 0 and adding it to a later column is allowed.
struct Reduction {
    ClassOrder rows, cols;
    std::vector<gf2::BitVec> R, V;
    std::vector<long long> low;         // per column, -1 when reduced to zero
    std::vector<long long> row_pivot;   // per row, owning column or -1
};

long long lowest(const gf2::BitVec& v) {
    auto o = v.ones();
    return o.empty() ? -1 : static_cast<long long>(o.back());
}

Reduction reduce_class(const PearlComplex& c, int r, const std::vector<ClassOrder>& orders) {
    const int N = c.N_L();
    Reduction red;
    red.rows = orders[static_cast<std::size_t>(r)];
    red.cols = orders[static_cast<std::size_t>(residue(r + 1, N))];
    const std::size_t nr = red.rows.gens.size(), nc = red.cols.gens.size();
    red.R.assign(nc, gf2::BitVec(nr));
    red.V.assign(nc, gf2::BitVec(nc));
    red.low.assign(nc, -1);
    red.row_pivot.assign(nr, -1);
    for (std::size_t j = 0; j < nc; ++j) {
        red.V[j].set(j);
        for (const auto& t : c.d[red.cols.gens[j]]) red.R[j].flip(static_cast<std::size_t>(red.rows.pos[t.target]));
        long long l = lowest(red.R[j]);
        while (l >= 0 && red.row_pivot[static_cast<std::size_t>(l)] >= 0) {
            auto i = static_cast<std::size_t>(red.row_pivot[static_cast<std::size_t>(l)]);
            red.R[j] ^= red.R[i];
            red.V[j] ^= red.V[i];
            l = lowest(red.R[j]);
        }
        red.low[j] = l;
        if (l >= 0) red.row_pivot[static_cast<std::size_t>(l)] = static_cast<long long>(j);
    }
    return red;
}

HChain to_chain(const ClassOrder& o, const gf2::BitVec& v, long long degree) {
    HChain h{degree, {}};
    for (auto k : v.ones()) h.support.push_back(o.gens[k]);
    std::sort(h.support.begin(), h.support.end());
    return h;
}

struct Decomposition {
    std::vector<std::pair<int, HChain>> free;  // (degree, cycle)
    std::vector<TorsionSummand> torsion;
    std::vector<std::size_t> residue_ranks;
};

Decomposition decompose(const PearlComplex& c) {
    require_valid(c);
    const int N = c.N_L();
    std::vector<ClassOrder> orders;
    for (int r = 0; r < N; ++r) orders.push_back(class_order(c, r));
    // red[r] reduces d : class r+1 -> class r.
    std::vector<Reduction> red;
    for (int r = 0; r < N; ++r) red.push_back(reduce_class(c, r, orders));

    Decomposition out;
    out.residue_ranks.assign(static_cast<std::size_t>(N), 0);
    for (int r = 0; r < N; ++r) {
        // Cycles of class r come from the reduction of d : class r -> class r-1.
        const Reduction& outgoing = red[static_cast<std::size_t>(residue(r - 1, N))];
        const Reduction& incoming = red[static_cast<std::size_t>(r)];
        const ClassOrder& o = orders[static_cast<std::size_t>(r)];
        for (std::size_t j = 0; j < o.gens.size(); ++j) {
            if (outgoing.low[j] >= 0) continue;  // negative column, not a cycle
            const int deg = c.degree(o.gens[j]);
            HChain z = to_chain(o, outgoing.V[j], deg);
            long long killer = incoming.row_pivot[j];
            if (killer < 0) {
                out.free.emplace_back(deg, z);
                ++out.residue_ranks[static_cast<std::size_t>(r)];
                continue;
            }
            const int xdeg = c.degree(incoming.cols.gens[static_cast<std::size_t>(killer)]);
            long long e = (deg - xdeg + 1) / N;
            if (e > 0)
                out.torsion.push_back(
                    {deg, e, to_chain(o, incoming.R[static_cast<std::size_t>(killer)], deg)});
        }
    }
    std::sort(out.free.begin(), out.free.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second.support < b.second.support;
    });
    std::sort(out.torsion.begin(), out.torsion.end(), [](const auto& a, const auto& b) {
        if (a.degree != b.degree) return a.degree > b.degree;
        if (a.exponent != b.exponent) return a.exponent < b.exponent;
        return a.generator.support < b.generator.support;
    });
    return out;
}

}  // namespace

std::size_t HomologyResult::plus_dim(long long D) const { return plus_t_rank(D, 0); }

std::size_t HomologyResult::plus_t_rank(long long D, long long j) const {
    std::size_t n = 0;
    for (const auto& [deg, cnt] : free_ranks)
        if (deg >= D && residue(deg - D, N_L) == 0) n += cnt;
    for (const auto& t : torsion)
        if (t.degree >= D && residue(t.degree - D, N_L) == 0 && (t.degree - D) / N_L + j < t.exponent)
            ++n;
    return n;
}

HomologyResult homology_lambda(const PearlComplex& c) {
    Decomposition dec = decompose(c);
    HomologyResult h;
    h.ring = RingKind::Lambda;
    h.N_L = c.N_L();
    h.residue_ranks = dec.residue_ranks;
    if (c.size() > 0)
        for (int D = c.min_degree() - c.N_L(); D <= c.max_degree(); ++D)
            h.free_ranks[D] = dec.residue_ranks[static_cast<std::size_t>(residue(D, c.N_L()))];
    for (auto& [deg, z] : dec.free) h.cycle_basis.push_back(z);
    return h;
}

HomologyResult homology_lambda_plus(const PearlComplex& c) {
    Decomposition dec = decompose(c);
    HomologyResult h;
    h.ring = RingKind::LambdaPlus;
    h.N_L = c.N_L();
    h.residue_ranks = dec.residue_ranks;
    for (auto& [deg, z] : dec.free) {
        ++h.free_ranks[deg];
        h.cycle_basis.push_back(z);
    }
    h.torsion = dec.torsion;
    return h;
}

TorsionIdeal torsion_ideal(const PearlComplex& c) {
    HomologyResult h = homology_lambda_plus(c);
    std::size_t free = 0;
    for (auto& [d, n] : h.free_ranks) free += n;
    if (free == 0) return {TorsionIdealKind::Everything, "every class is t-torsion"};
    if (h.torsion.empty()) return {TorsionIdealKind::Zero, "no t-torsion"};
    std::ostringstream os;
    os << "free rank " << free << ", torsion";
    for (const auto& t : h.torsion) os << " Z2[t]/(t^" << t.exponent << ")@" << t.degree;
    return {TorsionIdealKind::Proper, os.str()};
}

std::map<int, std::size_t> ClassicalHomology::betti() const {
    std::map<int, std::size_t> b;
    for (const auto& [deg, v] : reps) b[deg] = v.size();
    return b;
}

namespace {

std::vector<std::size_t> gens_of_degree(const PearlComplex& c, int k) {
    std::vector<std::size_t> g;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c.degree(i) == k) g.push_back(i);
    std::sort(g.begin(), g.end(),
              [&](std::size_t a, std::size_t b) { return c.basis[a].id < c.basis[b].id; });
    return g;
}

// delta_0 : G_k -> G_{k-1} as a matrix in the given generator orders.
gf2::BitMatrix delta0_matrix(const PearlComplex& c, const std::vector<std::size_t>& src,
                             const std::vector<std::size_t>& dst) {
    std::map<std::size_t, std::size_t> rpos;
    for (std::size_t i = 0; i < dst.size(); ++i) rpos[dst[i]] = i;
    gf2::BitMatrix m(dst.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j)
        for (const auto& t : c.d[src[j]])
            if (t.t_power == 0) m.flip(rpos.at(t.target), j);
    return m;
}

}  // namespace

ClassicalHomology classical_homology(const PearlComplex& c) {
    ClassicalHomology ch;
    if (c.size() == 0) return ch;
    for (int k = c.min_degree(); k <= c.max_degree(); ++k) {
        auto gk = gens_of_degree(c, k);
        if (gk.empty()) continue;
        auto below = gens_of_degree(c, k - 1);
        auto above = gens_of_degree(c, k + 1);
        gf2::BitMatrix out = delta0_matrix(c, gk, below);
        gf2::BitMatrix in = delta0_matrix(c, above, gk);
        gf2::Span span(gk.size());
        for (std::size_t j = 0; j < above.size(); ++j) {
            gf2::BitVec col(gk.size());
            for (std::size_t i = 0; i < gk.size(); ++i)
                if (in.get(i, j)) col.set(i);
            span.insert(col);
        }
        // Prefer generators that are cycles themselves, then a kernel basis.
        std::vector<gf2::BitVec> cand;
        for (std::size_t j = 0; j < gk.size(); ++j) {
            bool cyc = true;
            for (std::size_t i = 0; i < below.size(); ++i)
                if (out.get(i, j)) cyc = false;
            if (cyc) {
                gf2::BitVec v(gk.size());
                v.set(j);
                cand.push_back(v);
            }
        }
        for (auto& v : gf2::nullspace(out)) cand.push_back(v);
        auto& reps = ch.reps[k];
        for (auto& v : cand)
            if (span.insert(v)) {
                HChain h{k, {}};
                for (auto i : v.ones()) h.support.push_back(gk[i]);
                std::sort(h.support.begin(), h.support.end());
                reps.push_back(h);
            }
        if (reps.empty()) ch.reps.erase(k);
    }
    return ch;
}

std::optional<gf2::BitVec> ClassicalHomology::coordinates(const PearlComplex& c,
                                                         const HChain& z) const {
    const int k = static_cast<int>(z.degree);
    auto gk = gens_of_degree(c, k);
    auto above = gens_of_degree(c, k + 1);
    std::map<std::size_t, std::size_t> pos;
    for (std::size_t i = 0; i < gk.size(); ++i) pos[gk[i]] = i;
    auto it = reps.find(k);
    const std::size_t nrep = it == reps.end() ? 0 : it->second.size();
    gf2::BitMatrix A(gk.size(), nrep + above.size());
    for (std::size_t j = 0; j < nrep; ++j)
        for (auto g : it->second[j].support) A.set(pos.at(g), j);
    gf2::BitMatrix in = delta0_matrix(c, above, gk);
    for (std::size_t j = 0; j < above.size(); ++j)
        for (std::size_t i = 0; i < gk.size(); ++i)
            if (in.get(i, j)) A.set(i, nrep + j);
    gf2::BitVec b(gk.size());
    for (auto g : z.support) {
        auto p = pos.find(g);
        if (p == pos.end()) return std::nullopt;
        b.set(p->second);
    }
    auto x = gf2::solve(A, b);
    if (!x) return std::nullopt;
    gf2::BitVec coords(nrep);
    for (std::size_t j = 0; j < nrep; ++j)
        if (x->get(j)) coords.set(j);
    return coords;
}

E1Page e1_page(const PearlComplex& c) {
    require_valid(c);
    E1Page e;
    e.classical = classical_homology(c);
    e.ranks = e.classical.betti();
    const int N = c.N_L();
    for (const auto& [k, reps] : e.classical.reps)
        for (std::size_t i = 0; i < reps.size(); ++i) {
            // delta_1 of the representative, a t-free chain of degree k - 1 + N.
            std::map<std::size_t, int> acc;
            for (auto g : reps[i].support)
                for (const auto& t : c.d[g])
                    if (t.t_power == 1) acc[t.target] ^= 1;
            HChain img{k - 1 + N, {}};
            for (auto& [g, v] : acc)
                if (v) img.support.push_back(g);
            if (img.is_zero()) continue;
            auto coords = e.classical.coordinates(c, img);
            if (!coords) throw InvariantError("delta_1 image is not a delta_0 cycle");
            for (auto j : coords->ones()) {
                e.d1.push_back({{k, i}, {k - 1 + N, j}});
                e.d1_zero = false;
            }
        }
    HomologyResult h = homology_lambda(c);
    std::vector<std::size_t> agg(static_cast<std::size_t>(N), 0);
    for (const auto& [k, b] : e.ranks) agg[static_cast<std::size_t>(residue(k, N))] += b;
    e.collapses = agg == h.residue_ranks;
    return e;
}

PearlComplex dual_complex(const PearlComplex& c) {
    PearlComplex r;
    r.ring = c.ring;
    r.n = c.n;
    for (const auto& b : c.basis) r.add_generator(b.id, -b.degree);
    for (std::size_t x = 0; x < c.size(); ++x)
        for (const auto& t : c.d[x]) r.toggle_term(t.target, x, t.t_power);
    return r;
}

int theta_pairing(const PearlComplex& c, const HChain& a, const HChain& g) {
    if (a.degree != -g.degree)
        throw std::invalid_argument("theta_pairing: degrees must be k and -k");
    if (!c.apply_d(a).is_zero()) throw std::invalid_argument("theta_pairing: a is not a cycle");
    if (!dual_complex(c).apply_d(g).is_zero())
        throw std::invalid_argument("theta_pairing: g is not a cycle");
    std::vector<std::size_t> common;
    std::set_intersection(a.support.begin(), a.support.end(), g.support.begin(), g.support.end(),
                          std::back_inserter(common));
    return static_cast<int>(common.size() % 2);
}

bool ThetaGram::all_invertible() const {
    return std::all_of(invertible.begin(), invertible.end(), [](bool b) { return b; });
}

ThetaGram theta_gram(const PearlComplex& c) {
    const int N = c.N_L();
    HomologyResult h = homology_lambda(c);
    HomologyResult hd = homology_lambda(dual_complex(c));
    ThetaGram tg;
    for (int r = 0; r < N; ++r) {
        std::vector<const HChain*> zs, ws;
        for (const auto& z : h.cycle_basis)
            if (residue(z.degree, N) == r) zs.push_back(&z);
        for (const auto& w : hd.cycle_basis)
            if (residue(w.degree, N) == residue(-r, N)) ws.push_back(&w);
        gf2::BitMatrix g(zs.size(), ws.size());
        for (std::size_t i = 0; i < zs.size(); ++i)
            for (std::size_t j = 0; j < ws.size(); ++j) {
                std::vector<std::size_t> common;
                std::set_intersection(zs[i]->support.begin(), zs[i]->support.end(),
                                      ws[j]->support.begin(), ws[j]->support.end(),
                                      std::back_inserter(common));
                if (common.size() % 2) g.set(i, j);
            }
        bool inv = zs.size() == ws.size() && gf2::rank(g) == zs.size();
        tg.gram.push_back(g);
        tg.invertible.push_back(inv);
    }
    return tg;
}

std::vector<std::size_t> graded_complement(const std::vector<int>& degrees, int N_L,
                                           const std::vector<HChain>& gens) {
    (void)N_L;
    gf2::Span span(degrees.size());
    for (const auto& g : gens) {
        gf2::BitVec v(degrees.size());
        for (auto i : g.support) v.set(i);
        span.insert(v);
    }
    std::vector<std::size_t> order(degrees.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return degrees[a] > degrees[b]; });
    std::vector<std::size_t> out;
    for (auto i : order) {
        gf2::BitVec v(degrees.size());
        v.set(i);
        if (span.insert(v)) out.push_back(i);
    }
    std::sort(out.begin(), out.end());
    return out;
}

CycleSplit cycle_split(const PearlComplex& c) {
    require_valid(c);
    const int N = c.N_L();
    const std::size_t n = c.size();
    std::vector<int> degrees;
    for (const auto& b : c.basis) degrees.push_back(b.degree);
    auto top_degree = [&](const gf2::BitVec& v) {
        long long best = 0;
        bool first = true;
        for (auto i : v.ones())
            if (first || c.degree(i) > best) best = c.degree(i), first = false;
        return best;
    };
    auto as_chain = [&](const gf2::BitVec& v) { return HChain{top_degree(v), v.ones()}; };

    CycleSplit out;
    for (int r = 0; r < N; ++r) {
        std::vector<std::size_t> cls, below;
        for (std::size_t i = 0; i < n; ++i) {
            if (residue(c.degree(i), N) == r) cls.push_back(i);
            if (residue(c.degree(i), N) == residue(r - 1, N)) below.push_back(i);
        }
        std::map<std::size_t, std::size_t> bpos;
        for (std::size_t i = 0; i < below.size(); ++i) bpos[below[i]] = i;
        gf2::BitMatrix dm(below.size(), cls.size());
        for (std::size_t j = 0; j < cls.size(); ++j)
            for (const auto& t : c.d[cls[j]]) dm.flip(bpos.at(t.target), j);
        std::vector<HChain> kernel;
        for (auto& v : gf2::nullspace(dm)) {
            gf2::BitVec full(n);
            for (auto i : v.ones()) full.set(cls[i]);
            kernel.push_back(as_chain(full));
        }
        // Boundaries landing in class r.
        std::vector<HChain> bdry;
        gf2::Span bspan(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (residue(c.degree(i), N) != residue(r + 1, N)) continue;
            HChain img = c.apply_d(c.gen(i));
            gf2::BitVec v(n);
            for (auto g : img.support) v.set(g);
            if (v.any()) bspan.insert(v);
        }
        for (const auto& z : kernel) {
            gf2::BitVec v(n);
            for (auto g : z.support) v.set(g);
            if (bspan.insert(v)) out.zprime.push_back(z);
        }
        // E: unit vectors completing Z_r, chosen in decreasing degree.
        auto comp = graded_complement(degrees, N, kernel);
        for (auto i : comp) {
            if (residue(c.degree(i), N) != r) continue;
            out.e.push_back(c.gen(i));
            out.de.push_back(c.apply_d(c.gen(i)));
        }
    }
    return out;
}

std::string chain_str(const PearlComplex& c, const HChain& h) {
    if (h.is_zero()) return "0";
    std::vector<std::pair<long long, std::string>> parts;
    for (auto g : h.support) {
        long long e = implied_power(c.degree(g), h.degree, c.N_L());
        std::string s = c.basis[g].id;
        if (e == 1) s += " t";
        else if (e != 0) s += " t^" + std::to_string(e);
        parts.emplace_back(e, s);
    }
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " + " : "") + parts[i].second;
    return out;
}

}  // namespace pearl
