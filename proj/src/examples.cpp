#include "pearl/examples.hpp"

#include "pearl/classify.hpp"
#include "pearl/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>

#ifndef PEARL_FIXTURE_DIR
#define PEARL_FIXTURE_DIR "fixtures"
#endif

namespace pearl {

namespace fs = std::filesystem;

std::string fixture_dir() {
    if (const char* env = std::getenv("PEARL_FIXTURES"); env && *env) return env;
    return PEARL_FIXTURE_DIR;
}

std::string fixture_stem(const std::string& name) {
    if (name.empty()) throw ArgumentError("empty example name");
    for (unsigned char c : name)
        if (!std::isalnum(c) && c != '_' && c != '(' && c != ')')
            throw ArgumentError("bad example name " + name);
    auto open = name.find('(');
    if (open == std::string::npos) {
        if (name.find(')') != std::string::npos) throw ArgumentError("bad example name " + name);
        return name;
    }
    if (name.back() != ')' || name.find(')') != name.size() - 1 || open == 0)
        throw ArgumentError("bad example name " + name);
    const std::string arg = name.substr(open + 1, name.size() - open - 2);
    if (arg.empty()) throw ArgumentError("bad example name " + name);
    return name.substr(0, open) + "_" + arg;
}

std::string display_name(const std::string& stem) {
    auto u = stem.rfind('_');
    if (u == std::string::npos || u + 1 == stem.size()) return stem;
    for (std::size_t i = u + 1; i < stem.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(stem[i]))) return stem;
    return stem.substr(0, u) + "(" + stem.substr(u + 1) + ")";
}

std::vector<std::string> list_examples() {
    std::vector<std::string> out;
    std::error_code ec;
    for (const auto& e : fs::directory_iterator(fixture_dir(), ec))
        if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(display_name(e.path().stem().string()));
    std::sort(out.begin(), out.end());
    return out;
}

InstanceBundle load_bundle_file(const std::string& path) {
    Document d = load_document(path);
    if (d.kind != DocKind::Bundle) throw ParseError(path + ": expected a bundle, found " + to_string(d.kind));
    return d.bundle;
}

InstanceBundle load_example(const std::string& name) {
    const fs::path p = fs::path(fixture_dir()) / (fixture_stem(name) + ".json");
    if (!fs::exists(p)) throw ArgumentError("unknown example " + name);
    return load_bundle_file(p.string());
}

namespace {

// Runs one check; exceptions become failed items.
template <class F>
void guarded(Report& r, const std::string& name, F&& body) {
    try {
        body();
    } catch (const std::exception& e) {
        r.fail(name, e.what());
    }
}

std::string comb_str(const QuantumStructure& S, const Comb& c) {
    return c.is_zero() ? "0" : c.str(S.amb_basis, "t");
}

}  // namespace

Report verify_bundle(const InstanceBundle& b) {
    Report r;
    const auto& S = b.structure;
    const auto& C = b.complex;
    const auto& E = b.expected;

    std::optional<Verdict> verdict;
    if (C.size() > 0) {
        guarded(r, "complex", [&] {
            r.merge(validate(C), "complex: ");
            if (E.qh_rank) {
                auto h = homology_lambda(C);
                std::size_t total = 0;
                for (auto k : h.residue_ranks) total += k;
                r.add("homology: rank over Lambda", total == *E.qh_rank,
                      "got " + std::to_string(total) + ", expected " + std::to_string(*E.qh_rank));
            }
        });
        if (E.status && C.fundamental)
            guarded(r, "dichotomy", [&] {
                MinimalModel m = reduce(C);
                BilinearOp prod;
                prod.shift = b.meta.n;
                if (!S.lag_basis.empty()) prod = product_op(S, m.source);
                verdict = dichotomy_decide(m, prod, E.l.value_or(b.meta.n));
                r.add("dichotomy: status", verdict->status == *E.status,
                      "got " + to_string(verdict->status) + ", expected " + to_string(*E.status));
                if (E.q) {
                    const auto q = verdict->certificate ? verdict->certificate->q : 0;
                    r.add("dichotomy: certificate q", q == *E.q,
                          "got " + std::to_string(q) + ", expected " + std::to_string(*E.q));
                }
                if (E.K) {
                    const auto K = verdict->certificate ? verdict->certificate->K : std::nullopt;
                    r.add("dichotomy: certificate K", K == E.K,
                          "got " + (K ? std::to_string(*K) : std::string("none")) + ", expected " +
                              std::to_string(*E.K));
                }
            });
    }
    if (b.disk_data && E.d1)
        guarded(r, "D1", [&] {
            auto d = d1_class(*b.disk_data);
            r.add("D1", d.d1 == *E.d1);
        });
    if (!S.lag_basis.empty() || !S.amb_basis.empty()) guarded(r, "axioms", [&] { r.merge(two_sided_check(S), "axioms: "); });
    const bool has_pairing = !S.amb_pairing.empty() && !S.lag_basis.empty() && !S.modact.empty();
    if (has_pairing) {
        guarded(r, "inclusion identity", [&] { r.merge(mod_inclusion_identity(S), "inclusion: "); });
        guarded(r, "inclusion derived", [&] { r.merge(inclusion_check(S), "inclusion derived = stored: "); });
    }
    if (E.incl)
        guarded(r, "golden i_L", [&] {
            auto derived = inclusion_from_module(S);
            for (std::size_t x = 0; x < S.lag_basis.size(); ++x) {
                Comb d = derived.count(x) ? derived.at(x) : S.zero();
                Comb g = E.incl->count(x) ? E.incl->at(x) : S.zero();
                r.add("golden i_L(" + S.lag_basis[x].id + ")", d == g,
                      d == g ? comb_str(S, d) : "derived " + comb_str(S, d) + ", golden " + comb_str(S, g));
            }
        });
    if (E.point_k)
        guarded(r, "point invertibility", [&] {
            auto p = point_invertibility_order(S);
            r.add("point invertibility k", p && p->k == *E.point_k,
                  "got " + (p ? std::to_string(p->k) : std::string("none")) + ", expected " +
                      std::to_string(*E.point_k));
        });
    if (E.divisibility)
        guarded(r, "divisibility", [&] {
            auto d = divisibility_test(S);
            r.add("divisibility", d.verdict == *E.divisibility,
                  "got " + to_string(d.verdict) + " (" + d.reason + "), expected " + to_string(*E.divisibility));
        });
    if (!E.bounds.empty())
        guarded(r, "bounds", [&] {
            WidthInputs in = width_inputs(S);
            in.K = E.K;
            const Status st = E.status.value_or(verdict ? verdict->status : Status::Undecided);
            std::map<std::string, Rational> got;
            for (const auto& nb : width_bounds(b.meta, st, in)) got[nb.name + " <= " + nb.formula] = nb.value;
            for (const auto& [key, v] : E.bounds) {
                auto it = got.find(key);
                r.add("bound " + key, it != got.end() && it->second == v,
                      it == got.end() ? "not produced"
                                      : "got " + rational_str(it->second) + ", expected " + rational_str(v));
            }
        });
    return r;
}

Report verify_example(const std::string& name) {
    Report r;
    try {
        r = verify_bundle(load_example(name));
    } catch (const std::exception& e) {
        r.fail("load", e.what());
    }
    return r;
}

}  // namespace pearl
