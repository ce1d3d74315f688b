#include "pearl/cli.hpp"

#include "pearl/classify.hpp"
#include "pearl/errors.hpp"
#include "pearl/examples.hpp"
#include "pearl/gf2.hpp"
#include "pearl/serialize.hpp"
#include "pearl/trees.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace pearl {

namespace {

using json = nlohmann::json;

PearlComplex complex_from(const Document& d) {
    switch (d.kind) {
        case DocKind::Complex: return d.complex;
        case DocKind::Bundle: return d.bundle.complex;
        case DocKind::MinimalModel: return d.model->cmin;
        default: throw ParseError("expected a complex, bundle or minimal model, found " + to_string(d.kind));
    }
}

QuantumStructure structure_from(const Document& d) {
    if (d.kind == DocKind::Structure) return d.structure;
    if (d.kind == DocKind::Bundle) return d.bundle.structure;
    throw ParseError("expected a structure or bundle, found " + to_string(d.kind));
}

json rational_json(const Rational& q) {
    return json::array({boost::multiprecision::numerator(q).str(), boost::multiprecision::denominator(q).str()});
}

int cmd_homology(const std::string& file, const std::string& ring, std::ostream& out) {
    const Document d = load_document(file);
    const PearlComplex c = complex_from(d);
    require_valid(c);
    if (ring == "lambda") {
        const auto h = homology_lambda(c);
        out << "H(C; Lambda), N_L = " << c.N_L() << "\n";
        out << "degree  rank\n";
        for (const auto& [deg, r] : h.free_ranks) out << std::setw(6) << deg << "  " << std::setw(4) << r << "\n";
        std::size_t total = 0;
        for (auto r : h.residue_ranks) total += r;
        out << "total   " << std::setw(4) << total << "\n";
    } else {
        const auto h = homology_lambda_plus(c);
        out << "H(C; Lambda+), N_L = " << c.N_L() << "\n";
        out << "free generators\n";
        out << "degree  rank\n";
        for (const auto& [deg, r] : h.free_ranks) out << std::setw(6) << deg << "  " << std::setw(4) << r << "\n";
        out << "torsion summands\n";
        if (h.torsion.empty()) out << "  none\n";
        for (const auto& t : h.torsion)
            out << "  Z2[t]/(t^" << t.exponent << ") in degree " << t.degree << ", generator "
                << chain_str(c, t.generator) << "\n";
    }
    return 0;
}

int cmd_minimal(const std::string& file, const std::string& out_file, std::ostream& out) {
    const Document d = load_document(file);
    const PearlComplex c = complex_from(d);
    require_valid(c);
    const MinimalModel m = reduce(c);
    const InstanceMeta meta = d.kind == DocKind::Bundle ? d.bundle.meta : d.meta;
    {
        std::ofstream f(out_file, std::ios::binary);
        if (!f) throw ArgumentError("cannot write " + out_file);
        f << serialize_minimal(meta, m);
    }
    const Document back = load_document(out_file);
    const Report r = verify(*back.model);
    out << "wrote " << out_file << ": " << m.cmin.size() << " generators, source " << m.source.size() << "\n";
    for (const auto& it : r.items)
        out << (it.passed ? "PASS " : "FAIL ") << it.name << (it.detail.empty() ? "" : ": " + it.detail) << "\n";
    return r.ok() ? 0 : 3;
}

int cmd_classify(const std::string& file, std::optional<int> l, std::ostream& out) {
    const Document d = load_document(file);
    const PearlComplex c = complex_from(d);
    require_valid(c);
    const MinimalModel m = reduce(c);
    BilinearOp prod;
    prod.shift = c.n;
    std::optional<QuantumStructure> S;
    std::optional<DiskClassData> disk;
    InstanceMeta meta = d.meta;
    if (d.kind == DocKind::Bundle) {
        S = d.bundle.structure;
        disk = d.bundle.disk_data;
        meta = d.bundle.meta;
        if (!S->lag_basis.empty()) prod = product_op(*S, m.source);
    }
    const Verdict v = dichotomy_decide(m, prod, l.value_or(c.n));
    json j;
    j["status"] = to_string(v.status);
    j["by_theorem"] = v.by_theorem;
    j["reason"] = v.reason;
    if (v.certificate) {
        json cert;
        cert["q"] = v.certificate->q;
        if (v.certificate->K) cert["K"] = *v.certificate->K;
        cert["x"] = chain_str(m.cmin, v.certificate->x);
        j["certificate"] = cert;
    }
    if (disk) {
        auto r = d1_class(*disk);
        j["d1"] = r.d1;
    }
    if (v.status != Status::Undecided) {
        WidthInputs in = S ? width_inputs(*S) : WidthInputs{};
        if (v.certificate) in.K = v.certificate->K;
        if (v.status == Status::Wide || in.K) {
            json bounds = json::array();
            for (const auto& nb : width_bounds(meta, v.status, in)) {
                bounds.push_back({{"name", nb.name}, {"formula", nb.formula}, {"value", rational_json(nb.value)}});
                if (v.status == Status::Narrow && nb.formula == "2*K*eta" && !j.contains("w_bound"))
                    j["w_bound"] = {{"formula", nb.formula}, {"value", rational_json(nb.value)}};
            }
            j["bounds"] = bounds;
        }
    }
    out << j.dump() << "\n";
    return 0;
}

int cmd_products(const std::string& file, std::ostream& out) {
    const QuantumStructure S = structure_from(load_document(file));
    out << format_tables(S);
    return 0;
}

TreeSymbol parse_symbol(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos || s.find(':', colon + 1) != std::string::npos)
        throw ParseError("symbol must look like d1,d2:e");
    TreeSymbol sym;
    auto num = [&](const std::string& x) {
        try {
            std::size_t used = 0;
            int v = std::stoi(x, &used);
            if (used != x.size()) throw std::invalid_argument(x);
            return v;
        } catch (const std::exception&) {
            throw ParseError("bad degree \"" + x + "\" in symbol " + s);
        }
    };
    std::stringstream in(s.substr(0, colon));
    std::string part;
    while (std::getline(in, part, ',')) sym.entries.push_back(num(part));
    if (sym.entries.empty()) throw ParseError("symbol has no entries");
    sym.exit = num(s.substr(colon + 1));
    return sym;
}

std::set<int> parse_dims(const std::vector<std::string>& v) {
    std::set<int> out;
    for (const auto& s : v) {
        std::stringstream in(s);
        std::string part;
        while (std::getline(in, part, ',')) {
            try {
                std::size_t used = 0;
                out.insert(std::stoi(part, &used));
                if (used != part.size()) throw std::invalid_argument(part);
            } catch (const std::exception&) {
                throw ParseError("bad dimension \"" + part + "\"");
            }
        }
    }
    return out;
}

int cmd_example(const std::string& name, bool verify_flag, bool list, std::ostream& out) {
    if (list || name.empty()) {
        for (const auto& n : list_examples()) out << n << "\n";
        return 0;
    }
    InstanceBundle b;
    try {
        b = load_example(name);
    } catch (const ArgumentError& e) {
        throw ParseError(e.what());
    }
    if (!verify_flag) {
        out << b.name << ": n = " << b.meta.n << ", N_L = " << b.meta.N_L
            << ", C_M = " << (b.meta.C_M ? std::to_string(*b.meta.C_M) : "inf") << ", eta = " << rational_str(b.meta.eta)
            << ", coefficients " << to_string(b.meta.coeffs) << "\n";
        out << "complex: " << b.complex.size() << " generators; lag basis " << b.structure.lag_basis.size()
            << ", ambient basis " << b.structure.amb_basis.size() << "\n";
        return 0;
    }
    const Report r = verify_bundle(b);
    std::size_t passed = 0;
    for (const auto& it : r.items) {
        passed += it.passed;
        out << (it.passed ? "PASS " : "FAIL ") << it.name << (it.detail.empty() ? "" : ": " + it.detail) << "\n";
    }
    out << passed << "/" << r.items.size() << " checks passed\n";
    return r.ok() ? 0 : 3;
}

int cmd_intersect(const std::string& left, const std::string& right, std::ostream& out) {
    const QuantumStructure S0 = structure_from(load_document(left));
    const QuantumStructure S1 = structure_from(load_document(right));
    const JCircI j = j_circ_i(S0, S1);
    out << j.str(S0, S1);
    out << (j.nonzero ? "nonzero: must intersect" : "zero: inconclusive") << "\n";
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    gf2::apply_thread_env();
    CLI::App app{"Exact workbench for Lagrangian quantum homology"};
    app.require_subcommand(1);

    std::string file, ring = "lambda", out_file, kind, symbol, name, left, right;
    std::optional<int> l, C_M;
    int max_maslov = 0, n = 1, N_L = 2;
    std::vector<std::string> dims{"0"};
    bool list = false, verify_flag = false;

    auto* hom = app.add_subcommand("homology", "homology over Lambda or Lambda+");
    hom->add_option("file", file, "complex, bundle or minimal model")->required();
    hom->add_option("--ring", ring, "lambda or lambda-plus")->check(CLI::IsMember({"lambda", "lambda-plus"}));

    auto* mini = app.add_subcommand("minimal", "write the minimal model");
    mini->add_option("file", file)->required();
    mini->add_option("--out", out_file, "output file")->required();

    auto* cls = app.add_subcommand("classify", "wide/narrow verdict and width bounds as JSON");
    cls->add_option("file", file)->required();
    cls->add_option("--l", l, "H(L) generated in degrees >= n - l (default n)");

    auto* prods = app.add_subcommand("products", "product, module and inclusion tables");
    prods->add_option("file", file)->required();

    auto* trees = app.add_subcommand("trees", "count labeled trees of a symbol");
    trees->add_option("--symbol", symbol, "entry degrees and exit degree, e.g. 1,1:0")->required();
    trees->add_option("--kind", kind, "differential, product, product-simplified, module, inclusion, family-theta, family-tau")
        ->required();
    trees->add_option("--max-maslov", max_maslov, "bound on mu");
    trees->add_option("--dim", dims, "virtual dimensions to keep (comma separated)");
    trees->add_option("--n", n, "dimension of L");
    trees->add_option("--N_L", N_L, "minimal Maslov number");
    trees->add_option("--C_M", C_M, "minimal Chern number (spheres need it)");
    trees->add_flag("--list", list, "print every tree");

    auto* ex = app.add_subcommand("example", "shipped bundles");
    ex->add_option("name", name);
    ex->add_flag("--list", list, "print all names");
    ex->add_flag("--verify", verify_flag, "run every check on the bundle");

    auto* inter = app.add_subcommand("intersect", "j o i criterion for two Lagrangians");
    inter->add_option("--left", left)->required();
    inter->add_option("--right", right)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << "pearl: " << e.what() << "\n" << sub->help();
        return 2;
    }

    try {
        if (*hom) return cmd_homology(file, ring, out);
        if (*mini) return cmd_minimal(file, out_file, out);
        if (*cls) return cmd_classify(file, l, out);
        if (*prods) return cmd_products(file, out);
        if (*trees) {
            const auto sel = parse_selector(kind);
            if (!sel) throw ParseError("unknown kind \"" + kind + "\"");
            const TreeSymbol sym = parse_symbol(symbol);
            const auto ts = enumerate_trees(sym, *sel, max_maslov, parse_dims(dims), TreeGeometry{n, N_L, C_M});
            out << "count: " << ts.size() << "\n";
            if (list)
                for (const auto& t : ts)
                    out << "mu=" << t.maslov() << " delta=" << virtual_dimension(t, *sel) << " " << t.canonical()
                        << "\n";
            return 0;
        }
        if (*ex) return cmd_example(name, verify_flag, list, out);
        if (*inter) return cmd_intersect(left, right, out);
    } catch (const ParseError& e) {
        err << "pearl: parse error: " << e.what() << "\n";
        return 2;
    } catch (const InvariantError& e) {
        err << "pearl: invariant violated: " << e.what() << "\n";
        return 3;
    } catch (const ArgumentError& e) {
        err << "pearl: bad argument: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        err << "pearl: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace pearl
