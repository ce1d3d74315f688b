#include "pearl/serialize.hpp"

#include "pearl/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace pearl {

using json = nlohmann::json;

std::string to_string(DocKind k) {
    switch (k) {
        case DocKind::Complex: return "complex";
        case DocKind::Structure: return "structure";
        case DocKind::Bundle: return "bundle";
        case DocKind::DiskData: return "disk_data";
        case DocKind::MinimalModel: return "minimal_model";
    }
    return "?";
}

RingDescriptor complex_ring(const InstanceMeta& meta) {
    return RingDescriptor::lambda(meta.N_L, meta.C_M, Coeffs::Z2, true);
}

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw ParseError(where + ": " + what);
}

// ---- writing -------------------------------------------------------------

json int_json(const Int& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return static_cast<long long>(v);
    return v.str();
}

json rational_json(const Rational& q) {
    return json::array({boost::multiprecision::numerator(q).str(), boost::multiprecision::denominator(q).str()});
}

json meta_json(const InstanceMeta& m) {
    json j;
    j["n"] = m.n;
    j["N_L"] = m.N_L;
    j["C_M"] = m.C_M ? json(*m.C_M) : json("inf");
    j["eta"] = rational_json(m.eta);
    j["ambient_dim"] = m.ambient_dim;
    j["coefficients"] = to_string(m.coeffs);
    return j;
}

json basis_json(const std::vector<BasisElement>& b) {
    json a = json::array();
    for (const auto& e : b) a.push_back({{"id", e.id}, {"degree", e.degree}});
    return a;
}

void complex_payload(json& j, const PearlComplex& c) {
    j["basis"] = basis_json(c.basis);
    json d = json::object();
    for (std::size_t x = 0; x < c.size(); ++x) {
        if (c.d[x].empty()) continue;
        json terms = json::array();
        for (const auto& t : c.d[x])
            terms.push_back({{"target", c.basis[t.target].id}, {"t_power", t.t_power}, {"coeff", 1}});
        d[c.basis[x].id] = terms;
    }
    j["differential"] = d;
    if (c.fundamental) j["fundamental"] = c.basis[*c.fundamental].id;
    if (c.point) j["point"] = c.basis[*c.point].id;
}

json table_json(const PairTable& t, const std::vector<BasisElement>& b1, const std::vector<BasisElement>& b2,
                const std::vector<BasisElement>& out) {
    json rows = json::array();
    for (const auto& [key, comb] : t) {
        const auto& terms = comb.terms();
        for (const auto& [kp, c] : terms)
            rows.push_back({b1[key.first].id, b2[key.second].id, out[kp.first].id, kp.second, int_json(c)});
    }
    return rows;
}

json incl_json(const std::map<std::size_t, Comb>& incl, const QuantumStructure& s) {
    json rows = json::array();
    for (const auto& [x, comb] : incl) {
        const auto& terms = comb.terms();
        for (const auto& [kp, c] : terms)
            rows.push_back({s.lag_basis[x].id, s.amb_basis[kp.first].id, kp.second, int_json(c)});
    }
    return rows;
}

void structure_payload(json& j, const QuantumStructure& s) {
    j["lag_basis"] = basis_json(s.lag_basis);
    j["amb_basis"] = basis_json(s.amb_basis);
    j["prod"] = table_json(s.prod, s.lag_basis, s.lag_basis, s.lag_basis);
    j["modact"] = table_json(s.modact, s.amb_basis, s.lag_basis, s.lag_basis);
    j["amb_ring"] = table_json(s.amb_ring, s.amb_basis, s.amb_basis, s.amb_basis);
    json eps = json::array();
    for (auto e : s.eps) eps.push_back(s.lag_basis[e].id);
    j["eps"] = eps;
    j["incl"] = incl_json(s.incl, s);
    json pairing = json::array();
    for (const auto& [ab, v] : s.amb_pairing)
        pairing.push_back({s.amb_basis[ab.first].id, s.amb_basis[ab.second].id, int_json(v)});
    j["amb_pairing"] = pairing;
    if (s.unit_lag) j["unit_lag"] = s.lag_basis[*s.unit_lag].id;
    if (s.unit_amb) j["unit_amb"] = s.amb_basis[*s.unit_amb].id;
    if (s.point) j["point"] = s.amb_basis[*s.point].id;
    if (s.hyperplane) j["hyperplane"] = s.amb_basis[*s.hyperplane].id;
}

json disk_json(const DiskClassData& d) {
    json classes = json::array();
    for (const auto& c : d.classes)
        classes.push_back({{"name", c.name}, {"boundary", c.boundary}, {"ev_degree", c.ev_degree}});
    return {{"h1_rank", d.h1_rank}, {"classes", classes}};
}

json expected_json(const Expected& e, const QuantumStructure& s) {
    json j = json::object();
    if (e.status) j["status"] = to_string(*e.status);
    if (e.l) j["l"] = *e.l;
    if (e.q) j["q"] = *e.q;
    if (e.K) j["K"] = *e.K;
    if (e.incl) j["incl"] = incl_json(*e.incl, s);
    if (e.d1) j["d1"] = *e.d1;
    if (e.point_k) j["point_k"] = *e.point_k;
    if (e.qh_rank) j["qh_rank"] = *e.qh_rank;
    if (e.divisibility) j["divisibility"] = to_string(*e.divisibility);
    if (!e.bounds.empty()) {
        json b = json::object();
        for (const auto& [name, v] : e.bounds) b[name] = rational_json(v);
        j["bounds"] = b;
    }
    return j;
}

json map_json(const ChainMap& f, const PearlComplex& src, const PearlComplex& tgt) {
    json img = json::object();
    for (std::size_t i = 0; i < f.image.size(); ++i) {
        json a = json::array();
        for (auto k : f.image[i]) a.push_back(tgt.basis[k].id);
        img[src.basis[i].id] = a;
    }
    return {{"shift", f.shift}, {"image", img}};
}

json header(DocKind k, const InstanceMeta& meta) {
    return {{"schema_version", kSchemaVersion}, {"kind", to_string(k)}, {"meta", meta_json(meta)}};
}

std::string finish(const json& j) { return j.dump() + "\n"; }

// ---- reading -------------------------------------------------------------

const json& need(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) bad(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) bad(where, std::string("missing key \"") + key + "\"");
    return *it;
}

void allow_keys(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
    if (!j.is_object()) bad(where, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (auto k : keys) ok |= it.key() == k;
        if (!ok) bad(where, "unknown key \"" + it.key() + "\"");
    }
}

long long get_ll(const json& j, const std::string& where) {
    if (!j.is_number_integer()) bad(where, "expected an integer");
    return j.get<long long>();
}

int get_int(const json& j, const std::string& where) {
    long long v = get_ll(j, where);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) bad(where, "out of range");
    return static_cast<int>(v);
}

Int get_big(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        std::size_t k = (!s.empty() && s[0] == '-') ? 1 : 0;
        if (k == s.size()) bad(where, "expected an integer");
        for (std::size_t i = k; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') bad(where, "expected an integer");
        return Int(s);
    }
    bad(where, "expected an integer");
}

std::string get_str(const json& j, const std::string& where) {
    if (!j.is_string()) bad(where, "expected a string");
    return j.get<std::string>();
}

const json& get_array(const json& j, const std::string& where, std::size_t len = 0) {
    if (!j.is_array()) bad(where, "expected an array");
    if (len && j.size() != len) bad(where, "expected " + std::to_string(len) + " entries");
    return j;
}

Rational get_rational(const json& j, const std::string& where) {
    get_array(j, where, 2);
    Int num = get_big(j[0], where), den = get_big(j[1], where);
    if (den <= 0) bad(where, "denominator must be positive");
    return Rational(num, den);
}

InstanceMeta parse_meta(const json& j) {
    const std::string w = "meta";
    allow_keys(j, {"n", "N_L", "C_M", "eta", "ambient_dim", "coefficients"}, w);
    InstanceMeta m;
    m.n = get_int(need(j, "n", w), w + ".n");
    m.N_L = get_int(need(j, "N_L", w), w + ".N_L");
    const auto& cm = need(j, "C_M", w);
    if (cm.is_string()) {
        if (cm.get<std::string>() != "inf") bad(w + ".C_M", "expected an integer or \"inf\"");
    } else {
        m.C_M = get_int(cm, w + ".C_M");
    }
    m.eta = get_rational(need(j, "eta", w), w + ".eta");
    if (j.contains("ambient_dim")) m.ambient_dim = get_int(j["ambient_dim"], w + ".ambient_dim");
    const auto co = get_str(need(j, "coefficients", w), w + ".coefficients");
    if (co == "Z2") m.coeffs = Coeffs::Z2;
    else if (co == "Z") m.coeffs = Coeffs::Z;
    else bad(w + ".coefficients", "expected \"Z2\" or \"Z\"");
    if (m.n < 0) bad(w + ".n", "must be nonnegative");
    try {
        RingDescriptor::lambda(m.N_L, m.C_M);
    } catch (const std::invalid_argument& e) {
        bad(w, e.what());
    }
    return m;
}

std::vector<BasisElement> parse_basis(const json& j, const std::string& where) {
    std::vector<BasisElement> out;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < get_array(j, where).size(); ++i) {
        const std::string w = where + "[" + std::to_string(i) + "]";
        allow_keys(j[i], {"id", "degree"}, w);
        BasisElement e{get_str(need(j[i], "id", w), w + ".id"), get_int(need(j[i], "degree", w), w + ".degree")};
        if (e.id.empty()) bad(w, "empty id");
        for (unsigned char ch : e.id)
            if (ch < 0x21 || ch > 0x7e) bad(w, "id must be printable ASCII");
        if (!seen.insert(e.id).second) bad(w, "duplicate id " + e.id);
        out.push_back(std::move(e));
    }
    return out;
}

std::size_t find_id(const std::vector<BasisElement>& b, const std::string& id, const std::string& where) {
    for (std::size_t i = 0; i < b.size(); ++i)
        if (b[i].id == id) return i;
    bad(where, "unknown id " + id);
}

PearlComplex parse_complex_payload(const json& j, const InstanceMeta& meta, const std::string& where) {
    PearlComplex c;
    c.ring = complex_ring(meta);
    c.n = meta.n;
    for (auto& e : parse_basis(need(j, "basis", where), where + ".basis")) c.add_generator(e.id, e.degree);
    const auto& d = need(j, "differential", where);
    if (!d.is_object()) bad(where + ".differential", "expected an object");
    for (auto it = d.begin(); it != d.end(); ++it) {
        const std::string w = where + ".differential." + it.key();
        const std::size_t x = find_id(c.basis, it.key(), w);
        for (std::size_t k = 0; k < get_array(it.value(), w).size(); ++k) {
            const auto& t = it.value()[k];
            const std::string wk = w + "[" + std::to_string(k) + "]";
            allow_keys(t, {"target", "t_power", "coeff"}, wk);
            std::size_t y = find_id(c.basis, get_str(need(t, "target", wk), wk + ".target"), wk);
            long long p = get_ll(need(t, "t_power", wk), wk + ".t_power");
            if (p < 0) bad(wk, "t_power must be nonnegative");
            Int coeff = get_big(need(t, "coeff", wk), wk + ".coeff");
            if (coeff % 2 != 0) c.toggle_term(x, y, p);
        }
    }
    if (j.contains("fundamental")) c.fundamental = find_id(c.basis, get_str(j["fundamental"], where), where + ".fundamental");
    if (j.contains("point")) c.point = find_id(c.basis, get_str(j["point"], where), where + ".point");
    return c;
}

void parse_table(const json& j, PairTable& t, const QuantumStructure& s, const std::vector<BasisElement>& b1,
                 const std::vector<BasisElement>& b2, const std::vector<BasisElement>& out, const std::string& where) {
    for (std::size_t i = 0; i < get_array(j, where).size(); ++i) {
        const std::string w = where + "[" + std::to_string(i) + "]";
        const auto& r = get_array(j[i], w, 5);
        auto x = find_id(b1, get_str(r[0], w), w);
        auto y = find_id(b2, get_str(r[1], w), w);
        auto z = find_id(out, get_str(r[2], w), w);
        t[{x, y}] += Comb::unit(s.meta.coeffs, z, get_ll(r[3], w), get_big(r[4], w));
    }
}

std::map<std::size_t, Comb> parse_incl(const json& j, const QuantumStructure& s, const std::string& where) {
    std::map<std::size_t, Comb> out;
    for (std::size_t i = 0; i < get_array(j, where).size(); ++i) {
        const std::string w = where + "[" + std::to_string(i) + "]";
        const auto& r = get_array(j[i], w, 4);
        auto x = find_id(s.lag_basis, get_str(r[0], w), w);
        auto h = find_id(s.amb_basis, get_str(r[1], w), w);
        auto it = out.try_emplace(x, s.meta.coeffs).first;
        it->second += Comb::unit(s.meta.coeffs, h, get_ll(r[2], w), get_big(r[3], w));
    }
    return out;
}

QuantumStructure parse_structure_payload(const json& j, const InstanceMeta& meta, const std::string& where) {
    QuantumStructure s;
    s.meta = meta;
    s.lag_basis = parse_basis(need(j, "lag_basis", where), where + ".lag_basis");
    s.amb_basis = parse_basis(need(j, "amb_basis", where), where + ".amb_basis");
    parse_table(need(j, "prod", where), s.prod, s, s.lag_basis, s.lag_basis, s.lag_basis, where + ".prod");
    parse_table(need(j, "modact", where), s.modact, s, s.amb_basis, s.lag_basis, s.lag_basis, where + ".modact");
    parse_table(need(j, "amb_ring", where), s.amb_ring, s, s.amb_basis, s.amb_basis, s.amb_basis,
                where + ".amb_ring");
    const auto& eps = need(j, "eps", where);
    for (std::size_t i = 0; i < get_array(eps, where + ".eps").size(); ++i)
        s.eps.push_back(find_id(s.lag_basis, get_str(eps[i], where + ".eps"), where + ".eps"));
    s.incl = parse_incl(need(j, "incl", where), s, where + ".incl");
    if (j.contains("amb_pairing")) {
        const auto& p = j["amb_pairing"];
        for (std::size_t i = 0; i < get_array(p, where + ".amb_pairing").size(); ++i) {
            const std::string w = where + ".amb_pairing[" + std::to_string(i) + "]";
            const auto& r = get_array(p[i], w, 3);
            auto a = find_id(s.amb_basis, get_str(r[0], w), w);
            auto b = find_id(s.amb_basis, get_str(r[1], w), w);
            s.amb_pairing[{std::min(a, b), std::max(a, b)}] = get_big(r[2], w);
        }
    }
    auto opt_id = [&](const char* key, const std::vector<BasisElement>& b, std::optional<std::size_t>& dst) {
        if (j.contains(key)) dst = find_id(b, get_str(j[key], where + "." + key), where + "." + key);
    };
    opt_id("unit_lag", s.lag_basis, s.unit_lag);
    opt_id("unit_amb", s.amb_basis, s.unit_amb);
    opt_id("point", s.amb_basis, s.point);
    opt_id("hyperplane", s.amb_basis, s.hyperplane);
    return s;
}

DiskClassData parse_disk(const json& j, const std::string& where) {
    DiskClassData d;
    allow_keys(j, {"h1_rank", "classes"}, where);
    long long r = get_ll(need(j, "h1_rank", where), where + ".h1_rank");
    if (r < 0) bad(where + ".h1_rank", "must be nonnegative");
    d.h1_rank = static_cast<std::size_t>(r);
    const auto& cl = need(j, "classes", where);
    for (std::size_t i = 0; i < get_array(cl, where + ".classes").size(); ++i) {
        const std::string w = where + ".classes[" + std::to_string(i) + "]";
        allow_keys(cl[i], {"name", "boundary", "ev_degree"}, w);
        DiskClass c;
        c.name = get_str(need(cl[i], "name", w), w + ".name");
        const auto& b = need(cl[i], "boundary", w);
        for (std::size_t k = 0; k < get_array(b, w + ".boundary").size(); ++k)
            c.boundary.push_back(get_int(b[k], w + ".boundary"));
        c.ev_degree = get_int(need(cl[i], "ev_degree", w), w + ".ev_degree");
        d.classes.push_back(std::move(c));
    }
    return d;
}

Status parse_status(const json& j, const std::string& where) {
    auto s = get_str(j, where);
    for (auto v : {Status::Wide, Status::Narrow, Status::Undecided})
        if (to_string(v) == s) return v;
    bad(where, "unknown status " + s);
}

Expected parse_expected(const json& j, const QuantumStructure& s, const std::string& where) {
    allow_keys(j, {"status", "l", "q", "K", "incl", "d1", "point_k", "qh_rank", "divisibility", "bounds"}, where);
    Expected e;
    if (j.contains("status")) e.status = parse_status(j["status"], where + ".status");
    if (j.contains("l")) e.l = get_int(j["l"], where + ".l");
    if (j.contains("q")) e.q = get_ll(j["q"], where + ".q");
    if (j.contains("K")) e.K = get_ll(j["K"], where + ".K");
    if (j.contains("incl")) e.incl = parse_incl(j["incl"], s, where + ".incl");
    if (j.contains("d1")) {
        std::vector<int> d;
        for (std::size_t i = 0; i < get_array(j["d1"], where + ".d1").size(); ++i)
            d.push_back(get_int(j["d1"][i], where + ".d1"));
        e.d1 = d;
    }
    if (j.contains("point_k")) e.point_k = get_ll(j["point_k"], where + ".point_k");
    if (j.contains("qh_rank")) {
        long long r = get_ll(j["qh_rank"], where + ".qh_rank");
        if (r < 0) bad(where + ".qh_rank", "must be nonnegative");
        e.qh_rank = static_cast<std::size_t>(r);
    }
    if (j.contains("divisibility")) {
        const auto v = get_str(j["divisibility"], where + ".divisibility");
        for (auto d : {Divisibility::NotDivisible, Divisibility::Divisible, Divisibility::Unknown})
            if (to_string(d) == v) e.divisibility = d;
        if (!e.divisibility) bad(where + ".divisibility", "unknown verdict " + v);
    }
    if (j.contains("bounds")) {
        const auto& b = j["bounds"];
        if (!b.is_object()) bad(where + ".bounds", "expected an object");
        for (auto it = b.begin(); it != b.end(); ++it)
            e.bounds[it.key()] = get_rational(it.value(), where + ".bounds." + it.key());
    }
    return e;
}

ChainMap parse_map(const json& j, const PearlComplex& src, const PearlComplex& tgt, const std::string& where) {
    allow_keys(j, {"shift", "image"}, where);
    ChainMap f;
    f.shift = get_int(need(j, "shift", where), where + ".shift");
    f.source_size = src.size();
    f.target_size = tgt.size();
    f.image.assign(src.size(), {});
    const auto& img = need(j, "image", where);
    if (!img.is_object()) bad(where + ".image", "expected an object");
    for (auto it = img.begin(); it != img.end(); ++it) {
        const std::string w = where + ".image." + it.key();
        auto i = find_id(src.basis, it.key(), w);
        std::vector<std::size_t> v;
        for (std::size_t k = 0; k < get_array(it.value(), w).size(); ++k)
            v.push_back(find_id(tgt.basis, get_str(it.value()[k], w), w));
        std::sort(v.begin(), v.end());
        if (std::adjacent_find(v.begin(), v.end()) != v.end()) bad(w, "repeated target");
        f.image[i] = std::move(v);
    }
    return f;
}

}  // namespace

Document parse_document(std::string_view text) {
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    try {
        Document d;
        const auto& ver = need(j, "schema_version", "document");
        if (get_ll(ver, "schema_version") != kSchemaVersion)
            bad("schema_version", "unsupported version " + ver.dump());
        const auto kind = get_str(need(j, "kind", "document"), "kind");
        d.meta = parse_meta(need(j, "meta", "document"));
        if (kind == "complex") {
            d.kind = DocKind::Complex;
            allow_keys(j, {"schema_version", "kind", "meta", "basis", "differential", "fundamental", "point"},
                       "document");
            d.complex = parse_complex_payload(j, d.meta, "complex");
        } else if (kind == "structure") {
            d.kind = DocKind::Structure;
            d.structure = parse_structure_payload(j, d.meta, "structure");
        } else if (kind == "disk_data") {
            d.kind = DocKind::DiskData;
            allow_keys(j, {"schema_version", "kind", "meta", "disk_data"}, "document");
            d.disk_data = parse_disk(need(j, "disk_data", "document"), "disk_data");
        } else if (kind == "minimal_model") {
            d.kind = DocKind::MinimalModel;
            allow_keys(j, {"schema_version", "kind", "meta", "source", "cmin", "phi", "psi"}, "document");
            MinimalModel m;
            m.source = parse_complex_payload(need(j, "source", "document"), d.meta, "source");
            m.cmin = parse_complex_payload(need(j, "cmin", "document"), d.meta, "cmin");
            m.phi = parse_map(need(j, "phi", "document"), m.source, m.cmin, "phi");
            m.psi = parse_map(need(j, "psi", "document"), m.cmin, m.source, "psi");
            d.model = std::move(m);
        } else if (kind == "bundle") {
            d.kind = DocKind::Bundle;
            allow_keys(j, {"schema_version", "kind", "meta", "name", "complex", "structure", "expected", "disk_data"},
                       "document");
            auto& b = d.bundle;
            b.name = get_str(need(j, "name", "document"), "name");
            b.meta = d.meta;
            b.complex = parse_complex_payload(need(j, "complex", "document"), d.meta, "complex");
            b.structure = parse_structure_payload(need(j, "structure", "document"), d.meta, "structure");
            if (j.contains("expected")) b.expected = parse_expected(j["expected"], b.structure, "expected");
            if (j.contains("disk_data")) b.disk_data = parse_disk(j["disk_data"], "disk_data");
        } else {
            bad("kind", "unknown document kind \"" + kind + "\"");
        }
        return d;
    } catch (const json::exception& e) {
        throw ParseError(std::string("schema: ") + e.what());
    }
}

Document load_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str());
}

std::string serialize_complex(const InstanceMeta& meta, const PearlComplex& c) {
    json j = header(DocKind::Complex, meta);
    complex_payload(j, c);
    return finish(j);
}

std::string serialize_structure(const QuantumStructure& s) {
    json j = header(DocKind::Structure, s.meta);
    structure_payload(j, s);
    return finish(j);
}

std::string serialize_bundle(const InstanceBundle& b) {
    json j = header(DocKind::Bundle, b.meta);
    j["name"] = b.name;
    json c, s;
    complex_payload(c, b.complex);
    structure_payload(s, b.structure);
    j["complex"] = c;
    j["structure"] = s;
    j["expected"] = expected_json(b.expected, b.structure);
    if (b.disk_data) j["disk_data"] = disk_json(*b.disk_data);
    return finish(j);
}

std::string serialize_disk_data(const InstanceMeta& meta, const DiskClassData& d) {
    json j = header(DocKind::DiskData, meta);
    j["disk_data"] = disk_json(d);
    return finish(j);
}

std::string serialize_minimal(const InstanceMeta& meta, const MinimalModel& m) {
    json j = header(DocKind::MinimalModel, meta);
    json src, cm;
    complex_payload(src, m.source);
    complex_payload(cm, m.cmin);
    j["source"] = src;
    j["cmin"] = cm;
    j["phi"] = map_json(m.phi, m.source, m.cmin);
    j["psi"] = map_json(m.psi, m.cmin, m.source);
    return finish(j);
}

std::string serialize(const Document& d) {
    switch (d.kind) {
        case DocKind::Complex: return serialize_complex(d.meta, d.complex);
        case DocKind::Structure: return serialize_structure(d.structure);
        case DocKind::Bundle: return serialize_bundle(d.bundle);
        case DocKind::DiskData: return serialize_disk_data(d.meta, d.disk_data);
        case DocKind::MinimalModel:
            if (!d.model) throw ArgumentError("minimal model document without a model");
            return serialize_minimal(d.meta, *d.model);
    }
    return {};
}

}  // namespace pearl
