#include "pearl/classify.hpp"
#include "pearl/errors.hpp"
#include "pearl/examples.hpp"
#include "pearl/serialize.hpp"
#include "structures.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace pearl;
using namespace pearl::testing;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void require_all_pass(const Report& r, const std::string& what) {
    for (const auto& f : r.failures()) MESSAGE(what << ": " << f.name << ": " << f.detail);
    CHECK(r.ok());
}

// Unit (or its negative) times a single lag element.
Comb L(const QuantumStructure& S, const std::string& id, long long p = 0, Int c = 1) {
    return S.lag_elem(id, p, c);
}
Comb H(const QuantumStructure& S, const std::string& id, long long p = 0, Int c = 1) {
    return S.amb_elem(id, p, c);
}

}  // namespace

TEST_CASE("names map to fixture files") {
    CHECK(fixture_stem("rpn(4)") == "rpn_4");
    CHECK(fixture_stem("clifford2") == "clifford2");
    CHECK(fixture_stem("quadric_sphere_signed(6)") == "quadric_sphere_signed_6");
    CHECK(display_name("quadric_sphere_signed_6") == "quadric_sphere_signed(6)");
    CHECK(display_name("clifford2") == "clifford2");
    CHECK_THROWS_AS(fixture_stem("../etc"), ArgumentError);
    CHECK_THROWS_AS(fixture_stem("rpn(4"), ArgumentError);
    CHECK_THROWS_AS(load_example("rpn(40)"), ArgumentError);

    auto names = list_examples();
    CHECK(names.size() == 27);
    for (const char* want : {"clifford2", "narrow_torus", "rpn(2)", "rpn(6)", "cpn(3)", "cliffordn(5)",
                             "quadric_ambient(5)", "quadric_sphere(4)", "quadric_sphere_signed(6)"})
        CHECK(std::find(names.begin(), names.end(), want) != names.end());
}

TEST_CASE("fixtures are canonical and verify") {
    for (const auto& e : std::filesystem::directory_iterator(fixture_dir())) {
        if (e.path().extension() != ".json") continue;
        const std::string text = slurp(e.path());
        Document d = parse_document(text);
        CHECK_MESSAGE(serialize(d) == text, e.path().filename().string());
        require_all_pass(verify_bundle(d.bundle), d.bundle.name);
    }
}

TEST_CASE("stored tables match the closed forms") {
    for (int n = 2; n <= 6; ++n) {
        auto b = load_example("rpn(" + std::to_string(n) + ")");
        CHECK(b.structure == rpn_structure(n));
        // The golden i_L is what the pairing equation derives.
        CHECK(inclusion_from_module(b.structure) == *b.expected.incl);

        auto c = load_example("cpn(" + std::to_string(n) + ")");
        TableBuilder t;
        t.s.meta = c.meta;
        cpn_ambient(t, n);
        CHECK(c.structure.amb_ring == t.s.amb_ring);
        CHECK(c.structure.amb_pairing == t.s.amb_pairing);
        CHECK(point_invertibility_order(c.structure)->k == 2 * n + 2);
    }
    CHECK(load_example("clifford2").structure == clifford2_structure());
    auto r4 = verify_example("rpn(4)");
    bool seen = false;
    for (const auto& it : r4.items)
        if (it.name == "golden i_L(a2)") {
            seen = true;
            CHECK(it.passed);
            CHECK(it.detail == "h2");
        }
    CHECK(seen);
}

TEST_CASE("a corrupted golden file fails locally") {
    const auto dir = std::filesystem::temp_directory_path() / "pearl_corrupt";
    std::filesystem::create_directories(dir);
    std::string text = slurp(std::filesystem::path(fixture_dir()) / "rpn_4.json");
    const std::string good = "[\"a2\",\"h2\",0,1]";
    auto expected_at = text.find("\"expected\"");
    auto pos = text.find(good, expected_at);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, good.size(), "[\"a2\",\"h4\",0,1]");
    std::ofstream(dir / "rpn_4.json", std::ios::binary) << text;
    auto b = load_bundle_file((dir / "rpn_4.json").string());
    auto r = verify_bundle(b);
    auto f = r.failures();
    REQUIRE(f.size() == 1);
    CHECK(f[0].name == "golden i_L(a2)");
    CHECK(f[0].detail == "derived h2, golden h4");
}

TEST_CASE("quadric ambient rings") {
    for (int n = 2; n <= 6; ++n) {
        auto b = load_example("quadric_ambient(" + std::to_string(n) + ")");
        const auto& S = b.structure;
        CHECK(S.amb_basis.size() == static_cast<std::size_t>(n % 2 == 0 ? n + 2 : n + 1));
        require_all_pass(two_sided_check(S), b.name);
        auto comm = [&](std::size_t i, std::size_t j) {
            return amb_mul(S, Comb::unit(Coeffs::Z, i), Comb::unit(Coeffs::Z, j)) ==
                   amb_mul(S, Comb::unit(Coeffs::Z, j), Comb::unit(Coeffs::Z, i));
        };
        for (std::size_t i = 0; i < S.amb_basis.size(); ++i)
            for (std::size_t j = 0; j < S.amb_basis.size(); ++j) CHECK(comm(i, j));
        // Frobenius: <x * y, z> = <x, y * z> on the classical (s^0) part.
        auto pairing = [&](const Comb& x, std::size_t z) {
            Int v = 0;
            for (const auto& [k, c] : x.terms()) {
                if (k.second != 0) continue;
                auto key = std::make_pair(std::min(k.first, z), std::max(k.first, z));
                if (auto it = S.amb_pairing.find(key); it != S.amb_pairing.end()) v += c * it->second;
            }
            return v;
        };
        const std::size_t na = S.amb_basis.size();
        for (std::size_t x = 0; x < na; ++x)
            for (std::size_t y = 0; y < na; ++y)
                for (std::size_t z = 0; z < na; ++z) {
                    auto X = Comb::unit(Coeffs::Z, x), Y = Comb::unit(Coeffs::Z, y), Z = Comb::unit(Coeffs::Z, z);
                    if (S.amb_basis[x].degree + S.amb_basis[y].degree + S.amb_basis[z].degree != 4 * n) continue;
                    CHECK(pairing(amb_mul(S, X, Y), z) == pairing(amb_mul(S, Y, Z), x));
                }
        CHECK(amb_mul(S, H(S, "p"), H(S, "p")) == H(S, "u", 2));
        if (n % 2 == 0) {
            const int k = n / 2;
            if (k % 2 == 1) {
                CHECK(amb_mul(S, H(S, "a"), H(S, "b")) == H(S, "p"));
                CHECK(amb_mul(S, H(S, "a"), H(S, "a")) == H(S, "u", 1));
                CHECK(amb_mul(S, H(S, "b"), H(S, "b")) == H(S, "u", 1));
            } else {
                CHECK(amb_mul(S, H(S, "a"), H(S, "a")) == H(S, "p"));
                CHECK(amb_mul(S, H(S, "a"), H(S, "b")) == H(S, "u", 1));
            }
        }
        auto pk = point_invertibility_order(S);
        REQUIRE(pk);
        CHECK(pk->k == 4 * n);
    }
}

TEST_CASE("quadric spheres") {
    for (int n : {2, 4, 6}) {
        const std::string N = std::to_string(n), an = "alpha" + N;
        auto z2 = load_example("quadric_sphere(" + N + ")").structure;
        CHECK(qmod(z2, H(z2, "p"), L(z2, "alpha0")) == L(z2, "alpha0", 1));
        CHECK(qprod(z2, L(z2, "alpha0"), L(z2, "alpha0")) == L(z2, an, 1));
        CHECK(inclusion_from_module(z2).at(z2.lag("alpha0")) == H(z2, "p") + H(z2, "u", 1));

        auto zs = load_example("quadric_sphere_signed(" + N + ")").structure;
        CHECK(qmod(zs, H(zs, "p"), L(zs, "alpha0")) == L(zs, "alpha0", 1, -1));
        CHECK(inclusion_from_module(zs).at(zs.lag("alpha0")) == H(zs, "p") + H(zs, "u", 1, -1));
        CHECK(zs.reduced_mod2() == z2);

        auto j = j_circ_i(zs, zs);
        CHECK(j.nonzero);
        Poly01 want = Poly01::monomial(j.ring, lambda01_normalize(Mono01{0, 1}, j.ring), -2);
        CHECK(j.image[zs.lag("alpha0")].at(zs.lag(an)) == want);
        CHECK_FALSE(j_circ_i(z2, z2).nonzero);

        CHECK(divisibility_test(zs).verdict == Divisibility::Divisible);
        CHECK(divisibility_test(z2).verdict == Divisibility::Divisible);
        auto in = width_inputs(zs);
        CHECK(in.k == 4 * n);
        for (const auto& nb : width_bounds(zs.meta, Status::Wide, in))
            if (nb.formula == "j*N_L*eta") CHECK(nb.value == 1);
    }
}

TEST_CASE("parse errors are reported as ParseError") {
    const std::string ok = slurp(std::filesystem::path(fixture_dir()) / "narrow_torus.json");
    CHECK_NOTHROW(parse_document(ok));
    auto broken = [&](const std::string& from, const std::string& to) {
        std::string s = ok;
        auto pos = s.find(from);
        REQUIRE(pos != std::string::npos);
        s.replace(pos, from.size(), to);
        return s;
    };
    CHECK_THROWS_AS(parse_document("{\"kind\":"), ParseError);
    CHECK_THROWS_AS(parse_document("[]"), ParseError);
    CHECK_THROWS_AS(parse_document(broken("\"schema_version\":1", "\"schema_version\":2")), ParseError);
    CHECK_THROWS_AS(parse_document(broken("\"kind\":\"bundle\"", "\"kind\":\"pearl\"")), ParseError);
    CHECK_THROWS_AS(parse_document(broken("\"t_power\":1", "\"t_power\":-1")), ParseError);
    CHECK_THROWS_AS(parse_document(broken("\"target\":\"a\"", "\"target\":\"zz\"")), ParseError);
    CHECK_THROWS_AS(parse_document(broken("{\"degree\":1,\"id\":\"b\"}", "{\"degree\":1,\"id\":\"a\"}")),
                    ParseError);
    CHECK_THROWS_AS(parse_document(broken("\"C_M\":3", "\"C_M\":\"many\"")), ParseError);
    CHECK_THROWS_AS(parse_document(broken("\"eta\":[\"1\",\"6\"]", "\"eta\":[\"1\",\"0\"]")), ParseError);
    CHECK_THROWS_AS(parse_document(broken("\"N_L\":2", "\"N_L\":4")), ParseError);
    CHECK_THROWS_AS(parse_document(broken("\"name\":", "\"extra\":1,\"name\":")), ParseError);
    CHECK_THROWS_AS(load_document("/nonexistent/file.json"), ParseError);
}

TEST_CASE("documents round trip") {
    InstanceMeta meta{2, 2, std::nullopt, Rational(3, 7), 0, Coeffs::Z};
    PearlComplex c;
    c.ring = complex_ring(meta);
    c.n = 2;
    for (auto [id, d] : {std::pair{"m", 0}, {"a", 1}, {"b", 1}, {"w", 2}}) c.add_generator(id, d);
    c.toggle_term(0, 1, 1);
    c.toggle_term(2, 3, 1);
    c.fundamental = 3;
    const std::string text = serialize_complex(meta, c);
    Document d = parse_document(text);
    CHECK(d.kind == DocKind::Complex);
    CHECK(d.meta == meta);
    CHECK(d.complex == c);
    CHECK(serialize(d) == text);
    CHECK(text.find("\"C_M\":\"inf\"") != std::string::npos);
    CHECK(text.find("\"eta\":[\"3\",\"7\"]") != std::string::npos);

    MinimalModel m = reduce(c);
    const std::string mt = serialize_minimal(meta, m);
    Document md = parse_document(mt);
    REQUIRE(md.model);
    CHECK(md.model->phi == m.phi);
    CHECK(md.model->psi == m.psi);
    CHECK(verify(*md.model).ok());
    CHECK(serialize(md) == mt);

    DiskClassData dd{2, {{"c0", {1, 1}, 1}, {"c1", {1, 0}, 1}}};
    Document ddoc = parse_document(serialize_disk_data(meta, dd));
    CHECK(ddoc.disk_data == dd);

    // Coefficients beyond 64 bits are written as decimal strings.
    QuantumStructure S;
    S.meta = meta;
    S.lag_basis = {{"x", 0}};
    Int big = Int(1) << 80;
    S.prod[{0, 0}] = Comb::unit(Coeffs::Z, 0, 2, big);
    const std::string st = serialize_structure(S);
    CHECK(st.find("\"1208925819614629174706176\"") != std::string::npos);
    Document sd = parse_document(st);
    CHECK(sd.structure.prod.at({0, 0}).coeff(0, 2) == big);
    CHECK(serialize(sd) == st);
}
