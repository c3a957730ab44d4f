#include <doctest.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "definetti/cli.hpp"
#include "definetti/fixtures.hpp"
#include "support.hpp"

using namespace definetti;
using namespace testsupport;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    auto d = fs::temp_directory_path() / ("definetti_test_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int c = run(args, out, err);
    return {c, out.str(), err.str()};
}

bool same_table(const FunctionalTable& a, const FunctionalTable& b) {
    if (a.words() != b.words() || a.dim() != b.dim() || a.alphabet() != b.alphabet()) return false;
    for (const auto& w : a.words()) {
        const auto& x = *a.find(w);
        const auto& y = *b.find(w);
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!(x[i].array() == y[i].array()).all()) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("spec round trip is bit exact") {
    std::mt19937_64 rng(11);
    for (int p : {1, 2})
        for (int alphabet : {1, 2}) {
            SpecFile s;
            s.kind = alphabet == 1 ? "cumulants" : "moments";
            s.table = random_table(alphabet, p, 3, rng, 1.0 / 3.0);
            s.shift = alphabet == 1 ? random_coeff(p, rng) : coeff_scalar(0.0, p);
            auto text = spec_to_json(s).dump(2);
            auto back = spec_from_json(json::parse(text));
            CHECK(back.kind == s.kind);
            CHECK(same_table(back.table, s.table));
            CHECK((back.shift.array() == s.shift.array()).all());
            CHECK(spec_to_json(back).dump(2) == text);
        }
}

TEST_CASE("rep round trip is bit exact") {
    for (const auto& w : witness_catalog()) {
        RepFile r{w.rep, w.name, to_string(w.family), w.note};
        auto back = rep_from_json(json::parse(rep_to_json(r).dump()));
        CHECK(back.name == r.name);
        CHECK(back.family == r.family);
        CHECK(back.rep.tol() == r.rep.tol());
        CHECK((back.rep.flattened().array() == r.rep.flattened().array()).all());
    }
}

TEST_CASE("malformed specs are input errors") {
    auto good = R"({"kind":"cumulants","entries":[{"pattern":"11","value":[1,0]}]})"_json;
    CHECK_NOTHROW(spec_from_json(good));
    auto bad = good;
    bad["entries"][0]["value"][0] = nullptr;
    CHECK_THROWS_AS(spec_from_json(bad), InputError);
    bad = good;
    bad["entries"][0]["value"][0] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(spec_from_json(bad), InputError);
    bad = good;
    bad["entries"].push_back(good["entries"][0]);
    CHECK_THROWS_AS(spec_from_json(bad), InputError);
    bad = good;
    bad["kind"] = "moments";
    bad["shift"] = {1, 0};
    CHECK_THROWS_AS(spec_from_json(bad), InputError);
    bad = good;
    bad["dim"] = 4;
    CHECK_THROWS_AS(spec_from_json(bad), InputError);
    bad = good;
    bad["entries"][0]["pattern"] = "1x";
    CHECK_THROWS(spec_from_json(bad));
}

TEST_CASE("non-biunitary rep reports its residual") {
    // entries 1/2 + i and 1/2 - i
    json j = {{"n", 2}, {"d", 1}};
    cd a(0.5, 1.0), b(0.5, -1.0);
    j["entries"] = {{{{complex_to_json(a)}}, {{complex_to_json(b)}}}, {{{complex_to_json(b)}}, {{complex_to_json(a)}}}};
    try {
        rep_from_json(j);
        FAIL("accepted");
    } catch (const InputError& e) {
        std::string msg = e.what();
        CHECK(msg.find("not biunitary") != std::string::npos);
        CHECK(msg.find("residual 3") != std::string::npos);
    }
    CHECK_NOTHROW(rep_from_json(j, false));
}

TEST_CASE("fixtures reload") {
    auto dir = scratch("fixtures");
    auto paths = write_fixtures(dir);
    auto set = load_fixtures(dir);
    CHECK(set.reps.size() + set.specs.size() == paths.size());
    CHECK(set.reps.size() == witness_catalog().size());
    for (const auto& r : set.reps) CHECK(check_family(r.rep, parse_family(r.family)).holds);
    // a rep that fails its declared family is rejected
    RepFile wrong{family_witness(FamilyTag{Family::u_plus}).rep, "wrong", "O_PLUS", ""};
    save_rep(dir / "wrong.json", wrong);
    CHECK_THROWS_AS(load_fixtures(dir), InputError);
    fs::remove_all(dir);
}

TEST_CASE("cli exit codes and outputs") {
    auto dir = scratch("cli");
    write_fixtures(dir);
    auto f = [&](const char* name) { return (dir / name).string(); };

    auto r = cli({"enumerate", "--nc", "4"});
    CHECK(r.code == 0);
    CHECK(r.out == "14\n");
    CHECK(cli({"enumerate", "--all", "4"}).out == "15\n");
    CHECK(cli({"enumerate", "--decorated", "1*1*", "--class", "alternating"}).out == "3\n");
    CHECK(cli({"enumerate", "--decorated", "1*1*", "--class", "alternating_pair"}).out == "2\n");
    CHECK(cli({"enumerate", "--nc", "3", "--all", "3"}).code == 2);

    CHECK(cli({"check-rep", f("rotation.json")}).code == 0);
    CHECK(cli({"check-rep", f("rotation.json"), "--family", "B_PLUS"}).code == 1);
    CHECK(cli({"check-rep", f("rotation.json"), "--family", "NOPE"}).code == 2);
    CHECK(cli({"check-rep", f("missing.json")}).code == 2);

    r = cli({"classify-dist", "--free", f("haar_unitary.json")});
    CHECK(r.code == 0);
    CHECK(r.out.find("minimal: R_DIAGONAL") != std::string::npos);
    CHECK(cli({"classify-dist", "--free", f("spec_semicircular.json"), "--expect", "CIRCULAR"}).code == 1);

    r = cli({"lattice-position", f("phase_i.json"), "--expect", "H_M_PLUS(4)"});
    CHECK(r.code == 0);
    CHECK(r.out.find("gcd 4") != std::string::npos);

    r = cli({"check-invariance", "--dist", f("spec_semicircular.json"), "--rep", f("phase_i.json"), "--order", "4"});
    CHECK(r.code == 1);
    CHECK(r.out.find("order 2, pattern 11") != std::string::npos);
    CHECK(cli({"check-invariance", "--dist", f("spec_circular.json"), "--rep", f("phase_i.json"), "--order", "4",
               "--matrix-b", "--identities"})
              .code == 0);

    CHECK(cli({"theorem1-probe", "--n", "2", "--order", "4"}).code == 0);

    CHECK(cli({"enumerate", "--bogus"}).code == 2);
    CHECK(cli({}).code == 2);
    CHECK(cli({"--help"}).code == 0);
    fs::remove_all(dir);
}

TEST_CASE("convert round trip through files") {
    auto dir = scratch("convert");
    SpecFile s = spec_file(sample_spec({FreeClass::shifted_circular}, 2));
    save_spec(dir / "k.json", s);
    for (const char* formula : {"--free", "--classical"}) {
        CHECK(cli({"convert", (dir / "k.json").string(), formula, "--order", "6", "--out", (dir / "m.json").string()})
                  .code == 0);
        CHECK(cli({"convert", (dir / "m.json").string(), formula, "--out", (dir / "k2.json").string()}).code == 0);
        auto back = load_spec(dir / "k2.json");
        CHECK(back.kind == "cumulants");
        for (const auto& w : s.table.words()) {
            INFO(formula, " ", word_to_string(w));
            CHECK(std::abs(back.table.scalar(w) - s.table.scalar(w)) < 1e-12);
        }
    }
    fs::remove_all(dir);
}

TEST_CASE("json reports are deterministic") {
    auto dir = scratch("det");
    write_fixtures(dir);
    std::vector<std::string> args = {"--json", "check-invariance", "--dist", (dir / "spec_r_diagonal.json").string(),
                                     "--rep", (dir / "generic_unitary.json").string(), "--order", "4", "--matrix-b"};
    auto a = cli(args), b = cli(args);
    CHECK(a.out == b.out);
    auto j = json::parse(a.out);
    CHECK(j["command"] == "check-invariance");
    CHECK(j["version"] == kVersion);
    CHECK(j["seed"] == 0);
    auto p1 = cli({"--json", "theorem1-probe", "--n", "2", "--order", "4"});
    auto p2 = cli({"theorem1-probe", "--order", "4", "--json"});
    CHECK(json::parse(p1.out)["grid"] == json::parse(p2.out)["grid"]);
    CHECK(json::parse(p1.out)["mismatches"] == 0);
    fs::remove_all(dir);
}
