// One PASS/FAIL line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "definetti/fixtures.hpp"
#include "definetti/invariance.hpp"
#include "support.hpp"

using namespace definetti;
using namespace testsupport;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("threw: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = budget_s <= 0 || s < budget_s;
    bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("%s %d %s: %s (%.2f s%s)\n", pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), s,
                in_time ? "" : ", over budget");
    std::fflush(stdout);
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1e", x);
    return buf;
}

Word w_(const char* s) { return word_of(StarPattern::parse(s)); }
Word ones_word(int k) { return word_of(StarPattern::repeat(Sym::one, k)); }

// restricted growth strings: every set partition of k points, as block labels
void for_each_labelling(int k, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> a(k, 0);
    std::function<void(int, int)> rec = [&](int i, int used) {
        if (i == k) return f(a);
        for (int b = 0; b <= used && b < k; ++b) {
            a[i] = b;
            rec(i + 1, std::max(used, b + 1));
        }
    };
    rec(0, 0);
}

bool crossing(const std::vector<int>& a) {
    const int k = static_cast<int>(a.size());
    for (int p = 0; p < k; ++p)
        for (int q = p + 1; q < k; ++q)
            for (int r = q + 1; r < k; ++r)
                for (int s = r + 1; s < k; ++s)
                    if (a[p] == a[r] && a[q] == a[s] && a[p] != a[q]) return true;
    return false;
}

const char* kClaims[] = {"entries are partial isometries", "entries in a column are mutually orthogonal",
                         "entries are normal", "entrywise tail product equals adjoint of first factor",
                         "sum of m-th powers down a column is 1"};

std::vector<StarPattern> patterns_upto(int k) {
    std::vector<StarPattern> ps;
    for (int j = 1; j <= k; ++j)
        for (const auto& d : all_patterns(j)) ps.push_back(d);
    return ps;
}

}  // namespace

int main() {
    criterion(1, "partition counts", 5.0, [] {
        std::vector<long> catalan{1}, bell{1};
        for (int n = 1; n <= 8; ++n) {
            long c = 0;
            for (int i = 0; i < n; ++i) c += catalan[i] * catalan[n - 1 - i];
            catalan.push_back(c);
        }
        // Bell triangle
        std::vector<long> row{1};
        for (int n = 1; n <= 8; ++n) {
            std::vector<long> next{row.back()};
            for (long x : row) next.push_back(next.back() + x);
            row = next;
            bell.push_back(row.front());
        }
        std::string bad;
        for (int k = 0; k <= 8; ++k) {
            if (static_cast<long>(enumerate_noncrossing(k).size()) != catalan[k]) bad += " NC(" + std::to_string(k) + ")";
            if (static_cast<long>(enumerate_all_partitions(k).size()) != bell[k]) bad += " P(" + std::to_string(k) + ")";
        }
        return Outcome{bad.empty(), bad.empty() ? "NC(8) = 1430, P(8) = 4140, k = 0..8 exact" : "mismatch:" + bad};
    });

    criterion(2, "decorated counts", 0, [] {
        auto d = StarPattern::parse("1*1*");
        int brute_alt = 0, brute_pair = 0;
        for_each_labelling(4, [&](const std::vector<int>& a) {
            if (crossing(a)) return;
            bool alt = true, pair = true;
            for (int b = 0; b < 4; ++b) {
                std::string s;
                for (int i = 0; i < 4; ++i)
                    if (a[i] == b) s += d[i] == Sym::one ? '1' : '*';
                if (s.empty()) continue;
                bool strictly = true;
                for (std::size_t i = 1; i < s.size(); ++i) strictly = strictly && s[i] != s[i - 1];
                alt = alt && strictly && s.size() % 2 == 0;
                pair = pair && s.size() == 2 && s[0] != s[1];
            }
            brute_alt += alt;
            brute_pair += pair;
        });
        auto nc = enumerate_noncrossing(4);
        int lib_alt = static_cast<int>(filter_decorated(nc, d, DecorationClass::alternating_words()).size());
        int lib_pair = static_cast<int>(filter_decorated(nc, d, DecorationClass::alternating_pairs()).size());
        bool ok = lib_alt == 3 && lib_pair == 2 && brute_alt == 3 && brute_pair == 2;
        return Outcome{ok, "ALTERNATING " + std::to_string(lib_alt) + " (brute " + std::to_string(brute_alt) +
                               "), ALTERNATING_PAIR " + std::to_string(lib_pair) + " (brute " +
                               std::to_string(brute_pair) + ")"};
    });

    criterion(3, "moment-cumulant round trips", 30.0, [] {
        std::mt19937_64 rng(2024);
        double worst = 0;
        auto trip = [&](int p, int order) {
            auto k = random_table(1, p, order, rng);
            worst = std::max(worst, max_table_diff(moments_to_free_cumulants(free_cumulants_to_moments(k, order), order), k));
            if (p == 1)
                worst = std::max(worst, max_table_diff(
                                            moments_to_classical_cumulants(classical_cumulants_to_moments(k, order), order), k));
            auto m = random_table(1, p, order, rng);
            auto mo = MomentOracle::from_table(m);
            worst = std::max(worst, max_table_diff(free_cumulants_to_moments(moments_to_free_cumulants(mo, order), order)
                                                       .tabulate(order),
                                                   m));
            if (p == 1)
                worst = std::max(worst,
                                 max_table_diff(classical_cumulants_to_moments(moments_to_classical_cumulants(mo, order), order)
                                                    .tabulate(order),
                                                m));
        };
        for (int t = 0; t < 100; ++t) trip(1, 1 + t % 6);
        for (int t = 0; t < 20; ++t) trip(2, 1 + t % 5);
        return Outcome{worst <= 1e-9, "100 scalar specs free and classical, 20 M_2 specs free, both directions, max error " + sci(worst)};
    });

    criterion(4, "known laws", 0, [] {
        double worst = 0;
        auto dev = [&](cd got, double want) { worst = std::max(worst, std::abs(got - want)); };
        FunctionalTable semi(1, 1, 6);
        for (const auto& d : all_patterns(2)) semi.set_scalar(word_of(d), 1.0);
        auto ms = free_cumulants_to_moments(semi, 6);
        for (int k : {1, 2, 3}) dev(ms(ones_word(2 * k), ones(2 * k))(0, 0), k == 3 ? 5.0 : k);
        FunctionalTable circ(1, 1, 6);
        circ.set_scalar(w_("1*"), 1.0);
        circ.set_scalar(w_("*1"), 1.0);
        auto mc = free_cumulants_to_moments(circ, 6);
        dev(mc(w_("1*"), ones(2))(0, 0), 1.0);
        dev(mc(w_("1*1*"), ones(4))(0, 0), 2.0);
        dev(mc(w_("1*1*1*"), ones(6))(0, 0), 5.0);
        auto mg = classical_cumulants_to_moments(semi, 6);
        const double gauss[] = {1.0, 3.0, 15.0};
        for (int k : {1, 2, 3}) dev(mg(ones_word(2 * k), ones(2 * k))(0, 0), gauss[k - 1]);
        // Haar unitary, library and first-block inversion
        auto haar = cumulant_spec(haar_unitary_moments(6), true, 6).table();
        ScalarInverseOracle oracle(true, [](const Word& w) { return cd(pattern_of(w).imbalance() == 0 ? 1.0 : 0.0); });
        dev(haar.scalar(w_("1*")), 1.0);
        dev(haar.scalar(w_("1*1*")), -1.0);
        dev(oracle.kappa(w_("1*")), 1.0);
        dev(oracle.kappa(w_("1*1*")), -1.0);
        return Outcome{worst <= 1e-9, "semicircle 1,2,5; circular 1,2,5; Gaussian 1,3,15; Haar 1,-1; max error " + sci(worst)};
    });

    criterion(5, "example relation table", 5.0, [] {
        auto fx = make_fixtures();
        auto rep = [&](const std::string& name) -> const MatrixRep& {
            for (const auto& r : fx.reps)
                if (r.name == name) return r.rep;
            throw InputError("missing fixture " + name);
        };
        double worst_hold = 0, weakest_fail = 1e300;
        std::string bad;
        auto claim = [&](const std::string& name, FamilyTag in, std::vector<FamilyTag> out) {
            auto h = check_family(rep(name), in);
            worst_hold = std::max(worst_hold, h.residual);
            if (!h.holds || h.residual > 1e-12) bad += " " + name + " not in " + to_string(in);
            for (auto f : out) {
                auto c = check_family(rep(name), f);
                weakest_fail = std::min(weakest_fail, c.residual);
                if (c.holds) bad += " " + name + " in " + to_string(f);
            }
        };
        claim("rational_3", {Family::b_s_plus}, {{Family::s_plus}});
        claim("rotation", {Family::o_plus}, {{Family::b_s_plus}});
        claim("phase_i", {Family::u_plus}, {{Family::b_plus}});
        claim("root_of_unity_3", {Family::h_m_plus, 3}, {{Family::s_plus}});
        std::vector<FamilyTag> hm;
        for (int m = 3; m <= 12; ++m) hm.push_back({Family::h_m_plus, m});
        claim("irrational_phase", {Family::h_0_plus}, hm);
        claim("nilpotent", {Family::h_prime_plus}, {{Family::h_0_plus}});
        claim("bplus_3", {Family::b_plus}, {{Family::o_plus}, {Family::b_s_plus}});
        // entries 1/2 + i, 1/2 - i are not unitary
        Block printed(3, 3);
        cd a(0.5, 1.0), b(0.5, -1.0);
        printed << a, b, 0.0, b, a, 0.0, 0.0, 0.0, 1.0;
        auto br = check_biunitary(MatrixRep::from_scalar(printed));
        if (br.ok) bad += " printed B+ matrix is biunitary";
        return Outcome{bad.empty(), bad.empty() ? "13 separations, max holding residual " + sci(worst_hold) +
                                                      ", min failing residual " + sci(weakest_fail) +
                                                      ", uncorrected B+ entries residual " + sci(br.residual)
                                                : "wrong:" + bad};
    });

    criterion(6, "structural consequences", 0, [] {
        auto fx = make_fixtures();
        auto ps = patterns_upto(4);
        std::map<std::string, int> seen;
        double worst = 0;
        int failed = 0;
        for (const auto& r : fx.reps)
            for (const auto& c : structural_consequences(r.rep, ps)) {
                ++seen[c.claim];
                worst = std::max(worst, c.residual);
                failed += !(c.holds && c.residual <= 1e-9);
            }
        std::string missing;
        for (const char* c : kClaims)
            if (!seen.count(c)) missing += std::string(" [") + c + "]";
        std::mt19937_64 rng(1000);
        int violations = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            int n = 2 + trial % 3, d = 1 + trial % 3;
            Block big = random_unitary(n * d, rng);
            std::vector<Block> ue, ve;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    ue.push_back(big.block(i * d, j * d, d, d));
                    ve.push_back(random_gaussian(d, d, rng));
                }
            MatrixRep u(n, d, std::move(ue)), v(n, d, std::move(ve));
            if (operator_norm(hadamard(u, v).flattened()) > operator_norm(v.flattened()) + 1e-12) ++violations;
        }
        int total = 0;
        for (const auto& [k, v] : seen) total += v;
        bool ok = failed == 0 && missing.empty() && violations == 0;
        return Outcome{ok, std::to_string(total) + " consequences on fixtures, " + std::to_string(failed) +
                               " failing, max residual " + sci(worst) + missing + "; Hadamard contraction " +
                               std::to_string(violations) + "/1000 violations"};
    });

    criterion(7, "coproduct closure", 0, [] {
        auto fx = make_fixtures();
        auto ps = patterns_upto(4);
        double worst = 0;
        int checked = 0;
        for (const auto& r : fx.reps) {
            auto lift = coproduct_lift(r.rep, r.rep);
            worst = std::max(worst, check_biunitary(lift).residual);
            for (const auto& d : ps)
                if (full_delta_identity_holds(r.rep, d)) {
                    worst = std::max(worst, full_delta_identity(lift, d).residual);
                    ++checked;
                }
        }
        return Outcome{worst <= 1e-8, std::to_string(checked) + " satisfied patterns lifted, max residual " + sci(worst)};
    });

    criterion(8, "probe grid", 60.0, [] {
        auto g = theorem1_probe(2, 5);
        int own = 0, own_ok = 0;
        for (const auto& c : g.cells) {
            auto sym = class_symmetry(c.cls);
            if (c.column == sym || (c.column.kind == Family::h_m_plus && sym.kind == Family::h_m_plus)) {
                ++own;
                own_ok += c.invariant;
            }
        }
        bool ok = g.cells.size() == 81 && g.mismatches() == 0 && own == own_ok;
        return Outcome{ok, std::to_string(g.cells.size()) + " cells, " + std::to_string(g.mismatches()) +
                               " mismatches, own-family pass " + std::to_string(own_ok) + "/" + std::to_string(own)};
    });

    criterion(9, "extractor agreement", 0, [] {
        auto fx = make_fixtures();
        int pairs = 0, agree = 0;
        std::string first_bad;
        for (const auto& s : fx.specs) {
            auto spec = cumulant_spec(s.spec, true, 5);
            CumulantSpec matrix(promote_table(spec.table(), 2), false);
            for (const auto& r : fx.reps) {
                if (r.rep.n() > 3) continue;
                for (const auto* sp : {&spec, &matrix}) {
                    auto e = cumulant_identity_extractor(*sp, r.rep, 5);
                    ++pairs;
                    agree += e.agree;
                    if (!e.agree && first_bad.empty()) first_bad = ", first disagreement " + s.name + " x " + r.name;
                }
            }
        }
        return Outcome{pairs > 0 && agree == pairs, std::to_string(agree) + "/" + std::to_string(pairs) +
                                                         " spec x rep pairs agree at K = 5 (scalar and M_2)" +
                                                         first_bad};
    });

    return failures;
}
