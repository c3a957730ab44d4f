#include "definetti/qgroup.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>

namespace definetti {

MatrixRep::MatrixRep(int n, int d, std::vector<Block> entries, double tol)
    : n_(n), d_(d), tol_(tol), entries_(std::move(entries)) {
    if (n < 1 || d < 1) throw InputError("representation needs n >= 1 and d >= 1");
    if (static_cast<int>(entries_.size()) != n * n)
        throw InputError("representation needs n*n entries, got " + std::to_string(entries_.size()));
    for (const auto& e : entries_) {
        if (e.rows() != d || e.cols() != d) throw InputError("entry is not d x d");
        if (!e.allFinite()) throw InputError("entry contains NaN or infinity");
    }
    if (!(tol > 0)) throw InputError("tolerance must be positive");
}

MatrixRep MatrixRep::from_scalar(const Block& m, double tol) {
    if (m.rows() != m.cols()) throw InputError("matrix is not square");
    int n = static_cast<int>(m.rows());
    std::vector<Block> e;
    e.reserve(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) e.push_back(Block::Constant(1, 1, m(i, j)));
    return MatrixRep(n, 1, std::move(e), tol);
}

Block MatrixRep::flattened() const {
    Block f(n_ * d_, n_ * d_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) f.block(i * d_, j * d_, d_, d_) = (*this)(i, j);
    return f;
}

Block MatrixRep::conjugate_flattened() const {
    Block f(n_ * d_, n_ * d_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) f.block(i * d_, j * d_, d_, d_) = (*this)(i, j).adjoint();
    return f;
}

BiunitaryReport check_biunitary(const MatrixRep& u) {
    BiunitaryReport r;
    Block f = u.flattened();
    Block g = u.conjugate_flattened();
    Block id = Block::Identity(f.rows(), f.cols());
    r.u_star_u = operator_norm(f.adjoint() * f - id);
    r.u_u_star = operator_norm(f * f.adjoint() - id);
    r.ubar_star_ubar = operator_norm(g.adjoint() * g - id);
    r.ubar_ubar_star = operator_norm(g * g.adjoint() - id);
    r.residual = std::max({r.u_star_u, r.u_u_star, r.ubar_star_ubar, r.ubar_ubar_star});
    double t = u.tol();
    r.ok = r.residual <= t;
    r.completion_consistent = (r.u_star_u <= t) == (r.u_u_star <= t) && (r.ubar_star_ubar <= t) == (r.ubar_ubar_star <= t);
    return r;
}

namespace {

// entries[s][a][i] = u^{s}_{a i}
using EntryTable = std::array<std::vector<std::vector<Block>>, 2>;

EntryTable entry_table(const MatrixRep& u) {
    EntryTable t;
    for (Sym s : {Sym::one, Sym::star}) {
        auto& v = t[static_cast<int>(s)];
        v.assign(u.n(), std::vector<Block>(u.n()));
        for (int a = 0; a < u.n(); ++a)
            for (int i = 0; i < u.n(); ++i) v[a][i] = u.entry(a, i, s);
    }
    return t;
}

Block column_product_sum(const MatrixRep& u, const StarPattern& d, int j) {
    Block sum = Block::Zero(u.d(), u.d());
    for (int a = 0; a < u.n(); ++a) {
        Block p = Block::Identity(u.d(), u.d());
        for (int t = 0; t < d.size(); ++t) p = block_mul(p, u.entry(a, j, d[t]));
        sum += p;
    }
    return sum;
}

std::size_t tuple_count(int n, int k) {
    std::size_t c = 1;
    for (int t = 0; t < k; ++t) {
        c *= static_cast<std::size_t>(n);
        if (c > kMaxDeltaTuples) return c;
    }
    return c;
}

double sum_residual(const MatrixRep& u, bool rows) {
    double r = 0;
    Block id = Block::Identity(u.d(), u.d());
    for (int i = 0; i < u.n(); ++i) {
        Block s = Block::Zero(u.d(), u.d());
        for (int j = 0; j < u.n(); ++j) s += rows ? u(i, j) : u(j, i);
        r = std::max(r, (s - id).norm());
    }
    return r;
}

double projection_residual(const Block& p) {
    return std::max((block_mul(p, p) - p).norm(), (p - p.adjoint()).norm());
}

}  // namespace

IdentityResult block_identity(const MatrixRep& u, const StarPattern& d, int j) {
    if (j < 0 || j >= u.n()) throw InputError("column index out of range");
    IdentityResult r;
    r.residual = (column_product_sum(u, d, j) - Block::Identity(u.d(), u.d())).norm();
    r.holds = r.residual <= u.tol();
    r.worst = {j};
    return r;
}

bool block_identity_holds(const MatrixRep& u, const StarPattern& d, int j) { return block_identity(u, d, j).holds; }

IdentityResult block_identity_all(const MatrixRep& u, const StarPattern& d) {
    IdentityResult best;
    best.residual = -1;
    for (int j = 0; j < u.n(); ++j) {
        auto r = block_identity(u, d, j);
        if (r.residual > best.residual) best = r;
    }
    best.holds = best.residual <= u.tol();
    return best;
}

IdentityResult full_delta_identity(const MatrixRep& u, const StarPattern& d) {
    const int n = u.n(), k = d.size(), dd = u.d();
    if (tuple_count(n, k) > kMaxDeltaTuples)
        throw SizeLimitError("delta identity over n^k > " + std::to_string(kMaxDeltaTuples) + " index tuples");
    IdentityResult res;
    if (k == 0) {
        // empty product: sum_a 1 = n
        res.residual = (n - 1) * std::sqrt(static_cast<double>(dd));
        res.holds = res.residual <= u.tol();
        return res;
    }
    auto e = entry_table(u);
    // prefix[t][a] = u^{d1}_{a i1} ... u^{dt}_{a it}
    std::vector<std::vector<Block>> prefix(k + 1, std::vector<Block>(n, Block::Zero(dd, dd)));
    std::vector<int> idx(k);
    const Block id = Block::Identity(dd, dd);
    Block sum(dd, dd);
    res.residual = -1;

    std::function<void(int, bool)> rec = [&](int t, bool equal) {
        if (t == k) {
            sum.setZero();
            for (int a = 0; a < n; ++a) sum += prefix[k][a];
            double r = equal ? (sum - id).norm() : sum.norm();
            if (r > res.residual) {
                res.residual = r;
                res.worst = idx;
            }
            return;
        }
        const auto& tab = e[static_cast<int>(d[t])];
        for (int i = 0; i < n; ++i) {
            idx[t] = i;
            for (int a = 0; a < n; ++a) {
                if (t == 0) {
                    prefix[1][a] = tab[a][i];
                } else {
                    prefix[t + 1][a].setZero();
                    block_mul_add(prefix[t][a], tab[a][i], prefix[t + 1][a]);
                }
            }
            rec(t + 1, equal && (t == 0 || i == idx[0]));
        }
    };
    rec(0, true);
    res.holds = res.residual <= u.tol();
    return res;
}

bool full_delta_identity_holds(const MatrixRep& u, const StarPattern& d) { return full_delta_identity(u, d).holds; }

namespace {

constexpr std::array<const char*, 9> kFamilyNames = {
    "S_PLUS", "O_PLUS", "B_S_PLUS", "H_S_PLUS", "B_PLUS", "H_M_PLUS", "H_0_PLUS", "H_PRIME_PLUS", "U_PLUS",
};
// classical groups drop the _PLUS suffix
constexpr std::array<const char*, 9> kClassicalFamilyNames = {
    "S", "O", "B_S", "H_S", "B", "H_M", "H_0", "H_PRIME", "U",
};

}  // namespace

std::string to_string(FamilyTag f) {
    std::string s = (f.classical ? kClassicalFamilyNames : kFamilyNames)[static_cast<int>(f.kind)];
    if (f.kind == Family::h_m_plus) s += "(" + std::to_string(f.m) + ")";
    return s;
}

FamilyTag parse_family(const std::string& s) {
    std::string head = s;
    int m = 0;
    auto open = s.find('(');
    if (open != std::string::npos) {
        if (s.back() != ')') throw InputError("bad family tag: " + s);
        head = s.substr(0, open);
        try {
            m = std::stoi(s.substr(open + 1, s.size() - open - 2));
        } catch (const std::exception&) {
            throw InputError("bad family tag: " + s);
        }
    }
    for (bool classical : {false, true}) {
        const auto& names = classical ? kClassicalFamilyNames : kFamilyNames;
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (head != names[i]) continue;
            FamilyTag f{static_cast<Family>(i), 0, classical};
            if (f.kind == Family::h_m_plus) {
                if (m < 3) throw InputError("H_M_PLUS needs m >= 3: " + s);
                f.m = m;
            } else if (open != std::string::npos) {
                throw InputError("only H_M_PLUS takes a parameter: " + s);
            }
            return f;
        }
    }
    throw InputError("unknown family tag: " + s);
}

std::vector<FamilyTag> family_list(int m) {
    std::vector<FamilyTag> v;
    for (int i = 0; i < 9; ++i) {
        FamilyTag f{static_cast<Family>(i), 0, false};
        if (f.kind == Family::h_m_plus) f.m = m;
        v.push_back(f);
    }
    return v;
}

bool subgroup_of(FamilyTag a, FamilyTag b) {
    // a classical group sits inside its free version, never the other way
    if (a.classical && !b.classical) {
        a.classical = false;
        return subgroup_of(a, b);
    }
    if (!a.classical && b.classical) return false;
    if (a == b) return true;
    using F = Family;
    auto in = [&](std::initializer_list<F> fs) { return std::find(fs.begin(), fs.end(), b.kind) != fs.end(); };
    switch (a.kind) {
        case F::s_plus: return true;
        case F::b_s_plus: return in({F::b_plus, F::o_plus, F::u_plus});
        case F::h_s_plus: return in({F::o_plus, F::u_plus});
        case F::b_plus:
        case F::o_plus:
        case F::h_prime_plus: return b.kind == F::u_plus;
        case F::h_m_plus:
            if (b.kind == F::h_m_plus) return b.m % a.m == 0;
            return in({F::h_0_plus, F::h_prime_plus, F::u_plus});
        case F::h_0_plus: return in({F::h_prime_plus, F::u_plus});
        case F::u_plus: return false;
    }
    return false;
}

bool entries_commute(const MatrixRep& u, double tol) {
    if (u.d() == 1) return true;
    const int n = u.n();
    for (int p = 0; p < n * n; ++p)
        for (int q = 0; q < n * n; ++q) {
            const Block& a = u(p / n, p % n);
            const Block& b = u(q / n, q % n);
            if ((a * b - b * a).norm() > tol) return false;
            Block bs = b.adjoint();
            if ((a * bs - bs * a).norm() > tol) return false;
        }
    return true;
}

FamilyCheck check_family(const MatrixRep& u, FamilyTag f) {
    FamilyCheck c;
    c.family = f;
    const double tol = u.tol();
    auto add = [&](std::string name, double r) { c.relations.push_back({std::move(name), r, r <= tol}); };
    auto delta = [&](const char* p) {
        auto r = full_delta_identity(u, StarPattern::parse(p));
        add(std::string("delta(") + p + ")", r.residual);
    };
    auto sums = [&] { add("row and column sums", std::max(sum_residual(u, true), sum_residual(u, false))); };

    add("biunitary", check_biunitary(u).residual);
    using F = Family;
    switch (f.kind) {
        case F::u_plus: break;
        case F::o_plus: delta("11"); break;
        case F::b_s_plus:
            delta("11");
            sums();
            break;
        case F::h_s_plus: {
            delta("11");
            double r = 0;
            for (int i = 0; i < u.n(); ++i)
                for (int j = 0; j < u.n(); ++j) r = std::max(r, projection_residual(block_mul(u(i, j), u(i, j))));
            add("squares are projections", r);
            break;
        }
        case F::b_plus: sums(); break;
        case F::h_m_plus: {
            if (f.m < 1) throw InputError("H_M_PLUS needs m >= 1");
            auto p = StarPattern::repeat(Sym::one, f.m);
            add("delta(" + p.to_string() + ")", full_delta_identity(u, p).residual);
            break;
        }
        case F::h_0_plus: delta("11**"); break;
        case F::h_prime_plus: delta("1*1*"); break;
        case F::s_plus: {
            double r = 0;
            for (int i = 0; i < u.n(); ++i)
                for (int j = 0; j < u.n(); ++j) r = std::max(r, projection_residual(u(i, j)));
            add("entries are projections", r);
            sums();
            break;
        }
    }
    if (f.classical) add("entries commute", entries_commute(u, tol) ? 0.0 : 1.0);
    c.holds = true;
    for (const auto& r : c.relations) {
        c.residual = std::max(c.residual, r.residual);
        c.holds = c.holds && r.holds;
    }
    return c;
}

MatrixRep hadamard(const MatrixRep& u, const MatrixRep& v) {
    if (u.n() != v.n() || u.d() != v.d()) throw InputError("hadamard product needs equal n and d");
    std::vector<Block> e;
    for (int i = 0; i < u.n(); ++i)
        for (int j = 0; j < u.n(); ++j) e.push_back(block_mul(u(i, j), v(i, j)));
    return MatrixRep(u.n(), u.d(), std::move(e), std::max(u.tol(), v.tol()));
}

MatrixRep coproduct_lift(const MatrixRep& a, const MatrixRep& b) {
    if (a.n() != b.n()) throw InputError("coproduct lift needs equal n");
    const int n = a.n(), d = a.d() * b.d();
    std::vector<Block> e;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Block s = Block::Zero(d, d);
            for (int k = 0; k < n; ++k) s += kronecker(a(i, k), b(k, j));
            e.push_back(std::move(s));
        }
    return MatrixRep(n, d, std::move(e), std::max(a.tol(), b.tol()));
}

namespace {

bool is_rotation_of(const StarPattern& p, const char* base) {
    auto q = StarPattern::parse(base);
    if (p.size() != q.size()) return false;
    const int k = p.size();
    for (int r = 0; r < k; ++r) {
        bool same = true;
        for (int t = 0; t < k && same; ++t) same = p[t] == q[(t + r) % k];
        if (same) return true;
    }
    return false;
}

StarPattern rotate(const StarPattern& p, int r) {
    std::vector<Sym> s;
    for (int t = 0; t < p.size(); ++t) s.push_back(p[(t + r) % p.size()]);
    return StarPattern(std::move(s));
}

}  // namespace

std::vector<StructuralClaim> structural_consequences(const MatrixRep& u, const std::vector<StarPattern>& patterns) {
    std::vector<StructuralClaim> out;
    const int n = u.n();
    const double tol = u.tol();
    auto claim = [&](const StarPattern& p, std::string what, double r) {
        out.push_back({p.to_string(), std::move(what), r, r <= tol});
    };
    auto over_entries = [&](auto fn) {
        double r = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) r = std::max(r, fn(i, j));
        return r;
    };
    for (const auto& p : patterns) {
        const int k = p.size();
        if (k == 0 || !block_identity_all(u, p).holds) continue;
        if (k >= 2) {
            claim(p, "entrywise tail product equals adjoint of first factor", over_entries([&](int i, int j) {
                      Block t = Block::Identity(u.d(), u.d());
                      for (int s = 1; s < k; ++s) t = block_mul(t, u.entry(i, j, p[s]));
                      return (t - u.entry(i, j, adjoint(p[0]))).norm();
                  }));
            double r = 0;
            for (int s = 1; s < k; ++s) r = std::max(r, block_identity_all(u, rotate(p, s)).residual);
            claim(p, "cyclic rotations satisfy the block identity", r);
        }
        bool abab = k == 4 && p.imbalance() == 0 && p.alternating();
        bool aabb = is_rotation_of(p, "11**");
        if (abab) {
            claim(p, "entries are partial isometries", over_entries([&](int i, int j) {
                      const Block& a = u(i, j);
                      return (block_mul(block_mul(a, a.adjoint()), a) - a).norm();
                  }));
            double r = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    if (i == j) continue;
                    for (int c = 0; c < n; ++c) {
                        r = std::max(r, block_mul(u(i, c).adjoint(), u(j, c)).norm());
                        r = std::max(r, block_mul(u(i, c), u(j, c).adjoint()).norm());
                    }
                }
            claim(p, "entries in a column are mutually orthogonal", r);
        }
        if (aabb) {
            claim(p, "entries are normal", over_entries([&](int i, int j) {
                      const Block& a = u(i, j);
                      return (block_mul(a, a.adjoint()) - block_mul(a.adjoint(), a)).norm();
                  }));
        }
        int m = std::abs(p.imbalance());
        if (m >= 1)
            claim(p, "sum of m-th powers down a column is 1",
                  block_identity_all(u, StarPattern::repeat(Sym::one, m)).residual);
    }
    return out;
}

LatticePosition lattice_position(const MatrixRep& u, int m_max) {
    if (m_max < 3) throw InputError("m_max must be at least 3");
    if (tuple_count(u.n(), m_max) > kMaxDeltaTuples)
        throw SizeLimitError("n^m_max exceeds " + std::to_string(kMaxDeltaTuples) + "; lower m_max");
    LatticePosition lp;
    lp.m_max = m_max;
    std::vector<FamilyTag> fams;
    for (auto f : family_list(3)) {
        if (f.kind != Family::h_m_plus) {
            fams.push_back(f);
            continue;
        }
        for (int m = 3; m <= m_max; ++m) fams.push_back({Family::h_m_plus, m, false});
    }
    for (auto f : fams) {
        lp.checks.push_back(check_family(u, f));
        if (!lp.checks.back().holds) continue;
        lp.satisfied.push_back(f);
        if (f.kind == Family::h_m_plus) lp.h_indices.push_back(f.m);
    }
    lp.classical = entries_commute(u, u.tol());
    for (int m : lp.h_indices) lp.h_gcd = std::gcd(lp.h_gcd, m);

    auto sat = [&](Family k) {
        return std::any_of(lp.satisfied.begin(), lp.satisfied.end(), [&](FamilyTag f) { return f.kind == k; });
    };
    for (auto a : lp.satisfied) {
        bool dominated = std::any_of(lp.satisfied.begin(), lp.satisfied.end(),
                                     [&](FamilyTag b) { return b != a && subgroup_of(b, a); });
        if (!dominated) lp.minimal.push_back(a);
    }
    auto drop_h = [&] {
        std::erase_if(lp.minimal, [](FamilyTag f) { return f.kind == Family::h_m_plus; });
    };
    if (lp.h_gcd == 2) {
        // relations for m and m' give those for gcd(m, m'); m = 2 is the selfadjoint branch
        if (sat(Family::h_s_plus)) {
            drop_h();
            lp.notes.push_back("H_M indices have gcd 2: selfadjoint branch H_S_PLUS");
        } else {
            lp.notes.push_back("H_M indices have gcd 2 but H_S_PLUS relations fail");
        }
    } else if (lp.h_gcd == 1) {
        if (sat(Family::s_plus)) {
            drop_h();
            lp.notes.push_back("H_M indices have gcd 1: S_PLUS");
        } else {
            lp.notes.push_back("H_M indices have gcd 1 but S_PLUS relations fail");
        }
    } else if (lp.h_gcd >= 3) {
        if (std::find(lp.h_indices.begin(), lp.h_indices.end(), lp.h_gcd) == lp.h_indices.end())
            lp.notes.push_back("gcd " + std::to_string(lp.h_gcd) + " of H_M indices is not itself satisfied");
    }
    if (sat(Family::b_plus) && sat(Family::h_prime_plus)) {
        if (sat(Family::s_plus))
            lp.notes.push_back("B_PLUS and H_PRIME_PLUS together give S_PLUS");
        else
            lp.notes.push_back("B_PLUS and H_PRIME_PLUS hold but S_PLUS relations fail");
    }
    std::sort(lp.minimal.begin(), lp.minimal.end());
    return lp;
}

}  // namespace definetti
