#include "definetti/invariance.hpp"

#include <algorithm>
#include <array>

namespace definetti {

namespace {

std::size_t power(int n, int k) {
    std::size_t c = 1;
    for (int t = 0; t < k; ++t) c *= static_cast<std::size_t>(n);
    return c;
}

IndexWord index_word(std::size_t idx, int n, int k) {
    IndexWord w(k);
    for (int t = k - 1; t >= 0; --t) {
        w[t] = static_cast<int>(idx % n) + 1;
        idx /= n;
    }
    return w;
}

Block to_block(const Coeff& c) { return Block(c); }

}  // namespace

JointDistribution::JointDistribution(MomentOracle moments, int order)
    : moments_(std::move(moments)), order_(order),
      cache_(std::make_shared<std::map<std::tuple<std::string, std::uint64_t, int>, std::vector<Coeff>>>()) {
    if (order < 0) throw InputError("order must be nonnegative");
}

const std::vector<Coeff>& JointDistribution::moment_block(const StarPattern& d, std::span<const Coeff> inner,
                                                          std::uint64_t seed, int tuple) const {
    auto key = std::make_tuple(d.to_string(), seed, tuple);
    auto it = cache_->find(key);
    if (it != cache_->end()) return it->second;
    const int k = d.size();
    const std::size_t total = power(n(), k);
    std::vector<Coeff> vals;
    vals.reserve(total);
    for (std::size_t idx = 0; idx < total; ++idx) vals.push_back(moments_.core(word_of(index_word(idx, n(), k), d), inner));
    return cache_->emplace(key, std::move(vals)).first->second;
}

JointDistribution free_iid(const FunctionalTable& single, int n, int order) {
    return JointDistribution(free_family_moments(single, n, order), order);
}

JointDistribution free_iid(const CumulantSpec& spec, int n, int order) { return free_iid(spec.table(), n, order); }

FunctionalTable promote_table(const FunctionalTable& t, int p) {
    if (t.dim() != 1) throw InputError("only scalar tables can be promoted");
    FunctionalTable out(t.alphabet(), p, t.order());
    for (const auto& w : t.words()) out.set_scalar(w, t.scalar(w));
    return out;
}

std::pair<Coeff, Coeff> test_matrices(int p, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x5eedb0b5ull);
    while (true) {
        Coeff a = random_gaussian(p, p, rng);
        Coeff b = random_gaussian(p, p, rng);
        if (p == 1 || max_abs(Coeff(a * b - b * a)) > 0.1) return {a, b};
    }
}

std::vector<std::vector<Coeff>> coefficient_tuples(int p, int k, std::uint64_t seed) {
    const int slots = std::max(k - 1, 0);
    std::vector<std::vector<Coeff>> out;
    out.emplace_back(slots, coeff_identity(p));
    if (p == 1) return out;
    auto [b1, b2] = test_matrices(p, seed);
    for (int s = 0; s < slots; ++s) {
        out.emplace_back(slots, coeff_identity(p));
        out.back()[s] = b1;
    }
    if (slots >= 2) {
        out.emplace_back();
        for (int s = 0; s < slots; ++s) out.back().push_back(s % 2 == 0 ? b1 : b2);
    }
    return out;
}

InvarianceVerdict check_invariance(const JointDistribution& joint, const MatrixRep& rep, int order,
                                   std::uint64_t seed, double tol) {
    const int n = rep.n(), p = joint.dim(), dd = rep.d(), big = p * dd;
    if (joint.n() != n) throw InputError("distribution has " + std::to_string(joint.n()) + " variables, rep has n = " +
                                         std::to_string(n));
    if (order > joint.order()) throw InputError("order exceeds the distribution's order");
    if (power(n, order) > kMaxInvarianceWords)
        throw SizeLimitError("n^order exceeds " + std::to_string(kMaxInvarianceWords));

    // right factors 1_p (x) u^s_ij
    std::array<std::vector<std::vector<Block>>, 2> factor;
    const Block ip = Block::Identity(p, p);
    const Block id = Block::Identity(dd, dd);
    for (Sym s : {Sym::one, Sym::star}) {
        auto& f = factor[static_cast<int>(s)];
        f.assign(n, std::vector<Block>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) f[i][j] = kronecker(ip, rep.entry(i, j, s));
    }

    InvarianceVerdict v;
    for (int k = 1; k <= order; ++k) {
        const std::size_t total = power(n, k);
        auto tuples = coefficient_tuples(p, k, seed);
        for (const auto& d : all_patterns(k)) {
            std::optional<Violation> first;
            for (std::size_t tid = 0; tid < tuples.size(); ++tid) {
                const auto& e = joint.moment_block(d, tuples[tid], seed, static_cast<int>(tid));
                std::vector<Block> cur(total), next(total);
                std::vector<char> nz(total);
                for (std::size_t idx = 0; idx < total; ++idx) {
                    cur[idx] = kronecker(to_block(e[idx]), id);
                    nz[idx] = max_abs(e[idx]) > 0;
                }
                // contract one index at a time, leftmost first
                std::size_t stride = total;
                for (int t = 0; t < k; ++t) {
                    stride /= n;
                    const auto& f = factor[static_cast<int>(d[t])];
                    for (std::size_t idx = 0; idx < total; ++idx) {
                        next[idx].setZero(big, big);
                        const int j = static_cast<int>((idx / stride) % n);
                        const std::size_t base = idx - j * stride;
                        for (int i = 0; i < n; ++i) {
                            std::size_t src = base + i * stride;
                            if (nz[src]) block_mul_add(cur[src], f[i][j], next[idx]);
                        }
                    }
                    std::swap(cur, next);
                    for (std::size_t idx = 0; idx < total; ++idx) nz[idx] = max_abs(cur[idx]) > 0;
                }
                for (std::size_t idx = 0; idx < total; ++idx) {
                    Block want = kronecker(to_block(e[idx]), id);
                    double r = (cur[idx] - want).norm() / std::max(1.0, want.norm());
                    ++v.checks;
                    v.max_residual = std::max(v.max_residual, r);
                    if (r > tol) {
                        IndexWord target = index_word(idx, n, k);
                        if (!first || target < first->target)
                            first = Violation{k, d, target, static_cast<int>(tid), r};
                        break;
                    }
                }
            }
            if (first) {
                v.invariant = false;
                v.first = first;
                return v;
            }
        }
    }
    return v;
}

bool check_2_exchangeable(const JointDistribution& joint, std::uint64_t seed, double tol) {
    const int n = joint.n(), p = joint.dim();
    if (n < 2) throw InputError("2-exchangeability needs n >= 2");
    if (joint.order() < 2) throw InputError("2-exchangeability needs moments up to order 2");
    auto close = [&](const Coeff& a, const Coeff& b) { return max_abs(Coeff(a - b)) <= tol; };
    for (Sym s : {Sym::one, Sym::star}) {
        StarPattern d(std::vector<Sym>{s});
        const auto& e = joint.moment_block(d, {}, seed, 0);
        for (int i = 1; i < n; ++i)
            if (!close(e[i], e[0])) return false;
    }
    auto tuples = coefficient_tuples(p, 2, seed);
    if (p > 1) tuples.push_back({test_matrices(p, seed).second});
    for (const auto& d : all_patterns(2))
        for (std::size_t tid = 0; tid < tuples.size(); ++tid) {
            const auto& e = joint.moment_block(d, tuples[tid], seed, static_cast<int>(tid));
            const Coeff& diag = e[0];
            const Coeff& off = e[1];
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (!close(e[i * n + j], i == j ? diag : off)) return false;
        }
    return true;
}

ExtractorReport cumulant_identity_extractor(const CumulantSpec& spec, const MatrixRep& rep, int order,
                                            std::uint64_t seed) {
    ExtractorReport r;
    for (const auto& d : spec.nonzero_patterns(order)) {
        PatternIdentity pi{d, block_identity_all(rep, d), full_delta_identity(rep, d)};
        if (!pi.delta.holds) {
            r.predicted_invariant = false;
            if (r.predicted_order == 0 || d.size() < r.predicted_order) r.predicted_order = d.size();
        }
        r.patterns.push_back(std::move(pi));
    }
    r.verdict = check_invariance(free_iid(spec, rep.n(), order), rep, order, seed);
    r.agree = r.predicted_invariant == r.verdict.invariant &&
              (r.verdict.invariant || r.verdict.first->order == r.predicted_order);
    return r;
}

FamilyTag class_symmetry(FreeClassTag c) {
    using C = FreeClass;
    using F = Family;
    switch (c.kind) {
        case C::symmetric: return {F::h_s_plus};
        case C::orthogonal:
        case C::semicircular: return {F::o_plus};
        case C::shifted_orthogonal: return {F::b_s_plus};
        case C::m_unitary: return {F::h_m_plus, c.m};
        case C::free_unitary: return {F::h_0_plus};
        case C::r_diagonal: return {F::h_prime_plus};
        case C::circular: return {F::u_plus};
        case C::shifted_circular: return {F::b_plus};
    }
    return {F::u_plus};
}

int ProbeGrid::mismatches() const {
    return static_cast<int>(std::count_if(cells.begin(), cells.end(), [](const ProbeCell& c) { return !c.match(); }));
}

ProbeGrid theorem1_probe(int n, int order, std::uint64_t seed) {
    if (n < 2 || n > 3) throw InputError("probe needs n in {2, 3}");
    if (order < 1) throw InputError("probe needs order >= 1");
    ProbeGrid g;
    g.n = n;
    g.order = order;
    g.classes = free_class_list(3);
    g.columns = family_list(3);
    std::vector<Witness> wit;
    for (auto f : g.columns) wit.push_back(family_witness(f, n));
    for (auto cls : g.classes) {
        auto spec = sample_spec(cls, seed);
        std::map<int, JointDistribution> joints;
        for (std::size_t c = 0; c < g.columns.size(); ++c) {
            const auto& w = wit[c];
            auto it = joints.find(w.rep.n());
            if (it == joints.end()) it = joints.emplace(w.rep.n(), free_iid(spec, w.rep.n(), order)).first;
            auto verdict = check_invariance(it->second, w.rep, order, seed);
            ProbeCell cell;
            cell.cls = cls;
            cell.column = g.columns[c];
            cell.witness = w.name;
            cell.n = w.rep.n();
            cell.expected = check_family(w.rep, class_symmetry(cls)).holds;
            cell.invariant = verdict.invariant;
            cell.violation = verdict.first;
            g.cells.push_back(std::move(cell));
        }
    }
    return g;
}

}  // namespace definetti
