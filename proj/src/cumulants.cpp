#include "definetti/cumulants.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

namespace definetti {

namespace {

constexpr double kOverflowGuard = 1e12;

int letter_code(const Letter& l) {
    if (l.index < 1 || l.index > kMaxAlphabet)
        throw InputError("variable index out of range: " + std::to_string(l.index));
    return (l.index - 1) * 2 + static_cast<int>(l.sym);
}

const std::vector<Partition>& nc_cache(int k) {
    static std::map<int, std::vector<Partition>> cache;
    auto it = cache.find(k);
    if (it == cache.end()) it = cache.emplace(k, enumerate_noncrossing(k)).first;
    return it->second;
}

const std::vector<Partition>& all_cache(int k) {
    static std::map<int, std::vector<Partition>> cache;
    auto it = cache.find(k);
    if (it == cache.end()) it = cache.emplace(k, enumerate_all_partitions(k)).first;
    return it->second;
}

Coeff zero(int p) { return Coeff::Zero(p, p); }

void check_arity(const Partition& p, const Word& w, std::span<const Coeff> coeffs, int dim) {
    if (p.size() != static_cast<int>(w.size()))
        throw InputError("partition size does not match word length");
    if (coeffs.size() != w.size() + 1)
        throw InputError("expected " + std::to_string(w.size() + 1) + " coefficients, got " +
                         std::to_string(coeffs.size()));
    for (const auto& c : coeffs)
        if (c.rows() != dim || c.cols() != dim) throw InputError("coefficient has the wrong dimension");
}

Coeff eval_free_impl(const TensorSource& t, const Partition& part, const Word& w, std::span<const Coeff> coeffs,
                     Innermost which) {
    const int k = part.size();
    const int p = t.dim();
    std::array<Coeff, kMaxWordLength + 1> c;
    for (int i = 0; i <= k; ++i) c[i] = coeffs[i];
    std::array<bool, kMaxWordLength + 1> alive{};
    for (int i = 1; i <= k; ++i) alive[i] = true;
    const auto nb = part.num_blocks();
    std::vector<bool> gone(nb, false);
    std::array<Coeff, kMaxWordLength> inner;

    for (std::size_t step = 0; step < nb; ++step) {
        std::size_t pick = nb;
        for (std::size_t bi = 0; bi < nb; ++bi) {
            std::size_t b = which == Innermost::leftmost ? bi : nb - 1 - bi;
            if (gone[b]) continue;
            const auto& blk = part.block(b);
            bool contiguous = true;
            for (int x = blk.front(); x <= blk.back() && contiguous; ++x)
                if (alive[x] && part.block_of(x) != static_cast<int>(b)) contiguous = false;
            if (contiguous) {
                pick = b;
                break;
            }
        }
        if (pick == nb) throw DomainError("free evaluation needs a noncrossing partition");

        const auto& blk = part.block(pick);
        const auto* tensor = t.find(word_key(w, blk));
        if (!tensor) return zero(p);
        const int s = static_cast<int>(blk.size());
        for (int i = 0; i + 1 < s; ++i) inner[i] = c[blk[i]];
        Coeff val = eval_tensor(*tensor, p, std::span<const Coeff>(inner.data(), s - 1)) * c[blk.back()];
        int prev = blk.front() - 1;
        while (prev > 0 && !alive[prev]) --prev;
        c[prev] = c[prev] * val;
        for (int x : blk) alive[x] = false;
        gone[pick] = true;
    }
    return c[0];
}

Coeff eval_classical_impl(const TensorSource& t, const Partition& part, const Word& w,
                          std::span<const Coeff> coeffs) {
    const int p = t.dim();
    Coeff acc = coeffs[0];
    std::array<Coeff, kMaxWordLength> inner;
    for (const auto& blk : part.blocks()) {
        const auto* tensor = t.find(word_key(w, blk));
        if (!tensor) return zero(p);
        const int s = static_cast<int>(blk.size());
        for (int i = 0; i + 1 < s; ++i) inner[i] = coeffs[blk[i]];
        acc = acc * (eval_tensor(*tensor, p, std::span<const Coeff>(inner.data(), s - 1)) * coeffs[blk.back()]);
    }
    return acc;
}

std::vector<Coeff> with_ends(int p, const std::vector<Coeff>& inner) {
    std::vector<Coeff> c;
    c.reserve(inner.size() + 2);
    c.push_back(coeff_identity(p));
    c.insert(c.end(), inner.begin(), inner.end());
    c.push_back(coeff_identity(p));
    return c;
}

void guard_magnitude(const std::vector<Coeff>& tensor) {
    for (const auto& c : tensor)
        if (!(max_abs(c) <= kOverflowGuard)) throw DomainError("table entry exceeds magnitude guard (1e12) or is not finite");
}

enum class Lattice { noncrossing, all };

const std::vector<Partition>& partitions_of(Lattice l, int k) {
    return l == Lattice::noncrossing ? nc_cache(k) : all_cache(k);
}

Coeff eval_any(Lattice l, const TensorSource& t, const Partition& p, const Word& w, std::span<const Coeff> c) {
    return l == Lattice::noncrossing ? eval_free_impl(t, p, w, c, Innermost::leftmost)
                                     : eval_classical_impl(t, p, w, c);
}

FunctionalTable invert(const FunctionalTable& moments, int order, Lattice lat) {
    const int p = moments.dim();
    const int n = moments.alphabet();
    FunctionalTable kappa(n, p, order);
    for (int k = 1; k <= order; ++k) {
        const auto& parts = partitions_of(lat, k);
        const std::size_t nbasis = basis_size(p, k);
        for (const Word& w : all_words(n, k)) {
            const auto* mt = moments.find(w);
            if (mt) guard_magnitude(*mt);
            std::vector<Coeff> tensor(nbasis, zero(p));
            bool nonzero = false;
            for (std::size_t id = 0; id < nbasis; ++id) {
                auto coeffs = with_ends(p, basis_tuple(p, k, id));
                Coeff v = mt ? (*mt)[id] : zero(p);
                for (const auto& part : parts) {
                    if (part.num_blocks() == 1) continue;
                    v -= eval_any(lat, kappa, part, w, coeffs);
                }
                if (max_abs(v) > 0) nonzero = true;
                tensor[id] = v;
            }
            if (nonzero) kappa.set(w, std::move(tensor));
        }
    }
    return kappa;
}

FunctionalTable expand(const FunctionalTable& kappa, int order, Lattice lat) {
    const int p = kappa.dim();
    const int n = kappa.alphabet();
    FunctionalTable m(n, p, order);
    for (int k = 1; k <= order; ++k) {
        const auto& parts = partitions_of(lat, k);
        const std::size_t nbasis = basis_size(p, k);
        for (const Word& w : all_words(n, k)) {
            std::vector<Coeff> tensor(nbasis, zero(p));
            bool nonzero = false;
            for (std::size_t id = 0; id < nbasis; ++id) {
                auto coeffs = with_ends(p, basis_tuple(p, k, id));
                Coeff v = zero(p);
                for (const auto& part : parts) v += eval_any(lat, kappa, part, w, coeffs);
                if (max_abs(v) > 0) nonzero = true;
                tensor[id] = v;
            }
            if (nonzero) m.set(w, std::move(tensor));
        }
    }
    return m;
}

}  // namespace

Word word_of(const StarPattern& d, int index) {
    Word w(d.size());
    for (int i = 0; i < d.size(); ++i) w[i] = {index, d[i]};
    return w;
}

Word word_of(const IndexWord& idx, const StarPattern& d) {
    if (static_cast<int>(idx.size()) != d.size()) throw InputError("index word and pattern differ in length");
    Word w(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) w[i] = {idx[i], d[i]};
    return w;
}

StarPattern pattern_of(const Word& w) {
    std::vector<Sym> s;
    for (const auto& l : w) s.push_back(l.sym);
    return StarPattern(std::move(s));
}

IndexWord indices_of(const Word& w) {
    IndexWord r;
    for (const auto& l : w) r.push_back(l.index);
    return r;
}

std::string word_to_string(const Word& w) {
    bool single = std::all_of(w.begin(), w.end(), [](const Letter& l) { return l.index == 1; });
    if (single) return pattern_of(w).to_string();
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ' ';
        s += 'x' + std::to_string(w[i].index);
        if (w[i].sym == Sym::star) s += '*';
    }
    return s;
}

std::vector<Word> all_words(int n, int k) {
    std::vector<Word> out;
    const int base = 2 * n;
    std::size_t total = 1;
    for (int i = 0; i < k; ++i) total *= base;
    out.reserve(total);
    for (std::size_t code = 0; code < total; ++code) {
        Word w(k);
        std::size_t c = code;
        for (int i = k - 1; i >= 0; --i) {
            int digit = static_cast<int>(c % base);
            c /= base;
            w[i] = {digit / 2 + 1, digit % 2 ? Sym::star : Sym::one};
        }
        out.push_back(std::move(w));
    }
    return out;
}

WordKey word_key(const Word& w) {
    if (w.size() > kMaxWordLength) throw SizeLimitError("word too long");
    WordKey key = w.size();
    for (std::size_t i = 0; i < w.size(); ++i) key |= static_cast<WordKey>(letter_code(w[i])) << (4 + 4 * i);
    return key;
}

WordKey word_key(const Word& w, std::span<const int> positions) {
    WordKey key = positions.size();
    for (std::size_t i = 0; i < positions.size(); ++i)
        key |= static_cast<WordKey>(letter_code(w[positions[i] - 1])) << (4 + 4 * i);
    return key;
}

Word word_from_key(WordKey key) {
    int k = key_length(key);
    Word w(k);
    for (int i = 0; i < k; ++i) {
        int code = static_cast<int>((key >> (4 + 4 * i)) & 0xF);
        w[i] = {code / 2 + 1, code % 2 ? Sym::star : Sym::one};
    }
    return w;
}

std::size_t basis_size(int p, int k) {
    std::size_t n = 1;
    for (int i = 1; i < k; ++i) n *= static_cast<std::size_t>(p) * p;
    return n;
}

std::vector<Coeff> basis_tuple(int p, int k, std::size_t id) {
    std::vector<Coeff> inner;
    const std::size_t pp = static_cast<std::size_t>(p) * p;
    for (int t = 0; t + 1 < k; ++t) {
        std::size_t digit = id % pp;
        id /= pp;
        Coeff e = zero(p);
        e(static_cast<int>(digit / p), static_cast<int>(digit % p)) = 1.0;
        inner.push_back(e);
    }
    return inner;
}

Coeff eval_tensor(const std::vector<Coeff>& tensor, int p, std::span<const Coeff> inner) {
    if (p == 1) {
        cd v = tensor[0](0, 0);
        for (const auto& b : inner) v *= b(0, 0);
        return coeff_scalar(v);
    }
    Coeff acc = zero(p);
    const std::size_t pp = static_cast<std::size_t>(p) * p;
    const int slots = static_cast<int>(inner.size());
    // depth-first over the nonzero entries of each slot
    auto rec = [&](auto&& self, int t, std::size_t idx, std::size_t stride, cd weight) -> void {
        if (t == slots) {
            acc += weight * tensor[idx];
            return;
        }
        const Coeff& b = inner[t];
        for (int r = 0; r < p; ++r)
            for (int c = 0; c < p; ++c) {
                cd x = b(r, c);
                if (x == cd(0.0)) continue;
                self(self, t + 1, idx + (r * p + c) * stride, stride * pp, weight * x);
            }
    };
    rec(rec, 0, 0, 1, cd(1.0));
    return acc;
}

FunctionalTable::FunctionalTable(int alphabet, int dim, int order) : alphabet_(alphabet), dim_(dim), order_(order) {
    if (alphabet < 1 || alphabet > kMaxAlphabet) throw InputError("alphabet size out of range");
    if (dim < 1 || dim > kMaxCoeffDim) throw InputError("coefficient dimension must be 1..3");
    if (order < 0 || order > kMaxWordLength) throw InputError("table order out of range");
}

const std::vector<Coeff>* FunctionalTable::find(WordKey key) const {
    auto it = data_.find(key);
    return it == data_.end() ? nullptr : &it->second;
}

void FunctionalTable::set(const Word& w, std::vector<Coeff> tensor) {
    const int k = static_cast<int>(w.size());
    if (k < 1 || k > order_) throw InputError("word length outside table order");
    for (const auto& l : w)
        if (l.index > alphabet_) throw InputError("variable index exceeds alphabet");
    if (tensor.size() != basis_size(dim_, k)) throw InputError("tensor size does not match word length");
    for (const auto& c : tensor) {
        if (c.rows() != dim_ || c.cols() != dim_) throw InputError("tensor entry has the wrong dimension");
        for (int i = 0; i < c.size(); ++i)
            if (!std::isfinite(c(i).real()) || !std::isfinite(c(i).imag()))
                throw InputError("table entry is not finite");
    }
    data_[word_key(w)] = std::move(tensor);
}

void FunctionalTable::set_scalar(const Word& w, cd value) {
    const int k = static_cast<int>(w.size());
    std::vector<Coeff> tensor;
    const std::size_t nb = basis_size(dim_, k);
    for (std::size_t id = 0; id < nb; ++id) {
        Coeff prod = coeff_identity(dim_);
        for (const auto& e : basis_tuple(dim_, k, id)) prod = prod * e;
        tensor.push_back(value * prod);
    }
    set(w, std::move(tensor));
}

void FunctionalTable::erase(const Word& w) { data_.erase(word_key(w)); }

cd FunctionalTable::scalar(const Word& w) const {
    if (dim_ != 1) throw UnsupportedError("scalar lookup on a matrix-valued table");
    const auto* t = find(w);
    return t ? (*t)[0](0, 0) : cd(0.0);
}

Coeff FunctionalTable::core(const Word& w, std::span<const Coeff> inner) const {
    if (inner.size() + 1 != w.size()) throw InputError("core evaluation needs k-1 inner coefficients");
    if (static_cast<int>(w.size()) > order_) throw InputError("word longer than table order");
    const auto* t = find(w);
    return t ? eval_tensor(*t, dim_, inner) : zero(dim_);
}

Coeff FunctionalTable::evaluate(const Word& w, std::span<const Coeff> coeffs) const {
    if (coeffs.size() != w.size() + 1) throw InputError("evaluation needs k+1 coefficients");
    if (w.empty()) return coeffs[0];
    return coeffs.front() * core(w, coeffs.subspan(1, w.size() - 1)) * coeffs.back();
}

std::vector<Word> FunctionalTable::words() const {
    std::vector<Word> out;
    out.reserve(data_.size());
    for (const auto& [key, _] : data_) out.push_back(word_from_key(key));
    std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

double max_table_diff(const FunctionalTable& a, const FunctionalTable& b) {
    if (a.dim() != b.dim()) throw InputError("tables have different coefficient dimension");
    double worst = 0.0;
    auto scan = [&](const FunctionalTable& x, const FunctionalTable& y) {
        for (const Word& w : x.words()) {
            const auto* tx = x.find(w);
            const auto* ty = y.find(w);
            for (std::size_t i = 0; i < tx->size(); ++i)
                worst = std::max(worst, max_abs(Coeff((*tx)[i] - (ty ? (*ty)[i] : zero(x.dim())))));
        }
    };
    scan(a, b);
    scan(b, a);
    return worst;
}

MomentOracle MomentOracle::from_table(FunctionalTable t) {
    const int n = t.alphabet();
    const int p = t.dim();
    return MomentOracle(n, p, [t = std::move(t)](const Word& w, std::span<const Coeff> inner) {
        return t.core(w, inner);
    });
}

Coeff MomentOracle::operator()(const Word& w, std::span<const Coeff> coeffs) const {
    if (coeffs.size() != w.size() + 1) throw InputError("evaluation needs k+1 coefficients");
    if (w.empty()) return coeffs[0];
    return coeffs.front() * core_(w, coeffs.subspan(1, w.size() - 1)) * coeffs.back();
}

FunctionalTable MomentOracle::tabulate(int order) const {
    FunctionalTable t(alphabet_, dim_, order);
    for (int k = 1; k <= order; ++k) {
        const std::size_t nb = basis_size(dim_, k);
        for (const Word& w : all_words(alphabet_, k)) {
            std::vector<Coeff> tensor;
            tensor.reserve(nb);
            bool nonzero = false;
            for (std::size_t id = 0; id < nb; ++id) {
                auto inner = basis_tuple(dim_, k, id);
                tensor.push_back(core_(w, inner));
                if (max_abs(tensor.back()) > 0) nonzero = true;
            }
            if (nonzero) t.set(w, std::move(tensor));
        }
    }
    return t;
}

Coeff eval_partitioned_classical(const TensorSource& t, const Partition& p, const Word& w,
                                 std::span<const Coeff> coeffs) {
    check_arity(p, w, coeffs, t.dim());
    return eval_classical_impl(t, p, w, coeffs);
}

Coeff eval_partitioned_free(const TensorSource& t, const Partition& p, const Word& w, std::span<const Coeff> coeffs,
                            Innermost which) {
    check_arity(p, w, coeffs, t.dim());
    if (!is_noncrossing(p)) throw DomainError("free evaluation needs a noncrossing partition: " + p.to_string());
    return eval_free_impl(t, p, w, coeffs, which);
}

namespace {

void check_single(const MomentOracle& m, int order, int limit_scalar, int limit_matrix) {
    if (m.alphabet() != 1) throw InputError("single-variable conversion needs alphabet size 1");
    const int limit = m.dim() == 1 ? limit_scalar : limit_matrix;
    if (order < 1 || order > limit) throw SizeLimitError("conversion order limited to " + std::to_string(limit));
}

}  // namespace

FunctionalTable moments_to_free_cumulants(const MomentOracle& m, int order) {
    check_single(m, order, kMaxFreeOrderScalar, kMaxFreeOrderMatrix);
    return invert(m.tabulate(order), order, Lattice::noncrossing);
}

MomentOracle free_cumulants_to_moments(const FunctionalTable& t, int order) {
    if (t.alphabet() != 1) throw InputError("single-variable conversion needs alphabet size 1");
    if (order > t.order()) throw InputError("incomplete table: order " + std::to_string(order) + " requested, table has " +
                                            std::to_string(t.order()));
    const int limit = t.dim() == 1 ? kMaxFreeOrderScalar : kMaxFreeOrderMatrix;
    if (order < 1 || order > limit) throw SizeLimitError("conversion order limited to " + std::to_string(limit));
    return MomentOracle::from_table(expand(t, order, Lattice::noncrossing));
}

FunctionalTable moments_to_classical_cumulants(const MomentOracle& m, int order) {
    if (m.dim() != 1) throw UnsupportedError("classical cumulants need a commutative (scalar) coefficient algebra");
    check_single(m, order, kMaxFreeOrderScalar, kMaxFreeOrderScalar);
    return invert(m.tabulate(order), order, Lattice::all);
}

MomentOracle classical_cumulants_to_moments(const FunctionalTable& t, int order) {
    if (t.dim() != 1) throw UnsupportedError("classical cumulants need a commutative (scalar) coefficient algebra");
    if (t.alphabet() != 1) throw InputError("single-variable conversion needs alphabet size 1");
    if (order > t.order()) throw InputError("incomplete table");
    if (order < 1 || order > kMaxFreeOrderScalar)
        throw SizeLimitError("conversion order limited to " + std::to_string(kMaxFreeOrderScalar));
    return MomentOracle::from_table(expand(t, order, Lattice::all));
}

const std::vector<Coeff>* IidCumulants::find(WordKey key) const {
    const int k = key_length(key);
    WordKey stripped = static_cast<WordKey>(k);
    int index = -1;
    for (int i = 0; i < k; ++i) {
        int code = static_cast<int>((key >> (4 + 4 * i)) & 0xF);
        if (index == -1)
            index = code / 2;
        else if (index != code / 2)
            return nullptr;
        stripped |= static_cast<WordKey>(code % 2) << (4 + 4 * i);
    }
    return single_->find(stripped);
}

Coeff joint_moments_free_family(const FunctionalTable& single, int n, const IndexWord& w, const StarPattern& d,
                                std::span<const Coeff> coeffs) {
    if (single.alphabet() != 1) throw InputError("free family needs a single-variable cumulant table");
    for (int i : w)
        if (i < 1 || i > n) throw InputError("index out of range 1..n");
    Word word = word_of(w, d);
    if (static_cast<int>(word.size()) > single.order()) throw InputError("word longer than cumulant table order");
    if (coeffs.size() != word.size() + 1) throw InputError("evaluation needs k+1 coefficients");
    const int k = static_cast<int>(word.size());
    if (k == 0) return coeffs[0];
    IidCumulants src(single);
    Partition ker = kernel(w);
    Coeff acc = zero(single.dim());
    for (const auto& p : nc_cache(k)) {
        if (!refines(p, ker)) continue;
        acc += eval_free_impl(src, p, word, coeffs, Innermost::leftmost);
    }
    return acc;
}

MomentOracle free_family_moments(const FunctionalTable& single, int n, int order) {
    if (order > single.order()) throw InputError("incomplete table");
    const int p = single.dim();
    return MomentOracle(n, p, [single, n](const Word& w, std::span<const Coeff> inner) {
        std::vector<Coeff> coeffs;
        coeffs.push_back(coeff_identity(single.dim()));
        coeffs.insert(coeffs.end(), inner.begin(), inner.end());
        coeffs.push_back(coeff_identity(single.dim()));
        return joint_moments_free_family(single, n, indices_of(w), pattern_of(w), coeffs);
    });
}

FunctionalTable multivariate_cumulants_from_joint_moments(const MomentOracle& m, int order) {
    if (m.alphabet() > kMaxMultivariateAlphabet)
        throw SizeLimitError("multivariate conversion limited to n <= " + std::to_string(kMaxMultivariateAlphabet));
    if (order < 1 || order > kMaxMultivariateOrder)
        throw SizeLimitError("multivariate conversion limited to order " + std::to_string(kMaxMultivariateOrder));
    return invert(m.tabulate(order), order, Lattice::noncrossing);
}

}  // namespace definetti
