#include "definetti/partition.hpp"

#include <algorithm>
#include <numeric>

#include <json.hpp>

namespace definetti {

Partition::Partition(int k, std::vector<std::vector<int>> blocks) : k_(k), blocks_(std::move(blocks)) {
    if (k < 0) throw InputError("partition size must be non-negative");
    owner_.assign(k, -1);
    for (auto& b : blocks_) {
        if (b.empty()) throw InputError("partition has an empty block");
        std::sort(b.begin(), b.end());
    }
    std::sort(blocks_.begin(), blocks_.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        for (int x : blocks_[i]) {
            if (x < 1 || x > k) throw InputError("partition element out of range: " + std::to_string(x));
            if (owner_[x - 1] != -1) throw InputError("partition element repeated: " + std::to_string(x));
            owner_[x - 1] = static_cast<int>(i);
        }
    }
    for (int i = 0; i < k; ++i)
        if (owner_[i] == -1) throw InputError("partition does not cover " + std::to_string(i + 1));
}

bool Partition::operator<(const Partition& o) const {
    if (k_ != o.k_) return k_ < o.k_;
    return blocks_ < o.blocks_;
}

std::string Partition::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (i) s += ',';
        s += '[';
        for (std::size_t j = 0; j < blocks_[i].size(); ++j) {
            if (j) s += ',';
            s += std::to_string(blocks_[i][j]);
        }
        s += ']';
    }
    return s + "]";
}

Partition parse_partition(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad partition text: ") + e.what());
    }
    if (!j.is_array()) throw InputError("partition must be a list of blocks");
    std::vector<std::vector<int>> blocks;
    int k = 0;
    for (const auto& b : j) {
        if (!b.is_array()) throw InputError("partition block must be a list");
        std::vector<int> block;
        for (const auto& x : b) {
            if (!x.is_number_integer()) throw InputError("partition element must be an integer");
            block.push_back(x.get<int>());
            k = std::max(k, block.back());
        }
        blocks.push_back(std::move(block));
    }
    return Partition(k, std::move(blocks));
}

StarPattern StarPattern::parse(std::string_view text) {
    std::vector<Sym> s;
    s.reserve(text.size());
    for (char c : text) {
        if (c == '1')
            s.push_back(Sym::one);
        else if (c == '*')
            s.push_back(Sym::star);
        else
            throw InputError("pattern symbols must be '1' or '*': " + std::string(text));
    }
    return StarPattern(std::move(s));
}

int StarPattern::count(Sym x) const {
    return static_cast<int>(std::count(s_.begin(), s_.end(), x));
}

bool StarPattern::alternating() const {
    for (std::size_t i = 1; i < s_.size(); ++i)
        if (s_[i] == s_[i - 1]) return false;
    return true;
}

StarPattern StarPattern::adjoint() const {
    std::vector<Sym> r(s_.rbegin(), s_.rend());
    for (auto& x : r) x = definetti::adjoint(x);
    return StarPattern(std::move(r));
}

StarPattern StarPattern::restrict(const std::vector<int>& positions) const {
    std::vector<Sym> r;
    r.reserve(positions.size());
    for (int i : positions) r.push_back(s_.at(i - 1));
    return StarPattern(std::move(r));
}

std::string StarPattern::to_string() const {
    std::string s;
    for (Sym x : s_) s += (x == Sym::one ? '1' : '*');
    return s;
}

std::vector<StarPattern> all_patterns(int k) {
    std::vector<StarPattern> out;
    out.reserve(std::size_t{1} << k);
    for (unsigned code = 0; code < (1u << k); ++code) {
        std::vector<Sym> s(k);
        for (int i = 0; i < k; ++i) s[i] = ((code >> (k - 1 - i)) & 1u) ? Sym::star : Sym::one;
        out.emplace_back(std::move(s));
    }
    return out;
}

DecorationClass DecorationClass::divisible(int m) {
    if (m < 1) throw InputError("divisibility class needs m >= 1");
    return {Kind::m_divisible, m};
}

namespace {

Partition from_labels(const std::vector<int>& label, int nblocks) {
    std::vector<std::vector<int>> blocks(nblocks);
    for (std::size_t i = 0; i < label.size(); ++i) blocks[label[i]].push_back(static_cast<int>(i) + 1);
    return Partition(static_cast<int>(label.size()), std::move(blocks));
}

void check_size(int k, int limit, const char* what) {
    if (k < 0) throw InputError("partition size must be non-negative");
    if (k > limit)
        throw SizeLimitError(std::string(what) + " enumeration limited to k <= " + std::to_string(limit));
}

// Noncrossing partitions of an interval: the block of the first element is
// chosen left to right; each gap between its elements, and the tail after
// it, is an independent noncrossing partition.
struct NcGen {
    std::vector<int> label;
    int next = 0;
    const std::function<void(const Partition&)>* emit = nullptr;

    void fill(int l, int r, const std::function<void()>& cont) {
        if (l > r) {
            cont();
            return;
        }
        int id = next++;
        label[l] = id;
        extend(l, r, id, cont);
        --next;
    }

    void extend(int last, int r, int id, const std::function<void()>& cont) {
        fill(last + 1, r, cont);
        for (int a = last + 1; a <= r; ++a) {
            fill(last + 1, a - 1, [&] {
                label[a] = id;
                extend(a, r, id, cont);
            });
        }
    }
};

}  // namespace

void for_each_noncrossing(int k, const std::function<void(const Partition&)>& f, int limit) {
    check_size(k, limit, "noncrossing");
    if (k == 0) {
        f(Partition(0, {}));
        return;
    }
    NcGen g;
    g.label.assign(k, -1);
    g.fill(0, k - 1, [&] { f(from_labels(g.label, g.next)); });
}

std::vector<Partition> enumerate_noncrossing(int k, int limit) {
    std::vector<Partition> out;
    for_each_noncrossing(k, [&](const Partition& p) { out.push_back(p); }, limit);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Partition> enumerate_all_partitions(int k, int limit) {
    check_size(k, limit, "set partition");
    std::vector<Partition> out;
    if (k == 0) {
        out.emplace_back(0, std::vector<std::vector<int>>{});
        return out;
    }
    // restricted growth strings
    std::vector<int> a(k, 0), mx(k, 0);
    while (true) {
        out.push_back(from_labels(a, mx[k - 1] + 1));
        int i = k - 1;
        while (i > 0 && a[i] == mx[i - 1] + 1) --i;
        if (i == 0) break;
        ++a[i];
        mx[i] = std::max(mx[i - 1], a[i]);
        for (int j = i + 1; j < k; ++j) {
            a[j] = 0;
            mx[j] = mx[i];
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_noncrossing(const Partition& p) {
    const int k = p.size();
    for (int a = 1; a <= k; ++a)
        for (int b = a + 1; b <= k; ++b) {
            if (p.block_of(a) == p.block_of(b)) continue;
            for (int c = b + 1; c <= k; ++c) {
                if (p.block_of(c) != p.block_of(a)) continue;
                for (int d = c + 1; d <= k; ++d)
                    if (p.block_of(d) == p.block_of(b)) return false;
            }
        }
    return true;
}

Partition kernel(const IndexWord& w) {
    std::vector<int> label(w.size());
    std::vector<int> seen;
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto it = std::find(seen.begin(), seen.end(), w[i]);
        if (it == seen.end()) {
            label[i] = static_cast<int>(seen.size());
            seen.push_back(w[i]);
        } else {
            label[i] = static_cast<int>(it - seen.begin());
        }
    }
    return from_labels(label, static_cast<int>(seen.size()));
}

bool refines(const Partition& p, const Partition& q) {
    if (p.size() != q.size()) throw InputError("refines: partitions of different sizes");
    for (const auto& b : p.blocks()) {
        int owner = q.block_of(b.front());
        for (int x : b)
            if (q.block_of(x) != owner) return false;
    }
    return true;
}

bool is_pair_partition(const Partition& p) {
    return std::all_of(p.blocks().begin(), p.blocks().end(), [](const auto& b) { return b.size() == 2; });
}

StarPattern block_restriction(const Partition& p, const StarPattern& d, std::size_t block) {
    if (p.size() != d.size()) throw InputError("pattern length does not match partition size");
    if (block >= p.num_blocks()) throw InputError("block index out of range");
    return d.restrict(p.block(block));
}

bool satisfies_decoration(const StarPattern& d, const DecorationClass& c) {
    switch (c.kind) {
    case DecorationClass::Kind::m_divisible: {
        int r = d.imbalance() % c.m;
        return r == 0;
    }
    case DecorationClass::Kind::inf_divisible:
        return d.imbalance() == 0;
    case DecorationClass::Kind::alternating:
        return d.imbalance() == 0 && d.alternating();
    case DecorationClass::Kind::alternating_pair:
        return d.size() == 2 && d[0] != d[1];
    }
    return false;
}

std::vector<Partition> filter_decorated(const std::vector<Partition>& ps, const StarPattern& d,
                                        const DecorationClass& c) {
    std::vector<Partition> out;
    for (const auto& p : ps) {
        if (p.size() != d.size()) throw InputError("pattern length does not match partition size");
        if (c.kind == DecorationClass::Kind::alternating_pair && !is_pair_partition(p)) continue;
        bool ok = true;
        for (std::size_t b = 0; b < p.num_blocks() && ok; ++b) ok = satisfies_decoration(d.restrict(p.block(b)), c);
        if (ok) out.push_back(p);
    }
    return out;
}

}  // namespace definetti
