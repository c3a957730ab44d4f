#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace definetti {

struct SizeLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Set partition of {1..k}. Blocks are kept canonical: each block ascending,
// blocks ordered by their minimum.
class Partition {
public:
    Partition() = default;
    Partition(int k, std::vector<std::vector<int>> blocks);

    int size() const { return k_; }
    std::size_t num_blocks() const { return blocks_.size(); }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    const std::vector<int>& block(std::size_t i) const { return blocks_[i]; }

    // block index (0-based) containing position i (1-based)
    int block_of(int i) const { return owner_[i - 1]; }

    bool operator==(const Partition& o) const { return k_ == o.k_ && blocks_ == o.blocks_; }
    bool operator<(const Partition& o) const;

    std::string to_string() const;  // [[1,3],[2]]

private:
    int k_ = 0;
    std::vector<std::vector<int>> blocks_;
    std::vector<int> owner_;
};

enum class Sym : std::uint8_t { one = 0, star = 1 };

inline Sym adjoint(Sym s) { return s == Sym::one ? Sym::star : Sym::one; }

class StarPattern {
public:
    StarPattern() = default;
    explicit StarPattern(std::vector<Sym> s) : s_(std::move(s)) {}
    static StarPattern parse(std::string_view text);  // "1*1*"
    static StarPattern repeat(Sym s, int k) { return StarPattern(std::vector<Sym>(k, s)); }

    int size() const { return static_cast<int>(s_.size()); }
    bool empty() const { return s_.empty(); }
    Sym operator[](std::size_t i) const { return s_[i]; }
    const std::vector<Sym>& symbols() const { return s_; }

    int count(Sym s) const;
    int imbalance() const { return count(Sym::star) - count(Sym::one); }
    bool alternating() const;

    // reversed word with 1 and * swapped
    StarPattern adjoint() const;
    StarPattern restrict(const std::vector<int>& positions) const;

    std::string to_string() const;
    bool operator==(const StarPattern&) const = default;
    auto operator<=>(const StarPattern&) const = default;

private:
    std::vector<Sym> s_;
};

// all 2^k patterns, ordered lexicographically with 1 before *
std::vector<StarPattern> all_patterns(int k);

using IndexWord = std::vector<int>;

struct DecorationClass {
    enum class Kind { m_divisible, inf_divisible, alternating, alternating_pair };
    Kind kind = Kind::inf_divisible;
    int m = 0;

    static DecorationClass divisible(int m);
    static DecorationClass infinite() { return {Kind::inf_divisible, 0}; }
    static DecorationClass alternating_words() { return {Kind::alternating, 0}; }
    static DecorationClass alternating_pairs() { return {Kind::alternating_pair, 0}; }
};

inline constexpr int kMaxAllPartitions = 12;
inline constexpr int kMaxNoncrossing = 16;

std::vector<Partition> enumerate_all_partitions(int k, int limit = kMaxAllPartitions);
std::vector<Partition> enumerate_noncrossing(int k, int limit = kMaxNoncrossing);
void for_each_noncrossing(int k, const std::function<void(const Partition&)>& f,
                          int limit = kMaxNoncrossing);

bool is_noncrossing(const Partition& p);
Partition kernel(const IndexWord& w);
bool refines(const Partition& p, const Partition& q);
bool is_pair_partition(const Partition& p);

// restriction of a pattern to one block (block index 0-based)
StarPattern block_restriction(const Partition& p, const StarPattern& d, std::size_t block);

bool satisfies_decoration(const StarPattern& d, const DecorationClass& c);

// NC^{A,d}(k): partitions each of whose block restrictions lies in the class
std::vector<Partition> filter_decorated(const std::vector<Partition>& ps, const StarPattern& d,
                                        const DecorationClass& c);

Partition parse_partition(std::string_view text);

}  // namespace definetti
