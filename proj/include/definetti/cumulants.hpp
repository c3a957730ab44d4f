#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "definetti/algebra.hpp"
#include "definetti/partition.hpp"

namespace definetti {

inline constexpr double kCumulantTol = 1e-9;

// x_index^sym
struct Letter {
    int index = 1;
    Sym sym = Sym::one;
    bool operator==(const Letter&) const = default;
    auto operator<=>(const Letter&) const = default;
};
using Word = std::vector<Letter>;

Word word_of(const StarPattern& d, int index = 1);
Word word_of(const IndexWord& w, const StarPattern& d);
StarPattern pattern_of(const Word& w);
IndexWord indices_of(const Word& w);
std::string word_to_string(const Word& w);  // "1*" when all indices are 1, else "x1 x2* ..."

// all (2n)^k words of length k, lexicographic in (index, sym)
std::vector<Word> all_words(int n, int k);

inline constexpr int kMaxWordLength = 15;
inline constexpr int kMaxAlphabet = 8;

using WordKey = std::uint64_t;
WordKey word_key(const Word& w);
WordKey word_key(const Word& w, std::span<const int> positions);  // 1-based positions
Word word_from_key(WordKey key);
inline int key_length(WordKey key) { return static_cast<int>(key & 0xF); }

// number of basis tuples for the inner coefficients of an order-k functional
std::size_t basis_size(int p, int k);
// matrix units E_rc for the inner slots of basis tuple `id`
std::vector<Coeff> basis_tuple(int p, int k, std::size_t id);

// Evaluates a multilinear map M_p^{k-1} -> M_p stored on the matrix-unit basis.
Coeff eval_tensor(const std::vector<Coeff>& tensor, int p, std::span<const Coeff> inner);

// Source of B-valued cumulant (or moment) tensors looked up by word.
class TensorSource {
public:
    virtual ~TensorSource() = default;
    virtual int dim() const = 0;
    virtual const std::vector<Coeff>* find(WordKey key) const = 0;
};

// Sparse table of order-k functionals, keyed by word. A missing word is zero.
class FunctionalTable : public TensorSource {
public:
    FunctionalTable() = default;
    FunctionalTable(int alphabet, int dim, int order);

    int alphabet() const { return alphabet_; }
    int dim() const override { return dim_; }
    int order() const { return order_; }

    const std::vector<Coeff>* find(WordKey key) const override;
    const std::vector<Coeff>* find(const Word& w) const { return find(word_key(w)); }

    void set(const Word& w, std::vector<Coeff> tensor);
    // scalar value; for p > 1 it is embedded as b_1 ... b_{k-1} -> value * b_1 ... b_{k-1}
    void set_scalar(const Word& w, cd value);
    void erase(const Word& w);

    cd scalar(const Word& w) const;  // p == 1 only
    Coeff core(const Word& w, std::span<const Coeff> inner) const;
    Coeff evaluate(const Word& w, std::span<const Coeff> coeffs) const;  // b0 x b1 ... x bk

    std::vector<Word> words() const;  // stored words, sorted
    std::size_t entries() const { return data_.size(); }

private:
    int alphabet_ = 1;
    int dim_ = 1;
    int order_ = 0;
    std::unordered_map<WordKey, std::vector<Coeff>> data_;
};

// largest entry-wise difference over the union of stored words
double max_table_diff(const FunctionalTable& a, const FunctionalTable& b);

// E[b0 x^{d1} b1 ... x^{dk} bk] for words over an alphabet of n variables
class MomentOracle {
public:
    using CoreFn = std::function<Coeff(const Word&, std::span<const Coeff> inner)>;

    MomentOracle() = default;
    MomentOracle(int alphabet, int dim, CoreFn core) : alphabet_(alphabet), dim_(dim), core_(std::move(core)) {}
    static MomentOracle from_table(FunctionalTable t);

    int alphabet() const { return alphabet_; }
    int dim() const { return dim_; }

    Coeff core(const Word& w, std::span<const Coeff> inner) const { return core_(w, inner); }
    Coeff operator()(const Word& w, std::span<const Coeff> coeffs) const;
    FunctionalTable tabulate(int order) const;

private:
    int alphabet_ = 1;
    int dim_ = 1;
    CoreFn core_;
};

enum class Innermost { leftmost, rightmost };

// product of block values in block order, b0 in front
Coeff eval_partitioned_classical(const TensorSource& t, const Partition& p, const Word& w,
                                 std::span<const Coeff> coeffs);

// nested evaluation: an interval block's value is absorbed into the coefficient
// to its left (b0 when the block starts at position 1)
Coeff eval_partitioned_free(const TensorSource& t, const Partition& p, const Word& w, std::span<const Coeff> coeffs,
                            Innermost which = Innermost::leftmost);

inline constexpr int kMaxFreeOrderScalar = 8;
inline constexpr int kMaxFreeOrderMatrix = 6;
inline constexpr int kMaxMultivariateOrder = 6;
inline constexpr int kMaxMultivariateAlphabet = 3;

FunctionalTable moments_to_free_cumulants(const MomentOracle& m, int order);
MomentOracle free_cumulants_to_moments(const FunctionalTable& t, int order);
FunctionalTable moments_to_classical_cumulants(const MomentOracle& m, int order);
MomentOracle classical_cumulants_to_moments(const FunctionalTable& t, int order);

// cumulants of one variable seen as the common law of free identically
// distributed variables x_1..x_n: mixed words have no cumulant
class IidCumulants : public TensorSource {
public:
    explicit IidCumulants(const FunctionalTable& single) : single_(&single) {}
    int dim() const override { return single_->dim(); }
    const std::vector<Coeff>* find(WordKey key) const override;

private:
    const FunctionalTable* single_;
};

// E[b0 x_{w1}^{d1} b1 ... x_{wk}^{dk} bk] for the free family with common cumulants `single`
Coeff joint_moments_free_family(const FunctionalTable& single, int n, const IndexWord& w, const StarPattern& d,
                                std::span<const Coeff> coeffs);
MomentOracle free_family_moments(const FunctionalTable& single, int n, int order);

FunctionalTable multivariate_cumulants_from_joint_moments(const MomentOracle& m, int order);

}  // namespace definetti
