#pragma once

// Oracles and generators shared by the unit tests and the acceptance run.

#include <algorithm>
#include <functional>
#include <map>
#include <random>

#include "definetti/cumulants.hpp"

namespace testsupport {

using namespace definetti;

inline cd random_cd(std::mt19937_64& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    double re = u(rng);
    double im = u(rng);
    return {re, im};
}

inline Coeff random_coeff(int p, std::mt19937_64& rng, double scale = 1.0) {
    Coeff c(p, p);
    for (int j = 0; j < p; ++j)
        for (int i = 0; i < p; ++i) c(i, j) = random_cd(rng, scale);
    return c;
}

// every word up to `order` gets a random tensor
inline FunctionalTable random_table(int alphabet, int p, int order, std::mt19937_64& rng, double scale = 1.0) {
    FunctionalTable t(alphabet, p, order);
    for (int k = 1; k <= order; ++k)
        for (const auto& w : all_words(alphabet, k)) {
            std::vector<Coeff> tensor;
            for (std::size_t id = 0; id < basis_size(p, k); ++id) tensor.push_back(random_coeff(p, rng, scale));
            t.set(w, std::move(tensor));
        }
    return t;
}

inline Word sub_word(const Word& w, const std::vector<int>& pos) {
    Word r;
    for (int i : pos) r.push_back(w[i]);
    return r;
}

// Scalar moment-cumulant relations by splitting off the block of the first
// letter. Free: the gaps between consecutive block elements are independent
// words. Classical: the rest of the word is one word.
class ScalarOracle {
public:
    using Fn = std::function<cd(const Word&)>;
    ScalarOracle(bool free, Fn kappa) : free_(free), kappa_(std::move(kappa)) {}

    cd moment(const Word& w) {
        if (w.empty()) return 1.0;
        auto it = memo_.find(w);
        if (it != memo_.end()) return it->second;
        cd total = 0.0;
        const int k = static_cast<int>(w.size());
        for (unsigned mask = 0; mask < (1u << (k - 1)); ++mask) {
            std::vector<int> block{0};
            for (int i = 1; i < k; ++i)
                if (mask & (1u << (i - 1))) block.push_back(i);
            total += kappa_(sub_word(w, block)) * rest(w, block);
        }
        memo_[w] = total;
        return total;
    }

    cd rest(const Word& w, const std::vector<int>& block) {
        const int k = static_cast<int>(w.size());
        if (!free_) {
            std::vector<int> others;
            for (int i = 0; i < k; ++i)
                if (std::find(block.begin(), block.end(), i) == block.end()) others.push_back(i);
            return moment(sub_word(w, others));
        }
        cd prod = 1.0;
        for (std::size_t j = 0; j < block.size(); ++j) {
            int lo = block[j] + 1;
            int hi = j + 1 < block.size() ? block[j + 1] : k;
            std::vector<int> gap;
            for (int i = lo; i < hi; ++i) gap.push_back(i);
            prod *= moment(sub_word(w, gap));
        }
        return prod;
    }

private:
    bool free_;
    Fn kappa_;
    std::map<Word, cd> memo_;
};

// inverse direction: cumulants from a moment function
class ScalarInverseOracle {
public:
    using Fn = std::function<cd(const Word&)>;
    ScalarInverseOracle(bool free, Fn moment) : free_(free), moment_(std::move(moment)) {}

    cd kappa(const Word& w) {
        auto it = memo_.find(w);
        if (it != memo_.end()) return it->second;
        const int k = static_cast<int>(w.size());
        cd value = moment_(w);
        for (unsigned mask = 0; mask + 1 < (1u << (k - 1)); ++mask) {
            std::vector<int> block{0};
            for (int i = 1; i < k; ++i)
                if (mask & (1u << (i - 1))) block.push_back(i);
            value -= kappa(sub_word(w, block)) * rest(w, block);
        }
        memo_[w] = value;
        return value;
    }

private:
    cd rest(const Word& w, const std::vector<int>& block) {
        const int k = static_cast<int>(w.size());
        auto m = [&](const Word& x) { return x.empty() ? cd(1.0) : moment_(x); };
        if (!free_) {
            std::vector<int> others;
            for (int i = 0; i < k; ++i)
                if (std::find(block.begin(), block.end(), i) == block.end()) others.push_back(i);
            return m(sub_word(w, others));
        }
        cd prod = 1.0;
        for (std::size_t j = 0; j < block.size(); ++j) {
            int lo = block[j] + 1;
            int hi = j + 1 < block.size() ? block[j + 1] : k;
            std::vector<int> gap;
            for (int i = lo; i < hi; ++i) gap.push_back(i);
            prod *= m(sub_word(w, gap));
        }
        return prod;
    }

    bool free_;
    Fn moment_;
    std::map<Word, cd> memo_;
};

inline std::vector<Coeff> ones(int k, int p = 1) { return std::vector<Coeff>(k + 1, coeff_identity(p)); }

}  // namespace testsupport
