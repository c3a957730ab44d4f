#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <set>

#include "definetti/partition.hpp"

using namespace definetti;

namespace {

std::uint64_t catalan(int k) {
    std::vector<std::uint64_t> c(k + 1, 0);
    c[0] = 1;
    for (int n = 1; n <= k; ++n)
        for (int i = 0; i < n; ++i) c[n] += c[i] * c[n - 1 - i];
    return c[k];
}

// Bell triangle
std::uint64_t bell(int k) {
    std::vector<std::uint64_t> row{1};
    for (int n = 0; n < k; ++n) {
        std::vector<std::uint64_t> next{row.back()};
        for (auto x : row) next.push_back(next.back() + x);
        row = next;
    }
    return row.front();
}

// crossing test straight from the definition, on a label array
bool crossing_by_labels(const Partition& p) {
    const int k = p.size();
    for (int a = 1; a <= k; ++a)
        for (int b = a + 1; b <= k; ++b)
            for (int c = b + 1; c <= k; ++c)
                for (int d = c + 1; d <= k; ++d)
                    if (p.block_of(a) == p.block_of(c) && p.block_of(b) == p.block_of(d) &&
                        p.block_of(a) != p.block_of(b))
                        return true;
    return false;
}

}  // namespace

TEST_CASE("partition counts follow Catalan and Bell recurrences") {
    for (int k = 0; k <= 9; ++k) {
        CHECK(enumerate_noncrossing(k).size() == catalan(k));
        CHECK(enumerate_all_partitions(k).size() == bell(k));
    }
    CHECK(catalan(4) == 14);
    CHECK(bell(4) == 15);
}

TEST_CASE("empty partition") {
    auto nc = enumerate_noncrossing(0);
    REQUIRE(nc.size() == 1);
    CHECK(nc[0].num_blocks() == 0);
    CHECK(nc[0].to_string() == "[]");
    CHECK(enumerate_all_partitions(0).size() == 1);
}

TEST_CASE("noncrossing enumeration equals filtered set partitions") {
    for (int k = 1; k <= 7; ++k) {
        std::set<std::string> direct, filtered;
        for (const auto& p : enumerate_noncrossing(k)) direct.insert(p.to_string());
        for (const auto& p : enumerate_all_partitions(k))
            if (!crossing_by_labels(p)) filtered.insert(p.to_string());
        CHECK(direct == filtered);
        CHECK(direct.size() == enumerate_noncrossing(k).size());  // no duplicates
    }
}

TEST_CASE("is_noncrossing agrees with the definition") {
    for (int k = 0; k <= 7; ++k)
        for (const auto& p : enumerate_all_partitions(k)) CHECK(is_noncrossing(p) == !crossing_by_labels(p));
    CHECK_FALSE(is_noncrossing(parse_partition("[[1,3],[2,4]]")));
    CHECK(is_noncrossing(parse_partition("[[1,4],[2,3]]")));
}

TEST_CASE("guards") {
    CHECK_THROWS_AS(enumerate_all_partitions(13), SizeLimitError);
    CHECK_THROWS_AS(enumerate_noncrossing(17), SizeLimitError);
    CHECK_THROWS_AS(enumerate_all_partitions(-1), InputError);
    CHECK_THROWS_AS(enumerate_all_partitions(5, 4), SizeLimitError);
}

TEST_CASE("canonical form and serialization") {
    Partition p(3, {{3, 1}, {2}});
    CHECK(p.to_string() == "[[1,3],[2]]");
    CHECK(parse_partition("[[2],[3,1]]") == p);
    CHECK_THROWS_AS(parse_partition("[[1,1]]"), InputError);
    CHECK_THROWS_AS(Partition(3, {{1, 2}}), InputError);
    for (const auto& q : enumerate_all_partitions(5)) CHECK(parse_partition(q.to_string()) == q);
}

TEST_CASE("kernel and refinement") {
    auto ker = kernel({1, 2, 1, 2});
    CHECK(ker.to_string() == "[[1,3],[2,4]]");
    CHECK(kernel({}).num_blocks() == 0);
    CHECK(refines(parse_partition("[[1],[2],[3]]"), parse_partition("[[1,2],[3]]")));
    CHECK_FALSE(refines(parse_partition("[[1,3],[2]]"), parse_partition("[[1,2],[3]]")));
    CHECK_THROWS_AS(refines(parse_partition("[[1]]"), parse_partition("[[1,2]]")), InputError);
    // every partition lies between the singletons and the one-block partition
    for (const auto& p : enumerate_all_partitions(5)) {
        CHECK(refines(p, kernel({1, 1, 1, 1, 1})));
        CHECK(refines(kernel({1, 2, 3, 4, 5}), p));
    }
}

TEST_CASE("patterns") {
    auto d = StarPattern::parse("1*1*");
    CHECK(d.to_string() == "1*1*");
    CHECK(d.imbalance() == 0);
    CHECK(d.alternating());
    CHECK(StarPattern::parse("11*").adjoint().to_string() == "1**");
    CHECK_THROWS_AS(StarPattern::parse("1x"), InputError);
    CHECK(all_patterns(3).size() == 8);
    CHECK(all_patterns(2)[1].to_string() == "1*");
}

TEST_CASE("block restriction") {
    auto p = parse_partition("[[1,3],[2]]");
    auto d = StarPattern::parse("1*1");
    CHECK(block_restriction(p, d, 0).to_string() == "11");
    CHECK(block_restriction(p, d, 1).to_string() == "*");
    CHECK_THROWS_AS(block_restriction(p, StarPattern::parse("1*"), 0), InputError);
}

TEST_CASE("decoration classes") {
    auto alt = DecorationClass::alternating_words();
    CHECK(satisfies_decoration(StarPattern{}, alt));
    CHECK_FALSE(satisfies_decoration(StarPattern::parse("1"), alt));
    CHECK(satisfies_decoration(StarPattern::parse("*1*1"), alt));
    CHECK_FALSE(satisfies_decoration(StarPattern::parse("11**"), alt));
    CHECK(satisfies_decoration(StarPattern::parse("11**"), DecorationClass::infinite()));
    CHECK(satisfies_decoration(StarPattern::parse("111"), DecorationClass::divisible(3)));
    CHECK_FALSE(satisfies_decoration(StarPattern::parse("111"), DecorationClass::divisible(2)));
    CHECK(satisfies_decoration(StarPattern::parse("*1"), DecorationClass::alternating_pairs()));
    CHECK_FALSE(satisfies_decoration(StarPattern::parse("11"), DecorationClass::alternating_pairs()));
    CHECK_THROWS_AS(DecorationClass::divisible(0), InputError);
}

TEST_CASE("decorated noncrossing partitions of 1*1*") {
    auto nc = enumerate_noncrossing(4);
    auto d = StarPattern::parse("1*1*");
    auto alt = filter_decorated(nc, d, DecorationClass::alternating_words());
    std::set<std::string> got;
    for (const auto& p : alt) got.insert(p.to_string());
    CHECK(got == std::set<std::string>{"[[1,2],[3,4]]", "[[1,4],[2,3]]", "[[1,2,3,4]]"});
    CHECK(filter_decorated(nc, d, DecorationClass::alternating_pairs()).size() == 2);
}

TEST_CASE("decoration classes form an inclusion chain") {
    // alternating pairs < alternating < balanced < m-divisible
    for (int k = 0; k <= 6; ++k) {
        auto nc = enumerate_noncrossing(k);
        for (const auto& d : all_patterns(k)) {
            auto a2 = filter_decorated(nc, d, DecorationClass::alternating_pairs());
            auto a = filter_decorated(nc, d, DecorationClass::alternating_words());
            auto inf = filter_decorated(nc, d, DecorationClass::infinite());
            auto contains = [](const std::vector<Partition>& big, const Partition& p) {
                return std::find(big.begin(), big.end(), p) != big.end();
            };
            for (const auto& p : a2) CHECK(contains(a, p));
            for (const auto& p : a) CHECK(contains(inf, p));
            for (int m = 1; m <= 4; ++m) {
                auto md = filter_decorated(nc, d, DecorationClass::divisible(m));
                for (const auto& p : inf) CHECK(contains(md, p));
                CHECK(md.size() <= nc.size());
            }
        }
    }
}
