#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "definetti/cumulants.hpp"

namespace definetti {

inline constexpr double kSnapTol = 1e-12;
inline constexpr int kDefaultClassOrder = 6;
inline constexpr int kDefaultMaxM = 12;

enum class FreeClass {
    symmetric,
    orthogonal,
    semicircular,
    shifted_orthogonal,
    m_unitary,
    free_unitary,
    r_diagonal,
    circular,
    shifted_circular,
};

enum class ClassicalClass {
    symmetric,
    orthogonal,
    gaussian,
    shifted_orthogonal,
    m_unitary,
    unitary,
    complex_gaussian,
    shifted_complex_gaussian,
};

template <class K>
struct ClassTag {
    K kind{};
    int m = 0;  // only for m_unitary

    bool operator==(const ClassTag&) const = default;
    auto operator<=>(const ClassTag&) const = default;
};

using FreeClassTag = ClassTag<FreeClass>;
using ClassicalClassTag = ClassTag<ClassicalClass>;

std::string to_string(FreeClassTag t);
std::string to_string(ClassicalClassTag t);
FreeClassTag parse_free_class(const std::string& s);
ClassicalClassTag parse_classical_class(const std::string& s);

// the nine free classes, m-unitary taken with the given m
std::vector<FreeClassTag> free_class_list(int m = 3);

// Cumulants of a single variable. The order-1 entry is the shift; for a
// selfadjoint variable every pattern of a given length carries one value.
class CumulantSpec {
public:
    CumulantSpec() = default;
    CumulantSpec(FunctionalTable entries, bool selfadjoint);

    // adds `shift` to the order-1 cumulant (and its adjoint to the * entry)
    static CumulantSpec make(FunctionalTable entries, const Coeff& shift, bool selfadjoint);

    const FunctionalTable& table() const { return table_; }
    bool selfadjoint() const { return selfadjoint_; }
    int order() const { return table_.order(); }
    int dim() const { return table_.dim(); }
    Coeff shift() const;

    // patterns of length <= order whose cumulant exceeds the snap tolerance
    std::vector<StarPattern> nonzero_patterns(int order) const;

private:
    FunctionalTable table_{1, 1, kDefaultClassOrder};
    bool selfadjoint_ = false;
};

CumulantSpec spec_from_moments(const MomentOracle& m, bool free, int order, bool selfadjoint);

template <class Tag>
struct Classification {
    std::vector<Tag> tags;  // sorted
    std::vector<Tag> minimal;
    std::vector<std::string> noncanonical;  // shifted classes outside the canonical list
    int order = 0;
    int m_max = 0;

    bool has(const Tag& t) const;
};

Classification<FreeClassTag> classify_free(const CumulantSpec& s, int order = kDefaultClassOrder,
                                           int m_max = kDefaultMaxM);
Classification<ClassicalClassTag> classify_classical(const CumulantSpec& s, int order = kDefaultClassOrder,
                                                     int m_max = kDefaultMaxM);

// a => b in the reflexive-transitive implication order
bool implies(FreeClassTag a, FreeClassTag b);
bool implies(ClassicalClassTag a, ClassicalClassTag b);

// direct implication edges with m-unitary indices in 3..m_max
std::vector<std::pair<FreeClassTag, FreeClassTag>> class_implications(int m_max = kDefaultMaxM);

// smallest spec whose minimal free class is `tag`; seed 0 gives unit weights
CumulantSpec sample_spec(FreeClassTag tag, std::uint64_t seed = 0);

}  // namespace definetti
