#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "definetti/cumulants.hpp"
#include "definetti/distribution.hpp"
#include "definetti/qgroup.hpp"

namespace definetti {

inline constexpr std::size_t kMaxInvarianceWords = 1000;  // n^K
inline constexpr double kInvarianceTol = 1e-9;

// Joint *-distribution of x_1..x_n, given by its moment oracle up to `order`.
class JointDistribution {
public:
    JointDistribution(MomentOracle moments, int order);

    int n() const { return moments_.alphabet(); }
    int dim() const { return moments_.dim(); }
    int order() const { return order_; }
    const MomentOracle& moments() const { return moments_; }

    // E over all index words of pattern d (index word read base n, first index most significant)
    // `seed` and `tuple` identify the inner coefficients for caching
    const std::vector<Coeff>& moment_block(const StarPattern& d, std::span<const Coeff> inner, std::uint64_t seed,
                                           int tuple) const;

private:
    MomentOracle moments_;
    int order_ = 0;
    // moments do not depend on the rep, so they are kept across checks
    std::shared_ptr<std::map<std::tuple<std::string, std::uint64_t, int>, std::vector<Coeff>>> cache_;
};

// free identically distributed family with common cumulants `single`
JointDistribution free_iid(const FunctionalTable& single, int n, int order);
JointDistribution free_iid(const CumulantSpec& spec, int n, int order);

// embeds a scalar table into M_p (b-linear extension)
FunctionalTable promote_table(const FunctionalTable& t, int p);

// inner coefficient tuples b_1..b_{k-1} tested at order k; b_0 = b_k = 1.
// p = 1: only ones. p > 1: all ones, B1 in each slot, and B1 B2 alternating.
std::vector<std::vector<Coeff>> coefficient_tuples(int p, int k, std::uint64_t seed = 0);
std::pair<Coeff, Coeff> test_matrices(int p, std::uint64_t seed = 0);

struct Violation {
    int order = 0;
    StarPattern pattern;
    IndexWord target;  // 1-based
    int tuple = 0;     // index into coefficient_tuples
    double residual = 0;
};

struct InvarianceVerdict {
    bool invariant = true;
    std::optional<Violation> first;
    double max_residual = 0;  // over the checks performed
    std::size_t checks = 0;
};

// sum_i E[b0 x_i1^d1 ... x_ik^dk bk] (x) u^d1_{i1 j1} ... u^dk_{ik jk} == E[... x_jt ...] (x) 1
// for k <= order; stops at the first violation in (k, d, j) order
InvarianceVerdict check_invariance(const JointDistribution& joint, const MatrixRep& rep, int order,
                                   std::uint64_t seed = 0, double tol = kInvarianceTol);

bool check_2_exchangeable(const JointDistribution& joint, std::uint64_t seed = 0, double tol = kInvarianceTol);

struct PatternIdentity {
    StarPattern pattern;
    IdentityResult block;  // columnwise identity, necessary for invariance
    IdentityResult delta;  // all index tuples, sufficient together with the others
};

struct ExtractorReport {
    std::vector<PatternIdentity> patterns;
    bool predicted_invariant = true;
    int predicted_order = 0;  // smallest length of a failing pattern, 0 if none
    InvarianceVerdict verdict;
    bool agree = false;
};

ExtractorReport cumulant_identity_extractor(const CumulantSpec& spec, const MatrixRep& rep, int order,
                                            std::uint64_t seed = 0);

// family whose reps leave free iid families of this class invariant
FamilyTag class_symmetry(FreeClassTag c);

struct ProbeCell {
    FreeClassTag cls;
    FamilyTag column;
    std::string witness;
    int n = 0;
    bool expected = false;  // witness is a rep of class_symmetry(cls)
    bool invariant = false;
    std::optional<Violation> violation;
    bool match() const { return expected == invariant; }
};

struct ProbeGrid {
    int n = 0;
    int order = 0;
    std::vector<FreeClassTag> classes;
    std::vector<FamilyTag> columns;
    std::vector<ProbeCell> cells;  // row-major
    int mismatches() const;
};

ProbeGrid theorem1_probe(int n, int order, std::uint64_t seed = 0);

}  // namespace definetti
