#pragma once

#include <string>
#include <vector>

#include "definetti/algebra.hpp"
#include "definetti/partition.hpp"

namespace definetti {

inline constexpr double kRepTol = 1e-9;
inline constexpr std::size_t kMaxDeltaTuples = 1000000;

// n x n matrix whose entries are d x d complex matrices (indices 0-based)
class MatrixRep {
public:
    MatrixRep() = default;
    MatrixRep(int n, int d, std::vector<Block> entries, double tol = kRepTol);  // row-major entries
    static MatrixRep from_scalar(const Block& m, double tol = kRepTol);

    int n() const { return n_; }
    int d() const { return d_; }
    double tol() const { return tol_; }
    void set_tol(double t) { tol_ = t; }

    const Block& operator()(int i, int j) const { return entries_[i * n_ + j]; }
    Block entry(int i, int j, Sym s) const { return s == Sym::one ? (*this)(i, j) : Block((*this)(i, j).adjoint()); }

    Block flattened() const;            // nd x nd, block (i,j) = u_ij
    Block conjugate_flattened() const;  // block (i,j) = u_ij^*

private:
    int n_ = 0;
    int d_ = 0;
    double tol_ = kRepTol;
    std::vector<Block> entries_;
};

struct BiunitaryReport {
    double u_star_u = 0, u_u_star = 0, ubar_star_ubar = 0, ubar_ubar_star = 0;
    double residual = 0;  // largest of the four, operator norm
    bool ok = false;
    // u*u = I forces uu* = I in finite dimensions; false flags numerical trouble
    bool completion_consistent = true;
};

BiunitaryReport check_biunitary(const MatrixRep& u);

// Residuals of identity checks are Frobenius norms of (sum - target).
struct IdentityResult {
    bool holds = false;
    double residual = 0;
    std::vector<int> worst;  // column index or index tuple with the largest residual
};

// sum_a u^{d1}_{a j} ... u^{dk}_{a j} = 1
IdentityResult block_identity(const MatrixRep& u, const StarPattern& d, int j);
bool block_identity_holds(const MatrixRep& u, const StarPattern& d, int j);
// block identity for every column
IdentityResult block_identity_all(const MatrixRep& u, const StarPattern& d);

// sum_a u^{d1}_{a i1} ... u^{dk}_{a ik} = delta(i1 = ... = ik) 1 for every tuple
IdentityResult full_delta_identity(const MatrixRep& u, const StarPattern& d);
bool full_delta_identity_holds(const MatrixRep& u, const StarPattern& d);

enum class Family { s_plus, o_plus, b_s_plus, h_s_plus, b_plus, h_m_plus, h_0_plus, h_prime_plus, u_plus };

struct FamilyTag {
    Family kind = Family::u_plus;
    int m = 0;  // only for h_m_plus
    bool classical = false;

    bool operator==(const FamilyTag&) const = default;
    auto operator<=>(const FamilyTag&) const = default;
};

std::string to_string(FamilyTag f);
FamilyTag parse_family(const std::string& s);
std::vector<FamilyTag> family_list(int m = 3);  // the nine free families

// a <= b: representations of a are representations of b (order of the inclusion diagram)
bool subgroup_of(FamilyTag a, FamilyTag b);

struct RelationCheck {
    std::string name;
    double residual = 0;
    bool holds = false;
};

struct FamilyCheck {
    FamilyTag family;
    bool holds = false;
    double residual = 0;
    std::vector<RelationCheck> relations;
};

FamilyCheck check_family(const MatrixRep& u, FamilyTag f);

// w_ij = u_ij v_ij
MatrixRep hadamard(const MatrixRep& u, const MatrixRep& v);
// v_ij = sum_k a_ik (x) b_kj
MatrixRep coproduct_lift(const MatrixRep& a, const MatrixRep& b);

struct StructuralClaim {
    std::string pattern;
    std::string claim;
    double residual = 0;
    bool holds = false;
};

// consequences of block identities; patterns whose identity fails are skipped
std::vector<StructuralClaim> structural_consequences(const MatrixRep& u, const std::vector<StarPattern>& patterns);

struct LatticePosition {
    std::vector<FamilyCheck> checks;
    std::vector<FamilyTag> satisfied;
    std::vector<FamilyTag> minimal;
    std::vector<int> h_indices;
    int h_gcd = 0;
    bool classical = false;  // entries and adjoints commute
    int m_max = 0;
    std::vector<std::string> notes;
};

LatticePosition lattice_position(const MatrixRep& u, int m_max = 12);

bool entries_commute(const MatrixRep& u, double tol);

}  // namespace definetti

namespace definetti {

struct Witness {
    std::string name;
    FamilyTag family;  // minimal lattice node of the rep
    MatrixRep rep;
    std::string note;
};

// direct sum with an identity block, to reach size n
MatrixRep embed(const MatrixRep& u, int n);

// distinguishing rep of a family, padded to size n; B_S_PLUS needs n >= 3
Witness family_witness(FamilyTag f, int n = 2);

// every stored witness, including variants
std::vector<Witness> witness_catalog();

}  // namespace definetti
