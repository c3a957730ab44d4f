#include <cmath>
#include <numbers>

#include "definetti/qgroup.hpp"

namespace definetti {

namespace {

MatrixRep scalar(std::initializer_list<std::initializer_list<cd>> rows) {
    Block m(rows.size(), rows.size());
    int i = 0;
    for (auto r : rows) {
        int j = 0;
        for (auto x : r) m(i, j++) = x;
        ++i;
    }
    return MatrixRep::from_scalar(m);
}

MatrixRep phase(cd z, int n) {
    Block m = Block::Identity(n, n);
    m(0, 0) = z;
    return MatrixRep::from_scalar(m);
}

Block unit(int i, int j) {
    Block e = Block::Zero(2, 2);
    e(i, j) = 1.0;
    return e;
}

constexpr const char* kBplusNote =
    "corrected entries (1+i)/2 and (1-i)/2; the variant with entries 1/2+i and 1/2-i is not unitary";

}  // namespace

MatrixRep embed(const MatrixRep& u, int n) {
    if (n < u.n()) throw InputError("cannot embed a rep into a smaller size");
    if (n == u.n()) return u;
    std::vector<Block> e;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i < u.n() && j < u.n())
                e.push_back(u(i, j));
            else
                e.push_back(i == j ? Block(Block::Identity(u.d(), u.d())) : Block(Block::Zero(u.d(), u.d())));
        }
    return MatrixRep(n, u.d(), std::move(e), u.tol());
}

Witness family_witness(FamilyTag f, int n) {
    using F = Family;
    FamilyTag tag{f.kind, f.m, false};
    Witness w;
    switch (f.kind) {
        case F::s_plus: {
            // cyclic shift
            Block m = Block::Zero(n, n);
            for (int i = 0; i < n; ++i) m((i + 1) % n, i) = 1.0;
            w = {"cyclic_permutation", tag, MatrixRep::from_scalar(m), ""};
            break;
        }
        case F::o_plus: w = {"rotation", tag, scalar({{0.6, 0.8}, {0.8, -0.6}}), ""}; break;
        case F::b_s_plus: {
            double a = 2.0 / 3, b = -1.0 / 3;
            w = {"rational_3", tag, scalar({{a, a, b}, {a, b, a}, {b, a, a}}),
                 "in size 2 the relations of B_S_PLUS force a permutation matrix"};
            break;
        }
        case F::h_s_plus: w = {"reflection", tag, phase(-1.0, 2), ""}; break;
        case F::b_plus:
            w = {"bplus_corner", tag, scalar({{cd(0.5, 0.5), cd(0.5, -0.5)}, {cd(0.5, -0.5), cd(0.5, 0.5)}}), ""};
            break;
        case F::h_m_plus:
            if (f.m < 3) throw InputError("H_M_PLUS needs m >= 3");
            w = {"root_of_unity_" + std::to_string(f.m), tag, phase(std::polar(1.0, 2 * std::numbers::pi / f.m), 2), ""};
            break;
        case F::h_0_plus:
            w = {"irrational_phase", tag, phase(std::polar(1.0, std::numbers::pi * std::numbers::sqrt2), 2), ""};
            break;
        case F::h_prime_plus:
            w = {"nilpotent", tag, MatrixRep(2, 2, {unit(0, 1), unit(1, 0), unit(1, 0), unit(0, 1)}), ""};
            break;
        case F::u_plus: w = {"generic_unitary", tag, scalar({{cd(0, 0.6), 0.8}, {-0.8, cd(0, -0.6)}}), ""}; break;
    }
    if (w.rep.n() < n) w.rep = embed(w.rep, n);
    return w;
}

std::vector<Witness> witness_catalog() {
    std::vector<Witness> out;
    for (auto f : family_list(3)) out.push_back(family_witness(f, 2));
    out.push_back({"bplus_3", {Family::b_plus}, scalar({{cd(0.5, 0.5), cd(0.5, -0.5), 0.0},
                                                        {cd(0.5, -0.5), cd(0.5, 0.5), 0.0},
                                                        {0.0, 0.0, 1.0}}),
                   kBplusNote});
    out.push_back({"phase_i", {Family::h_m_plus, 4}, phase(cd(0, 1), 3), ""});
    return out;
}

}  // namespace definetti
