#pragma once

#include <array>
#include <string>
#include <vector>

#include "arboreal/belyi.hpp"
#include "arboreal/errors.hpp"
#include "arboreal/numeric.hpp"
#include "arboreal/permutation.hpp"
#include "arboreal/stabchain.hpp"
#include "arboreal/tree.hpp"

namespace arboreal {

// Three single cycles with g1 g2 g3 = 1 describing the monodromy of a
// normalized Belyi map; g_j has cycle length e_j.
struct GeneratingSystem {
    int d;
    Permutation g1, g2, g3;
};

// The explicit system
//   g1 = (d, d-1, ..., e3, 1, 2, ..., d-e2),
//   g2 = (d-e2+1, ..., d),
//   g3 = (e3, e3-1, ..., 1),
// written here on 0-based points.
inline GeneratingSystem standard_generating_system(const CombinatorialType& t) {
    std::vector<int> c1;
    for (int v = t.d; v >= t.e3; --v) c1.push_back(v - 1);
    for (int v = 1; v <= t.d - t.e2; ++v) c1.push_back(v - 1);
    std::vector<int> c2;
    for (int v = t.d - t.e2 + 1; v <= t.d; ++v) c2.push_back(v - 1);
    std::vector<int> c3;
    for (int v = t.e3; v >= 1; --v) c3.push_back(v - 1);
    GeneratingSystem gs{t.d, Permutation::from_cycle(t.d, c1), Permutation::from_cycle(t.d, c2),
                        Permutation::from_cycle(t.d, c3)};
    if (static_cast<int>(c1.size()) != t.e1 || static_cast<int>(c2.size()) != t.e2 ||
        static_cast<int>(c3.size()) != t.e3)
        throw consistency_error("standard_generating_system: cycle lengths do not match " + t.str());
    if (!(gs.g1 * gs.g2 * gs.g3).is_identity())
        throw consistency_error("standard_generating_system: g1 g2 g3 != 1 for " + t.str());
    return gs;
}

// The recursive lift to depth n:
//   g_{1,n} = ((g_{1,n-1}, -, ..., -), g_{1,1}),
//   g_{2,n} with g_{2,n-1} in position (1)g_{1,1},
//   g_{3,n} with g_{3,n-1} in position (1)g_{1,1}g_{2,1}.
// Needs 1 (point 0 here) in the support of g1.
inline std::array<TreeAut, 3> lift_generating_system(const GeneratingSystem& gs, int n) {
    if (n < 1) throw argument_error("lift_generating_system: n >= 1 required");
    if (gs.g1.act(0) == 0)
        throw argument_error("lift_generating_system: point 1 must be in the support of g1");
    std::array<TreeAut, 3> cur = {TreeAut::leaf(gs.g1), TreeAut::leaf(gs.g2), TreeAut::leaf(gs.g3)};
    const int pos1 = 0;
    const int pos2 = gs.g1.act(0);
    const int pos3 = gs.g2.act(gs.g1.act(0));
    for (int depth = 2; depth <= n; ++depth) {
        TreeAut id = TreeAut::identity(gs.d, depth - 1);
        std::array<int, 3> pos = {pos1, pos2, pos3};
        std::array<Permutation, 3> tops = {gs.g1, gs.g2, gs.g3};
        std::array<TreeAut, 3> next;
        for (int j = 0; j < 3; ++j) {
            std::vector<TreeAut> ch(static_cast<std::size_t>(gs.d), id);
            ch[static_cast<std::size_t>(pos[static_cast<std::size_t>(j)])] = cur[static_cast<std::size_t>(j)];
            next[static_cast<std::size_t>(j)] = TreeAut::node(std::move(ch), tops[static_cast<std::size_t>(j)]);
        }
        cur = std::move(next);
    }
    return cur;
}

// alpha_{j,n} = g_{j,n}^(e_j^{n-1}), an element of ker(pi_{n-1}).
inline TreeAut alpha(const GeneratingSystem& gs, const CombinatorialType& t, int j, int n) {
    if (j < 1 || j > 3) throw argument_error("alpha: j in {1,2,3}");
    if (n < 2) throw argument_error("alpha: n >= 2 required");
    auto lifted = lift_generating_system(gs, n);
    int e = t.index_at(j - 1);
    unsigned long exp = 1;
    for (int i = 0; i < n - 1; ++i) exp *= static_cast<unsigned long>(e);
    return tree_pow(lifted[static_cast<std::size_t>(j - 1)], exp);
}

inline TreeAut commutator(const TreeAut& a, const TreeAut& b) {
    return a * b * inverse(a) * inverse(b);
}

// beta_n = [alpha_1, [alpha_2, alpha_3]]; supported in the single subtree
// indexed by the path (e3-1, ..., e3-1).
inline TreeAut beta(const GeneratingSystem& gs, const CombinatorialType& t, int n) {
    if (n < 2) throw argument_error("beta: n >= 2 required");
    TreeAut a1 = alpha(gs, t, 1, n);
    TreeAut a2 = alpha(gs, t, 2, n);
    TreeAut a3 = alpha(gs, t, 3, n);
    return commutator(a1, commutator(a2, a3));
}

// Component of a ker(pi_{n-1}) element in the depth-1 subtree rooted at the
// level-(n-1) vertex addressed by `path` (0-based labels).
inline Permutation kernel_component(const TreeAut& a, const std::vector<int>& path) {
    if (static_cast<int>(path.size()) != a.depth() - 1)
        throw argument_error("kernel_component: path must address a level-(n-1) vertex");
    const TreeAut* cur = &a;
    for (int l : path) {
        if (!cur->top().is_identity())
            throw argument_error("kernel_component: element does not fix the upper levels");
        cur = &cur->child(l);
    }
    return cur->top();
}

// ---- G_1 classification and predicted orders ------------------------------

enum class G1Class { SymmetricFull, AlternatingFull, ExceptionalS5inS6, ExceptionalA4Klein };

inline std::string to_string(G1Class c) {
    switch (c) {
        case G1Class::SymmetricFull: return "SymmetricFull";
        case G1Class::AlternatingFull: return "AlternatingFull";
        case G1Class::ExceptionalS5inS6: return "ExceptionalS5inS6";
        case G1Class::ExceptionalA4Klein: return "ExceptionalA4Klein";
    }
    return "?";
}

// Class of G(f) = <g1, g2, g3>: S_d if some e_i is even, A_d if all odd,
// with the two exceptional small types; always cross-checked against the
// stabilizer-chain order of the standard system.
inline G1Class classify_G1(const CombinatorialType& t) {
    G1Class cls;
    Int expected;
    bool some_even = (t.e1 % 2 == 0) || (t.e2 % 2 == 0) || (t.e3 % 2 == 0);
    if (t.is_exceptional() && t.d == 6) {
        cls = G1Class::ExceptionalS5inS6;
        expected = 120;
    } else if (t.is_exceptional() && t.d == 4) {
        cls = G1Class::ExceptionalA4Klein;
        expected = 12;
    } else if (some_even) {
        cls = G1Class::SymmetricFull;
        expected = factorial(static_cast<unsigned>(t.d));
    } else {
        cls = G1Class::AlternatingFull;
        expected = exact_div(factorial(static_cast<unsigned>(t.d)), Int(2));
    }
    auto gs = standard_generating_system(t);
    Int order = group_order({gs.g1, gs.g2});
    if (order != expected)
        throw consistency_error("classify_G1: order of <g1,g2> for " + t.str() + " is " + order.str() +
                                ", predicted " + expected.str());
    return cls;
}

// n-fold iterated wreath product order of A_d: W_1 = d!/2, W_n = W_{n-1}^d d!/2.
inline Int alt_wreath_order(int d, int n) {
    Int half = exact_div(factorial(static_cast<unsigned>(d)), Int(2));
    Int cur = half;
    for (int k = 2; k <= n; ++k) cur = pow_int(cur, static_cast<unsigned long>(d)) * half;
    return cur;
}

// |G_{n,Qbar}| for a non-exceptional type: E_n order in the symmetric case,
// the iterated A_d-wreath order in the alternating case.
inline Int predicted_Gn_order(const CombinatorialType& t, int n) {
    if (t.is_exceptional())
        throw argument_error("predicted_Gn_order: no closed form for exceptional type " + t.str());
    G1Class cls = classify_G1(t);
    return cls == G1Class::SymmetricFull ? En_order(t.d, n) : alt_wreath_order(t.d, n);
}

struct TheoremReport {
    CombinatorialType type;
    int n;
    Int computed_order;
    Int predicted_order;
    bool generators_in_En;
    bool pass;
};

// Flattens <g_{1,n}, g_{2,n}> to d^n points, computes its order with the
// stabilizer chain and compares against the predicted order; also checks
// that all three lifted generators lie in E_n.
inline TheoremReport verify_theorem_G2alt(const CombinatorialType& t, int n, long max_points = 10000) {
    if (t.is_exceptional())
        throw argument_error("verify_theorem_G2alt: exceptional type " + t.str() + " unsupported");
    if (n < 1) throw argument_error("verify_theorem_G2alt: n >= 1 required");
    auto gs = standard_generating_system(t);
    auto lifted = lift_generating_system(gs, n);
    Permutation p1 = to_leaf_permutation(lifted[0], max_points);
    Permutation p2 = to_leaf_permutation(lifted[1], max_points);
    Int computed = group_order({p1, p2}, max_points);
    Int predicted = predicted_Gn_order(t, n);
    bool gens_in = true;
    if (n >= 2)
        for (const auto& g : lifted) gens_in = gens_in && in_En(g);
    return TheoremReport{t, n, computed, predicted, gens_in, computed == predicted && gens_in};
}

// Order of <iota_n(g_{1,n}), iota_n(g_{2,n})> with no prediction attached;
// the only route available for the exceptional types.
inline Int empirical_Gn_order(const CombinatorialType& t, int n, long max_points = 10000) {
    auto gs = standard_generating_system(t);
    auto lifted = lift_generating_system(gs, n);
    return group_order({to_leaf_permutation(lifted[0], max_points), to_leaf_permutation(lifted[1], max_points)},
                       max_points);
}

}  // namespace arboreal
