#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "arboreal/errors.hpp"
#include "arboreal/numeric.hpp"
#include "arboreal/permutation.hpp"
#include "arboreal/rng.hpp"

namespace arboreal {

// Automorphism of the regular d-ary rooted tree of depth n, in wreath
// coordinates: a top permutation tau on the d level-1 subtrees plus, for
// depth >= 2, one depth-(n-1) automorphism per subtree.  Values are
// immutable and share structure (identity children in particular), so
// copies are cheap and thread-safe.
//
// Leaves are addressed by paths (l_1, ..., l_n) with 0-based labels; the
// linear leaf number is sum l_k d^(k-1), little-endian in the path.  The
// action is (l_1, ..., l_n) . a = ((l_1)tau, (l_2, ..., l_n) . sigma_{l_1}).
class TreeAut {
public:
    TreeAut() = default;

    static TreeAut leaf(Permutation tau) {
        auto n = std::make_shared<Node>();
        n->degree = tau.size();
        n->depth = 1;
        n->identity = tau.is_identity();
        n->top = std::move(tau);
        return TreeAut(std::move(n));
    }

    static TreeAut node(std::vector<TreeAut> children, Permutation top) {
        if (children.empty()) throw argument_error("TreeAut::node: no children");
        const int d = top.size();
        if (static_cast<int>(children.size()) != d)
            throw argument_error("TreeAut::node: child count != degree");
        for (const auto& c : children)
            if (c.degree() != d || c.depth() != children.front().depth())
                throw argument_error("TreeAut::node: ragged children");
        auto n = std::make_shared<Node>();
        n->degree = d;
        n->depth = children.front().depth() + 1;
        n->identity = top.is_identity() &&
                      std::all_of(children.begin(), children.end(),
                                  [](const TreeAut& c) { return c.is_identity(); });
        n->top = std::move(top);
        n->children = std::move(children);
        return TreeAut(std::move(n));
    }

    static TreeAut identity(int d, int n) {
        TreeAut cur = leaf(Permutation::identity(d));
        for (int k = 2; k <= n; ++k) {
            std::vector<TreeAut> ch(static_cast<std::size_t>(d), cur);
            cur = node(std::move(ch), Permutation::identity(d));
        }
        return cur;
    }

    bool valid() const { return static_cast<bool>(n_); }
    int degree() const { return n_->degree; }
    int depth() const { return n_->depth; }
    const Permutation& top() const { return n_->top; }
    const TreeAut& child(int j) const { return n_->children[static_cast<std::size_t>(j)]; }
    bool is_identity() const { return n_->identity; }

    friend bool operator==(const TreeAut& a, const TreeAut& b) {
        if (a.n_ == b.n_) return true;
        if (a.degree() != b.degree() || a.depth() != b.depth()) return false;
        if (!(a.top() == b.top())) return false;
        if (a.depth() == 1) return true;
        for (int j = 0; j < a.degree(); ++j)
            if (!(a.child(j) == b.child(j))) return false;
        return true;
    }
    friend bool operator!=(const TreeAut& a, const TreeAut& b) { return !(a == b); }

private:
    struct Node {
        int degree = 0;
        int depth = 0;
        bool identity = false;
        Permutation top;
        std::vector<TreeAut> children;
    };
    explicit TreeAut(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    std::shared_ptr<const Node> n_;
};

inline void check_same_shape(const TreeAut& a, const TreeAut& b) {
    if (a.degree() != b.degree() || a.depth() != b.depth())
        throw argument_error("TreeAut: shape mismatch");
}

// a then b:  ((s'_1..s'_d), t') . ((s_1..s_d), t) = ((s'_j s_{(j)t'})_j, t't)
inline TreeAut compose(const TreeAut& a, const TreeAut& b) {
    check_same_shape(a, b);
    if (a.is_identity()) return b;
    if (b.is_identity()) return a;
    if (a.depth() == 1) return TreeAut::leaf(a.top() * b.top());
    std::vector<TreeAut> ch;
    ch.reserve(static_cast<std::size_t>(a.degree()));
    for (int j = 0; j < a.degree(); ++j) ch.push_back(compose(a.child(j), b.child(a.top().act(j))));
    return TreeAut::node(std::move(ch), a.top() * b.top());
}

inline TreeAut operator*(const TreeAut& a, const TreeAut& b) { return compose(a, b); }

inline TreeAut inverse(const TreeAut& a) {
    if (a.is_identity()) return a;
    Permutation ti = a.top().inverse();
    if (a.depth() == 1) return TreeAut::leaf(ti);
    std::vector<TreeAut> ch;
    ch.reserve(static_cast<std::size_t>(a.degree()));
    for (int j = 0; j < a.degree(); ++j) ch.push_back(inverse(a.child(ti.act(j))));
    return TreeAut::node(std::move(ch), std::move(ti));
}

inline TreeAut tree_pow(const TreeAut& a, unsigned long e) {
    TreeAut r = TreeAut::identity(a.degree(), a.depth());
    TreeAut b = a;
    while (e) {
        if (e & 1) r = compose(r, b);
        b = compose(b, b);
        e >>= 1;
    }
    return r;
}

inline std::vector<int> act_on_leaf(const TreeAut& a, const std::vector<int>& path) {
    if (static_cast<int>(path.size()) != a.depth())
        throw argument_error("act_on_leaf: path length != depth");
    std::vector<int> out(path.size());
    const TreeAut* cur = &a;
    for (std::size_t k = 0; k < path.size(); ++k) {
        if (path[k] < 0 || path[k] >= a.degree()) throw argument_error("act_on_leaf: label out of range");
        out[k] = cur->top().act(path[k]);
        if (k + 1 < path.size()) cur = &cur->child(path[k]);
    }
    return out;
}

inline long leaf_path_to_index(const std::vector<int>& path, int d) {
    long idx = 0, w = 1;
    for (int l : path) {
        idx += l * w;
        w *= d;
    }
    return idx;
}

inline std::vector<int> leaf_index_to_path(long idx, int d, int n) {
    std::vector<int> path(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        path[static_cast<std::size_t>(k)] = static_cast<int>(idx % d);
        idx /= d;
    }
    return path;
}

// iota_n: flatten to a permutation of the d^n leaves.
inline Permutation to_leaf_permutation(const TreeAut& a, long max_points = 10000) {
    long m = 1;
    for (int k = 0; k < a.depth(); ++k) {
        m *= a.degree();
        if (m > max_points)
            throw resource_error("to_leaf_permutation: d^n exceeds point bound " + std::to_string(max_points));
    }
    std::vector<int> img(static_cast<std::size_t>(m));
    for (long i = 0; i < m; ++i) {
        auto path = leaf_index_to_path(i, a.degree(), a.depth());
        img[static_cast<std::size_t>(i)] = static_cast<int>(leaf_path_to_index(act_on_leaf(a, path), a.degree()));
    }
    return Permutation(std::move(img));
}

// pi_m: restrict to the top m levels.
inline TreeAut project(const TreeAut& a, int m) {
    if (m < 1 || m > a.depth()) throw argument_error("project: level out of range");
    if (m == a.depth()) return a;
    if (m == 1) return TreeAut::leaf(a.top());
    std::vector<TreeAut> ch;
    ch.reserve(static_cast<std::size_t>(a.degree()));
    for (int j = 0; j < a.degree(); ++j) ch.push_back(project(a.child(j), m - 1));
    return TreeAut::node(std::move(ch), a.top());
}

// Wreath-product sign: sgn(top) * prod_j sgn(level-1 top of child j),
// evaluated on the depth-2 projection.
inline int sgn2(const TreeAut& a) {
    if (a.depth() < 2) throw argument_error("sgn2: depth must be >= 2");
    int s = a.top().sign();
    for (int j = 0; j < a.degree(); ++j) s *= a.child(j).top().sign();
    return s;
}

// E_1 = Aut(T_1); E_n = (E_{n-1} wr E_1) cap ker(sgn2).
inline bool in_En(const TreeAut& a) {
    if (a.depth() == 1) return true;
    if (a.is_identity()) return true;
    if (sgn2(a) != 1) return false;
    for (int j = 0; j < a.degree(); ++j)
        if (!in_En(a.child(j))) return false;
    return true;
}

inline bool fixes_leaf(const TreeAut& a) {
    if (a.depth() == 1) return a.top().has_fixed_point();
    for (int j = 0; j < a.degree(); ++j)
        if (a.top().act(j) == j && fixes_leaf(a.child(j))) return true;
    return false;
}

// ---- orders -------------------------------------------------------------

inline Int aut_order(int d, int n) {
    if (d < 2 || n < 1) throw argument_error("aut_order: need d >= 2, n >= 1");
    Int vertices = 0, w = 1;
    for (int k = 0; k < n; ++k) {
        vertices += w;
        w *= d;
    }
    return pow_int(factorial(static_cast<unsigned>(d)), vertices.convert_to<unsigned long>());
}

inline Int En_order(int d, int n) {
    if (d < 2 || n < 1) throw argument_error("En_order: need d >= 2, n >= 1");
    Int e1 = factorial(static_cast<unsigned>(d));
    Int half = exact_div(e1, Int(2));
    Int cur = e1;
    for (int k = 2; k <= n; ++k) cur = pow_int(cur, static_cast<unsigned long>(d)) * half;
    return cur;
}

// [Aut(T_n) : E_n]; the ratio must match the closed form 2^(d^{n-2}+...+d+1).
inline Int En_index(int d, int n) {
    Int idx = exact_div(aut_order(d, n), En_order(d, n));
    if (n >= 2) {
        Int expo = 0, w = 1;
        for (int k = 0; k <= n - 2; ++k) {
            expo += w;
            w *= d;
        }
        Int closed = pow_int(Int(2), expo.convert_to<unsigned long>());
        if (closed != idx) throw consistency_error("En_index: recursion disagrees with closed form");
    } else if (idx != 1) {
        throw consistency_error("En_index: [Aut(T_1):E_1] must be 1");
    }
    return idx;
}

// ---- sampling and enumeration -------------------------------------------

inline Permutation random_permutation(int m, std::mt19937_64& rng) {
    std::vector<int> v(static_cast<std::size_t>(m));
    std::iota(v.begin(), v.end(), 0);
    for (int i = m - 1; i > 0; --i) {
        auto j = static_cast<std::size_t>(uniform_below(rng, static_cast<std::uint64_t>(i) + 1));
        std::swap(v[static_cast<std::size_t>(i)], v[j]);
    }
    return Permutation(std::move(v));
}

// Uniform sample from E_n: sample children uniformly from E_{n-1} and the
// top uniformly from S_d, then fold the sgn2 = -1 class onto the kernel by
// multiplying the top with a fixed transposition.  The fold is a bijection
// between the two sign classes of E_{n-1} wr E_1, so the result is uniform.
inline TreeAut sample_uniform_En(int d, int n, std::mt19937_64& rng) {
    if (d < 2 || n < 1) throw argument_error("sample_uniform_En: need d >= 2, n >= 1");
    if (n == 1) return TreeAut::leaf(random_permutation(d, rng));
    std::vector<TreeAut> ch;
    ch.reserve(static_cast<std::size_t>(d));
    int child_signs = 1;
    for (int j = 0; j < d; ++j) {
        ch.push_back(sample_uniform_En(d, n - 1, rng));
        child_signs *= ch.back().top().sign();
    }
    Permutation tau = random_permutation(d, rng);
    if (tau.sign() * child_signs != 1) {
        std::vector<int> swap01(static_cast<std::size_t>(d));
        std::iota(swap01.begin(), swap01.end(), 0);
        std::swap(swap01[0], swap01[1]);
        tau = tau * Permutation(std::move(swap01));
    }
    return TreeAut::node(std::move(ch), std::move(tau));
}

inline TreeAut sample_uniform_En(int d, int n, std::uint64_t seed) {
    std::mt19937_64 rng(splitmix64(seed));
    return sample_uniform_En(d, n, rng);
}

inline std::vector<Permutation> all_permutations(int m) {
    std::vector<int> v(static_cast<std::size_t>(m));
    std::iota(v.begin(), v.end(), 0);
    std::vector<Permutation> out;
    do {
        out.emplace_back(v);
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
}

// Enumerates E_n in a fixed deterministic order.  Only the depth-(n-1)
// element list is materialized; level-n tuples are streamed to the callback.
inline void for_each_in_En(int d, int n, const std::function<void(const TreeAut&)>& fn) {
    if (n == 1) {
        for (const auto& p : all_permutations(d)) fn(TreeAut::leaf(p));
        return;
    }
    std::vector<TreeAut> prev;
    for_each_in_En(d, n - 1, [&](const TreeAut& a) { prev.push_back(a); });
    auto tops = all_permutations(d);
    std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
    while (true) {
        std::vector<TreeAut> ch;
        ch.reserve(static_cast<std::size_t>(d));
        int child_signs = 1;
        for (int j = 0; j < d; ++j) {
            ch.push_back(prev[idx[static_cast<std::size_t>(j)]]);
            child_signs *= ch.back().top().sign();
        }
        for (const auto& tau : tops) {
            if (tau.sign() * child_signs != 1) continue;
            fn(TreeAut::node(ch, tau));
        }
        int j = d - 1;
        while (j >= 0 && ++idx[static_cast<std::size_t>(j)] == prev.size()) {
            idx[static_cast<std::size_t>(j)] = 0;
            --j;
        }
        if (j < 0) break;
    }
}

// Enumerates all of Aut(T_n) (depth <= 2 intended; counts explode fast).
inline void for_each_in_aut(int d, int n, const std::function<void(const TreeAut&)>& fn) {
    if (n == 1) {
        for (const auto& p : all_permutations(d)) fn(TreeAut::leaf(p));
        return;
    }
    std::vector<TreeAut> prev;
    for_each_in_aut(d, n - 1, [&](const TreeAut& a) { prev.push_back(a); });
    auto tops = all_permutations(d);
    std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
    while (true) {
        std::vector<TreeAut> ch;
        ch.reserve(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) ch.push_back(prev[idx[static_cast<std::size_t>(j)]]);
        for (const auto& tau : tops) fn(TreeAut::node(ch, tau));
        int j = d - 1;
        while (j >= 0 && ++idx[static_cast<std::size_t>(j)] == prev.size()) {
            idx[static_cast<std::size_t>(j)] = 0;
            --j;
        }
        if (j < 0) break;
    }
}

}  // namespace arboreal
