#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <vector>

#include "arboreal/monodromy.hpp"
#include "arboreal/rng.hpp"

using namespace arboreal;

namespace {

// brute-force closure oracle, independent of the stabilizer chain
long closure_size(const std::vector<Permutation>& gens) {
    std::set<std::vector<int>> seen;
    std::vector<Permutation> queue = {Permutation::identity(gens.front().size())};
    seen.insert(queue.front().images());
    for (std::size_t i = 0; i < queue.size(); ++i)
        for (const auto& g : gens) {
            Permutation h = queue[i] * g;
            if (seen.insert(h.images()).second) queue.push_back(h);
        }
    return static_cast<long>(seen.size());
}

Permutation pcomm(const Permutation& a, const Permutation& b) {
    return a * b * a.inverse() * b.inverse();
}

// all abstract types (sorted entries) of degree d
std::vector<CombinatorialType> sorted_types(int d) {
    std::vector<CombinatorialType> out;
    for (int e1 = 2; e1 <= d; ++e1)
        for (int e2 = e1; e2 <= d; ++e2) {
            int e3 = 2 * d + 1 - e1 - e2;
            if (e3 >= e2 && e3 <= d) out.push_back(make_type(d, e1, e2, e3));
        }
    return out;
}

}  // namespace

TEST_CASE("standard generating system") {
    auto t = make_type(3, 2, 2, 3);
    auto gs = standard_generating_system(t);
    CHECK(gs.g1 == Permutation::parse_cycles("(3 1)", 3));
    CHECK(gs.g2 == Permutation::parse_cycles("(2 3)", 3));
    CHECK(gs.g3 == Permutation::parse_cycles("(3 2 1)", 3));
    CHECK((gs.g1 * gs.g2 * gs.g3).is_identity());

    auto gs5 = standard_generating_system(make_type(5, 3, 3, 5));
    CHECK(gs5.g3 == Permutation::parse_cycles("(5 4 3 2 1)", 5));
    CHECK(gs5.g3.cycles().size() == 1);
    CHECK(gs5.g3.cycles()[0].size() == 5);

    SUBCASE("cycle lengths, product identity, support intersection = {e3}") {
        std::vector<CombinatorialType> types;
        for (int d = 3; d <= 9; ++d)
            for (const auto& t2 : sorted_types(d)) types.push_back(t2);
        // family-2 branch-indexed (possibly unsorted) tuples
        for (int d = 4; d <= 9; ++d)
            for (int k = 1; 3 * k + 1 <= d; ++k)
                types.push_back(CombinatorialType::branch_indexed(d, d - k, 2 * k + 1, d - k));
        for (const auto& tt : types) {
            auto g = standard_generating_system(tt);
            CHECK(static_cast<int>(g.g1.support().size()) == tt.e1);
            CHECK(static_cast<int>(g.g2.support().size()) == tt.e2);
            CHECK(static_cast<int>(g.g3.support().size()) == tt.e3);
            CHECK((g.g1 * g.g2 * g.g3).is_identity());
            std::set<int> s1(g.g1.support().begin(), g.g1.support().end());
            std::set<int> common;
            for (int x : g.g2.support())
                if (s1.count(x) && g.g3.act(x) != x) common.insert(x);
            CHECK(common == std::set<int>{tt.e3 - 1});  // point e3, 0-based
        }
    }
}

TEST_CASE("lifted generating system") {
    auto t = make_type(3, 2, 2, 3);
    auto gs = standard_generating_system(t);
    SUBCASE("n = 1 is the leaf system") {
        auto l = lift_generating_system(gs, 1);
        CHECK(l[0] == TreeAut::leaf(gs.g1));
        CHECK(l[2] == TreeAut::leaf(gs.g3));
    }
    SUBCASE("n = 2 wreath coordinates") {
        auto l = lift_generating_system(gs, 2);
        // g_{1,2} = (((3 1), -, -), (3 1))
        CHECK(l[0].top() == gs.g1);
        CHECK(l[0].child(0) == TreeAut::leaf(gs.g1));
        CHECK(l[0].child(1).is_identity());
        CHECK(l[0].child(2).is_identity());
        // g_{2,1} sits in position (1)g_{1,1} = 3 (0-based 2)
        CHECK(l[1].top() == gs.g2);
        CHECK(l[1].child(2) == TreeAut::leaf(gs.g2));
        CHECK(l[1].child(0).is_identity());
        // g_{3,1} sits in position (1)g_{1,1}g_{2,1} = 2 (0-based 1)
        CHECK(l[2].child(1) == TreeAut::leaf(gs.g3));
    }
    SUBCASE("product identity and projection compatibility") {
        for (int d = 3; d <= 7; ++d)
            for (const auto& tt : sorted_types(d)) {
                auto g = standard_generating_system(tt);
                std::array<TreeAut, 3> prev;
                for (int n = 1; n <= 3; ++n) {
                    auto l = lift_generating_system(g, n);
                    CHECK(compose(compose(l[0], l[1]), l[2]).is_identity());
                    if (n >= 2)
                        for (int j = 0; j < 3; ++j)
                            CHECK(project(l[static_cast<std::size_t>(j)], n - 1) == prev[static_cast<std::size_t>(j)]);
                    prev = l;
                }
            }
    }
    SUBCASE("requires 1 in the support of g1") {
        GeneratingSystem broken = gs;
        broken.g1 = Permutation::parse_cycles("(2 3)", 3);
        broken.g2 = Permutation::parse_cycles("(2 3)", 3);
        broken.g3 = Permutation::identity(3);
        CHECK_THROWS_AS(lift_generating_system(broken, 2), argument_error);
    }
}

TEST_CASE("alpha elements") {
    auto t = make_type(3, 2, 2, 3);
    auto gs = standard_generating_system(t);
    SUBCASE("alpha_{3,2} has e3 nontrivial components, all equal to g_3") {
        TreeAut a = alpha(gs, t, 3, 2);
        int nontrivial = 0;
        for (int i = 0; i < 3; ++i) {
            Permutation comp = kernel_component(a, {i});
            if (!comp.is_identity()) {
                ++nontrivial;
                CHECK(comp == gs.g3);
            }
        }
        CHECK(nontrivial == 3);
    }
    SUBCASE("alpha projects to the identity one level down") {
        for (int j = 1; j <= 3; ++j)
            for (int n = 2; n <= 3; ++n) CHECK(project(alpha(gs, t, j, n), n - 1).is_identity());
    }
    SUBCASE("component pattern: nontrivial iff all path labels in supp(g_j)") {
        for (int d = 3; d <= 7; ++d)
            for (const auto& tt : sorted_types(d)) {
                auto g = standard_generating_system(tt);
                const Permutation* gj[3] = {&g.g1, &g.g2, &g.g3};
                for (int j = 1; j <= 3; ++j)
                    for (int n = 2; n <= 3; ++n) {
                        if (d >= 6 && n == 3) continue;  // keep the sweep quick
                        TreeAut a = alpha(g, tt, j, n);
                        std::set<int> supp(gj[j - 1]->support().begin(), gj[j - 1]->support().end());
                        long nontrivial = 0;
                        std::vector<int> path(static_cast<std::size_t>(n - 1), 0);
                        while (true) {
                            bool all_in = true;
                            for (int l : path) all_in = all_in && supp.count(l) > 0;
                            Permutation comp = kernel_component(a, path);
                            if (all_in) {
                                CHECK(comp == *gj[j - 1]);
                                ++nontrivial;
                            } else {
                                CHECK(comp.is_identity());
                            }
                            int pos = n - 2;
                            while (pos >= 0 && ++path[static_cast<std::size_t>(pos)] == d) {
                                path[static_cast<std::size_t>(pos)] = 0;
                                --pos;
                            }
                            if (pos < 0) break;
                        }
                        long expect = 1;
                        int e = tt.index_at(j - 1);
                        for (int i = 0; i < n - 1; ++i) expect *= e;
                        CHECK(nontrivial == expect);
                    }
            }
    }
}

TEST_CASE("beta elements") {
    auto t = make_type(3, 2, 2, 3);
    auto gs = standard_generating_system(t);
    TreeAut b = beta(gs, t, 2);
    Permutation inner = pcomm(gs.g1, pcomm(gs.g2, gs.g3));
    SUBCASE("supported exactly in the subtree at path (e3-1, ..., e3-1)") {
        CHECK(kernel_component(b, {2}) == inner);
        CHECK_FALSE(inner.is_identity());
        CHECK(kernel_component(b, {0}).is_identity());
        CHECK(kernel_component(b, {1}).is_identity());
        // the component moves the point e3
        CHECK(inner.act(t.e3 - 1) != t.e3 - 1);
    }
    SUBCASE("fixes every leaf outside the distinguished subtree") {
        for (int d = 3; d <= 6; ++d)
            for (const auto& tt : sorted_types(d)) {
                if (tt.is_exceptional()) continue;
                auto g = standard_generating_system(tt);
                for (int n = 2; n <= (d <= 4 ? 3 : 2); ++n) {
                    TreeAut bn = beta(g, tt, n);
                    Permutation inner_n = pcomm(g.g1, pcomm(g.g2, g.g3));
                    CHECK_FALSE(inner_n.is_identity());
                    std::vector<int> hot(static_cast<std::size_t>(n - 1), tt.e3 - 1);
                    CHECK(kernel_component(bn, hot) == inner_n);
                    Permutation flat = to_leaf_permutation(bn);
                    for (int x = 0; x < flat.size(); ++x) {
                        auto path = leaf_index_to_path(x, d, n);
                        path.pop_back();  // the level-(n-1) vertex of this leaf
                        if (path != hot) CHECK(flat.act(x) == x);
                    }
                }
            }
    }
    SUBCASE("normal closure of the component: A_d generically, Klein for (4;3,3,3)") {
        for (int d = 3; d <= 9; ++d)
            for (const auto& tt : sorted_types(d)) {
                auto g = standard_generating_system(tt);
                Permutation seed = pcomm(g.g1, pcomm(g.g2, g.g3));
                Int order = normal_closure_order({g.g1, g.g2, g.g3}, {seed});
                if (tt.is_exceptional() && d == 4) {
                    CHECK(order == 4);  // the Klein 4-group
                } else if (!tt.is_exceptional()) {
                    CHECK(order == exact_div(factorial(static_cast<unsigned>(d)), Int(2)));
                }
            }
    }
}

TEST_CASE("group_order against the closure oracle") {
    CHECK(group_order({Permutation::parse_cycles("(1 2)", 3), Permutation::parse_cycles("(2 3)", 3)}) == 6);
    CHECK(group_order({Permutation::parse_cycles("(1 2 3)", 3)}) == 3);

    auto t = make_type(3, 2, 2, 3);
    auto lifted = lift_generating_system(standard_generating_system(t), 2);
    std::vector<Permutation> gens = {to_leaf_permutation(lifted[0]), to_leaf_permutation(lifted[1])};
    CHECK(group_order(gens) == 648);
    CHECK(closure_size(gens) == 648);
    CHECK(En_order(3, 2) == 648);

    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        int m = 3 + static_cast<int>(uniform_below(rng, 5));
        std::vector<Permutation> gg;
        for (int i = 0, n = 1 + static_cast<int>(uniform_below(rng, 2)); i <= n; ++i)
            gg.push_back(random_permutation(m, rng));
        CHECK(group_order(gg) == closure_size(gg));
    }
    CHECK_THROWS_AS(group_order(gens, 5), resource_error);
}

TEST_CASE("G_1 classification") {
    CHECK(classify_G1(make_type(3, 2, 2, 3)) == G1Class::SymmetricFull);
    CHECK(classify_G1(make_type(5, 3, 3, 5)) == G1Class::AlternatingFull);
    CHECK(classify_G1(make_type(6, 4, 4, 5)) == G1Class::ExceptionalS5inS6);
    CHECK(classify_G1(make_type(4, 3, 3, 3)) == G1Class::ExceptionalA4Klein);
    for (int d = 3; d <= 9; ++d)
        for (const auto& tt : sorted_types(d)) CHECK_NOTHROW(classify_G1(tt));  // order asserted inside
}

TEST_CASE("predicted G_n orders") {
    CHECK(predicted_Gn_order(make_type(3, 2, 2, 3), 2) == 648);
    CHECK(predicted_Gn_order(make_type(3, 2, 2, 3), 3) == 816293376);
    CHECK(predicted_Gn_order(make_type(5, 3, 3, 5), 2) == Int("46656000000"));  // 60^6
    CHECK_THROWS_AS(predicted_Gn_order(make_type(6, 4, 4, 5), 2), argument_error);
    CHECK_THROWS_AS(predicted_Gn_order(make_type(4, 3, 3, 3), 2), argument_error);
}

TEST_CASE("theorem verification: G_n is E_n or the iterated A_d wreath product") {
    auto r = verify_theorem_G2alt(make_type(3, 2, 2, 3), 2);
    CHECK(r.pass);
    CHECK(r.computed_order == 648);
    CHECK(r.generators_in_En);

    auto r3 = verify_theorem_G2alt(make_type(3, 2, 2, 3), 3);
    CHECK(r3.pass);
    CHECK(r3.computed_order == 816293376);

    auto r5 = verify_theorem_G2alt(make_type(5, 3, 3, 5), 2);
    CHECK(r5.pass);
    CHECK(r5.computed_order == Int("46656000000"));

    SUBCASE("every valid non-exceptional type, d <= 7, n = 2") {
        for (int d = 3; d <= 7; ++d)
            for (const auto& tt : sorted_types(d)) {
                if (tt.is_exceptional()) continue;
                CHECK(verify_theorem_G2alt(tt, 2).pass);
            }
    }
    CHECK_THROWS_AS(verify_theorem_G2alt(make_type(6, 4, 4, 5), 2), argument_error);
}

TEST_CASE("exceptional types: empirical level-2 orders (no closed form asserted)") {
    Int k4 = empirical_Gn_order(make_type(4, 3, 3, 3), 2);
    Int s6 = empirical_Gn_order(make_type(6, 4, 4, 5), 2);
    MESSAGE("(4;3,3,3) n=2 order: ", k4.str(), "; (6;4,4,5) n=2 order: ", s6.str());
    // regression pins on the computed values; these are not paper formulas
    CHECK(k4 == 82944);
    CHECK(s6 == Int("179159040000000"));
    // sanity: both divide the corresponding wreath bound |G_1|^(d+1)-ish envelope
    CHECK(k4 % 12 == 0);
    CHECK(s6 % 120 == 0);
}
