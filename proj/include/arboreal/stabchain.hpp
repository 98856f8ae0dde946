#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "arboreal/errors.hpp"
#include "arboreal/numeric.hpp"
#include "arboreal/permutation.hpp"

namespace arboreal {

// Deterministic Schreier-Sims stabilizer chain.  Base points are picked
// greedily (largest cycle of the incoming generator, ties to the smallest
// point); all orbits, transversals and Schreier generators are processed in
// a fixed order, so two runs over the same generators build the same chain.
class StabilizerChain {
public:
    explicit StabilizerChain(const std::vector<Permutation>& gens, long max_points = 10000) {
        if (gens.empty()) {
            m_ = 0;
            return;
        }
        m_ = gens.front().size();
        if (m_ > max_points)
            throw resource_error("StabilizerChain: " + std::to_string(m_) + " points exceed bound " +
                                 std::to_string(max_points));
        for (const auto& g : gens) {
            if (g.size() != m_) throw argument_error("StabilizerChain: generator degree mismatch");
            add_generator(0, g);
        }
    }

    int degree() const { return static_cast<int>(m_); }

    Int order() const {
        Int o = 1;
        for (const auto& lv : levels_) o *= static_cast<long>(lv.orbit.size());
        return o;
    }

    bool contains(const Permutation& g) const {
        if (m_ == 0) return g.is_identity();
        if (g.size() != m_) throw argument_error("StabilizerChain::contains: degree mismatch");
        Permutation h = g;
        for (const auto& lv : levels_) {
            if (h.is_identity()) return true;
            int p = h.act(lv.base);
            int ri = lv.rep_index[static_cast<std::size_t>(p)];
            if (ri < 0) return false;
            h = h * lv.reps[static_cast<std::size_t>(ri)].inverse();
        }
        return h.is_identity();
    }

    std::vector<int> base_points() const {
        std::vector<int> out;
        for (const auto& lv : levels_) out.push_back(lv.base);
        return out;
    }

private:
    struct Level {
        int base = 0;
        std::vector<Permutation> gens;
        std::vector<int> orbit;       // discovery order, orbit[0] == base
        std::vector<int> rep_index;   // point -> index into reps, -1 outside the orbit
        std::vector<Permutation> reps;  // (base)reps[i] == orbit[i]
    };

    // g fixes the bases of all levels before `from_level`.  Sifts g to a
    // residue; a nontrivial residue r (fixing bases < j) is appended to the
    // generator lists of every level in [from_level, j], keeping the level
    // sets nested, and the affected levels are re-closed.
    void add_generator(std::size_t from_level, Permutation g) {
        Permutation r = std::move(g);
        std::size_t j = from_level;
        while (j < levels_.size()) {
            if (r.is_identity()) return;
            const Level& lv = levels_[j];
            int p = r.act(lv.base);
            int ri = lv.rep_index[static_cast<std::size_t>(p)];
            if (ri < 0) break;
            r = r * lv.reps[static_cast<std::size_t>(ri)].inverse();
            ++j;
        }
        if (r.is_identity()) return;
        if (j == levels_.size()) new_level(r);
        for (std::size_t m = from_level; m <= j; ++m) levels_[m].gens.push_back(r);
        for (std::size_t m = from_level; m <= j; ++m) close_level(m);
    }

    void new_level(const Permutation& g) {
        Level lv;
        std::size_t best_len = 0;
        for (const auto& cyc : g.cycles()) {
            if (cyc.size() > best_len) {
                best_len = cyc.size();
                lv.base = *std::min_element(cyc.begin(), cyc.end());
            }
        }
        lv.rep_index.assign(static_cast<std::size_t>(m_), -1);
        lv.orbit = {lv.base};
        lv.rep_index[static_cast<std::size_t>(lv.base)] = 0;
        lv.reps = {Permutation::identity(static_cast<int>(m_))};
        levels_.push_back(std::move(lv));
    }

    void close_level(std::size_t i) {
        std::vector<Permutation> schreier_gens;
        {
            Level& lv = levels_[i];
            lv.orbit = {lv.base};
            lv.rep_index.assign(static_cast<std::size_t>(m_), -1);
            lv.rep_index[static_cast<std::size_t>(lv.base)] = 0;
            lv.reps = {Permutation::identity(static_cast<int>(m_))};
            for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
                for (const auto& s : lv.gens) {
                    int q = s.act(lv.orbit[k]);
                    if (lv.rep_index[static_cast<std::size_t>(q)] < 0) {
                        lv.rep_index[static_cast<std::size_t>(q)] = static_cast<int>(lv.reps.size());
                        lv.orbit.push_back(q);
                        lv.reps.push_back(lv.reps[k] * s);
                    }
                }
            }
            for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
                for (const auto& s : lv.gens) {
                    int q = s.act(lv.orbit[k]);
                    schreier_gens.push_back(
                        lv.reps[k] * s *
                        lv.reps[static_cast<std::size_t>(lv.rep_index[static_cast<std::size_t>(q)])].inverse());
                }
            }
        }
        // Each Schreier generator must sift to the identity through the
        // deeper part of the chain; add_generator may reallocate levels_,
        // so no Level reference is held here.
        for (auto& h : schreier_gens) add_generator(i + 1, std::move(h));
    }

    long m_ = 0;
    std::vector<Level> levels_;
};

// Exact order of the permutation group generated by `gens`.
inline Int group_order(const std::vector<Permutation>& gens, long max_points = 10000) {
    return StabilizerChain(gens, max_points).order();
}

// Order of the normal closure of `seeds` inside the group generated by
// `group_gens`.
inline Int normal_closure_order(const std::vector<Permutation>& group_gens,
                                const std::vector<Permutation>& seeds, long max_points = 10000) {
    std::vector<Permutation> closure;
    for (const auto& s : seeds)
        if (!s.is_identity()) closure.push_back(s);
    StabilizerChain chain(closure, max_points);
    for (std::size_t k = 0; k < closure.size(); ++k) {
        for (const auto& g : group_gens) {
            Permutation conj = g.inverse() * closure[k] * g;
            if (!chain.contains(conj)) {
                closure.push_back(conj);
                chain = StabilizerChain(closure, max_points);
            }
        }
    }
    return chain.order();
}

}  // namespace arboreal
