#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "arboreal/errors.hpp"

namespace arboreal {

// Permutation on {0, ..., m-1}, acting from the right: (x)a = images[x],
// and (x)(a*b) = ((x)a)b, so in a product the left factor acts first.
// Cycle-notation I/O is 1-based to match the usual convention.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images) : img_(std::move(images)) {
        std::vector<bool> seen(img_.size(), false);
        for (int v : img_) {
            if (v < 0 || v >= static_cast<int>(img_.size()) || seen[static_cast<std::size_t>(v)])
                throw argument_error("Permutation: images are not a bijection");
            seen[static_cast<std::size_t>(v)] = true;
        }
    }
    static Permutation identity(int m) {
        std::vector<int> v(static_cast<std::size_t>(m));
        std::iota(v.begin(), v.end(), 0);
        return Permutation(std::move(v));
    }

    int size() const { return static_cast<int>(img_.size()); }
    int act(int x) const { return img_[static_cast<std::size_t>(x)]; }
    const std::vector<int>& images() const { return img_; }

    bool is_identity() const {
        for (int i = 0; i < size(); ++i)
            if (img_[static_cast<std::size_t>(i)] != i) return false;
        return true;
    }

    friend bool operator==(const Permutation& a, const Permutation& b) { return a.img_ == b.img_; }
    friend bool operator!=(const Permutation& a, const Permutation& b) { return !(a == b); }
    friend bool operator<(const Permutation& a, const Permutation& b) { return a.img_ < b.img_; }

    // a then b
    friend Permutation compose(const Permutation& a, const Permutation& b) {
        if (a.size() != b.size()) throw argument_error("Permutation: size mismatch");
        std::vector<int> out(a.img_.size());
        for (int i = 0; i < a.size(); ++i) out[static_cast<std::size_t>(i)] = b.act(a.act(i));
        return Permutation(std::move(out));
    }
    friend Permutation operator*(const Permutation& a, const Permutation& b) { return compose(a, b); }

    Permutation inverse() const {
        std::vector<int> out(img_.size());
        for (int i = 0; i < size(); ++i) out[static_cast<std::size_t>(img_[static_cast<std::size_t>(i)])] = i;
        return Permutation(std::move(out));
    }

    std::vector<std::vector<int>> cycles(bool include_fixed = false) const {
        std::vector<std::vector<int>> out;
        std::vector<bool> seen(img_.size(), false);
        for (int i = 0; i < size(); ++i) {
            if (seen[static_cast<std::size_t>(i)]) continue;
            std::vector<int> cyc;
            int j = i;
            while (!seen[static_cast<std::size_t>(j)]) {
                seen[static_cast<std::size_t>(j)] = true;
                cyc.push_back(j);
                j = act(j);
            }
            if (cyc.size() > 1 || include_fixed) out.push_back(std::move(cyc));
        }
        return out;
    }

    int sign() const {
        int transpositions = 0;
        for (const auto& c : cycles()) transpositions += static_cast<int>(c.size()) - 1;
        return (transpositions % 2 == 0) ? 1 : -1;
    }

    std::vector<int> support() const {
        std::vector<int> out;
        for (int i = 0; i < size(); ++i)
            if (act(i) != i) out.push_back(i);
        return out;
    }
    bool has_fixed_point() const {
        for (int i = 0; i < size(); ++i)
            if (act(i) == i) return true;
        return false;
    }

    // single cycle (c1 c2 ... ck), entries 0-based
    static Permutation from_cycle(int m, const std::vector<int>& cyc) {
        Permutation p = identity(m);
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            int from = cyc[i], to = cyc[(i + 1) % cyc.size()];
            if (from < 0 || from >= m) throw argument_error("from_cycle: point out of range");
            p.img_[static_cast<std::size_t>(from)] = to;
        }
        return Permutation(p.img_);  // revalidate
    }

    std::string to_cycle_string() const {
        auto cs = cycles();
        if (cs.empty()) return "()";
        std::string out;
        for (const auto& c : cs) {
            out += "(";
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (i) out += " ";
                out += std::to_string(c[i] + 1);
            }
            out += ")";
        }
        return out;
    }

    // Parses disjoint-cycle notation like "(1 2)(3 4 5)"; commas are accepted
    // as separators, "()" or an empty string is the identity.
    static Permutation parse_cycles(const std::string& s, int m) {
        Permutation p = identity(m);
        std::vector<bool> used(static_cast<std::size_t>(m), false);
        std::size_t i = 0;
        auto skip_ws = [&] { while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',')) ++i; };
        skip_ws();
        while (i < s.size()) {
            if (s[i] != '(') throw argument_error("parse_cycles: expected '('");
            ++i;
            std::vector<int> cyc;
            skip_ws();
            while (i < s.size() && s[i] != ')') {
                if (!std::isdigit(static_cast<unsigned char>(s[i])))
                    throw argument_error("parse_cycles: expected digit");
                int v = 0;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
                    v = v * 10 + (s[i++] - '0');
                if (v < 1 || v > m) throw argument_error("parse_cycles: point out of range");
                if (used[static_cast<std::size_t>(v - 1)])
                    throw argument_error("parse_cycles: repeated point");
                used[static_cast<std::size_t>(v - 1)] = true;
                cyc.push_back(v - 1);
                skip_ws();
            }
            if (i >= s.size()) throw argument_error("parse_cycles: unterminated cycle");
            ++i;  // ')'
            for (std::size_t k = 0; k < cyc.size(); ++k)
                p.img_[static_cast<std::size_t>(cyc[k])] = cyc[(k + 1) % cyc.size()];
            skip_ws();
        }
        return Permutation(p.img_);
    }

private:
    std::vector<int> img_;
};

}  // namespace arboreal
