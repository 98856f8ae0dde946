#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "arboreal/errors.hpp"
#include "arboreal/numeric.hpp"
#include "arboreal/poly.hpp"

namespace arboreal {

// p-adic valuation value: an integer or +infinity (for 0).  A dedicated
// sentinel, never a large magic integer.
class Valuation {
public:
    static Valuation infinity() { return Valuation(0, true); }
    static Valuation finite(long v) { return Valuation(v, false); }

    bool is_infinite() const { return inf_; }
    long value() const {
        if (inf_) throw argument_error("valuation: +infinity has no finite value");
        return v_;
    }

    friend Valuation operator+(const Valuation& a, const Valuation& b) {
        if (a.inf_ || b.inf_) return infinity();
        return finite(a.v_ + b.v_);
    }
    friend bool operator==(const Valuation& a, const Valuation& b) {
        return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
    }
    friend bool operator==(const Valuation& a, long v) { return !a.inf_ && a.v_ == v; }
    friend bool operator<(const Valuation& a, long v) { return !a.inf_ && a.v_ < v; }
    friend bool operator>(const Valuation& a, long v) { return a.inf_ || a.v_ > v; }

    std::string to_string() const { return inf_ ? "inf" : std::to_string(v_); }

private:
    Valuation(long v, bool inf) : v_(v), inf_(inf) {}
    long v_;
    bool inf_;
};

inline Valuation valuation(const Int& n, long p) {
    if (!is_prime(p)) throw argument_error("valuation: p must be prime");
    if (n.is_zero()) return Valuation::infinity();
    Int m = n;
    long v = 0;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return Valuation::finite(v);
}

inline Valuation valuation(const Rat& r, long p) {
    if (!is_prime(p)) throw argument_error("valuation: p must be prime");
    if (r.is_zero()) return Valuation::infinity();
    return Valuation::finite(valuation(rat_num(r), p).value() - valuation(rat_den(r), p).value());
}

// Lower Newton polygon of a nonzero integer polynomial at p: the list of
// (slope, horizontal length) segments of the lower convex hull of
// {(i, v_p(c_i)) : c_i != 0}, slopes strictly increasing.  The lengths sum
// to deg(q) - ord_0(q).
struct NewtonPolygon {
    std::vector<std::pair<Rat, long>> segments;

    friend bool operator==(const NewtonPolygon& a, const NewtonPolygon& b) {
        return a.segments == b.segments;
    }
    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < segments.size(); ++i) {
            if (i) s += ", ";
            s += "(" + segments[i].first.str() + ", " + std::to_string(segments[i].second) + ")";
        }
        return s + "]";
    }
};

inline NewtonPolygon newton_polygon(const IntPoly& q, long p) {
    if (q.is_zero()) throw argument_error("newton_polygon: zero polynomial");
    if (!is_prime(p)) throw argument_error("newton_polygon: p must be prime");
    std::vector<std::pair<long, long>> pts;  // (i, v_p(c_i))
    for (long i = q.ord0(); i <= q.degree(); ++i) {
        Int c = q.coeff(static_cast<std::size_t>(i));
        if (c.is_zero()) continue;
        pts.emplace_back(i, valuation(c, p).value());
    }
    // lower convex hull, left to right (Andrew monotone chain, lower part)
    std::vector<std::pair<long, long>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            // drop b when it lies on or above segment a->pt
            Int cross = Int(b.first - a.first) * (pt.second - a.second) -
                        Int(pt.first - a.first) * (b.second - a.second);
            if (cross <= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }
    NewtonPolygon np;
    for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
        Rat slope(Int(hull[i + 1].second - hull[i].second), Int(hull[i + 1].first - hull[i].first));
        np.segments.emplace_back(slope, hull[i + 1].first - hull[i].first);
    }
    return np;
}

}  // namespace arboreal
