#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "arboreal/belyi.hpp"
#include "arboreal/dynamics.hpp"
#include "arboreal/errors.hpp"
#include "arboreal/monodromy.hpp"
#include "arboreal/numeric.hpp"
#include "arboreal/padic.hpp"
#include "arboreal/specialization.hpp"
#include "arboreal/tree.hpp"

// JSON encodings used by the CLI and the file formats.  Field order is fixed
// (ordered_json) and big integers travel as decimal strings.

namespace arboreal {

using json = nlohmann::ordered_json;

inline Int int_from_string(const std::string& s) {
    try {
        return Int(s);
    } catch (const std::exception&) {
        throw argument_error("not a decimal integer: '" + s + "'");
    }
}

inline Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(int_from_string(s));
    Int num = int_from_string(s.substr(0, slash));
    Int den = int_from_string(s.substr(slash + 1));
    if (den.is_zero()) throw argument_error("zero denominator in '" + s + "'");
    return Rat(num, den);
}

inline json poly_to_json(const IntPoly& p) {
    json arr = json::array();
    for (const auto& c : p.coeffs()) arr.push_back(c.str());
    return arr;
}

inline IntPoly poly_from_json(const json& j) {
    if (!j.is_array()) throw argument_error("polynomial: expected a coefficient array");
    std::vector<Int> c;
    for (const auto& v : j) {
        if (v.is_string())
            c.push_back(int_from_string(v.get<std::string>()));
        else if (v.is_number_integer())
            c.push_back(Int(v.get<long long>()));
        else
            throw argument_error("polynomial: coefficients must be integers or decimal strings");
    }
    return IntPoly(std::move(c));
}

inline json belyi_to_json(const BelyiMap& f) {
    const auto& t = f.type();
    json j;
    j["type"] = {t.d, t.e1, t.e2, t.e3};
    j["num"] = poly_to_json(f.num());
    j["den"] = poly_to_json(f.den());
    return j;
}

inline BelyiMap belyi_from_json(const json& j) {
    if (!j.contains("type") || !j.contains("num") || !j.contains("den"))
        throw argument_error("belyi map: need fields type, num, den");
    auto tv = j["type"];
    if (!tv.is_array() || tv.size() != 4) throw argument_error("belyi map: type must be [d,e1,e2,e3]");
    auto t = CombinatorialType::branch_indexed(tv[0].get<int>(), tv[1].get<int>(), tv[2].get<int>(),
                                               tv[3].get<int>());
    return BelyiMap::from_parts(t, poly_from_json(j["num"]), poly_from_json(j["den"]));
}

inline json tree_to_json(const TreeAut& a) {
    json j;
    j["d"] = a.degree();
    j["n"] = a.depth();
    j["top"] = a.top().to_cycle_string();
    if (a.depth() > 1) {
        json ch = json::array();
        for (int i = 0; i < a.degree(); ++i) ch.push_back(tree_to_json(a.child(i)));
        j["children"] = ch;
    }
    return j;
}

inline TreeAut tree_from_json(const json& j) {
    int d = j.at("d").get<int>();
    int n = j.at("n").get<int>();
    Permutation top = Permutation::parse_cycles(j.at("top").get<std::string>(), d);
    if (n == 1) return TreeAut::leaf(top);
    const auto& ch = j.at("children");
    if (!ch.is_array() || static_cast<int>(ch.size()) != d)
        throw argument_error("tree automorphism: need exactly d children");
    std::vector<TreeAut> children;
    for (const auto& c : ch) children.push_back(tree_from_json(c));
    return TreeAut::node(std::move(children), top);
}

inline json verify_report_to_json(const VerifyReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"ok", c.ok}});
    return json{{"pass", r.pass}, {"checks", checks}};
}

inline json reduction_to_json(const ReductionClass& rc) {
    json j;
    j["class"] = to_string(rc.tag);
    j["p"] = rc.p;
    j["num"] = rc.num.coeffs();
    j["den"] = rc.den.coeffs();
    j["monomial_criterion"] = rc.criterion_monomial;
    return j;
}

inline json discriminant_to_json(const DiscriminantData& d) {
    json j;
    j["a_f"] = d.a_f.str();
    j["u"] = d.u.str();
    j["is_square_u"] = d.is_square_u;
    j["ell_g"] = d.ell_g.str();
    j["h0"] = d.h0.str();
    j["g1"] = d.g1.str();
    return j;
}

inline json theorem_report_to_json(const TheoremReport& r) {
    json j;
    j["type"] = {r.type.d, r.type.e1, r.type.e2, r.type.e3};
    j["n"] = r.n;
    j["computed_order"] = r.computed_order.str();
    j["predicted_order"] = r.predicted_order.str();
    j["generators_in_En"] = r.generators_in_En;
    j["pass"] = r.pass;
    return j;
}

inline json conditions_to_json(const ConditionsWitness& w) {
    json cond;
    for (const auto& [name, ok] : w.checks) cond[name] = ok;
    json j;
    j["a"] = w.a.str();
    j["p"] = w.p;
    j["q"] = {w.q1, w.q2, w.q3};
    j["conditions"] = cond;
    j["valid"] = w.valid;
    return j;
}

inline json prime_sets_to_json(const RamifiedPrimeSets& ps) {
    json j;
    j["P_bad"] = std::vector<long>(ps.p_bad.begin(), ps.p_bad.end());
    j["P_a"] = std::vector<long>(ps.p_a.begin(), ps.p_a.end());
    j["all"] = [&] {
        auto u = ps.all();
        return std::vector<long>(u.begin(), u.end());
    }();
    return j;
}

inline json polygon_to_json(const NewtonPolygon& np) {
    json segs = json::array();
    for (const auto& [slope, len] : np.segments) segs.push_back({slope.str(), len});
    return json{{"segments", segs}};
}

inline json fixprop_to_json(const FixedProportionReport& r) {
    json j;
    j["d"] = r.d;
    j["n"] = r.n;
    j["exact"] = r.exact ? json(r.exact->str()) : json(nullptr);
    j["estimate"] = r.estimate;
    j["stderr"] = r.stderr_;
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    return j;
}

inline json density_to_json(const DensityReport& r) {
    json j;
    j["map"] = r.map_id;
    j["b0"] = r.b0.str();
    j["mode"] = to_string(r.mode);
    j["target"] = r.target ? json(r.target->str()) : json(nullptr);
    j["X"] = r.X;
    j["density"] = r.density;
    j["hits"] = r.primes_dividing;
    j["scanned"] = r.primes_scanned;
    j["hit_primes"] = r.hit_primes;
    json sk = json::array();
    for (const auto& s : r.skipped) sk.push_back({{"q", s.q}, {"reason", s.reason}});
    j["skipped"] = sk;
    return j;
}

}  // namespace arboreal
