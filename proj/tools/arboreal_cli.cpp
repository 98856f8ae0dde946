// arboreal: exact computations with normalized dynamical Belyi maps, their
// iterated monodromy groups, specialization conditions and dynamical
// sequences.  Every command writes exactly one JSON document (or a CSV
// stream) to stdout; diagnostics go to stderr.
//
// Exit codes: 0 success, 2 argument/validation, 3 resource bound,
// 4 internal consistency (theorem-check) failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arboreal/arboreal.hpp"
#include "arboreal/serialize.hpp"

namespace {

using namespace arboreal;

long env_long(const char* name, long fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    try {
        return std::stol(v);
    } catch (const std::exception&) {
        throw argument_error(std::string(name) + ": not an integer: " + v);
    }
}

struct Bounds {
    long max_points = env_long("ARBOREAL_MAX_POINTS", 10000);
    long max_iter_degree = env_long("ARBOREAL_MAX_ITER_DEGREE", 10000);
    long max_enum = env_long("ARBOREAL_MAX_ENUM", 10000000);
};

// Map selection shared by several subcommands: either --map @file.json or
// the family flags --family/--d/--k.
struct MapOptions {
    std::string map_ref;
    std::string family = "poly";
    int d = 0;
    int k = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--map", map_ref, "Belyi map as @file.json");
        cmd->add_option("--family", family, "closed-form family: poly | rational")
            ->check(CLI::IsMember({"poly", "rational"}));
        cmd->add_option("--d", d, "degree of the family map");
        cmd->add_option("--k", k, "family parameter k");
    }

    BelyiMap load() const {
        if (!map_ref.empty()) {
            if (map_ref.size() < 2 || map_ref[0] != '@')
                throw argument_error("--map expects @file.json");
            std::ifstream in(map_ref.substr(1));
            if (!in) throw argument_error("cannot open map file " + map_ref.substr(1));
            json j;
            try {
                in >> j;
            } catch (const std::exception& e) {
                throw argument_error(std::string("map file: invalid JSON: ") + e.what());
            }
            return belyi_from_json(j);
        }
        if (d == 0) throw argument_error("give either --map @file.json or --family/--d/--k");
        if (k == 0) throw argument_error("--k is required with --family");
        return family == "poly" ? construct_family_polynomial(d, k) : construct_family_rational(d, k);
    }
};

void emit(const json& j) { std::cout << j.dump() << "\n"; }

std::vector<int> parse_int_list(const std::string& s, std::size_t expect, const std::string& what) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    if (out.size() != expect) throw argument_error(what + ": expected " + std::to_string(expect) + " comma-separated values");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact dynamical Belyi maps and their arboreal Galois groups"};
    app.require_subcommand(1);
    Bounds bounds;

    // ---- belyi ------------------------------------------------------------
    auto* belyi = app.add_subcommand("belyi", "construct, verify, reduce, iterate, discriminant");
    belyi->require_subcommand(1);

    {
        auto* c = belyi->add_subcommand("construct", "build a closed-form family map");
        auto opts = std::make_shared<MapOptions>();
        auto fmt = std::make_shared<std::string>("json");
        opts->attach(c);
        c->add_option("--format", *fmt, "json | human")->check(CLI::IsMember({"json", "human"}));
        c->callback([opts, fmt] {
            BelyiMap f = opts->load();
            if (*fmt == "human")
                std::cout << f.type().str() << ": " << f.str() << "\n";
            else
                emit(belyi_to_json(f));
        });
    }
    {
        auto* c = belyi->add_subcommand("verify", "check the normalized-Belyi-map conditions");
        auto opts = std::make_shared<MapOptions>();
        opts->attach(c);
        c->callback([opts] {
            BelyiMap f = opts->load();  // from_parts already verifies; report for visibility
            VerifyReport rep = verify_normalized(f.type(), f.num(), f.den());
            json j = verify_report_to_json(rep);
            j["type"] = {f.type().d, f.type().e1, f.type().e2, f.type().e3};
            emit(j);
            if (!rep.pass) throw argument_error("verification failed");
        });
    }
    {
        auto* c = belyi->add_subcommand("reduce", "classify the reduction mod p");
        auto opts = std::make_shared<MapOptions>();
        auto p = std::make_shared<long>(0);
        opts->attach(c);
        c->add_option("--p", *p, "prime")->required();
        c->callback([opts, p] { emit(reduction_to_json(classify_reduction(opts->load(), *p))); });
    }
    {
        auto* c = belyi->add_subcommand("discriminant", "discriminant data of f - t");
        auto opts = std::make_shared<MapOptions>();
        opts->attach(c);
        c->callback([opts] { emit(discriminant_to_json(discriminant_data(opts->load()))); });
    }
    {
        auto* c = belyi->add_subcommand("iterate", "numerator/denominator of f^n");
        auto opts = std::make_shared<MapOptions>();
        auto n = std::make_shared<int>(1);
        opts->attach(c);
        c->add_option("--n", *n, "iterate")->required();
        c->callback([opts, n, &bounds] {
            auto [g, h] = iterate(opts->load(), *n, bounds.max_iter_degree);
            json j;
            j["n"] = *n;
            j["degree"] = g.degree();
            j["num"] = poly_to_json(g);
            j["den"] = poly_to_json(h);
            emit(j);
        });
    }

    // ---- group ------------------------------------------------------------
    auto* group = app.add_subcommand("group", "E_n and Aut(T_n) bookkeeping, sampling, fixed-leaf proportion");
    group->require_subcommand(1);

    {
        auto* c = group->add_subcommand("order", "|E_n|, |Aut(T_n)| and the index");
        auto d = std::make_shared<int>(0);
        auto n = std::make_shared<int>(0);
        c->add_option("--d", *d)->required();
        c->add_option("--n", *n)->required();
        c->callback([d, n] {
            json j;
            j["En_order"] = En_order(*d, *n).str();
            j["index"] = En_index(*d, *n).str();
            j["aut_order"] = aut_order(*d, *n).str();
            emit(j);
        });
    }
    {
        auto* c = group->add_subcommand("index", "[Aut(T_n) : E_n]");
        auto d = std::make_shared<int>(0);
        auto n = std::make_shared<int>(0);
        c->add_option("--d", *d)->required();
        c->add_option("--n", *n)->required();
        c->callback([d, n] { emit(json{{"index", En_index(*d, *n).str()}}); });
    }
    {
        auto* c = group->add_subcommand("sample", "uniform elements of E_n");
        auto d = std::make_shared<int>(0);
        auto n = std::make_shared<int>(0);
        auto seed = std::make_shared<std::uint64_t>(0);
        auto count = std::make_shared<int>(1);
        c->add_option("--d", *d)->required();
        c->add_option("--n", *n)->required();
        c->add_option("--seed", *seed, "RNG seed (default 0)");
        c->add_option("--count", *count, "number of samples");
        c->callback([d, n, seed, count] {
            std::mt19937_64 rng(splitmix64(*seed));
            json samples = json::array();
            for (int i = 0; i < *count; ++i) samples.push_back(tree_to_json(sample_uniform_En(*d, *n, rng)));
            emit(json{{"d", *d}, {"n", *n}, {"seed", *seed}, {"samples", samples}});
        });
    }
    {
        auto* c = group->add_subcommand("fixprop", "fixed-leaf proportion of E_n (exact and Monte-Carlo)");
        auto d = std::make_shared<int>(0);
        auto n = std::make_shared<int>(0);
        auto nmax = std::make_shared<int>(0);
        auto samples = std::make_shared<long>(100000);
        auto seed = std::make_shared<std::uint64_t>(0);
        auto jobs = std::make_shared<int>(1);
        auto fmt = std::make_shared<std::string>("json");
        c->add_option("--d", *d)->required();
        c->add_option("--n", *n, "single level");
        c->add_option("--n-max", *nmax, "levels 1..n-max");
        c->add_option("--samples", *samples);
        c->add_option("--seed", *seed);
        c->add_option("--jobs", *jobs);
        c->add_option("--format", *fmt)->check(CLI::IsMember({"json", "csv"}));
        c->callback([d, n, nmax, samples, seed, jobs, fmt, &bounds] {
            if (*n == 0 && *nmax == 0) throw argument_error("fixprop: give --n or --n-max");
            std::vector<FixedProportionReport> reports;
            if (*nmax > 0)
                for (int lvl = 1; lvl <= *nmax; ++lvl)
                    reports.push_back(mc_fixed_proportion(*d, lvl, *samples, *seed, *jobs, Int(bounds.max_enum)));
            else
                reports.push_back(mc_fixed_proportion(*d, *n, *samples, *seed, *jobs, Int(bounds.max_enum)));
            if (*fmt == "csv") {
                std::cout << "n,estimate,stderr\n";
                for (const auto& r : reports)
                    std::cout << r.n << "," << r.estimate << "," << r.stderr_ << "\n";
            } else if (reports.size() == 1) {
                emit(fixprop_to_json(reports.front()));
            } else {
                json arr = json::array();
                for (const auto& r : reports) arr.push_back(fixprop_to_json(r));
                emit(arr);
            }
        });
    }

    // ---- monodromy ----------------------------------------------------------
    auto* mono = app.add_subcommand("monodromy", "generating systems and the wreath-product theorem");
    mono->require_subcommand(1);

    {
        auto* c = mono->add_subcommand("generators", "standard generating system, optionally lifted");
        auto d = std::make_shared<int>(0);
        auto type = std::make_shared<std::string>();
        auto n = std::make_shared<int>(1);
        c->add_option("--d", *d)->required();
        c->add_option("--type", *type, "e1,e2,e3")->required();
        c->add_option("--n", *n, "lift level");
        c->callback([d, type, n] {
            auto e = parse_int_list(*type, 3, "--type");
            auto t = CombinatorialType::branch_indexed(*d, e[0], e[1], e[2]);
            auto gs = standard_generating_system(t);
            json j;
            j["type"] = {t.d, t.e1, t.e2, t.e3};
            j["g1"] = gs.g1.to_cycle_string();
            j["g2"] = gs.g2.to_cycle_string();
            j["g3"] = gs.g3.to_cycle_string();
            if (*n >= 2) {
                auto lifted = lift_generating_system(gs, *n);
                j["n"] = *n;
                j["g1_n"] = tree_to_json(lifted[0]);
                j["g2_n"] = tree_to_json(lifted[1]);
                j["g3_n"] = tree_to_json(lifted[2]);
            }
            emit(j);
        });
    }
    {
        auto* c = mono->add_subcommand("verify", "check |G_n| against E_n / iterated A_d wreath order");
        auto d = std::make_shared<int>(0);
        auto type = std::make_shared<std::string>();
        auto n = std::make_shared<int>(2);
        c->add_option("--d", *d)->required();
        c->add_option("--type", *type, "e1,e2,e3")->required();
        c->add_option("--n", *n)->required();
        c->callback([d, type, n, &bounds] {
            auto e = parse_int_list(*type, 3, "--type");
            auto t = CombinatorialType::branch_indexed(*d, e[0], e[1], e[2]);
            TheoremReport rep = verify_theorem_G2alt(t, *n, bounds.max_points);
            emit(theorem_report_to_json(rep));
            if (!rep.pass) throw consistency_error("theorem verification failed for " + t.str());
        });
    }

    // ---- special ------------------------------------------------------------
    auto* special = app.add_subcommand("special", "specialization conditions, Eisenstein and Newton polygons");
    special->require_subcommand(1);

    {
        auto* c = special->add_subcommand("check", "check Conditions for (a, p, q1, q2, q3)");
        auto opts = std::make_shared<MapOptions>();
        auto a = std::make_shared<std::string>();
        auto p = std::make_shared<long>(0);
        auto qs = std::make_shared<std::string>();
        opts->attach(c);
        c->add_option("--a", *a, "specialization value, e.g. 60/11")->required();
        c->add_option("--p", *p, "monomial-reduction prime")->required();
        c->add_option("--q", *qs, "q1,q2,q3")->required();
        c->callback([opts, a, p, qs] {
            auto q = parse_int_list(*qs, 3, "--q");
            emit(conditions_to_json(check_conditions(opts->load(), rat_from_string(*a), *p, q[0], q[1], q[2])));
        });
    }
    {
        auto* c = special->add_subcommand("find", "search a witness (a, p, q1, q2, q3)");
        auto opts = std::make_shared<MapOptions>();
        auto bound = std::make_shared<long>(1000);
        opts->attach(c);
        c->add_option("--bound", *bound, "height bound for a = u/v");
        c->callback([opts, bound] {
            auto w = find_conditions(opts->load(), *bound);
            if (w) {
                json j = conditions_to_json(*w);
                j["found"] = true;
                emit(j);
            } else {
                emit(json{{"found", false}, {"bound", *bound}});
            }
        });
    }
    {
        auto* c = special->add_subcommand("eisenstein", "Eisenstein test for the numerator of f^n - a");
        auto opts = std::make_shared<MapOptions>();
        auto a = std::make_shared<std::string>();
        auto p = std::make_shared<long>(0);
        auto n = std::make_shared<int>(1);
        opts->attach(c);
        c->add_option("--a", *a)->required();
        c->add_option("--p", *p)->required();
        c->add_option("--n", *n)->required();
        c->callback([opts, a, p, n, &bounds] {
            bool ok = eisenstein_irreducible(opts->load(), rat_from_string(*a), *p, *n, bounds.max_iter_degree);
            emit(json{{"a", *a}, {"p", *p}, {"n", *n}, {"eisenstein", ok}});
        });
    }
    {
        auto* c = special->add_subcommand("polygon", "Newton polygon of f - a at q for a branch");
        auto opts = std::make_shared<MapOptions>();
        auto a = std::make_shared<std::string>();
        auto q = std::make_shared<long>(0);
        auto branch = std::make_shared<std::string>("0");
        opts->attach(c);
        c->add_option("--a", *a)->required();
        c->add_option("--q", *q)->required();
        c->add_option("--branch", *branch, "0 | 1 | inf")->check(CLI::IsMember({"0", "1", "inf"}));
        c->callback([opts, a, q, branch] {
            Branch b = *branch == "0" ? Branch::Zero : *branch == "1" ? Branch::One : Branch::Infinity;
            json j = polygon_to_json(local_ramification(opts->load(), rat_from_string(*a), *q, b));
            j["q"] = *q;
            j["branch"] = *branch;
            emit(j);
        });
    }
    {
        auto* c = special->add_subcommand("primesets", "ramified prime bookkeeping P_bad, P_a");
        auto opts = std::make_shared<MapOptions>();
        auto a = std::make_shared<std::string>();
        opts->attach(c);
        c->add_option("--a", *a)->required();
        c->callback([opts, a] { emit(prime_sets_to_json(ramified_prime_sets(opts->load(), rat_from_string(*a)))); });
    }

    // ---- dynamics -----------------------------------------------------------
    auto* dyn = app.add_subcommand("dynamics", "prime-divisor density scans and the phi recursion");
    dyn->require_subcommand(1);

    {
        auto* c = dyn->add_subcommand("density", "prime density of a dynamical sequence");
        auto opts = std::make_shared<MapOptions>();
        auto b0 = std::make_shared<std::string>();
        auto X = std::make_shared<long>(0);
        auto mode = std::make_shared<std::string>("divides-zero");
        auto target = std::make_shared<std::string>();
        auto jobs = std::make_shared<int>(1);
        auto fmt = std::make_shared<std::string>("json");
        opts->attach(c);
        c->add_option("--b0", *b0, "starting value")->required();
        c->add_option("--X", *X, "prime bound")->required();
        c->add_option("--mode", *mode)->check(CLI::IsMember({"divides-zero", "hits-target"}));
        c->add_option("--target", *target, "target a for hits-target mode");
        c->add_option("--jobs", *jobs);
        c->add_option("--format", *fmt)->check(CLI::IsMember({"json", "csv"}));
        c->callback([opts, b0, X, mode, target, jobs, fmt] {
            DensityMode m = *mode == "divides-zero" ? DensityMode::DividesZero : DensityMode::HitsTarget;
            std::optional<Rat> tgt;
            if (!target->empty()) tgt = rat_from_string(*target);
            DensityReport rep = orbit_density(opts->load(), rat_from_string(*b0), *X, m, tgt, *jobs);
            if (*fmt == "csv") {
                std::cout << "q,hit\n";
                std::size_t hi = 0;
                long scanned_emitted = 0;
                for (long q : primes_up_to(rep.X)) {
                    bool skipped = false;
                    for (const auto& s : rep.skipped)
                        if (s.q == q) skipped = true;
                    if (skipped) continue;
                    bool hit = hi < rep.hit_primes.size() && rep.hit_primes[hi] == q;
                    if (hit) ++hi;
                    std::cout << q << "," << (hit ? 1 : 0) << "\n";
                    ++scanned_emitted;
                }
                (void)scanned_emitted;
            } else {
                emit(density_to_json(rep));
            }
        });
    }
    {
        auto* c = dyn->add_subcommand("phi", "the contraction phi and its orbit from 1");
        auto d = std::make_shared<int>(0);
        auto x = std::make_shared<std::string>();
        auto orbit = std::make_shared<bool>(false);
        auto tol = std::make_shared<double>(1e-3);
        c->add_option("--d", *d)->required();
        c->add_option("--x", *x, "evaluate phi at a rational x");
        c->add_flag("--orbit", *orbit, "iterate phi from 1 until below --tolerance");
        c->add_option("--tolerance", *tol);
        c->callback([d, x, orbit, tol] {
            if (*orbit) {
                PhiOrbit po = phi_orbit(*d, *tol);
                json j;
                j["d"] = *d;
                j["tolerance"] = *tol;
                j["k"] = po.k;
                j["first"] = po.values.front();
                j["last"] = po.values.back();
                emit(j);
            } else if (!x->empty()) {
                Rat v = phi(*d, rat_from_string(*x));
                emit(json{{"d", *d}, {"x", *x}, {"phi", v.str()}});
            } else {
                throw argument_error("dynamics phi: give --x or --orbit");
            }
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const argument_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const resource_error& e) {
        std::cerr << "resource bound: " << e.what() << "\n";
        return 3;
    } catch (const consistency_error& e) {
        std::cerr << "consistency failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
