/**
 * Named built-in instances and seeded random generators for categories,
 * posets, lattices and model data.
 */
#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "model_data.hpp"
#include "simplicial.hpp"

namespace nervekit {

/// Z/n as a one-object category with generator "g".
inline FiniteCategory cyclic_monoid(int n)
{
    CategoryBuilder b;
    b.add_object("*");
    for (int k = 0; k < n; ++k)
        b.add_morphism(k == 0 ? "id_*" : k == 1 ? "g" : "g^" + std::to_string(k), 0, 0);
    b.set_identity(0, 0);
    return std::move(b).build([&](Mor g, Mor f) { return static_cast<Mor>((g + f) % n); });
}

/// One object with an idempotent e = e∘e. Its nerve has nondegenerate simplices in every degree.
inline FiniteCategory idempotent_monoid()
{
    CategoryBuilder b;
    b.add_object("*");
    b.set_identity(0, b.add_morphism("id_*", 0, 0));
    b.add_morphism("e", 0, 0);
    return std::move(b).build([](Mor g, Mor f) { return g == 0 ? f : f == 0 ? g : Mor{1}; });
}

inline const std::vector<std::string>& builtin_category_names()
{
    static const std::vector<std::string> names = {"point", "[1]",        "[2]",       "parallel-pair",
                                                   "diamond", "discrete-2", "Z/2",       "idempotent",
                                                   "cospan", "span"};
    return names;
}

inline FiniteCategory builtin_category(const std::string& name)
{
    if (name == "point")
        return terminal_category();
    if (name == "[1]")
        return chain_category(1);
    if (name == "[2]")
        return chain_category(2);
    if (name == "parallel-pair")
        return parallel_pair();
    if (name == "diamond")
        return diamond_poset();
    if (name == "discrete-2")
        return discrete_category({"a", "b"});
    if (name == "Z/2")
        return cyclic_monoid(2);
    if (name == "idempotent")
        return idempotent_monoid();
    if (name == "cospan")
        return make_poset({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}});
    if (name == "span")
        return make_poset({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}});
    throw Error(Errc::NotFound, "no built-in category '" + name + "'");
}

namespace detail {

inline std::vector<Mor> all_morphisms(const FiniteCategory& c)
{
    std::vector<Mor> out(c.num_morphisms());
    for (Mor m = 0; m < out.size(); ++m)
        out[m] = m;
    return out;
}

inline std::vector<Mor> where(const FiniteCategory& c, bool (*keep)(const FiniteCategory&, Mor))
{
    std::vector<Mor> out;
    for (Mor m = 0; m < c.num_morphisms(); ++m)
        if (keep(c, m))
            out.push_back(m);
    return out;
}

inline bool is_id(const FiniteCategory& c, Mor m) { return c.is_identity(m); }

}  // namespace detail

struct ModelInstance {
    std::string name;
    ModelData model;
    bool strict = false;
    std::string x, y;  // suggested endpoints
};

inline const std::vector<std::string>& builtin_model_names()
{
    static const std::vector<std::string> names = {"diamond", "diamond-trivial-w", "diamond-iso-fib",
                                                   "diamond-not-fibrant", "[1]-iso-fib", "[2]-trivial-w", "point"};
    return names;
}

/**
 * "diamond": W = Fib = Cof = all on b < x, y < t (not strict).
 * "diamond-trivial-w": W = identities, Fib = Cof = all (strict).
 * "diamond-iso-fib": W = Cof = all, Fib = identities (strict).
 * "diamond-not-fibrant": W = Cof = all, Fib = identities, y->t, b->t.
 * "[1]-iso-fib": W = Cof = all, Fib = identities (strict).
 */
inline ModelInstance builtin_model(const std::string& name)
{
    using namespace detail;
    auto inst = [&](CategoryPtr c, std::vector<Mor> w, std::vector<Mor> fib, std::vector<Mor> cof, bool strict,
                    std::string x, std::string y) {
        return ModelInstance{name, validate_model_data(c, w, fib, cof, strict), strict, std::move(x), std::move(y)};
    };
    if (name == "diamond") {
        auto c = share(diamond_poset());
        return inst(c, all_morphisms(*c), all_morphisms(*c), all_morphisms(*c), false, "x", "y");
    }
    if (name == "diamond-trivial-w") {
        auto c = share(diamond_poset());
        return inst(c, where(*c, is_id), all_morphisms(*c), all_morphisms(*c), true, "x", "t");
    }
    if (name == "diamond-iso-fib") {
        auto c = share(diamond_poset());
        return inst(c, all_morphisms(*c), where(*c, is_id), all_morphisms(*c), true, "x", "t");
    }
    if (name == "diamond-not-fibrant") {
        auto c = share(diamond_poset());
        auto fib = where(*c, is_id);
        fib.push_back(c->morphism("y->t"));
        fib.push_back(c->morphism("b->t"));
        return inst(c, all_morphisms(*c), fib, all_morphisms(*c), false, "y", "x");
    }
    if (name == "[1]-iso-fib") {
        auto c = share(chain_category(1));
        return inst(c, all_morphisms(*c), where(*c, is_id), all_morphisms(*c), true, "0", "1");
    }
    if (name == "[2]-trivial-w") {
        auto c = share(chain_category(2));
        return inst(c, where(*c, is_id), all_morphisms(*c), all_morphisms(*c), true, "0", "2");
    }
    if (name == "point") {
        auto c = share(terminal_category());
        return inst(c, all_morphisms(*c), all_morphisms(*c), all_morphisms(*c), true, "*", "*");
    }
    throw Error(Errc::NotFound, "no built-in model data '" + name + "'");
}

/// Poset on p0..p{n-1}; each pair i < j is related with probability `density`.
inline FiniteCategory random_poset(std::mt19937& rng, int max_objects, double density = 0.4)
{
    std::uniform_int_distribution<int> size(1, max_objects);
    std::bernoulli_distribution edge(density);
    const int n = size(rng);
    std::vector<std::string> elems;
    std::vector<std::pair<std::string, std::string>> rel;
    for (int i = 0; i < n; ++i)
        elems.push_back("p" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (edge(rng))
                rel.emplace_back(elems[i], elems[j]);
    return make_poset(elems, rel);
}

/**
 * Free category on a random acyclic quiver: objects o0..o{n-1}, edges only
 * from lower to higher index, morphisms are paths. Resampled until the
 * morphism count is at most `max_morphisms`.
 */
inline FiniteCategory random_free_category(std::mt19937& rng, int max_objects, std::size_t max_morphisms)
{
    std::uniform_int_distribution<int> size(1, max_objects);
    std::discrete_distribution<int> mult({0.5, 0.35, 0.15});
    while (true) {
        const int n = size(rng);
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int k = mult(rng); k > 0; --k)
                    edges.emplace_back(i, j);
        // identities are {-1-x}; other paths list edges in composition order
        std::vector<std::vector<int>> paths;
        for (int i = 0; i < n; ++i)
            paths.push_back({-1 - i});
        std::vector<std::vector<int>> layer;
        for (std::size_t e = 0; e < edges.size(); ++e)
            layer.push_back({static_cast<int>(e)});
        while (!layer.empty() && paths.size() <= max_morphisms) {
            std::vector<std::vector<int>> next;
            for (const auto& p : layer)
                for (std::size_t e = 0; e < edges.size(); ++e)
                    if (edges[e].first == edges[p.back()].second) {
                        next.push_back(p);
                        next.back().push_back(static_cast<int>(e));
                    }
            paths.insert(paths.end(), layer.begin(), layer.end());
            layer = std::move(next);
        }
        if (paths.size() > max_morphisms)
            continue;
        std::map<std::vector<int>, Mor> index;
        CategoryBuilder b;
        for (int i = 0; i < n; ++i)
            b.add_object("o" + std::to_string(i));
        for (const auto& p : paths) {
            Mor m;
            if (p[0] < 0) {
                Obj x = static_cast<Obj>(-1 - p[0]);
                m = b.add_morphism("id_o" + std::to_string(x), x, x);
                b.set_identity(x, m);
            } else {
                std::string name;
                for (auto it = p.rbegin(); it != p.rend(); ++it)
                    name += (name.empty() ? "e" : ".e") + std::to_string(*it);
                m = b.add_morphism(name, static_cast<Obj>(edges[p.front()].first),
                                   static_cast<Obj>(edges[p.back()].second));
            }
            index[p] = m;
        }
        std::vector<std::vector<int>> path_of(paths.size());
        for (const auto& [p, m] : index)
            path_of[m] = p;
        return std::move(b).build([&](Mor g, Mor f) {
            const auto& pf = path_of[f];
            const auto& pg = path_of[g];
            if (pf[0] < 0)
                return g;
            if (pg[0] < 0)
                return f;
            auto q = pf;
            q.insert(q.end(), pg.begin(), pg.end());
            return index.at(q);
        });
    }
}

/// A random category: a poset or a free path category.
inline FiniteCategory random_category(std::mt19937& rng, int max_objects, std::size_t max_morphisms)
{
    if (std::bernoulli_distribution(0.5)(rng))
        return random_free_category(rng, max_objects, max_morphisms);
    while (true) {
        auto c = random_poset(rng, max_objects, 0.5);
        if (c.num_morphisms() <= max_morphisms)
            return c;
    }
}

/// Random bounded lattice: bottom l0, top l{n-1}, random order in between.
inline FiniteCategory random_lattice(std::mt19937& rng, int max_objects)
{
    std::uniform_int_distribution<int> size(2, max_objects);
    std::bernoulli_distribution edge(0.4);
    while (true) {
        const int n = size(rng);
        std::vector<std::string> elems;
        std::vector<std::pair<std::string, std::string>> rel;
        for (int i = 0; i < n; ++i)
            elems.push_back("l" + std::to_string(i));
        for (int i = 1; i + 1 < n; ++i) {
            rel.emplace_back(elems[0], elems[i]);
            rel.emplace_back(elems[i], elems[n - 1]);
            for (int j = i + 1; j + 1 < n; ++j)
                if (edge(rng))
                    rel.emplace_back(elems[i], elems[j]);
        }
        if (n == 2)
            rel.emplace_back(elems[0], elems[1]);
        auto c = make_poset(elems, rel);
        auto leq = [&](Obj a, Obj b) { return !c.hom(a, b).empty(); };
        bool lattice = true;
        for (Obj a = 0; a < c.num_objects() && lattice; ++a)
            for (Obj b = a + 1; b < c.num_objects() && lattice; ++b) {
                std::vector<Obj> upper;
                for (Obj u = 0; u < c.num_objects(); ++u)
                    if (leq(a, u) && leq(b, u))
                        upper.push_back(u);
                bool least = false;
                for (Obj u : upper) {
                    bool below_all = true;
                    for (Obj v : upper)
                        below_all = below_all && leq(u, v);
                    least = least || below_all;
                }
                lattice = least;
            }
        if (lattice)
            return c;
    }
}

namespace detail {

inline void close_two_of_three(const FiniteCategory& c, std::vector<char>& w)
{
    for (bool changed = true; changed;) {
        changed = false;
        for (Mor f = 0; f < c.num_morphisms(); ++f)
            for (Mor g : c.out(c.dst(f))) {
                Mor gf = c.compose(g, f);
                if (w[f] + w[g] + w[gf] == 2) {
                    w[f] = w[g] = w[gf] = 1;
                    changed = true;
                }
            }
    }
}

inline void close_composition(const FiniteCategory& c, std::vector<char>& cls)
{
    for (bool changed = true; changed;) {
        changed = false;
        for (Mor f = 0; f < c.num_morphisms(); ++f)
            for (Mor g : c.out(c.dst(f)))
                if (cls[f] && cls[g] && !cls[c.compose(g, f)]) {
                    cls[c.compose(g, f)] = 1;
                    changed = true;
                }
    }
}

}  // namespace detail

/**
 * One attempt at strict model data on `c`: W is a random two-out-of-three
 * closure, Cof a random composition-closed class, Fib the maps with the
 * right lifting property against W∩Cof. Returns nullopt when the strict
 * audit rejects the result.
 */
inline std::optional<ModelData> try_random_model(const CategoryPtr& c, std::mt19937& rng)
{
    const FiniteCategory& cat = *c;
    std::bernoulli_distribution coin(0.4);
    std::vector<char> w(cat.num_morphisms(), 0), cof(cat.num_morphisms(), 0), fib(cat.num_morphisms(), 0);
    for (Mor m = 0; m < cat.num_morphisms(); ++m) {
        w[m] = cat.is_identity(m) || coin(rng);
        cof[m] = cat.is_identity(m) || coin(rng);
    }
    detail::close_two_of_three(cat, w);
    detail::close_composition(cat, cof);
    for (Mor p = 0; p < cat.num_morphisms(); ++p) {
        bool ok = true;
        for (Mor i = 0; i < cat.num_morphisms() && ok; ++i) {
            if (!w[i] || !cof[i])
                continue;
            for (Mor a : cat.hom(cat.src(i), cat.src(p)))
                for (Mor b : cat.hom(cat.dst(i), cat.dst(p)))
                    if (ok && cat.compose(p, a) == cat.compose(b, i) && lifts(cat, i, p, a, b).empty())
                        ok = false;
        }
        fib[p] = ok;
    }
    try {
        return validate_model_data(c, marked(w), marked(fib), marked(cof), true);
    } catch (const Error&) {
        return std::nullopt;
    }
}

/// Strict model data on a random lattice with at most `max_objects` objects.
inline ModelData random_strict_model(std::mt19937& rng, int max_objects)
{
    while (true) {
        auto c = share(random_lattice(rng, max_objects));
        for (int attempt = 0; attempt < 50; ++attempt)
            if (auto m = try_random_model(c, rng))
                return *m;
    }
}

}  // namespace nervekit
