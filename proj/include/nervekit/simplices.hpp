/**
 * Category of simplices of a truncated simplicial set, and the category of
 * elements of a set-valued functor.
 */
#pragma once

#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "functor.hpp"
#include "simplicial.hpp"

namespace nervekit {

enum class SimplexMode { nondegenerate, full };

struct SimplexCategory {
    CategoryPtr category;
    std::vector<std::pair<int, Index>> simplices;  // object -> (dimension, simplex)
    std::vector<std::vector<int>> operators;       // morphism -> θ as a value list
    bool not_regular = false;                      // a nondegenerate simplex has a degenerate face
};

namespace detail {

inline void monotone_maps(int n, int m, bool injective, std::vector<std::vector<int>>& out)
{
    std::vector<int> theta;
    std::function<void(int)> rec = [&](int lo) {
        if (static_cast<int>(theta.size()) == n + 1) {
            out.push_back(theta);
            return;
        }
        for (int v = lo; v <= m; ++v) {
            theta.push_back(v);
            rec(injective ? v + 1 : v);
            theta.pop_back();
        }
    };
    rec(0);
}

inline std::string theta_name(const std::vector<int>& theta)
{
    std::string s = "[";
    for (std::size_t k = 0; k < theta.size(); ++k)
        s += (k ? "," : "") + std::to_string(theta[k]);
    return s + "]";
}

}  // namespace detail

/**
 * ΔK. In nondegenerate mode objects are the nondegenerate simplices and
 * morphisms are the coface operators between them; in full mode every
 * simplex up to the cap is an object and every monotone operator is a
 * morphism.
 */
inline SimplexCategory category_of_simplices(const SimplicialSet& k, SimplexMode mode = SimplexMode::nondegenerate)
{
    SimplexCategory out;
    const bool nd = mode == SimplexMode::nondegenerate;
    CategoryBuilder b;
    std::map<std::pair<int, Index>, Obj> object_of;
    for (int n = 0; n <= k.cap(); ++n)
        for (Index s = 0; s < k.size(n); ++s) {
            if (nd && k.is_degenerate(n, s))
                continue;
            object_of[{n, s}] = b.add_object(std::to_string(n) + ":" + k.label(n, s));
            out.simplices.emplace_back(n, s);
            for (int i = 0; nd && n > 0 && i <= n; ++i)
                if (k.is_degenerate(n - 1, k.face(n, i, s)))
                    out.not_regular = true;
        }
    std::map<std::tuple<std::vector<int>, Obj, Obj>, Mor> index;
    for (Obj target = 0; target < out.simplices.size(); ++target) {
        auto [m, s] = out.simplices[target];
        for (int n = 0; n <= (nd ? m : k.cap()); ++n) {
            std::vector<std::vector<int>> thetas;
            detail::monotone_maps(n, m, nd, thetas);
            for (auto& theta : thetas) {
                auto it = object_of.find({n, apply_operator(k, theta, m, s)});
                if (it == object_of.end())
                    continue;
                Obj source = it->second;
                Mor id = b.add_morphism(detail::theta_name(theta) + ":" + b.object_name(source) + "->" +
                                            b.object_name(target),
                                        source, target);
                if (source == target && n == m) {
                    bool identity = true;
                    for (int v = 0; v <= n; ++v)
                        identity = identity && theta[v] == v;
                    if (identity)
                        b.set_identity(source, id);
                }
                index[{theta, source, target}] = id;
                out.operators.push_back(std::move(theta));
            }
        }
    }
    FiniteCategory cat = std::move(b).build(
        [&](Mor g, Mor f) -> Mor {
            // f: θ: [n] -> [m], g: φ: [m] -> [l]; the composite is φ∘θ
            std::vector<int> theta;
            for (int v : out.operators[f])
                theta.push_back(out.operators[g][v]);
            auto it = index.find({theta, b.src(f), b.dst(g)});
            return it == index.end() ? npos : it->second;
        },
        LawCheck::skip);
    out.category = share(std::move(cat));
    return out;
}

/**
 * A functor from a finite category to finite sets: object c goes to
 * {0, ..., sizes[c]-1} and morphism m acts by the table action[m].
 */
struct SetFunctor {
    CategoryPtr base;
    std::vector<std::size_t> sizes;
    std::vector<std::vector<std::size_t>> action;
    std::vector<std::vector<std::string>> element_names;  // optional, per object

    std::string element_name(Obj c, std::size_t x) const
    {
        if (c < element_names.size() && x < element_names[c].size())
            return element_names[c][x];
        return std::to_string(x);
    }
};

/// Throws NotFunctorial naming the failing identity or composite.
inline void check_set_functor(const SetFunctor& f)
{
    const FiniteCategory& c = *f.base;
    if (f.sizes.size() != c.num_objects() || f.action.size() != c.num_morphisms())
        throw Error(Errc::NotFunctorial, "set functor tables have the wrong size");
    for (Mor m = 0; m < c.num_morphisms(); ++m) {
        if (f.action[m].size() != f.sizes[c.src(m)])
            throw Error(Errc::NotFunctorial, "action of '" + c.morphism_name(m) + "' has the wrong domain");
        for (std::size_t y : f.action[m])
            if (y >= f.sizes[c.dst(m)])
                throw Error(Errc::NotFunctorial, "action of '" + c.morphism_name(m) + "' leaves its codomain");
    }
    for (Obj x = 0; x < c.num_objects(); ++x)
        for (std::size_t e = 0; e < f.sizes[x]; ++e)
            if (f.action[c.identity(x)][e] != e)
                throw Error(Errc::NotFunctorial, "identity of '" + c.object_name(x) + "' moves an element");
    for (Mor a = 0; a < c.num_morphisms(); ++a)
        for (Mor g : c.out(c.dst(a)))
            for (std::size_t e = 0; e < f.sizes[c.src(a)]; ++e)
                if (f.action[c.compose(g, a)][e] != f.action[g][f.action[a][e]])
                    throw Error(Errc::NotFunctorial,
                                "composite " + c.morphism_name(g) + " o " + c.morphism_name(a));
}

struct ElementsCategory {
    CategoryPtr category;
    std::vector<std::pair<Obj, std::size_t>> elements;  // object -> (c, x)
    Functor projection;
};

/// Objects (c, x ∈ F(c)); morphisms (c,x) -> (c',x') are m: c -> c' with F(m)(x) = x'.
inline ElementsCategory category_of_elements(const SetFunctor& f)
{
    check_set_functor(f);
    const FiniteCategory& c = *f.base;
    ElementsCategory out;
    CategoryBuilder b;
    std::vector<std::vector<Obj>> object_of(c.num_objects());
    for (Obj x = 0; x < c.num_objects(); ++x)
        for (std::size_t e = 0; e < f.sizes[x]; ++e) {
            object_of[x].push_back(b.add_object("(" + c.object_name(x) + "," + f.element_name(x, e) + ")"));
            out.elements.emplace_back(x, e);
        }
    std::vector<Mor> base_of;
    std::map<std::pair<Mor, Obj>, Mor> index;  // (base morphism, source object) -> morphism
    for (Obj o = 0; o < out.elements.size(); ++o) {
        auto [x, e] = out.elements[o];
        for (Mor m : c.out(x)) {
            Obj target = object_of[c.dst(m)][f.action[m][e]];
            Mor id = b.add_morphism("(" + c.morphism_name(m) + "," + f.element_name(x, e) + ")", o, target);
            if (c.is_identity(m))
                b.set_identity(o, id);
            index[{m, o}] = id;
            base_of.push_back(m);
        }
    }
    FiniteCategory cat = std::move(b).build(
        [&](Mor g, Mor h) -> Mor { return index.at({c.compose(base_of[g], base_of[h]), b.src(h)}); }, LawCheck::skip);
    out.category = share(std::move(cat));
    out.projection = Functor{out.category, f.base, {}, base_of};
    for (const auto& [x, e] : out.elements)
        out.projection.on_objects.push_back(x);
    return out;
}

}  // namespace nervekit
