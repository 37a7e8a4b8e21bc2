/**
 * Functors, natural transformations, zig-zags of transformations and
 * homotopy-equivalence certificates between finite categories.
 */
#pragma once

#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "category.hpp"

namespace nervekit {

struct Functor {
    CategoryPtr source;
    CategoryPtr target;
    std::vector<Obj> on_objects;
    std::vector<Mor> on_morphisms;

    Obj operator()(Obj x) const { return on_objects[x]; }
    Mor map(Mor m) const { return on_morphisms[m]; }
};

inline bool same_category(const CategoryPtr& a, const CategoryPtr& b)
{
    return a == b || (a && b && *a == *b);
}

inline bool operator==(const Functor& f, const Functor& g)
{
    return same_category(f.source, g.source) && same_category(f.target, g.target) &&
           f.on_objects == g.on_objects && f.on_morphisms == g.on_morphisms;
}

/// Checks endpoints, identities and composition; throws on the first violation.
inline void check_functor(const Functor& f)
{
    const FiniteCategory& s = *f.source;
    const FiniteCategory& t = *f.target;
    if (f.on_objects.size() != s.num_objects() || f.on_morphisms.size() != s.num_morphisms())
        throw Error(Errc::EndpointMismatch, "functor tables have the wrong size");
    for (Obj x = 0; x < s.num_objects(); ++x)
        if (f.on_objects[x] >= t.num_objects())
            throw Error(Errc::EndpointMismatch, "object '" + s.object_name(x) + "' maps outside the target");
    for (Mor m = 0; m < s.num_morphisms(); ++m) {
        Mor fm = f.on_morphisms[m];
        if (fm >= t.num_morphisms() || t.src(fm) != f.on_objects[s.src(m)] || t.dst(fm) != f.on_objects[s.dst(m)])
            throw Error(Errc::EndpointMismatch, "morphism '" + s.morphism_name(m) + "' maps to a morphism with wrong endpoints");
    }
    for (Obj x = 0; x < s.num_objects(); ++x)
        if (f.on_morphisms[s.identity(x)] != t.identity(f.on_objects[x]))
            throw Error(Errc::NotPreservingIdentity, "identity of '" + s.object_name(x) + "'");
    for (Mor a = 0; a < s.num_morphisms(); ++a)
        for (Mor b : s.out(s.dst(a)))
            if (f.on_morphisms[s.compose(b, a)] != t.compose(f.on_morphisms[b], f.on_morphisms[a]))
                throw Error(Errc::NotPreservingComposition,
                            s.morphism_name(b) + " o " + s.morphism_name(a));
}

inline Functor validate_functor(CategoryPtr source, CategoryPtr target, std::vector<Obj> objects,
                                std::vector<Mor> morphisms)
{
    Functor f{std::move(source), std::move(target), std::move(objects), std::move(morphisms)};
    check_functor(f);
    return f;
}

/// Validates a functor given as identifier maps (as read from documents).
inline Functor validate_functor(CategoryPtr source, CategoryPtr target,
                                const std::map<std::string, std::string>& objects,
                                const std::map<std::string, std::string>& morphisms)
{
    std::vector<Obj> ob(source->num_objects(), npos);
    std::vector<Mor> mo(source->num_morphisms(), npos);
    for (const auto& [a, b] : objects)
        ob[source->object(a)] = target->object(b);
    for (const auto& [a, b] : morphisms)
        mo[source->morphism(a)] = target->morphism(b);
    for (Obj x = 0; x < ob.size(); ++x)
        if (ob[x] == npos)
            throw Error(Errc::EndpointMismatch, "object '" + source->object_name(x) + "' is not mapped");
    for (Mor m = 0; m < mo.size(); ++m)
        if (mo[m] == npos) {
            // identities may be left implicit
            if (source->is_identity(m))
                mo[m] = target->identity(ob[source->src(m)]);
            else
                throw Error(Errc::EndpointMismatch, "morphism '" + source->morphism_name(m) + "' is not mapped");
        }
    return validate_functor(std::move(source), std::move(target), std::move(ob), std::move(mo));
}

inline Functor identity_functor(const CategoryPtr& c)
{
    Functor f{c, c, {}, {}};
    for (Obj x = 0; x < c->num_objects(); ++x)
        f.on_objects.push_back(x);
    for (Mor m = 0; m < c->num_morphisms(); ++m)
        f.on_morphisms.push_back(m);
    return f;
}

/// g∘f
inline Functor compose(const Functor& g, const Functor& f)
{
    if (!same_category(f.target, g.source))
        throw Error(Errc::EndpointMismatch, "functors are not composable");
    Functor h{f.source, g.target, {}, {}};
    for (Obj x : f.on_objects)
        h.on_objects.push_back(g.on_objects[x]);
    for (Mor m : f.on_morphisms)
        h.on_morphisms.push_back(g.on_morphisms[m]);
    return h;
}

/// Constant functor at an object of the target.
inline Functor constant_functor(const CategoryPtr& source, const CategoryPtr& target, Obj value)
{
    Functor f{source, target, std::vector<Obj>(source->num_objects(), value),
              std::vector<Mor>(source->num_morphisms(), target->identity(value))};
    return f;
}

struct NaturalTransformation {
    Functor from;
    Functor to;
    std::vector<Mor> components;
};

/// Returns the first source morphism whose naturality square fails, if any.
inline std::optional<Mor> failing_square(const NaturalTransformation& t)
{
    const FiniteCategory& s = *t.from.source;
    const FiniteCategory& d = *t.from.target;
    for (Mor m = 0; m < s.num_morphisms(); ++m) {
        Mor a = t.components[s.src(m)];
        Mor b = t.components[s.dst(m)];
        if (d.compose(b, t.from.map(m)) != d.compose(t.to.map(m), a))
            return m;
    }
    return std::nullopt;
}

inline void check_nat_trans(const NaturalTransformation& t)
{
    if (!same_category(t.from.source, t.to.source) || !same_category(t.from.target, t.to.target))
        throw Error(Errc::EndpointMismatch, "functors of a transformation must share endpoints");
    const FiniteCategory& s = *t.from.source;
    const FiniteCategory& d = *t.from.target;
    if (t.components.size() != s.num_objects())
        throw Error(Errc::EndpointMismatch, "wrong number of components");
    for (Obj x = 0; x < s.num_objects(); ++x) {
        Mor c = t.components[x];
        if (c >= d.num_morphisms() || d.src(c) != t.from(x) || d.dst(c) != t.to(x))
            throw Error(Errc::EndpointMismatch, "component at '" + s.object_name(x) + "'");
    }
    if (auto m = failing_square(t))
        throw Error(Errc::NotFunctorial, "naturality square fails at '" + s.morphism_name(*m) + "'");
}

inline constexpr std::size_t kDefaultSearchBound = 1'000'000;

/// Search bound, overridable through NERVEKIT_SEARCH_BOUND.
inline std::size_t search_bound_from_env()
{
    if (const char* v = std::getenv("NERVEKIT_SEARCH_BOUND")) {
        char* end = nullptr;
        unsigned long long n = std::strtoull(v, &end, 10);
        if (end != v && *end == '\0' && n > 0)
            return static_cast<std::size_t>(n);
    }
    return kDefaultSearchBound;
}

/**
 * Exhaustive list of natural transformations F ⇒ G. The raw search space is
 * the product of the component hom-set sizes; exceeding `bound` throws
 * ExplosionGuard before any search is done.
 */
inline std::vector<NaturalTransformation> nat_trans_search(const Functor& f, const Functor& g,
                                                           std::size_t bound = kDefaultSearchBound)
{
    if (!same_category(f.source, g.source) || !same_category(f.target, g.target))
        throw Error(Errc::EndpointMismatch, "functors must share source and target");
    const FiniteCategory& s = *f.source;
    const FiniteCategory& d = *f.target;
    const std::size_t n = s.num_objects();
    std::vector<std::vector<Mor>> choices(n);
    double space = 1.0;
    for (Obj x = 0; x < n; ++x) {
        choices[x] = d.hom(f(x), g(x));
        space *= static_cast<double>(choices[x].size());
    }
    if (space > static_cast<double>(bound))
        throw Error(Errc::ExplosionGuard, "component search space " + std::to_string(space) +
                                              " exceeds bound " + std::to_string(bound));
    std::vector<NaturalTransformation> found;
    if (space == 0.0)
        return found;

    std::vector<Mor> comp(n, npos);
    auto consistent = [&](Obj upto) {
        // naturality squares whose endpoints are both assigned and one is `upto`
        for (Mor m : s.out(upto)) {
            Obj y = s.dst(m);
            if (y > upto)
                continue;
            if (d.compose(comp[y], f.map(m)) != d.compose(g.map(m), comp[upto]))
                return false;
        }
        for (Mor m : s.in(upto)) {
            Obj x = s.src(m);
            if (x >= upto)
                continue;
            if (d.compose(comp[upto], f.map(m)) != d.compose(g.map(m), comp[x]))
                return false;
        }
        return true;
    };
    std::function<void(Obj)> rec = [&](Obj x) {
        if (x == n) {
            found.push_back({f, g, comp});
            return;
        }
        for (Mor c : choices[x]) {
            comp[x] = c;
            if (consistent(x))
                rec(x + 1);
        }
        comp[x] = npos;
    };
    rec(0);
    return found;
}

/**
 * One leg of a zig-zag. A forward step goes current ⇒ next; a backward step is
 * a transformation next ⇒ current.
 */
struct ZigZagStep {
    NaturalTransformation transformation;
    bool forward = true;
};

using ZigZag = std::vector<ZigZagStep>;

/**
 * F: C → D with homotopy inverse G, together with zig-zags from F∘G to id_D
 * and from G∘F to id_C.
 */
struct HomotopyEquivalenceCertificate {
    Functor forward;
    Functor backward;
    ZigZag target_zigzag;
    ZigZag source_zigzag;
};

struct CertificateCheck {
    bool verified = false;
    std::string failure;
};

namespace detail {

inline std::string check_zigzag(const ZigZag& z, const Functor& start, const Functor& end, const char* which)
{
    Functor current = start;
    for (std::size_t k = 0; k < z.size(); ++k) {
        const auto& t = z[k].transformation;
        const Functor& here = z[k].forward ? t.from : t.to;
        const Functor& there = z[k].forward ? t.to : t.from;
        std::ostringstream where;
        where << which << " zig-zag step " << k;
        if (!(here == current))
            return where.str() + ": endpoint does not match the previous functor";
        try {
            check_nat_trans(t);
        } catch (const Error& e) {
            return where.str() + ": " + e.what();
        }
        current = there;
    }
    if (!(current == end))
        return std::string(which) + " zig-zag does not end at the identity functor";
    return {};
}

}  // namespace detail

/// Verified iff every transformation is natural and both zig-zags connect the declared endpoints.
inline CertificateCheck verify_certificate(const HomotopyEquivalenceCertificate& cert)
{
    try {
        check_functor(cert.forward);
        check_functor(cert.backward);
    } catch (const Error& e) {
        return {false, std::string("functor: ") + e.what()};
    }
    if (!same_category(cert.forward.source, cert.backward.target) ||
        !same_category(cert.forward.target, cert.backward.source))
        return {false, "functors are not mutually inverse in direction"};
    Functor fg = compose(cert.forward, cert.backward);
    Functor gf = compose(cert.backward, cert.forward);
    if (auto msg = detail::check_zigzag(cert.target_zigzag, fg, identity_functor(cert.forward.target), "target");
        !msg.empty())
        return {false, msg};
    if (auto msg = detail::check_zigzag(cert.source_zigzag, gf, identity_functor(cert.forward.source), "source");
        !msg.empty())
        return {false, msg};
    return {true, {}};
}

enum class CommaSide { over, under };

struct CommaCategory {
    CategoryPtr category;
    std::vector<Mor> legs;        // object -> its leg in the base
    std::vector<Mor> connecting;  // morphism -> the triangle's connecting arrow
    Functor projection;           // forgets the anchor leg
};

/**
 * (C ↓ anchor) for `over`, (anchor ↓ C) for `under`. Objects are legs
 * accepted by `leg_filter`; morphisms are commuting triangles whose
 * connecting arrow is accepted by `arrow_filter`. Both filters must accept
 * identities, and the arrow filter must be closed under composition on the
 * triangles it produces.
 */
template <class LegFilter, class ArrowFilter>
CommaCategory comma(const CategoryPtr& base, Obj anchor, CommaSide side, LegFilter&& leg_filter,
                    ArrowFilter&& arrow_filter)
{
    const FiniteCategory& c = *base;
    if (anchor >= c.num_objects())
        throw Error(Errc::AnchorNotFound, "anchor index out of range");
    const bool over = side == CommaSide::over;
    CommaCategory result;
    CategoryBuilder b;
    std::vector<Obj> object_of_leg(c.num_morphisms(), npos);
    for (Mor m = 0; m < c.num_morphisms(); ++m) {
        if ((over ? c.dst(m) : c.src(m)) != anchor || !leg_filter(m))
            continue;
        object_of_leg[m] = b.add_object(c.morphism_name(m));
        result.legs.push_back(m);
    }
    // over: h: src(f1) -> src(f2), f2∘h = f1.  under: h: dst(f1) -> dst(f2), h∘f1 = f2.
    std::map<std::tuple<Mor, Obj, Obj>, Mor> triangle;
    for (Obj o1 = 0; o1 < result.legs.size(); ++o1) {
        for (Obj o2 = 0; o2 < result.legs.size(); ++o2) {
            Mor f1 = result.legs[o1], f2 = result.legs[o2];
            Obj a = over ? c.src(f1) : c.dst(f1);
            Obj z = over ? c.src(f2) : c.dst(f2);
            for (Mor h : c.hom(a, z)) {
                bool commutes = over ? c.compose(f2, h) == f1 : c.compose(h, f1) == f2;
                if (!commutes)
                    continue;
                if (!c.is_identity(h) && !arrow_filter(h))
                    continue;
                Mor id = b.add_morphism("[" + c.morphism_name(h) + ":" + c.morphism_name(f1) + "=>" +
                                            c.morphism_name(f2) + "]",
                                        o1, o2);
                result.connecting.push_back(h);
                triangle[{h, o1, o2}] = id;
                if (o1 == o2 && c.is_identity(h))
                    b.set_identity(o1, id);
            }
        }
    }
    FiniteCategory cat = std::move(b).build(
        [&](Mor g, Mor f) -> Mor {
            Mor h = c.compose(result.connecting[g], result.connecting[f]);
            auto it = triangle.find({h, b.src(f), b.dst(g)});
            if (it == triangle.end())
                throw Error(Errc::FilterNotClosed, "composite connecting arrow '" + c.morphism_name(h) +
                                                       "' is rejected by the filter");
            return it->second;
        },
        LawCheck::skip);
    result.category = share(std::move(cat));
    result.projection.source = result.category;
    result.projection.target = base;
    for (Mor leg : result.legs)
        result.projection.on_objects.push_back(over ? c.src(leg) : c.dst(leg));
    result.projection.on_morphisms = result.connecting;
    return result;
}

template <class Filter>
CommaCategory comma(const CategoryPtr& base, Obj anchor, CommaSide side, Filter&& filter)
{
    return comma(base, anchor, side, filter, filter);
}

inline CommaCategory comma(const CategoryPtr& base, Obj anchor, CommaSide side)
{
    auto all = [](Mor) { return true; };
    return comma(base, anchor, side, all, all);
}

/**
 * Backtracking search for an isomorphism of categories. Objects are matched
 * first under hom-set-size constraints, then morphisms hom-set by hom-set
 * under the composition constraint. Gives up (returns nullopt and sets
 * `exhausted=false`) after `node_bound` search nodes.
 */
struct IsoSearchResult {
    std::optional<Functor> iso;
    bool exhausted = true;
};

inline IsoSearchResult find_isomorphism(const CategoryPtr& cp, const CategoryPtr& dp,
                                        std::size_t node_bound = 2'000'000)
{
    const FiniteCategory& c = *cp;
    const FiniteCategory& d = *dp;
    IsoSearchResult result;
    const std::size_t n = c.num_objects();
    if (n != d.num_objects() || c.num_morphisms() != d.num_morphisms())
        return result;
    auto hom_count = [](const FiniteCategory& k) {
        std::vector<std::map<Obj, std::size_t>> counts(k.num_objects());
        for (Mor m = 0; m < k.num_morphisms(); ++m)
            ++counts[k.src(m)][k.dst(m)];
        return counts;
    };
    auto hc = hom_count(c), hd = hom_count(d);
    auto count = [](const std::vector<std::map<Obj, std::size_t>>& h, Obj a, Obj b) -> std::size_t {
        auto it = h[a].find(b);
        return it == h[a].end() ? 0 : it->second;
    };
    auto signature = [](const FiniteCategory& k, Obj x) {
        return std::make_tuple(k.out(x).size(), k.in(x).size(), k.hom(x, x).size());
    };
    std::vector<Obj> obj_map(n, npos);
    std::vector<char> used(n, 0);
    std::size_t nodes = 0;
    std::vector<Mor> mor_map(c.num_morphisms(), npos);
    std::vector<char> mor_used(d.num_morphisms(), 0);

    auto image = [&](Mor m) -> Mor {
        if (c.is_identity(m))
            return d.identity(obj_map[c.src(m)]);
        return mor_map[m];
    };
    auto locally_consistent = [&](Mor m) {
        for (Mor f : c.in(c.src(m))) {
            Mor a = image(f), ab = image(c.compose(m, f));
            if (a != npos && ab != npos && d.compose(mor_map[m], a) != ab)
                return false;
        }
        for (Mor g : c.out(c.dst(m))) {
            Mor a = image(g), ab = image(c.compose(g, m));
            if (a != npos && ab != npos && d.compose(a, mor_map[m]) != ab)
                return false;
        }
        return true;
    };

    std::function<bool(Mor)> assign_morphisms = [&](Mor m) -> bool {
        if (++nodes > node_bound) {
            result.exhausted = false;
            return false;
        }
        if (m == c.num_morphisms()) {
            for (Mor f = 0; f < c.num_morphisms(); ++f)
                for (Mor g : c.out(c.dst(f)))
                    if (image(c.compose(g, f)) != d.compose(image(g), image(f)))
                        return false;
            for (Mor f = 0; f < c.num_morphisms(); ++f)
                mor_map[f] = image(f);
            return true;
        }
        if (c.is_identity(m))
            return assign_morphisms(m + 1);
        for (Mor cand : d.hom(obj_map[c.src(m)], obj_map[c.dst(m)])) {
            if (mor_used[cand] || d.is_identity(cand))
                continue;
            mor_map[m] = cand;
            if (!locally_consistent(m))
                continue;
            mor_used[cand] = 1;
            if (assign_morphisms(m + 1))
                return true;
            mor_used[cand] = 0;
            if (!result.exhausted)
                break;
        }
        mor_map[m] = npos;
        return false;
    };

    std::function<bool(Obj)> assign_objects = [&](Obj x) -> bool {
        if (++nodes > node_bound) {
            result.exhausted = false;
            return false;
        }
        if (x == n) {
            std::fill(mor_used.begin(), mor_used.end(), 0);
            return assign_morphisms(0);
        }
        for (Obj y = 0; y < n; ++y) {
            if (used[y] || signature(c, x) != signature(d, y))
                continue;
            bool ok = true;
            for (Obj z = 0; z < x && ok; ++z)
                ok = count(hc, x, z) == count(hd, y, obj_map[z]) && count(hc, z, x) == count(hd, obj_map[z], y);
            if (!ok)
                continue;
            obj_map[x] = y;
            used[y] = 1;
            if (assign_objects(x + 1))
                return true;
            used[y] = 0;
            if (!result.exhausted)
                return false;
        }
        obj_map[x] = npos;
        return false;
    };

    if (assign_objects(0))
        result.iso = Functor{cp, dp, obj_map, mor_map};
    return result;
}

}  // namespace nervekit
