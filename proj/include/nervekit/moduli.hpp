/**
 * Zig-zag moduli categories over finite model data, their inclusions, the
 * category-of-elements comparison for the twisted variant, and the moduli
 * double category.
 */
#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "double_category.hpp"
#include "homology.hpp"
#include "model_data.hpp"
#include "nerve.hpp"
#include "simplices.hpp"

namespace nervekit {

enum class Variant { hom, hom_f, hom_tw, restricted, restricted_tw, wfib_inv };

inline const char* to_string(Variant v)
{
    switch (v) {
    case Variant::hom: return "hom";
    case Variant::hom_f: return "hom-f";
    case Variant::hom_tw: return "hom-tw";
    case Variant::restricted: return "restricted";
    case Variant::restricted_tw: return "restricted-tw";
    case Variant::wfib_inv: return "wfib-inv";
    }
    return "?";
}

inline Variant parse_variant(const std::string& s)
{
    for (Variant v : {Variant::hom, Variant::hom_f, Variant::hom_tw, Variant::restricted, Variant::restricted_tw,
                      Variant::wfib_inv})
        if (s == to_string(v))
            return v;
    throw Error(Errc::UnknownVariant, "'" + s + "'");
}

inline bool three_term(Variant v) { return v == Variant::hom_f || v == Variant::wfib_inv; }
inline bool twisted(Variant v) { return v == Variant::hom_tw || v == Variant::restricted_tw; }

/// X <-u- U -f-> V <-w- Y. Three-term objects have V = Y and w = npos.
struct ZigZagObject {
    Obj U = npos;
    Obj V = npos;
    Mor u = npos;
    Mor f = npos;
    Mor w = npos;

    friend bool operator==(const ZigZagObject&, const ZigZagObject&) = default;
};

struct ModuliCategory {
    ModelData model;
    Obj X = npos;
    Obj Y = npos;
    Variant variant = Variant::hom;
    CategoryPtr category;
    std::vector<ZigZagObject> objects;
    /// (U-component, V-component); the V-component is npos for three-term variants
    /// and goes V' -> V for twisted ones.
    std::vector<std::pair<Mor, Mor>> components;

    std::optional<Obj> find(Mor u, Mor f, Mor w) const
    {
        auto it = object_index.find({u, f, w});
        if (it == object_index.end())
            return std::nullopt;
        return it->second;
    }
    std::optional<Mor> find_morphism(Obj a, Obj b, Mor h, Mor k) const
    {
        auto it = morphism_index.find({a, b, h, k});
        if (it == morphism_index.end())
            return std::nullopt;
        return it->second;
    }

    std::map<std::tuple<Mor, Mor, Mor>, Obj> object_index;
    std::map<std::tuple<Obj, Obj, Mor, Mor>, Mor> morphism_index;
};

using ModuliPtr = std::shared_ptr<const ModuliCategory>;

inline std::string zigzag_name(const FiniteCategory& c, const ZigZagObject& z)
{
    std::string s = "[" + c.morphism_name(z.u) + "|" + c.morphism_name(z.f);
    if (z.w != npos)
        s += "|" + c.morphism_name(z.w);
    return s + "]";
}

inline ModuliCategory build_moduli(const ModelData& m, Obj x, Obj y, Variant variant)
{
    const FiniteCategory& c = m.category();
    if (x >= c.num_objects() || y >= c.num_objects())
        throw Error(Errc::ObjectNotFound, "endpoint index out of range");
    ModuliCategory mc;
    mc.model = m;
    mc.X = x;
    mc.Y = y;
    mc.variant = variant;
    const bool three = three_term(variant);
    const bool tw = twisted(variant);
    const bool restricted_legs =
        variant == Variant::restricted || variant == Variant::restricted_tw || variant == Variant::wfib_inv;

    CategoryBuilder b;
    for (Mor u : c.in(x)) {
        if (restricted_legs ? !m.is_wfib(u) : !m.is_w(u))
            continue;
        Obj U = c.src(u);
        for (Mor f : c.out(U)) {
            if (three) {
                if (c.dst(f) != y)
                    continue;
                ZigZagObject z{U, y, u, f, npos};
                mc.object_index[{u, f, npos}] = b.add_object(zigzag_name(c, z));
                mc.objects.push_back(z);
                continue;
            }
            Obj V = c.dst(f);
            for (Mor w : c.hom(y, V)) {
                if (variant == Variant::restricted || variant == Variant::restricted_tw ? !m.is_wcof(w) : !m.is_w(w))
                    continue;
                ZigZagObject z{U, V, u, f, w};
                mc.object_index[{u, f, w}] = b.add_object(zigzag_name(c, z));
                mc.objects.push_back(z);
            }
        }
    }

    for (Obj ia = 0; ia < mc.objects.size(); ++ia) {
        const auto& A = mc.objects[ia];
        for (Obj ib = 0; ib < mc.objects.size(); ++ib) {
            const auto& B = mc.objects[ib];
            for (Mor h : c.hom(A.U, B.U)) {
                if (!m.is_w(h) || c.compose(B.u, h) != A.u)
                    continue;
                std::vector<Mor> seconds;
                if (three) {
                    if (c.compose(B.f, h) == A.f)
                        seconds.push_back(npos);
                } else if (!tw) {
                    for (Mor k : c.hom(A.V, B.V))
                        if (m.is_w(k) && c.compose(k, A.f) == c.compose(B.f, h) && c.compose(k, A.w) == B.w)
                            seconds.push_back(k);
                } else {
                    for (Mor g : c.hom(B.V, A.V))
                        if (m.is_w(g) && A.f == c.compose(g, c.compose(B.f, h)) && c.compose(g, B.w) == A.w)
                            seconds.push_back(g);
                }
                for (Mor k : seconds) {
                    std::string name = "<" + c.morphism_name(h) + (k == npos ? "" : "," + c.morphism_name(k)) + ">:" +
                                       b.object_name(ia) + "=>" + b.object_name(ib);
                    Mor id = b.add_morphism(std::move(name), ia, ib);
                    if (ia == ib && h == c.identity(A.U) && (k == npos || k == c.identity(A.V)))
                        b.set_identity(ia, id);
                    mc.components.emplace_back(h, k);
                    mc.morphism_index[{ia, ib, h, k}] = id;
                }
            }
        }
    }
    FiniteCategory cat = std::move(b).build(
        [&](Mor g2, Mor g1) -> Mor {
            auto [h1, k1] = mc.components[g1];
            auto [h2, k2] = mc.components[g2];
            Mor k = npos;
            if (!three)
                k = tw ? c.compose(k1, k2) : c.compose(k2, k1);
            auto r = mc.find_morphism(b.src(g1), b.dst(g2), c.compose(h2, h1), k);
            return r ? *r : npos;
        },
        LawCheck::skip);
    mc.category = share(std::move(cat));
    return mc;
}

inline ModuliCategory build_moduli(const ModelData& m, const std::string& x, const std::string& y, Variant v)
{
    return build_moduli(m, m.category().object(x), m.category().object(y), v);
}

/**
 * The evident inclusion between two variants over the same data: a three-term
 * object goes to its four-term form with V = Y and w = id_Y, and a morphism h
 * goes to (h, id_Y).
 */
inline Functor moduli_inclusion(const ModuliCategory& from, const ModuliCategory& to)
{
    const FiniteCategory& c = from.model.category();
    if (from.X != to.X || from.Y != to.Y || from.model.base != to.model.base)
        throw Error(Errc::InvalidArgument, "moduli categories over different data");
    if (three_term(to.variant) && !three_term(from.variant))
        throw Error(Errc::InvalidArgument, "no inclusion from four-term into three-term objects");
    if (!three_term(from.variant) && twisted(from.variant) != twisted(to.variant))
        throw Error(Errc::InvalidArgument, "no inclusion between twisted and untwisted variants");
    const bool widen = three_term(from.variant) && !three_term(to.variant);
    const Mor idy = c.identity(from.Y);
    Functor f{from.category, to.category, {}, {}};
    for (const auto& z : from.objects) {
        auto o = to.find(z.u, z.f, widen ? idy : z.w);
        if (!o)
            throw Error(Errc::NotFound, "object " + zigzag_name(c, z) + " has no image in " + to_string(to.variant));
        f.on_objects.push_back(*o);
    }
    for (Mor mm = 0; mm < from.components.size(); ++mm) {
        auto [h, k] = from.components[mm];
        auto r = to.find_morphism(f.on_objects[from.category->src(mm)], f.on_objects[from.category->dst(mm)], h,
                                  widen ? idy : k);
        if (!r)
            throw Error(Errc::NotFound, "morphism '" + from.category->morphism_name(mm) + "' has no image");
        f.on_morphisms.push_back(*r);
    }
    check_functor(f);
    return f;
}

/// Injective on objects and bijective on every hom-set.
inline bool is_full_embedding(const Functor& f)
{
    const FiniteCategory& s = *f.source;
    const FiniteCategory& t = *f.target;
    std::vector<char> seen(t.num_objects(), 0);
    for (Obj x = 0; x < s.num_objects(); ++x) {
        if (seen[f(x)])
            return false;
        seen[f(x)] = 1;
    }
    for (Obj a = 0; a < s.num_objects(); ++a)
        for (Obj b = 0; b < s.num_objects(); ++b) {
            auto hs = s.hom(a, b);
            auto ht = t.hom(f(a), f(b));
            if (hs.size() != ht.size())
                return false;
            std::vector<char> hit(t.num_morphisms(), 0);
            for (Mor m : hs) {
                if (hit[f.map(m)])
                    return false;
                hit[f.map(m)] = 1;
            }
        }
    return true;
}

/**
 * K(u, w) = M(U, V) on (WFib ↓ X)^op × (Y ↓ WCof), contravariant in U and
 * covariant in V.
 */
struct TwistedFunctor {
    CommaCategory over;
    CommaCategory under;
    CategoryPtr domain;  // opposite(over) × under
    SetFunctor functor;
};

inline TwistedFunctor twisted_hom_functor(const ModelData& m, Obj x, Obj y)
{
    const FiniteCategory& c = m.category();
    TwistedFunctor t{marked_comma(m, x, MarkedSide::wfib_over), marked_comma(m, y, MarkedSide::wcof_under), nullptr, {}};
    const FiniteCategory& a = *t.over.category;
    const FiniteCategory& b = *t.under.category;
    t.domain = share(product(opposite(a), b));
    SetFunctor& k = t.functor;
    k.base = t.domain;
    const std::size_t bn = b.num_objects(), bm = b.num_morphisms();
    std::vector<std::vector<Mor>> homs(t.domain->num_objects());
    for (Obj o = 0; o < t.domain->num_objects(); ++o) {
        Obj U = c.src(t.over.legs[o / bn]);
        Obj V = c.dst(t.under.legs[o % bn]);
        homs[o] = c.hom(U, V);
        k.sizes.push_back(homs[o].size());
        std::vector<std::string> names;
        for (Mor f : homs[o])
            names.push_back(c.morphism_name(f));
        k.element_names.push_back(std::move(names));
    }
    for (Mor p = 0; p < t.domain->num_morphisms(); ++p) {
        Mor h = t.over.connecting[p / bm];  // U_target -> U_source in the base
        Mor g = t.under.connecting[p % bm];  // V_source -> V_target
        Obj so = t.domain->src(p), to = t.domain->dst(p);
        std::vector<std::size_t> act;
        for (Mor f : homs[so]) {
            Mor img = c.compose(g, c.compose(f, h));
            auto pos = std::find(homs[to].begin(), homs[to].end(), img);
            act.push_back(static_cast<std::size_t>(pos - homs[to].begin()));
        }
        k.action.push_back(std::move(act));
    }
    return t;
}

struct TwistedIsoReport {
    std::size_t elements_objects = 0;
    std::size_t elements_morphisms = 0;
    std::size_t twisted_objects = 0;
    std::size_t twisted_morphisms = 0;
    bool canonical_object_bijection = false;
    bool iso_direct = false;      // El(K) ≅ restricted-tw
    bool iso_opposite = false;    // El(K) ≅ restricted-tw^op
    bool canonical_opposite = false;  // the zig-zag bijection itself extends to El(K) ≅ restricted-tw^op
    bool search_exhausted = true;
    bool homology_agrees = false;
    std::string variance;
    std::string detail;

    bool verdict() const { return (iso_direct || iso_opposite) && homology_agrees; }

    std::string text() const
    {
        std::ostringstream os;
        os << "category of elements: " << elements_objects << " objects, " << elements_morphisms << " morphisms\n";
        os << "restricted-tw: " << twisted_objects << " objects, " << twisted_morphisms << " morphisms\n";
        os << "canonical object bijection: " << (canonical_object_bijection ? "yes" : "no") << "\n";
        os << "isomorphic to restricted-tw: " << (iso_direct ? "yes" : "no") << "\n";
        os << "isomorphic to restricted-tw^op: " << (iso_opposite ? "yes" : "no") << "\n";
        os << "variance: " << variance << "\n";
        os << "homology of nerves agrees in degrees <= 2: " << (homology_agrees ? "yes" : "no") << "\n";
        if (!detail.empty())
            os << "detail: " << detail << "\n";
        return os.str();
    }
};

/**
 * Compares the category of elements of K with restricted-tw. An element
 * (u, w, f: U -> V) is the zig-zag X <-u- U -f-> V <-w- Y, and a morphism of
 * elements (u', w, f') -> (u, w', f) with f = k f' h is a twisted morphism
 * in the other direction, so the canonical comparison is with the opposite.
 */
inline TwistedIsoReport twisted_iso_check(const ModelData& m, Obj x, Obj y, std::size_t node_bound = 2'000'000)
{
    const FiniteCategory& c = m.category();
    TwistedIsoReport r;
    r.variance = "K is contravariant in the (WFib|X) leg and covariant in the (Y|WCof) leg";
    auto tf = twisted_hom_functor(m, x, y);
    auto el = category_of_elements(tf.functor);
    auto tw = build_moduli(m, x, y, Variant::restricted_tw);
    const FiniteCategory& e = *el.category;
    const FiniteCategory& t = *tw.category;
    r.elements_objects = e.num_objects();
    r.elements_morphisms = e.num_morphisms();
    r.twisted_objects = t.num_objects();
    r.twisted_morphisms = t.num_morphisms();

    // canonical bijection on objects through the zig-zag data
    const std::size_t bn = tf.under.category->num_objects();
    std::vector<Obj> obj_map;
    r.canonical_object_bijection = e.num_objects() == t.num_objects();
    for (Obj o = 0; o < e.num_objects() && r.canonical_object_bijection; ++o) {
        auto [p, i] = el.elements[o];
        Mor u = tf.over.legs[p / bn];
        Mor w = tf.under.legs[p % bn];
        Obj U = c.src(u), V = c.dst(w);
        Mor f = c.hom(U, V)[i];
        auto target = tw.find(u, f, w);
        if (!target) {
            r.canonical_object_bijection = false;
            r.detail = "element (" + c.morphism_name(u) + "," + c.morphism_name(w) + "," + c.morphism_name(f) +
                       ") is not a restricted zig-zag";
            break;
        }
        obj_map.push_back(*target);
    }
    if (r.canonical_object_bijection) {
        std::vector<char> hit(t.num_objects(), 0);
        for (Obj o : obj_map)
            hit[o] = 1;
        r.canonical_object_bijection = std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
    }

    auto top = share(opposite(t));
    if (r.canonical_object_bijection && e.num_morphisms() == t.num_morphisms()) {
        // an element morphism over (h, g) from A' to A is the twisted morphism (h, g): A -> A'
        Functor f{el.category, top, obj_map, {}};
        const std::size_t bm = tf.under.category->num_morphisms();
        bool ok = true;
        for (Mor mm = 0; mm < e.num_morphisms() && ok; ++mm) {
            Mor p = el.projection.map(mm);
            Mor h = tf.over.connecting[p / bm];
            Mor g = tf.under.connecting[p % bm];
            auto image = tw.find_morphism(obj_map[e.dst(mm)], obj_map[e.src(mm)], h, g);
            ok = image.has_value();
            if (ok)
                f.on_morphisms.push_back(*image);
        }
        if (ok) {
            try {
                check_functor(f);
                r.canonical_opposite = is_full_embedding(f);
            } catch (const Error&) {
                r.canonical_opposite = false;
            }
        }
    }
    r.iso_opposite = r.canonical_opposite;
    if (!r.iso_opposite) {
        auto s = find_isomorphism(el.category, top, node_bound);
        r.iso_opposite = s.iso.has_value();
        r.search_exhausted = r.search_exhausted && s.exhausted;
    }
    {
        auto s = find_isomorphism(el.category, tw.category, node_bound);
        r.iso_direct = s.iso.has_value();
        r.search_exhausted = r.search_exhausted && s.exhausted;
    }
    if (!r.iso_direct && !r.iso_opposite && r.detail.empty()) {
        std::ostringstream os;
        os << "NotIsomorphic: " << e.num_objects() << "/" << e.num_morphisms() << " vs " << t.num_objects() << "/"
           << t.num_morphisms() << " objects/morphisms";
        r.detail = os.str();
    }
    auto he = homology(*nerve(el.category, 3).simplicial);
    auto ht = homology(*nerve(tw.category, 3).simplicial);
    r.homology_agrees = he.degrees == ht.degrees;
    return r;
}

/// The double category with C_h = restricted and C_v = restricted-tw over the same objects.
struct ModuliDouble {
    ModuliCategory h;
    ModuliCategory v;
    DoublePtr d;
};

/// A square commutes on U-components and on V-components (the v-maps' V-components run backwards).
inline bool moduli_square_commutes(const ModuliDouble& md, const Square& s)
{
    const FiniteCategory& c = md.h.model.category();
    auto [tu, tv] = md.h.components[s.top];
    auto [bu, bv] = md.h.components[s.bottom];
    auto [lu, lv] = md.v.components[s.left];
    auto [ru, rv] = md.v.components[s.right];
    return c.compose(bu, lu) == c.compose(ru, tu) && c.compose(tv, lv) == c.compose(rv, bv);
}

inline ModuliDouble moduli_double(const ModelData& m, Obj x, Obj y)
{
    ModuliDouble md{build_moduli(m, x, y, Variant::restricted), build_moduli(m, x, y, Variant::restricted_tw), nullptr};
    const FiniteCategory& h = *md.h.category;
    const FiniteCategory& v = *md.v.category;
    std::vector<Square> squares;
    for (Mor top = 0; top < h.num_morphisms(); ++top)
        for (Mor left : v.out(h.src(top)))
            for (Mor right : v.out(h.dst(top)))
                for (Mor bottom : h.hom(v.dst(left), v.dst(right))) {
                    Square s{top, bottom, left, right};
                    if (moduli_square_commutes(md, s))
                        squares.push_back(s);
                }
    md.d = share(validate_double(md.h.category, md.v.category, std::move(squares)));
    return md;
}

}  // namespace nervekit
