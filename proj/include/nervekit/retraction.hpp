/**
 * Retractions onto the restricted zig-zag categories built from chosen
 * factorizations and universal squares, with the natural zig-zags that make
 * the inclusion a homotopy equivalence.
 */
#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "model_data.hpp"
#include "moduli.hpp"
#include "universal.hpp"

namespace nervekit {

enum class RetractionKind {
    hom_to_restricted,
    hom_f_to_wfib_inv  // needs Y fibrant
};

struct RetractionResult {
    ModuliCategory sub;    // restricted or wfib-inv
    ModuliCategory whole;  // hom or hom-f
    Functor inclusion;     // sub -> whole
    Functor retraction;    // whole -> sub
    HomotopyEquivalenceCertificate certificate;
    CertificateCheck check;
};

namespace detail {

inline Mor least_lift(const FiniteCategory& c, Mor i, Mor p, Mor a, Mor b)
{
    auto all = lifts(c, i, p, a, b);
    if (all.empty())
        throw Error(Errc::LiftMissing, "no lift of '" + c.morphism_name(i) + "' against '" + c.morphism_name(p) + "'");
    return *std::min_element(all.begin(), all.end(),
                             [&](Mor x, Mor y) { return c.morphism_name(x) < c.morphism_name(y); });
}

inline Obj must_find(const ModuliCategory& m, Mor u, Mor f, Mor w, const char* what)
{
    if (auto o = m.find(u, f, w))
        return *o;
    const FiniteCategory& c = m.model.category();
    throw Error(Errc::ChoiceNotFunctorial, std::string(what) + " [" + c.morphism_name(u) + "|" + c.morphism_name(f) +
                                               (w == npos ? "" : "|" + c.morphism_name(w)) + "] is not an object of " +
                                               to_string(m.variant));
}

inline Mor must_find(const ModuliCategory& m, Obj a, Obj b, Mor h, Mor k, const char* what)
{
    if (auto r = m.find_morphism(a, b, h, k))
        return *r;
    throw Error(Errc::ChoiceNotFunctorial, std::string(what) + " from '" + m.category->object_name(a) + "' to '" +
                                               m.category->object_name(b) + "' is not a morphism of " +
                                               to_string(m.variant));
}

inline void must_be_functor(const Functor& f, const char* what)
{
    try {
        check_functor(f);
    } catch (const Error& e) {
        throw Error(Errc::ChoiceNotFunctorial, std::string(what) + ": " + e.what());
    }
}

inline bool is_identity_transformation(const NaturalTransformation& t)
{
    if (!(t.from == t.to))
        return false;
    for (Obj a = 0; a < t.components.size(); ++a)
        if (t.components[a] != t.to.target->identity(t.to(a)))
            return false;
    return true;
}

inline void push_step(ZigZag& z, NaturalTransformation t, bool forward)
{
    if (!is_identity_transformation(t))
        z.push_back({std::move(t), forward});
}

/// Restrict a functor along the inclusion and land it in the subcategory.
inline Functor restrict_to(const Functor& f, const Functor& inc, const ModuliCategory& sub, const ModuliCategory& whole)
{
    Functor g{sub.category, sub.category, {}, {}};
    for (Obj a = 0; a < sub.objects.size(); ++a) {
        const auto& z = whole.objects[f(inc(a))];
        g.on_objects.push_back(must_find(sub, z.u, z.f, z.w, "restricted value"));
    }
    for (Mor m = 0; m < sub.category->num_morphisms(); ++m) {
        auto [h, k] = whole.components[f.on_morphisms[inc.on_morphisms[m]]];
        g.on_morphisms.push_back(must_find(sub, g(sub.category->src(m)), g(sub.category->dst(m)), h, k,
                                           "restricted value"));
    }
    must_be_functor(g, "restriction");
    return g;
}

inline NaturalTransformation restrict_transformation(const NaturalTransformation& t, const Functor& from,
                                                     const Functor& to, const Functor& inc, const ModuliCategory& sub,
                                                     const ModuliCategory& whole)
{
    NaturalTransformation r{from, to, {}};
    for (Obj a = 0; a < sub.objects.size(); ++a) {
        auto [h, k] = whole.components[t.components[inc(a)]];
        r.components.push_back(must_find(sub, from(a), to(a), h, k, "restricted component"));
    }
    return r;
}

inline RetractionResult hom_to_restricted(const ModelData& m, Obj x, Obj y)
{
    const FiniteCategory& c = m.category();
    RetractionResult r;
    r.whole = build_moduli(m, x, y, Variant::hom);
    r.sub = build_moduli(m, x, y, Variant::restricted);
    r.inclusion = moduli_inclusion(r.sub, r.whole);
    const ModuliCategory& H = r.whole;
    const ModuliCategory& R = r.sub;
    const std::size_t n = H.objects.size();

    struct Stage {
        Factorization first;     // u = p1∘i1
        UniversalSquare push;    // V' with f': U' -> V' and j: V -> V'
        Factorization second;    // j∘w = p2∘i2
        UniversalSquare pull;    // U'' with q1: U'' -> U' and f'': U'' -> V''
    };
    std::vector<Stage> st(n);
    auto missing = [&](const char* what, Mor a, Mor b) {
        return Error(Errc::MissingLimit,
                     std::string(what) + " of '" + c.morphism_name(a) + "', '" + c.morphism_name(b) + "'");
    };
    for (Obj a = 0; a < n; ++a) {
        const auto& A = H.objects[a];
        Stage& s = st[a];
        s.first = factorize(m, A.u, FactorKind::wcof_fib);
        auto push = try_universal_square(c, SquareKind::pushout, s.first.first, A.f);
        if (!push)
            throw missing("pushout", s.first.first, A.f);
        s.push = *push;
        s.second = factorize(m, c.compose(s.push.second, A.w), FactorKind::wcof_fib);
        auto pull = try_universal_square(c, SquareKind::pullback, s.push.first, s.second.second);
        if (!pull)
            throw missing("pullback", s.push.first, s.second.second);
        s.pull = *pull;
    }

    Functor F{H.category, R.category, {}, {}};
    Functor mid{H.category, H.category, {}, {}};
    for (Obj a = 0; a < n; ++a) {
        const Stage& s = st[a];
        F.on_objects.push_back(must_find(R, c.compose(s.first.second, s.pull.first), s.pull.second, s.second.first,
                                         "retraction of an object"));
        mid.on_objects.push_back(must_find(H, s.first.second, s.push.first,
                                           c.compose(s.push.second, H.objects[a].w), "middle object"));
    }
    for (Mor e = 0; e < H.category->num_morphisms(); ++e) {
        Obj a = H.category->src(e), b = H.category->dst(e);
        const Stage& sa = st[a];
        const Stage& sb = st[b];
        auto [h, k] = H.components[e];
        Mor h1 = least_lift(c, sa.first.first, sb.first.second, c.compose(sb.first.first, h), sa.first.second);
        Mor k1 = mediating_morphism(c, SquareKind::pushout, sa.push,
                                    {sb.push.apex, c.compose(sb.push.first, h1), c.compose(sb.push.second, k)});
        Mor k2 = least_lift(c, sa.second.first, sb.second.second, sb.second.first, c.compose(k1, sa.second.second));
        Mor h2 = mediating_morphism(c, SquareKind::pullback, sb.pull,
                                    {sa.pull.apex, c.compose(h1, sa.pull.first), c.compose(k2, sa.pull.second)});
        F.on_morphisms.push_back(must_find(R, F(a), F(b), h2, k2, "retraction of a morphism"));
        mid.on_morphisms.push_back(must_find(H, mid(a), mid(b), h1, k1, "middle morphism"));
    }
    must_be_functor(F, "retraction");
    must_be_functor(mid, "middle functor");

    Functor jF = compose(r.inclusion, F);
    Functor id = identity_functor(H.category);
    NaturalTransformation from_id{id, mid, {}};
    NaturalTransformation from_jF{jF, mid, {}};
    for (Obj a = 0; a < n; ++a) {
        const Stage& s = st[a];
        from_id.components.push_back(must_find(H, a, mid(a), s.first.first, s.push.second, "unit component"));
        from_jF.components.push_back(must_find(H, jF(a), mid(a), s.pull.first, s.second.second, "counit component"));
    }
    r.retraction = F;
    r.certificate.forward = r.inclusion;
    r.certificate.backward = F;
    push_step(r.certificate.target_zigzag, from_jF, true);
    push_step(r.certificate.target_zigzag, from_id, false);

    Functor Fj = compose(F, r.inclusion);
    Functor mid_r = restrict_to(mid, r.inclusion, R, H);
    Functor id_r = identity_functor(R.category);
    push_step(r.certificate.source_zigzag,
              restrict_transformation(from_jF, Fj, mid_r, r.inclusion, R, H), true);
    push_step(r.certificate.source_zigzag,
              restrict_transformation(from_id, id_r, mid_r, r.inclusion, R, H), false);
    r.check = verify_certificate(r.certificate);
    return r;
}

inline RetractionResult hom_f_to_wfib_inv(const ModelData& m, Obj x, Obj y)
{
    const FiniteCategory& c = m.category();
    auto prod = try_binary_product(c, x, y);
    if (!prod)
        throw Error(Errc::MissingLimit, "no product of '" + c.object_name(x) + "' and '" + c.object_name(y) + "'");
    if (!is_fibrant(m, y))
        throw Error(Errc::NotFibrant, "'" + c.object_name(y) + "' is not fibrant");
    RetractionResult r;
    r.whole = build_moduli(m, x, y, Variant::hom_f);
    r.sub = build_moduli(m, x, y, Variant::wfib_inv);
    r.inclusion = moduli_inclusion(r.sub, r.whole);
    const ModuliCategory& H = r.whole;
    const ModuliCategory& R = r.sub;

    std::vector<Factorization> fac;
    Functor F{H.category, R.category, {}, {}};
    for (const auto& A : H.objects) {
        Mor pair = mediating_morphism(c, SquareKind::pullback, *prod, {A.U, A.u, A.f});
        fac.push_back(factorize(m, pair, FactorKind::wcof_fib));
        Mor p = fac.back().second;
        F.on_objects.push_back(
            must_find(R, c.compose(prod->first, p), c.compose(prod->second, p), npos, "retraction of an object"));
    }
    for (Mor e = 0; e < H.category->num_morphisms(); ++e) {
        Obj a = H.category->src(e), b = H.category->dst(e);
        Mor h = H.components[e].first;
        Mor l = least_lift(c, fac[a].first, fac[b].second, c.compose(fac[b].first, h), fac[a].second);
        F.on_morphisms.push_back(must_find(R, F(a), F(b), l, npos, "retraction of a morphism"));
    }
    must_be_functor(F, "retraction");

    Functor jF = compose(r.inclusion, F);
    NaturalTransformation unit{identity_functor(H.category), jF, {}};
    for (Obj a = 0; a < H.objects.size(); ++a)
        unit.components.push_back(must_find(H, a, jF(a), fac[a].first, npos, "unit component"));
    r.retraction = F;
    r.certificate.forward = r.inclusion;
    r.certificate.backward = F;
    push_step(r.certificate.target_zigzag, unit, false);
    Functor Fj = compose(F, r.inclusion);
    push_step(r.certificate.source_zigzag,
              restrict_transformation(unit, identity_functor(R.category), Fj, r.inclusion, R, H), false);
    r.check = verify_certificate(r.certificate);
    return r;
}

}  // namespace detail

/// F with the inclusion j and the certificate that j is a homotopy equivalence with inverse F.
inline RetractionResult retraction_functor(const ModelData& m, Obj x, Obj y, RetractionKind which)
{
    return which == RetractionKind::hom_to_restricted ? detail::hom_to_restricted(m, x, y) : detail::hom_f_to_wfib_inv(m, x, y);
}

}  // namespace nervekit
