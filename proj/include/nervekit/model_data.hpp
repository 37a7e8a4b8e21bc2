/**
 * Finite model data: a category with marked weak equivalences, fibrations
 * and cofibrations, plus the marked comma categories and chosen
 * factorizations built on them.
 */
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "functor.hpp"

namespace nervekit {

struct ModelData {
    CategoryPtr base;
    std::vector<char> w, fib, cof;  // per morphism

    bool is_w(Mor m) const { return w[m] != 0; }
    bool is_fib(Mor m) const { return fib[m] != 0; }
    bool is_cof(Mor m) const { return cof[m] != 0; }
    bool is_wfib(Mor m) const { return is_w(m) && is_fib(m); }
    bool is_wcof(Mor m) const { return is_w(m) && is_cof(m); }
    const FiniteCategory& category() const { return *base; }
};

enum class FactorKind { cof_wfib, wcof_fib };

struct Factorization {
    Obj middle = npos;
    Mor first = npos;   // source -> middle
    Mor second = npos;  // middle -> target

    friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Every factorization of f of the requested kind, ordered by (middle, first, second) identifiers.
inline std::vector<Factorization> factorizations(const ModelData& m, Mor f, FactorKind kind)
{
    const FiniteCategory& c = m.category();
    std::vector<Factorization> out;
    for (Obj z = 0; z < c.num_objects(); ++z)
        for (Mor i : c.hom(c.src(f), z)) {
            if (kind == FactorKind::cof_wfib ? !m.is_cof(i) : !m.is_wcof(i))
                continue;
            for (Mor p : c.hom(z, c.dst(f)))
                if ((kind == FactorKind::cof_wfib ? m.is_wfib(p) : m.is_fib(p)) && c.compose(p, i) == f)
                    out.push_back({z, i, p});
        }
    auto key = [&](const Factorization& x) {
        return std::make_tuple(c.object_name(x.middle), c.morphism_name(x.first), c.morphism_name(x.second));
    };
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
    return out;
}

/// Least-identifier factorization; NotFound when none exists.
inline Factorization factorize(const ModelData& m, Mor f, FactorKind kind)
{
    auto all = factorizations(m, f, kind);
    if (all.empty())
        throw Error(Errc::NotFound, std::string("no ") + (kind == FactorKind::cof_wfib ? "(Cof, WFib)" : "(WCof, Fib)") +
                                        " factorization of '" + m.category().morphism_name(f) + "'");
    return all.front();
}

/// Diagonal fillers h: dst(i) -> src(p) of the square p∘a = b∘i with h∘i = a and p∘h = b.
inline std::vector<Mor> lifts(const FiniteCategory& c, Mor i, Mor p, Mor a, Mor b)
{
    std::vector<Mor> out;
    for (Mor h : c.hom(c.dst(i), c.src(p)))
        if (c.compose(h, i) == a && c.compose(p, h) == b)
            out.push_back(h);
    return out;
}

namespace detail {

inline std::vector<char> mark(const FiniteCategory& c, const std::vector<Mor>& ms)
{
    std::vector<char> out(c.num_morphisms(), 0);
    for (Mor m : ms) {
        if (m >= c.num_morphisms())
            throw Error(Errc::InvalidArgument, "marked morphism index out of range");
        out[m] = 1;
    }
    return out;
}

inline void check_lifting(const ModelData& m, bool trivial_left)
{
    const FiniteCategory& c = m.category();
    for (Mor i = 0; i < c.num_morphisms(); ++i) {
        if (!(trivial_left ? m.is_wcof(i) : m.is_cof(i)))
            continue;
        for (Mor p = 0; p < c.num_morphisms(); ++p) {
            if (!(trivial_left ? m.is_fib(p) : m.is_wfib(p)))
                continue;
            for (Mor a : c.hom(c.src(i), c.src(p)))
                for (Mor b : c.hom(c.dst(i), c.dst(p)))
                    if (c.compose(p, a) == c.compose(b, i) && lifts(c, i, p, a, b).empty())
                        throw Error(Errc::LiftMissing, "square with left '" + c.morphism_name(i) + "', right '" +
                                                           c.morphism_name(p) + "', top '" + c.morphism_name(a) +
                                                           "', bottom '" + c.morphism_name(b) + "' has no lift");
        }
    }
}

}  // namespace detail

/// Lifting and factorization axioms, exhaustively.
inline void check_model_axioms(const ModelData& m)
{
    const FiniteCategory& c = m.category();
    for (Mor f = 0; f < c.num_morphisms(); ++f)
        for (FactorKind k : {FactorKind::cof_wfib, FactorKind::wcof_fib})
            if (factorizations(m, f, k).empty())
                throw Error(Errc::FactorizationMissing,
                            "'" + c.morphism_name(f) + "' has no " +
                                (k == FactorKind::cof_wfib ? "(Cof, WFib)" : "(WCof, Fib)") + " factorization");
    detail::check_lifting(m, false);
    detail::check_lifting(m, true);
}

/**
 * W must contain identities and satisfy two-out-of-three; Fib and Cof must
 * contain identities and be closed under composition. Strict mode adds the
 * factorization and lifting audit.
 */
inline ModelData validate_model_data(CategoryPtr base, const std::vector<Mor>& w, const std::vector<Mor>& fib,
                                     const std::vector<Mor>& cof, bool strict = false)
{
    const FiniteCategory& c = *base;
    ModelData m{base, detail::mark(c, w), detail::mark(c, fib), detail::mark(c, cof)};
    for (Obj x = 0; x < c.num_objects(); ++x) {
        Mor e = c.identity(x);
        if (!m.is_w(e))
            throw Error(Errc::TwoOutOfThreeViolation, "identity '" + c.morphism_name(e) + "' is not in W");
        if (!m.is_fib(e))
            throw Error(Errc::NotClosedUnderComposition, "identity '" + c.morphism_name(e) + "' is not in Fib");
        if (!m.is_cof(e))
            throw Error(Errc::NotClosedUnderComposition, "identity '" + c.morphism_name(e) + "' is not in Cof");
    }
    for (Mor f = 0; f < c.num_morphisms(); ++f)
        for (Mor g : c.out(c.dst(f))) {
            Mor gf = c.compose(g, f);
            int marked = m.is_w(f) + m.is_w(g) + m.is_w(gf);
            if (marked == 2)
                throw Error(Errc::TwoOutOfThreeViolation, "(" + c.morphism_name(g) + ", " + c.morphism_name(f) +
                                                              ", " + c.morphism_name(gf) + ")");
            if (m.is_fib(f) && m.is_fib(g) && !m.is_fib(gf))
                throw Error(Errc::NotClosedUnderComposition,
                            "Fib: " + c.morphism_name(g) + " o " + c.morphism_name(f));
            if (m.is_cof(f) && m.is_cof(g) && !m.is_cof(gf))
                throw Error(Errc::NotClosedUnderComposition,
                            "Cof: " + c.morphism_name(g) + " o " + c.morphism_name(f));
        }
    if (strict)
        check_model_axioms(m);
    return m;
}

/// Morphisms of a class as a list, in index order.
inline std::vector<Mor> marked(const std::vector<char>& cls)
{
    std::vector<Mor> out;
    for (Mor m = 0; m < cls.size(); ++m)
        if (cls[m])
            out.push_back(m);
    return out;
}

/// Terminal object and whether Y -> terminal is a fibration.
inline bool is_fibrant(const ModelData& m, Obj y)
{
    const FiniteCategory& c = m.category();
    auto t = find_terminal(c);
    if (!t)
        throw Error(Errc::NoTerminalObject, "the base category has no terminal object");
    return m.is_fib(c.hom(y, *t).front());
}

enum class MarkedSide { wfib_over, wcof_under };

/// (WFib ↓ anchor) or (anchor ↓ WCof); the connecting arrows of triangles are weak equivalences.
inline CommaCategory marked_comma(const ModelData& m, Obj anchor, MarkedSide side)
{
    auto in_w = [&](Mor f) { return m.is_w(f); };
    if (side == MarkedSide::wfib_over)
        return comma(m.base, anchor, CommaSide::over, [&](Mor f) { return m.is_wfib(f); }, in_w);
    return comma(m.base, anchor, CommaSide::under, [&](Mor f) { return m.is_wcof(f); }, in_w);
}

}  // namespace nervekit
