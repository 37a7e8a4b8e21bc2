/**
 * Brute-force pushouts, pullbacks and binary products in finite categories.
 */
#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "category.hpp"

namespace nervekit {

enum class SquareKind { pushout, pullback };

/// Pushout: first: x -> apex, second: y -> apex. Pullback: first: apex -> x, second: apex -> y.
struct UniversalSquare {
    Obj apex = npos;
    Mor first = npos;
    Mor second = npos;

    friend bool operator==(const UniversalSquare&, const UniversalSquare&) = default;
};

namespace detail {

// Candidate cones/cocones over the data, ordered by (apex, first, second) identifiers.
inline std::vector<UniversalSquare> candidates(const FiniteCategory& c, SquareKind kind, Mor a, Mor b)
{
    std::vector<UniversalSquare> out;
    for (Obj p = 0; p < c.num_objects(); ++p) {
        if (kind == SquareKind::pushout) {
            for (Mor i : c.hom(c.dst(a), p))
                for (Mor j : c.hom(c.dst(b), p))
                    if (c.compose(i, a) == c.compose(j, b))
                        out.push_back({p, i, j});
        } else {
            for (Mor i : c.hom(p, c.src(a)))
                for (Mor j : c.hom(p, c.src(b)))
                    if (c.compose(a, i) == c.compose(b, j))
                        out.push_back({p, i, j});
        }
    }
    return out;
}

// Mediating morphisms from `u` to `v` (pushout: u.apex -> v.apex; pullback: v.apex -> u.apex).
inline std::vector<Mor> mediators(const FiniteCategory& c, SquareKind kind, const UniversalSquare& u,
                                  const UniversalSquare& v)
{
    std::vector<Mor> out;
    if (kind == SquareKind::pushout) {
        for (Mor m : c.hom(u.apex, v.apex))
            if (c.compose(m, u.first) == v.first && c.compose(m, u.second) == v.second)
                out.push_back(m);
    } else {
        for (Mor m : c.hom(v.apex, u.apex))
            if (c.compose(u.first, m) == v.first && c.compose(u.second, m) == v.second)
                out.push_back(m);
    }
    return out;
}

inline std::optional<UniversalSquare> pick_universal(const FiniteCategory& c, SquareKind kind,
                                                     const std::vector<UniversalSquare>& cands)
{
    std::vector<UniversalSquare> universal;
    for (const auto& u : cands) {
        bool ok = true;
        for (const auto& v : cands) {
            if (mediators(c, kind, u, v).size() != 1) {
                ok = false;
                break;
            }
        }
        if (ok)
            universal.push_back(u);
    }
    if (universal.empty())
        return std::nullopt;
    auto key = [&](const UniversalSquare& u) {
        return std::make_tuple(c.object_name(u.apex), c.morphism_name(u.first), c.morphism_name(u.second));
    };
    UniversalSquare best = universal.front();
    for (const auto& u : universal)
        if (key(u) < key(best))
            best = u;
    for (const auto& u : universal) {
        // universal candidates must be pairwise isomorphic via their mediators
        Mor there = mediators(c, kind, best, u).front();
        Mor back = mediators(c, kind, u, best).front();
        bool iso = kind == SquareKind::pushout
                       ? c.compose(back, there) == c.identity(best.apex) && c.compose(there, back) == c.identity(u.apex)
                       : c.compose(there, back) == c.identity(best.apex) && c.compose(back, there) == c.identity(u.apex);
        if (!iso)
            throw Error(Errc::AmbiguousUniversal, "non-isomorphic universal candidates at '" +
                                                      c.object_name(best.apex) + "' and '" +
                                                      c.object_name(u.apex) + "'");
    }
    return best;
}

}  // namespace detail

/**
 * Pushout of a span (a: s -> x, b: s -> y) or pullback of a cospan
 * (a: x -> s, b: y -> s), found by checking every candidate against every
 * competing cone. Ties between isomorphic representatives go to the least
 * identifier.
 */
inline std::optional<UniversalSquare> try_universal_square(const FiniteCategory& c, SquareKind kind, Mor a, Mor b)
{
    if (kind == SquareKind::pushout && c.src(a) != c.src(b))
        throw Error(Errc::InvalidArgument, "pushout data must be a span");
    if (kind == SquareKind::pullback && c.dst(a) != c.dst(b))
        throw Error(Errc::InvalidArgument, "pullback data must be a cospan");
    return detail::pick_universal(c, kind, detail::candidates(c, kind, a, b));
}

inline UniversalSquare universal_square(const FiniteCategory& c, SquareKind kind, Mor a, Mor b)
{
    if (auto u = try_universal_square(c, kind, a, b))
        return *u;
    throw Error(Errc::NotFound, std::string(kind == SquareKind::pushout ? "pushout" : "pullback") + " of " +
                                    c.morphism_name(a) + ", " + c.morphism_name(b));
}

/// Unique morphism from the universal square `u` to a competing (co)cone.
inline Mor mediating_morphism(const FiniteCategory& c, SquareKind kind, const UniversalSquare& u,
                              const UniversalSquare& competitor)
{
    auto m = detail::mediators(c, kind, u, competitor);
    if (m.size() != 1)
        throw Error(Errc::Internal, "mediating morphism is not unique");
    return m.front();
}

/// Binary product (apex, projection to x, projection to y).
inline std::optional<UniversalSquare> try_binary_product(const FiniteCategory& c, Obj x, Obj y)
{
    std::vector<UniversalSquare> cands;
    for (Obj p = 0; p < c.num_objects(); ++p)
        for (Mor i : c.hom(p, x))
            for (Mor j : c.hom(p, y))
                cands.push_back({p, i, j});
    return detail::pick_universal(c, SquareKind::pullback, cands);
}

}  // namespace nervekit
