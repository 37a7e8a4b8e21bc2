#pragma once

#include <catch_amalgamated.hpp>

#include <nervekit/nervekit.hpp>

#define REQUIRE_ERRC(expr, errc)                                                  \
    do {                                                                          \
        bool thrown_ = false;                                                     \
        try {                                                                     \
            (void)(expr);                                                         \
        } catch (const ::nervekit::Error& e_) {                                   \
            thrown_ = true;                                                       \
            INFO(e_.what());                                                      \
            REQUIRE(e_.code() == (errc));                                         \
        }                                                                         \
        REQUIRE(thrown_);                                                         \
    } while (0)

namespace testing {

using namespace nervekit;

inline CategoryPtr cat(const std::string& name) { return share(builtin_category(name)); }

/// Brute-force law audit independent of the builder's own check.
inline bool laws_hold(const FiniteCategory& c)
{
    for (Mor f = 0; f < c.num_morphisms(); ++f) {
        if (c.compose(c.identity(c.dst(f)), f) != f || c.compose(f, c.identity(c.src(f))) != f)
            return false;
        for (Mor g = 0; g < c.num_morphisms(); ++g) {
            if (c.src(g) != c.dst(f))
                continue;
            Mor gf = c.compose(g, f);
            if (c.src(gf) != c.src(f) || c.dst(gf) != c.dst(g))
                return false;
            for (Mor h = 0; h < c.num_morphisms(); ++h)
                if (c.src(h) == c.dst(g) && c.compose(h, gf) != c.compose(c.compose(h, g), f))
                    return false;
        }
    }
    return true;
}

/// Composable pairs counted directly from endpoints.
inline std::size_t count_morphisms_into(const FiniteCategory& c, Obj x)
{
    std::size_t n = 0;
    for (Mor m = 0; m < c.num_morphisms(); ++m)
        n += c.dst(m) == x;
    return n;
}

}  // namespace testing
