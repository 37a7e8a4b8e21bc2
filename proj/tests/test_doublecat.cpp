#include "support.hpp"

#include <random>

using namespace nervekit;
using namespace testing;

namespace {

bool is_identity_square(const DoubleCategory& d, const Square& s)
{
    const auto& h = d.hcat();
    const auto& v = d.vcat();
    return (h.is_identity(s.top) && h.is_identity(s.bottom) && s.left == s.right) ||
           (v.is_identity(s.left) && v.is_identity(s.right) && s.top == s.bottom);
}

/// Monotone maps from the 2x2 grid poset to [1].
std::size_t grid_maps_to_one()
{
    std::size_t n = 0;
    for (int a = 0; a < 2; ++a)
        for (int b = a; b < 2; ++b)
            for (int c = a; c < 2; ++c)
                for (int d = std::max(b, c); d < 2; ++d)
                    ++n;
    return n;
}

}  // namespace

TEST_CASE("validate_double on trivial double categories")
{
    auto t = cat("point");
    auto tt = trivial_double(t);
    CHECK(tt.squares().size() == 1);
    CHECK(validate_double(t, t, tt.squares()).squares().size() == 1);

    auto c1 = cat("[1]");
    auto d1 = trivial_double(c1);
    CHECK(d1.squares().size() == 6);
    CHECK(grid_maps_to_one() == 6);
    CHECK(validate_double(c1, c1, d1.squares()).squares().size() == 6);

    auto two = cat("discrete-2");
    auto d2 = trivial_double(two);
    CHECK(d2.squares().size() == 2);
    for (const auto& s : d2.squares())
        CHECK(is_identity_square(d2, s));

    std::mt19937 rng(5);
    for (int k = 0; k < 10; ++k) {
        auto c = share(random_category(rng, 4, 10));
        auto d = trivial_double(c);
        CHECK_NOTHROW(validate_double(c, c, d.squares()));
    }
}

TEST_CASE("validate_double errors")
{
    auto c2 = cat("[2]");
    auto d = trivial_double(c2);
    bool saw_not_closed = false;
    for (std::size_t k = 0; k < d.squares().size(); ++k) {
        if (is_identity_square(d, d.squares()[k]))
            continue;
        auto sq = d.squares();
        sq.erase(sq.begin() + static_cast<long>(k));
        try {
            validate_double(c2, c2, sq);
        } catch (const Error& e) {
            CHECK(e.code() == Errc::NotPastingClosed);
            saw_not_closed = true;
        }
    }
    CHECK(saw_not_closed);

    auto sq = d.squares();
    for (std::size_t k = 0; k < sq.size(); ++k)
        if (is_identity_square(d, sq[k]) && !c2->is_identity(sq[k].top)) {
            sq.erase(sq.begin() + static_cast<long>(k));
            break;
        }
    REQUIRE_ERRC(validate_double(c2, c2, sq), Errc::MissingIdentitySquare);
    CHECK(validate_double(c2, c2, sq, {true, false}).squares().size() == d.squares().size());

    REQUIRE_ERRC(validate_double(cat("[1]"), cat("discrete-2"), std::vector<Square>{}), Errc::SharedObjectMismatch);

    auto bad = d.squares();
    bad.push_back({c2->morphism("0->1"), c2->morphism("0->1"), c2->morphism("1->2"), c2->morphism("1->2")});
    REQUIRE_ERRC(validate_double(c2, c2, bad), Errc::CornerMismatch);
}

TEST_CASE("chain categories")
{
    auto c1 = cat("[1]");
    auto d = share(trivial_double(c1));
    auto t = chain_tower(d, 2);
    CHECK(t[0].category == d->hptr());
    CHECK(t[1].category->num_objects() == 3);
    CHECK(t[1].category->num_morphisms() == 6);

    // no nonidentity v-maps: length-1 chains are identities and ladders are h-maps
    auto h = cat("diamond");
    auto v = share(make_poset({"b", "x", "y", "t"}, {}));
    auto dd = share(validate_double(h, v, std::vector<Square>{}, {true, false}));
    auto tt = chain_tower(dd, 1);
    CHECK(find_isomorphism(tt[1].category, h).iso.has_value());
}

TEST_CASE("chain shifts")
{
    auto c1 = cat("[1]");
    auto d = share(trivial_double(c1));
    auto t = chain_tower(d, 2);
    auto extend = chain_shift(t, 1, ShiftKind::extend);
    auto forget = chain_shift(t, 1, ShiftKind::forget);
    for (Obj x = 0; x < c1->num_objects(); ++x)
        CHECK(t[1].chains[extend(x)] == std::vector<Mor>{c1->identity(x)});
    CHECK(compose(forget, extend) == identity_functor(t[0].category));

    auto forget2 = chain_shift(t, 2, ShiftKind::forget);
    for (Obj a = 0; a < t[2].category->num_objects(); ++a)
        CHECK(t[1].chains[forget2(a)] == std::vector<Mor>{t[2].chains[a][1]});

    auto fu = compose(extend, forget);
    auto id = identity_functor(t[1].category);
    CHECK(!nat_trans_search(id, fu).empty());
}

TEST_CASE("binerve levels")
{
    auto c1 = cat("[1]");
    auto d = share(trivial_double(c1));
    auto b = binerve(d, 2, 2);
    CHECK(b.sset.size(0, 0) == 2);
    CHECK(b.sset.size(1, 0) == 3);
    CHECK(b.sset.size(1, 1) == 6);
    REQUIRE_ERRC(binerve(d, -1, 2), Errc::CapTooSmall);

    for (const char* name : {"[1]", "diamond", "parallel-pair", "Z/2"}) {
        auto dd = share(trivial_double(cat(name)));
        auto bn = binerve(dd, 2, 2);
        CHECK(bisimplicial_identity_failures(bn.sset).empty());
        auto nh = nerve(dd->hptr(), 2);
        auto nv = nerve(dd->vptr(), 2);
        CHECK(bn.sset.horizontal_slice(0).same_tables(*nh.simplicial));
        CHECK(bn.sset.vertical_slice(0).same_tables(*nv.simplicial));
        for (int q = 0; q <= 2; ++q)
            CHECK(bn.sset.size(0, q) == nv.simplicial->size(q));
    }
    auto pt = binerve(share(trivial_double(cat("point"))), 3, 3);
    for (int p = 0; p <= 3; ++p)
        for (int q = 0; q <= 3; ++q)
            CHECK(pt.sset.size(p, q) == 1);
}

TEST_CASE("reduction check on trivial double categories")
{
    for (const char* name : {"[1]", "[2]", "parallel-pair", "diamond"}) {
        auto c = cat(name);
        auto d = share(trivial_double(c));
        auto w = trivial_witness(d);
        auto r = reduction_check(w, 3);
        INFO(name << ": " << r.text());
        CHECK(r.certificate.verified);
        CHECK(r.edge.verdict);
        auto data = diagonal_data(d, 3);
        CHECK(homology(*nerve(c, 3).simplicial).degrees == homology(*data.diagonal).degrees);
    }
}

TEST_CASE("reduction check rejects malformed witnesses")
{
    auto c = cat("[1]");
    auto d = share(trivial_double(c));
    auto w = trivial_witness(d);
    Mor arrow = c->morphism("0->1");
    Obj a = w.tower[1].find_object({arrow});

    auto shape = w;
    shape.on_objects[a].v[2] = arrow;
    REQUIRE_ERRC(reduction_check(shape, 2), Errc::WitnessShapeError);

    auto bottom = w;
    bottom.on_objects[a].h[3] = arrow;
    REQUIRE_ERRC(reduction_check(bottom, 2), Errc::WitnessShapeError);

    // break naturality of one ladder component; parallel arrows make a wrong choice available
    auto pp = cat("parallel-pair");
    auto broken = trivial_witness(share(trivial_double(pp)));
    bool changed = false;
    for (Mor l = 0; l < broken.tower[1].category->num_morphisms() && !changed; ++l) {
        auto& comp = broken.on_morphisms[l];
        for (Mor m : pp->hom(pp->src(comp[1]), pp->dst(comp[1])))
            if (m != comp[1]) {
                comp[1] = m;
                changed = true;
                break;
            }
    }
    REQUIRE(changed);
    REQUIRE_ERRC(reduction_check(broken, 2), Errc::WitnessNotFunctorial);
}
