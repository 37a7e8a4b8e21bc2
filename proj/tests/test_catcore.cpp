#include "support.hpp"

#include <random>

using namespace nervekit;
using namespace testing;

namespace {

RawCategory two_step_raw()
{
    RawCategory raw;
    raw.objects = {"a", "b", "c"};
    raw.morphisms = {{"f", "a", "b"}, {"g", "b", "c"}};
    raw.auto_identities = true;
    return raw;
}

std::vector<CategoryPtr> corpus_categories()
{
    std::vector<CategoryPtr> out;
    for (const auto& n : builtin_category_names())
        out.push_back(cat(n));
    std::mt19937 rng(7);
    for (int k = 0; k < 15; ++k)
        out.push_back(share(random_category(rng, 4, 12)));
    return out;
}

}  // namespace

TEST_CASE("validate_category accepts the terminal category and chains")
{
    auto t = terminal_category();
    CHECK(t.num_objects() == 1);
    CHECK(t.num_morphisms() == 1);
    auto c = chain_category(2);
    CHECK(c.num_objects() == 3);
    CHECK(c.num_morphisms() == 6);
    CHECK(laws_hold(c));
}

TEST_CASE("validate_category rejects broken descriptions")
{
    REQUIRE_ERRC(validate_category(two_step_raw()), Errc::IncompleteCompositionTable);

    auto raw = two_step_raw();
    raw.morphisms.push_back({"gf", "a", "c"});
    raw.compose = {{"g", "f", "gf"}};
    CHECK(validate_category(raw).num_morphisms() == 6);

    auto dangling = raw;
    dangling.morphisms.push_back({"h", "a", "nowhere"});
    REQUIRE_ERRC(validate_category(dangling), Errc::DanglingEndpoint);

    auto no_ids = raw;
    no_ids.auto_identities = false;
    REQUIRE_ERRC(validate_category(no_ids), Errc::MissingIdentity);

    RawCategory bad;
    bad.objects = {"*"};
    bad.morphisms = {{"1", "*", "*"}, {"a", "*", "*"}, {"b", "*", "*"}};
    bad.identities = {{"*", "1"}};
    bad.compose = {{"a", "a", "b"}, {"a", "b", "a"}, {"b", "a", "b"}, {"b", "b", "b"}};
    // a∘(a∘a) = a∘b = a but (a∘a)∘a = b∘a = b
    REQUIRE_ERRC(validate_category(bad), Errc::NonAssociative);
}

TEST_CASE("every corpus category satisfies the laws")
{
    for (const auto& c : corpus_categories())
        CHECK(laws_hold(*c));
}

TEST_CASE("opposite reverses arrows and is an involution")
{
    auto t = terminal_category();
    CHECK(opposite(t) == t);

    auto c1 = chain_category(1);
    auto op = opposite(c1);
    Mor m = op.morphism("0->1");
    CHECK(op.object_name(op.src(m)) == "1");
    CHECK(op.object_name(op.dst(m)) == "0");

    auto pp = opposite(parallel_pair());
    for (const char* name : {"a", "b"}) {
        Mor a = pp.morphism(name);
        CHECK(pp.object_name(pp.src(a)) == "y");
        CHECK(pp.object_name(pp.dst(a)) == "x");
    }
    for (const auto& c : corpus_categories())
        CHECK(opposite(opposite(*c)) == *c);
}

TEST_CASE("product counts pairs")
{
    auto c1 = chain_category(1);
    auto p = product(c1, c1);
    CHECK(p.num_objects() == 4);
    CHECK(p.num_morphisms() == c1.num_morphisms() * c1.num_morphisms());
    CHECK(p.num_morphisms() == 9);
    CHECK(laws_hold(p));

    auto d = share(diamond_poset());
    auto dt = share(product(*d, terminal_category()));
    auto iso = find_isomorphism(d, dt);
    CHECK(iso.iso.has_value());

    auto e = product(empty_category(), *d);
    CHECK(e.num_objects() == 0);
    CHECK(e.num_morphisms() == 0);
}

TEST_CASE("comma categories over and under an anchor")
{
    auto t = cat("point");
    auto over_t = comma(t, 0, CommaSide::over);
    CHECK(over_t.category->num_objects() == 1);
    CHECK(over_t.category->num_morphisms() == 1);

    auto d = cat("diamond");
    CHECK(comma(d, d->object("t"), CommaSide::over).category->num_objects() == 4);
    CHECK(comma(d, d->object("b"), CommaSide::under).category->num_objects() == 4);
    REQUIRE_ERRC(comma(d, 17, CommaSide::over), Errc::AnchorNotFound);

    for (const auto& c : corpus_categories())
        for (Obj x = 0; x < c->num_objects(); ++x) {
            auto k = comma(c, x, CommaSide::over);
            CHECK(k.category->num_objects() == count_morphisms_into(*c, x));
            CHECK(laws_hold(*k.category));
            check_functor(k.projection);
        }
}

TEST_CASE("validate_functor")
{
    auto d = cat("diamond");
    check_functor(identity_functor(d));
    check_functor(constant_functor(d, d, d->object("x")));

    RawCategory raw = two_step_raw();
    raw.morphisms.push_back({"c", "a", "c"});
    raw.morphisms.push_back({"d", "a", "c"});
    raw.compose = {{"g", "f", "c"}};
    auto target = share(validate_category(raw));
    auto source = share(make_poset({"0", "1", "2"}, {{"0", "1"}, {"1", "2"}}));
    std::map<std::string, std::string> objects{{"0", "a"}, {"1", "b"}, {"2", "c"}};
    std::map<std::string, std::string> good{{"id_0", "id_a"}, {"id_1", "id_b"}, {"id_2", "id_c"},
                                            {"0->1", "f"},     {"1->2", "g"},     {"0->2", "c"}};
    validate_functor(source, target, objects, good);
    auto bad = good;
    bad["0->2"] = "d";
    REQUIRE_ERRC(validate_functor(source, target, objects, bad), Errc::NotPreservingComposition);
    auto bad_id = good;
    bad_id["id_1"] = "id_a";
    REQUIRE_ERRC(validate_functor(source, target, objects, bad_id), Errc::EndpointMismatch);
}

TEST_CASE("nat_trans_search against brute force")
{
    auto t = cat("point");
    CHECK(nat_trans_search(identity_functor(t), identity_functor(t)).size() == 1);
    auto c1 = cat("[1]");
    CHECK(nat_trans_search(identity_functor(c1), identity_functor(c1)).size() == 1);

    auto two = cat("discrete-2");
    CHECK(nat_trans_search(constant_functor(two, two, 0), constant_functor(two, two, 1)).empty());

    auto pp = cat("parallel-pair");
    auto f = constant_functor(two, pp, pp->object("x"));
    auto g = constant_functor(two, pp, pp->object("y"));
    CHECK(nat_trans_search(f, g).size() == 4);
    REQUIRE_ERRC(nat_trans_search(f, g, 3), Errc::ExplosionGuard);

    // all functors [1] -> diamond, all pairs, compared with a direct enumeration
    auto d = cat("diamond");
    std::vector<Functor> functors;
    for (Mor m = 0; m < d->num_morphisms(); ++m) {
        Functor h{c1, d, {d->src(m), d->dst(m)}, {}};
        for (Mor e = 0; e < c1->num_morphisms(); ++e)
            h.on_morphisms.push_back(c1->is_identity(e) ? d->identity(h(c1->src(e))) : m);
        functors.push_back(h);
    }
    for (const auto& a : functors)
        for (const auto& b : functors) {
            std::size_t expected = 0;
            for (Mor p : d->hom(a(0), b(0)))
                for (Mor q : d->hom(a(1), b(1)))
                    expected += d->compose(q, a.map(1)) == d->compose(b.map(1), p) ? 1 : 0;
            auto found = nat_trans_search(a, b);
            CHECK(found.size() == expected);
            for (const auto& tr : found)
                CHECK_FALSE(failing_square(tr).has_value());
        }
}

TEST_CASE("verify_certificate")
{
    auto d = cat("diamond");
    HomotopyEquivalenceCertificate id{identity_functor(d), identity_functor(d), {}, {}};
    CHECK(verify_certificate(id).verified);

    auto c1 = cat("[1]");
    auto pt = cat("point");
    HomotopyEquivalenceCertificate cert;
    cert.forward = constant_functor(c1, pt, 0);
    cert.backward = constant_functor(pt, c1, 1);
    NaturalTransformation to_one{identity_functor(c1), compose(cert.backward, cert.forward),
                                 {c1->morphism("0->1"), c1->morphism("id_1")}};
    cert.source_zigzag.push_back({to_one, false});
    CHECK(verify_certificate(cert).verified);

    cert.source_zigzag[0].transformation.components[0] = c1->morphism("id_0");
    auto bad = verify_certificate(cert);
    CHECK_FALSE(bad.verified);
    CHECK(bad.failure.find("source zig-zag step 0") != std::string::npos);
}

TEST_CASE("universal squares")
{
    const auto& d = builtin_category("diamond");
    auto push = universal_square(d, SquareKind::pushout, d.morphism("b->x"), d.morphism("b->y"));
    CHECK(d.object_name(push.apex) == "t");
    auto pull = universal_square(d, SquareKind::pullback, d.morphism("x->t"), d.morphism("y->t"));
    CHECK(d.object_name(pull.apex) == "b");

    const auto& span = builtin_category("span");
    REQUIRE_ERRC(universal_square(span, SquareKind::pushout, span.morphism("a->b"), span.morphism("a->c")),
                 Errc::NotFound);

    // exhaustive universality on random posets
    std::mt19937 rng(11);
    for (int k = 0; k < 20; ++k) {
        auto c = random_poset(rng, 5, 0.5);
        for (Mor a = 0; a < c.num_morphisms(); ++a)
            for (Mor b : c.out(c.src(a))) {
                auto u = try_universal_square(c, SquareKind::pushout, a, b);
                if (!u)
                    continue;
                CHECK(c.compose(u->first, a) == c.compose(u->second, b));
                for (Obj p = 0; p < c.num_objects(); ++p)
                    for (Mor i : c.hom(c.dst(a), p))
                        for (Mor j : c.hom(c.dst(b), p)) {
                            if (c.compose(i, a) != c.compose(j, b))
                                continue;
                            int mediators = 0;
                            for (Mor m : c.hom(u->apex, p))
                                mediators += c.compose(m, u->first) == i && c.compose(m, u->second) == j;
                            CHECK(mediators == 1);
                        }
            }
    }
}
