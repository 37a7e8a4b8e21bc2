// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <iostream>
#include <random>
#include <sstream>

#include <nervekit/nervekit.hpp>

#include "oracles.hpp"

using namespace nervekit;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void fail(const std::string& why)
    {
        if (pass)
            detail << why;
        pass = false;
    }
};

CategoryPtr cat(const std::string& name) { return share(builtin_category(name)); }

std::vector<CategoryPtr> corpus_categories()
{
    std::vector<CategoryPtr> out;
    for (const auto& n : builtin_category_names())
        out.push_back(cat(n));
    std::mt19937 rng(2024);
    for (int k = 0; k < 10; ++k)
        out.push_back(share(random_category(rng, 4, 12)));
    return out;
}

std::vector<std::pair<std::string, ModelData>> strict_instances(int random_count, unsigned seed)
{
    std::vector<std::pair<std::string, ModelData>> out;
    for (const auto& name : builtin_model_names()) {
        auto inst = builtin_model(name);
        if (inst.strict)
            out.emplace_back(name, inst.model);
    }
    std::mt19937 rng(seed);
    for (int k = 0; k < random_count; ++k)
        out.emplace_back("random-" + std::to_string(k), random_strict_model(rng, 5));
    return out;
}

std::string pair_name(const ModelData& m, Obj x, Obj y)
{
    return "(" + m.category().object_name(x) + ", " + m.category().object_name(y) + ")";
}

Outcome simplicial_identities()
{
    Outcome o;
    std::mt19937 rng(1);
    std::size_t checked = 0;
    auto run = [&](const FiniteCategory& c, const std::string& what) {
        auto f = simplicial_identity_failures(*nerve(share(c), 3).simplicial);
        if (!f.empty())
            o.fail(what + ": " + f.front());
        ++checked;
    };
    for (int k = 0; k < 50; ++k)
        run(random_poset(rng, 6), "poset " + std::to_string(k));
    for (int k = 0; k < 20; ++k)
        run(random_category(rng, 4, 12), "category " + std::to_string(k));
    o.detail << (o.pass ? std::to_string(checked) + " nerves, zero failures" : "");
    return o;
}

Outcome chi_splitting()
{
    Outcome o;
    std::size_t checked = 0;
    for (const auto& c : corpus_categories())
        for (int cap = 0; cap <= 3; ++cap) {
            auto data = diagonal_data(share(trivial_double(c)), cap);
            auto nv = nerve(c, cap);
            auto x = chi(data, nv);
            auto id = identity_smap(nv.simplicial);
            if (!(compose(x, data.h_edge) == id) || !(compose(x, data.v_edge) == id))
                o.fail("cap " + std::to_string(cap));
            ++checked;
        }
    if (o.pass)
        o.detail << checked << " category/cap pairs exact";
    return o;
}

Outcome edge_maps()
{
    Outcome o;
    for (const char* name : {"[1]", "[2]", "parallel-pair", "diamond"}) {
        auto data = diagonal_data(share(trivial_double(cat(name))), 3);
        for (const auto* f : {&data.h_edge, &data.v_edge}) {
            auto r = quasi_iso_check(*f);
            if (!r.verdict)
                o.fail(std::string(name) + ": " + r.text());
        }
    }
    if (o.pass)
        o.detail << "both edge maps quasi-iso in range [0,2] for 4 categories";
    return o;
}

Outcome category_of_simplices_check()
{
    Outcome o;
    struct Case {
        const char* name;
        SSetPtr k;
        std::vector<std::size_t> betti;
    };
    std::vector<Case> cases = {
        {"full triangle", share(from_ordered_complex(3, {{0, 1, 2}}, 3)), {1, 0, 0}},
        {"boundary triangle", share(from_ordered_complex(3, {{0, 1}, {1, 2}, {0, 2}}, 3)), {1, 1, 0}},
        {"circle", nerve(cat("parallel-pair"), 3).simplicial, {1, 1, 0}},
    };
    for (const auto& c : cases) {
        auto hk = homology(*c.k);
        auto dk = category_of_simplices(*c.k);
        auto hd = homology(*nerve(dk.category, 3).simplicial);
        std::vector<std::size_t> betti;
        for (const auto& d : hk.degrees)
            betti.push_back(d.betti);
        if (!(hk.degrees == hd.degrees))
            o.fail(std::string(c.name) + ": homology of the nerve differs");
        else if (betti != c.betti)
            o.fail(std::string(c.name) + ": unexpected Betti numbers");
    }
    if (o.pass)
        o.detail << "3 simplicial sets match in degrees <= 2";
    return o;
}

Outcome twisted_iso()
{
    Outcome o;
    auto diamond = builtin_model("diamond").model;
    std::vector<std::pair<std::string, ModelData>> ms = {{"diamond", diamond}};
    std::mt19937 rng(5);
    for (int k = 0; k < 10; ++k)
        ms.emplace_back("random-" + std::to_string(k), random_strict_model(rng, 5));
    std::size_t pairs = 0;
    for (const auto& [name, m] : ms) {
        std::vector<std::pair<Obj, Obj>> ends;
        if (name == "diamond")
            ends.emplace_back(m.category().object("x"), m.category().object("y"));
        else
            for (Obj x = 0; x < m.category().num_objects(); ++x)
                for (Obj y = 0; y < m.category().num_objects(); ++y)
                    ends.emplace_back(x, y);
        for (auto [x, y] : ends) {
            auto r = twisted_iso_check(m, x, y);
            if (!r.verdict() || !r.canonical_object_bijection)
                o.fail(name + " " + pair_name(m, x, y) + ": " + r.detail);
            ++pairs;
        }
    }
    if (o.pass)
        o.detail << pairs << " endpoint pairs; El(K) isomorphic to restricted-tw^op, homology agrees";
    return o;
}

Outcome moduli_witness_check()
{
    Outcome o;
    auto ms = strict_instances(4, 11);
    ms.emplace_back("diamond", builtin_model("diamond").model);
    std::size_t checked = 0;
    for (const auto& [name, m] : ms)
        for (Obj x = 0; x < m.category().num_objects(); ++x)
            for (Obj y = 0; y < m.category().num_objects(); ++y) {
                try {
                    auto md = moduli_double(m, x, y);
                    if (md.h.objects.empty())
                        continue;
                    for (Direction dir : {Direction::v, Direction::h}) {
                        auto r = reduction_check(moduli_witness(md, dir), 3);
                        if (!r.verdict())
                            o.fail(name + " " + pair_name(m, x, y) + " " + to_string(dir) + ": " + r.text());
                    }
                    ++checked;
                } catch (const Error& e) {
                    o.fail(name + " " + pair_name(m, x, y) + ": " + e.what());
                }
            }
    if (o.pass)
        o.detail << checked << " moduli double categories, both edge maps certified";
    return o;
}

QuasiIsoReport main_inclusion(const ModelData& m, Obj x, Obj y)
{
    auto hf = build_moduli(m, x, y, Variant::hom_f);
    auto h = build_moduli(m, x, y, Variant::hom);
    auto j = moduli_inclusion(hf, h);
    return quasi_iso_check(nerve_map(j, nerve(hf.category, 3), nerve(h.category, 3)));
}

Outcome main_inclusion_check()
{
    Outcome o;
    auto diamond = builtin_model("diamond").model;
    auto r = main_inclusion(diamond, diamond.category().object("x"), diamond.category().object("y"));
    if (!r.verdict)
        o.fail("diamond: " + r.text());
    std::size_t instances = 0;
    for (const auto& [name, m] : strict_instances(4, 13)) {
        bool any = false;
        for (Obj x = 0; x < m.category().num_objects(); ++x)
            for (Obj y = 0; y < m.category().num_objects(); ++y) {
                if (!is_fibrant(m, y))
                    continue;
                auto q = main_inclusion(m, x, y);
                if (!q.verdict)
                    o.fail(name + " " + pair_name(m, x, y) + ": " + q.text());
                any = true;
            }
        instances += any;
    }
    if (instances < 3)
        o.fail("only " + std::to_string(instances) + " strict instances with fibrant Y");
    if (o.pass)
        o.detail << "diamond plus " << instances << " strict instances, quasi-iso in range [0,2]";
    return o;
}

Outcome retraction_certificates()
{
    Outcome o;
    auto ms = strict_instances(4, 17);
    ms.emplace_back("diamond", builtin_model("diamond").model);
    std::size_t verified = 0, skipped = 0;
    for (const auto& [name, m] : ms)
        for (Obj x = 0; x < m.category().num_objects(); ++x)
            for (Obj y = 0; y < m.category().num_objects(); ++y)
                for (auto kind : {RetractionKind::hom_to_restricted, RetractionKind::hom_f_to_wfib_inv}) {
                    try {
                        auto r = retraction_functor(m, x, y, kind);
                        if (!r.check.verified)
                            o.fail(name + " " + pair_name(m, x, y) + ": " + r.check.failure);
                        ++verified;
                    } catch (const Error& e) {
                        if (e.code() == Errc::NotFibrant || e.code() == Errc::MissingLimit)
                            ++skipped;
                        else
                            o.fail(name + " " + pair_name(m, x, y) + ": " + e.what());
                    }
                }
    if (o.pass)
        o.detail << verified << " certificates verified, " << skipped << " cases outside the preconditions";
    return o;
}

Outcome smith_oracle()
{
    Outcome o;
    std::mt19937 rng(19);
    std::uniform_int_distribution<int> dim(1, 6), entry(-9, 9);
    for (int t = 0; t < 200; ++t) {
        Matrix<std::int64_t> m(dim(rng), dim(rng));
        for (auto& v : m.data)
            v = entry(rng);
        auto r = smith_normal_form(m);
        auto abs_det = [](const Matrix<BigInt>& a) {
            BigInt d = oracles::cofactor_det(a);
            return d < 0 ? BigInt(-d) : d;
        };
        if (!(r.left * convert<BigInt>(m) * r.right == r.diagonal))
            o.fail("matrix " + std::to_string(t) + ": L*M*R != D");
        else if (abs_det(r.left) != 1 || abs_det(r.right) != 1)
            o.fail("matrix " + std::to_string(t) + ": transform not unimodular");
        else if (r.divisors != oracles::minor_oracle(m))
            o.fail("matrix " + std::to_string(t) + ": diagonal differs from the determinant divisors");
    }
    if (o.pass)
        o.detail << "200 matrices agree with the gcd-of-minors oracle";
    return o;
}

Outcome homology_goldens()
{
    Outcome o;
    auto betti = [](const HomologyReport& r) {
        std::vector<std::size_t> b;
        for (const auto& d : r.degrees) {
            b.push_back(d.betti);
            if (!d.torsion.empty())
                b.push_back(99);
        }
        return b;
    };
    if (betti(homology(*nerve(cat("point"), 1).simplicial)) != std::vector<std::size_t>{1})
        o.fail("point");
    if (betti(homology(*nerve(cat("parallel-pair"), 2).simplicial)) != std::vector<std::size_t>{1, 1})
        o.fail("circle");
    if (betti(homology(from_ordered_complex(3, {{0, 1}, {1, 2}, {0, 2}}, 2))) != std::vector<std::size_t>{1, 1})
        o.fail("boundary triangle");
    if (betti(homology(from_ordered_complex(3, {{0, 1, 2}}, 2))) != std::vector<std::size_t>{1, 0})
        o.fail("full triangle");
    std::size_t checked = 0;
    for (const auto& c : corpus_categories()) {
        auto op = share(opposite(*c));
        if (!(homology(*nerve(c, 3).simplicial).degrees == homology(*nerve(op, 3).simplicial).degrees))
            o.fail("opposite of a corpus category");
        ++checked;
    }
    if (o.pass)
        o.detail << "4 goldens, " << checked << " categories match their opposites";
    return o;
}

}  // namespace

int main()
{
    struct Criterion {
        const char* name;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {"simplicial identities of nerves", simplicial_identities},
        {"chi splits both edge maps", chi_splitting},
        {"edge maps of trivial double categories", edge_maps},
        {"category of simplices", category_of_simplices_check},
        {"category of elements vs restricted-tw", twisted_iso},
        {"moduli witnesses", moduli_witness_check},
        {"hom-f into hom on nerves", main_inclusion_check},
        {"retraction certificates", retraction_certificates},
        {"Smith normal form oracle", smith_oracle},
        {"homology goldens", homology_goldens},
    };
    int failures = 0;
    int n = 0;
    for (const auto& c : criteria) {
        ++n;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        std::cout << "criterion " << n << " (" << c.name << "): " << (o.pass ? "PASS" : "FAIL") << ": "
                  << o.detail.str() << std::endl;
        failures += !o.pass;
    }
    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
    return failures == 0 ? 0 : 1;
}
