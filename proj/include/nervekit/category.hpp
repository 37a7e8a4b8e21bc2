/**
 * Finite categories with explicit object, morphism and composition tables.
 *
 * Objects and morphisms are addressed by dense indices; every index also
 * carries a unique string identifier used for I/O and deterministic
 * tie-breaking.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "error.hpp"

namespace nervekit {

using Obj = std::uint32_t;
using Mor = std::uint32_t;
inline constexpr std::uint32_t npos = 0xffffffffu;

class CategoryBuilder;

class FiniteCategory {
public:
    FiniteCategory() = default;

    std::size_t num_objects() const { return object_names_.size(); }
    std::size_t num_morphisms() const { return morphism_names_.size(); }

    const std::string& object_name(Obj x) const { return object_names_[x]; }
    const std::string& morphism_name(Mor m) const { return morphism_names_[m]; }
    const std::vector<std::string>& object_names() const { return object_names_; }
    const std::vector<std::string>& morphism_names() const { return morphism_names_; }

    Obj src(Mor m) const { return src_[m]; }
    Obj dst(Mor m) const { return dst_[m]; }
    Mor identity(Obj x) const { return identity_[x]; }
    bool is_identity(Mor m) const { return identity_[src_[m]] == m; }

    /// g∘f, or npos when dst(f) != src(g).
    Mor compose(Mor g, Mor f) const
    {
        if (dst_[f] != src_[g])
            return npos;
        return composite_[f][out_pos_[g]];
    }

    std::span<const Mor> out(Obj x) const { return out_[x]; }
    std::span<const Mor> in(Obj x) const { return in_[x]; }

    std::vector<Mor> hom(Obj a, Obj b) const
    {
        std::vector<Mor> result;
        for (Mor m : out_[a])
            if (dst_[m] == b)
                result.push_back(m);
        return result;
    }

    std::optional<Obj> find_object(std::string_view name) const
    {
        auto it = object_index_.find(std::string(name));
        if (it == object_index_.end())
            return std::nullopt;
        return it->second;
    }

    std::optional<Mor> find_morphism(std::string_view name) const
    {
        auto it = morphism_index_.find(std::string(name));
        if (it == morphism_index_.end())
            return std::nullopt;
        return it->second;
    }

    Obj object(std::string_view name) const
    {
        if (auto x = find_object(name))
            return *x;
        throw Error(Errc::ObjectNotFound, "no object '" + std::string(name) + "'");
    }

    Mor morphism(std::string_view name) const
    {
        if (auto m = find_morphism(name))
            return *m;
        throw Error(Errc::ObjectNotFound, "no morphism '" + std::string(name) + "'");
    }

    std::size_t num_composable_pairs() const
    {
        std::size_t total = 0;
        for (const auto& row : composite_)
            total += row.size();
        return total;
    }

    /// Exact equality of all tables, including identifiers and index order.
    friend bool operator==(const FiniteCategory& a, const FiniteCategory& b)
    {
        return a.object_names_ == b.object_names_ && a.morphism_names_ == b.morphism_names_ &&
               a.src_ == b.src_ && a.dst_ == b.dst_ && a.identity_ == b.identity_ &&
               a.out_ == b.out_ && a.composite_ == b.composite_;
    }

private:
    friend class CategoryBuilder;

    std::vector<std::string> object_names_;
    std::vector<std::string> morphism_names_;
    std::vector<Obj> src_, dst_;
    std::vector<Mor> identity_;
    std::vector<std::vector<Mor>> out_, in_;
    std::vector<std::uint32_t> out_pos_;
    // composite_[f][k] = out_[dst f][k] ∘ f
    std::vector<std::vector<Mor>> composite_;
    std::unordered_map<std::string, Obj> object_index_;
    std::unordered_map<std::string, Mor> morphism_index_;
};

using CategoryPtr = std::shared_ptr<const FiniteCategory>;

inline CategoryPtr share(FiniteCategory c)
{
    return std::make_shared<const FiniteCategory>(std::move(c));
}

enum class LawCheck { full, skip };

/**
 * Incremental construction of a FiniteCategory. Composition is supplied as a
 * rule evaluated once on every composable pair; the resulting table is then
 * checked against the identity and associativity laws.
 */
class CategoryBuilder {
public:
    Obj add_object(std::string name)
    {
        if (cat_.object_index_.count(name))
            throw Error(Errc::DuplicateIdentifier, "object '" + name + "'");
        Obj id = static_cast<Obj>(cat_.object_names_.size());
        cat_.object_index_.emplace(name, id);
        cat_.object_names_.push_back(std::move(name));
        cat_.identity_.push_back(npos);
        cat_.out_.emplace_back();
        cat_.in_.emplace_back();
        return id;
    }

    Mor add_morphism(std::string name, Obj source, Obj target)
    {
        if (cat_.morphism_index_.count(name))
            throw Error(Errc::DuplicateIdentifier, "morphism '" + name + "'");
        if (source >= cat_.object_names_.size() || target >= cat_.object_names_.size())
            throw Error(Errc::DanglingEndpoint, "morphism '" + name + "'");
        Mor id = static_cast<Mor>(cat_.morphism_names_.size());
        cat_.morphism_index_.emplace(name, id);
        cat_.morphism_names_.push_back(std::move(name));
        cat_.src_.push_back(source);
        cat_.dst_.push_back(target);
        cat_.out_pos_.push_back(static_cast<std::uint32_t>(cat_.out_[source].size()));
        cat_.out_[source].push_back(id);
        cat_.in_[target].push_back(id);
        return id;
    }

    void set_identity(Obj x, Mor m) { cat_.identity_.at(x) = m; }

    std::size_t num_objects() const { return cat_.object_names_.size(); }
    std::size_t num_morphisms() const { return cat_.morphism_names_.size(); }
    Obj src(Mor m) const { return cat_.src_[m]; }
    Obj dst(Mor m) const { return cat_.dst_[m]; }
    Mor identity(Obj x) const { return cat_.identity_[x]; }
    const std::string& morphism_name(Mor m) const { return cat_.morphism_names_[m]; }
    const std::string& object_name(Obj x) const { return cat_.object_names_[x]; }
    std::span<const Mor> out(Obj x) const { return cat_.out_[x]; }
    std::optional<Mor> find_morphism(const std::string& name) const
    {
        auto it = cat_.morphism_index_.find(name);
        if (it == cat_.morphism_index_.end())
            return std::nullopt;
        return it->second;
    }
    std::optional<Obj> find_object(const std::string& name) const
    {
        auto it = cat_.object_index_.find(name);
        if (it == cat_.object_index_.end())
            return std::nullopt;
        return it->second;
    }

    /// `rule(g, f)` returns g∘f or npos when the table has no entry.
    template <class Rule>
    FiniteCategory build(Rule&& rule, LawCheck check = LawCheck::full) &&
    {
        FiniteCategory& c = cat_;
        for (Obj x = 0; x < c.object_names_.size(); ++x) {
            Mor e = c.identity_[x];
            if (e == npos)
                throw Error(Errc::MissingIdentity, "object '" + c.object_names_[x] + "' has no identity");
            if (c.src_[e] != x || c.dst_[e] != x)
                throw Error(Errc::MissingIdentity, "identity '" + c.morphism_names_[e] +
                                                       "' is not an endomorphism of '" +
                                                       c.object_names_[x] + "'");
        }
        c.composite_.assign(c.morphism_names_.size(), {});
        for (Mor f = 0; f < c.morphism_names_.size(); ++f) {
            const auto& nexts = c.out_[c.dst_[f]];
            auto& row = c.composite_[f];
            row.resize(nexts.size());
            for (std::size_t k = 0; k < nexts.size(); ++k) {
                Mor g = nexts[k];
                Mor gf = rule(g, f);
                if (gf == npos)
                    throw Error(Errc::IncompleteCompositionTable,
                                "no entry for " + c.morphism_names_[g] + " o " + c.morphism_names_[f]);
                if (gf >= c.morphism_names_.size() || c.src_[gf] != c.src_[f] || c.dst_[gf] != c.dst_[g])
                    throw Error(Errc::BadCompositionEntry,
                                c.morphism_names_[g] + " o " + c.morphism_names_[f] +
                                    " has the wrong endpoints");
                row[k] = gf;
            }
        }
        if (check == LawCheck::full)
            check_laws();
        return std::move(cat_);
    }

private:
    void check_laws() const
    {
        const FiniteCategory& c = cat_;
        for (Mor f = 0; f < c.morphism_names_.size(); ++f) {
            Mor left = c.compose(c.identity_[c.dst_[f]], f);
            Mor right = c.compose(f, c.identity_[c.src_[f]]);
            if (left != f || right != f)
                throw Error(Errc::MissingIdentity,
                            "identity law fails for '" + c.morphism_names_[f] + "'");
        }
        for (Mor f = 0; f < c.morphism_names_.size(); ++f) {
            for (std::size_t k = 0; k < c.composite_[f].size(); ++k) {
                Mor g = c.out_[c.dst_[f]][k];
                Mor gf = c.composite_[f][k];
                for (Mor h : c.out_[c.dst_[g]]) {
                    if (c.compose(h, gf) != c.compose(c.compose(h, g), f))
                        throw Error(Errc::NonAssociative, c.morphism_names_[h] + " o (" +
                                                              c.morphism_names_[g] + " o " +
                                                              c.morphism_names_[f] + ")");
                }
            }
        }
    }

    FiniteCategory cat_;
};

/// Category description as it appears in input documents.
struct MorphismSpec {
    std::string id, src, dst;
};

struct RawCategory {
    std::vector<std::string> objects;
    std::vector<MorphismSpec> morphisms;
    std::vector<std::array<std::string, 3>> compose;  // {g, f, g∘f}
    std::map<std::string, std::string> identities;     // object -> identity morphism
    bool auto_identities = false;
};

inline std::string default_identity_name(const std::string& object) { return "id_" + object; }

/**
 * Validates a raw description. With `auto_identities` an identity "id_<x>" is
 * generated for every object. Composites involving identities are filled in
 * when absent; any other missing composable pair is an error.
 */
inline FiniteCategory validate_category(const RawCategory& raw)
{
    CategoryBuilder b;
    for (const auto& x : raw.objects)
        b.add_object(x);
    for (const auto& m : raw.morphisms) {
        auto s = b.find_object(m.src);
        auto d = b.find_object(m.dst);
        if (!s || !d)
            throw Error(Errc::DanglingEndpoint, "morphism '" + m.id + "' refers to unknown object '" +
                                                    (!s ? m.src : m.dst) + "'");
        b.add_morphism(m.id, *s, *d);
    }
    for (Obj x = 0; x < b.num_objects(); ++x) {
        const std::string& name = b.object_name(x);
        if (raw.auto_identities) {
            if (raw.identities.count(name))
                throw Error(Errc::DuplicateIdentifier, "identity of '" + name + "' given with auto_identities");
            b.set_identity(x, b.add_morphism(default_identity_name(name), x, x));
            continue;
        }
        auto it = raw.identities.find(name);
        if (it == raw.identities.end())
            throw Error(Errc::MissingIdentity, "object '" + name + "' has no identity");
        auto m = b.find_morphism(it->second);
        if (!m)
            throw Error(Errc::DanglingEndpoint, "identity '" + it->second + "' is not a morphism");
        b.set_identity(x, *m);
    }
    for (const auto& [object, mor] : raw.identities)
        if (!b.find_object(object))
            throw Error(Errc::DanglingEndpoint, "identity given for unknown object '" + object + "'");

    std::map<std::pair<Mor, Mor>, Mor> table;
    for (const auto& entry : raw.compose) {
        auto g = b.find_morphism(entry[0]);
        auto f = b.find_morphism(entry[1]);
        auto gf = b.find_morphism(entry[2]);
        if (!g || !f || !gf)
            throw Error(Errc::DanglingEndpoint, "composition entry [" + entry[0] + ", " + entry[1] + ", " +
                                                    entry[2] + "] names an unknown morphism");
        if (b.dst(*f) != b.src(*g))
            throw Error(Errc::BadCompositionEntry, entry[0] + " o " + entry[1] + " is not composable");
        auto [it, inserted] = table.emplace(std::make_pair(*g, *f), *gf);
        if (!inserted && it->second != *gf)
            throw Error(Errc::BadCompositionEntry, "conflicting entries for " + entry[0] + " o " + entry[1]);
    }
    return std::move(b).build([&](Mor g, Mor f) -> Mor {
        auto it = table.find({g, f});
        if (it != table.end())
            return it->second;
        if (g == b.identity(b.src(g)))
            return f;
        if (f == b.identity(b.src(f)))
            return g;
        return npos;
    });
}

/**
 * Poset category from a generating relation. Morphisms are named "a->b",
 * identities "id_a". Throws InvalidArgument if the relation has a cycle.
 */
inline FiniteCategory make_poset(const std::vector<std::string>& elements,
                                 const std::vector<std::pair<std::string, std::string>>& relations)
{
    const std::size_t n = elements.size();
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < n; ++i)
        if (!pos.emplace(elements[i], i).second)
            throw Error(Errc::DuplicateIdentifier, "poset element '" + elements[i] + "'");
    std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        leq[i][i] = 1;
    for (const auto& [a, c] : relations) {
        if (!pos.count(a) || !pos.count(c))
            throw Error(Errc::DanglingEndpoint, "relation " + a + " <= " + c);
        leq[pos[a]][pos[c]] = 1;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (leq[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (leq[k][j])
                        leq[i][j] = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (leq[i][j] && leq[j][i])
                throw Error(Errc::InvalidArgument, "relation has a cycle through " + elements[i] +
                                                       " and " + elements[j]);

    CategoryBuilder b;
    for (const auto& e : elements)
        b.add_object(e);
    std::vector<std::vector<Mor>> arrow(n, std::vector<Mor>(n, npos));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (leq[i][j]) {
                std::string name = i == j ? default_identity_name(elements[i]) : elements[i] + "->" + elements[j];
                arrow[i][j] = b.add_morphism(std::move(name), static_cast<Obj>(i), static_cast<Obj>(j));
            }
    for (std::size_t i = 0; i < n; ++i)
        b.set_identity(static_cast<Obj>(i), arrow[i][i]);
    return std::move(b).build(
        [&](Mor g, Mor f) { return arrow[b.src(f)][b.dst(g)]; }, LawCheck::skip);
}

/// The poset category [n] = {0 < 1 < ... < n}.
inline FiniteCategory chain_category(int n)
{
    std::vector<std::string> elems;
    std::vector<std::pair<std::string, std::string>> rel;
    for (int i = 0; i <= n; ++i) {
        elems.push_back(std::to_string(i));
        if (i > 0)
            rel.emplace_back(std::to_string(i - 1), std::to_string(i));
    }
    return make_poset(elems, rel);
}

inline FiniteCategory terminal_category() { return make_poset({"*"}, {}); }

inline FiniteCategory discrete_category(const std::vector<std::string>& objects)
{
    return make_poset(objects, {});
}

inline FiniteCategory empty_category() { return make_poset({}, {}); }

/// Two parallel arrows a, b : x -> y. Its nerve is a circle.
inline FiniteCategory parallel_pair()
{
    RawCategory raw;
    raw.objects = {"x", "y"};
    raw.morphisms = {{"a", "x", "y"}, {"b", "x", "y"}};
    raw.auto_identities = true;
    return validate_category(raw);
}

/// The diamond poset b < x, y < t.
inline FiniteCategory diamond_poset()
{
    return make_poset({"b", "x", "y", "t"}, {{"b", "x"}, {"b", "y"}, {"x", "t"}, {"y", "t"}});
}

/// Same objects, endpoints swapped, composition reversed. Identifiers are kept
/// so that opposite(opposite(C)) == C exactly.
inline FiniteCategory opposite(const FiniteCategory& c)
{
    CategoryBuilder b;
    for (Obj x = 0; x < c.num_objects(); ++x)
        b.add_object(c.object_name(x));
    for (Mor m = 0; m < c.num_morphisms(); ++m)
        b.add_morphism(c.morphism_name(m), c.dst(m), c.src(m));
    for (Obj x = 0; x < c.num_objects(); ++x)
        b.set_identity(x, c.identity(x));
    return std::move(b).build([&](Mor g, Mor f) { return c.compose(f, g); }, LawCheck::skip);
}

inline std::string pair_name(const std::string& a, const std::string& b) { return "(" + a + "," + b + ")"; }

/// Componentwise product; objects and morphisms are enumerated first-factor-major.
inline FiniteCategory product(const FiniteCategory& c, const FiniteCategory& d)
{
    CategoryBuilder b;
    const std::size_t dn = d.num_objects();
    const std::size_t dm = d.num_morphisms();
    for (Obj x = 0; x < c.num_objects(); ++x)
        for (Obj y = 0; y < dn; ++y)
            b.add_object(pair_name(c.object_name(x), d.object_name(y)));
    for (Mor f = 0; f < c.num_morphisms(); ++f)
        for (Mor g = 0; g < dm; ++g)
            b.add_morphism(pair_name(c.morphism_name(f), d.morphism_name(g)),
                           static_cast<Obj>(c.src(f) * dn + d.src(g)),
                           static_cast<Obj>(c.dst(f) * dn + d.dst(g)));
    for (Obj x = 0; x < c.num_objects(); ++x)
        for (Obj y = 0; y < dn; ++y)
            b.set_identity(static_cast<Obj>(x * dn + y), static_cast<Mor>(c.identity(x) * dm + d.identity(y)));
    return std::move(b).build(
        [&](Mor g, Mor f) -> Mor {
            Mor gc = c.compose(g / dm, f / dm);
            Mor gd = d.compose(g % dm, f % dm);
            return static_cast<Mor>(gc * dm + gd);
        },
        LawCheck::skip);
}

/// Exhaustive search for a terminal object; least identifier wins.
inline std::optional<Obj> find_terminal(const FiniteCategory& c)
{
    std::optional<Obj> best;
    for (Obj t = 0; t < c.num_objects(); ++t) {
        bool ok = true;
        for (Obj x = 0; x < c.num_objects() && ok; ++x)
            ok = c.hom(x, t).size() == 1;
        if (ok && (!best || c.object_name(t) < c.object_name(*best)))
            best = t;
    }
    return best;
}

}  // namespace nervekit
