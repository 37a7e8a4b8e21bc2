/**
 * Document formats.
 *
 * Category (JSON):
 *   {"objects": ["a", ...],
 *    "morphisms": [{"id": "f", "src": "a", "dst": "b"}, ...],
 *    "compose": [["g", "f", "gf"], ...],
 *    "identities": {"a": "1a", ...}      or  "auto_identities": true}
 * or the poset shorthand {"poset": ["a", ...], "relations": [["a", "b"], ...]}.
 *
 * Double category: the category keys describe the h-category, plus
 * "vmorphisms", "vcompose" (and "videntities" unless auto) for the v-category
 * and "squares": [[top, bottom, left, right], ...]. {"trivial": <category>}
 * gives C_bi. "auto_identity_squares" and "auto_close" relax validation.
 *
 * Model data: a category plus "W", "Fib", "Cof" (id lists, or "all" /
 * "identities") and "strict".
 *
 * Set functor: {"category": <category>, "sets": {"a": ["p", "q"], ...},
 *               "action": {"f": ["q", "q"], ...}}
 *
 * Simplicial set (text):
 *   sset <cap>
 *   level <n> <count>
 *   labels <l_0> ... <l_count-1>       (optional)
 *   d <i> <entries>                     n+1 lines for n > 0
 *   s <i> <entries>                     n+1 lines for n < cap
 *   end
 */
#pragma once

#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "double_category.hpp"
#include "homology.hpp"
#include "model_data.hpp"
#include "simplices.hpp"

namespace nervekit {

using Json = nlohmann::ordered_json;

inline Json parse_json(const std::string& text, const std::string& where = "input")
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error(Errc::ParseError, where + ": " + e.what());
    }
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(Errc::ParseError, "cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

namespace detail {

template <class F>
auto guarded(const std::string& what, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const Json::exception& e) {
        throw Error(Errc::ParseError, what + ": " + e.what());
    }
}

inline RawCategory raw_category(const Json& j, const char* morphisms, const char* compose, const char* identities)
{
    RawCategory raw;
    raw.objects = j.at("objects").get<std::vector<std::string>>();
    for (const auto& m : j.value(morphisms, Json::array()))
        raw.morphisms.push_back({m.at("id").get<std::string>(), m.at("src").get<std::string>(),
                                 m.at("dst").get<std::string>()});
    for (const auto& e : j.value(compose, Json::array()))
        raw.compose.push_back({e.at(0).get<std::string>(), e.at(1).get<std::string>(), e.at(2).get<std::string>()});
    raw.auto_identities = j.value("auto_identities", false);
    if (j.contains(identities))
        raw.identities = j.at(identities).get<std::map<std::string, std::string>>();
    return raw;
}

inline std::vector<Mor> morphism_list(const FiniteCategory& c, const Json& j, const char* key)
{
    if (!j.contains(key))
        throw Error(Errc::ParseError, std::string("model data needs \"") + key + "\"");
    const Json& v = j.at(key);
    std::vector<Mor> out;
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        for (Mor m = 0; m < c.num_morphisms(); ++m)
            if (s == "all" || (s == "identities" && c.is_identity(m)))
                out.push_back(m);
        if (s != "all" && s != "identities")
            throw Error(Errc::ParseError, std::string("\"") + key + "\": unknown class '" + s + "'");
        return out;
    }
    for (const auto& id : v) {
        auto m = c.find_morphism(id.get<std::string>());
        if (!m)
            throw Error(Errc::DanglingEndpoint, std::string("\"") + key + "\" names unknown morphism '" +
                                                    id.get<std::string>() + "'");
        out.push_back(*m);
    }
    return out;
}

}  // namespace detail

inline FiniteCategory category_from_json(const Json& j)
{
    return detail::guarded("category", [&] {
        if (j.contains("poset")) {
            std::vector<std::pair<std::string, std::string>> rel;
            for (const auto& r : j.value("relations", Json::array()))
                rel.emplace_back(r.at(0).get<std::string>(), r.at(1).get<std::string>());
            return make_poset(j.at("poset").get<std::vector<std::string>>(), rel);
        }
        return validate_category(detail::raw_category(j, "morphisms", "compose", "identities"));
    });
}

/// Full description: explicit identities and every composite of non-identity pairs.
inline Json category_to_json(const FiniteCategory& c)
{
    Json j;
    j["objects"] = c.object_names();
    Json ms = Json::array();
    for (Mor m = 0; m < c.num_morphisms(); ++m)
        ms.push_back({{"id", c.morphism_name(m)}, {"src", c.object_name(c.src(m))}, {"dst", c.object_name(c.dst(m))}});
    j["morphisms"] = ms;
    Json ids = Json::object();
    for (Obj x = 0; x < c.num_objects(); ++x)
        ids[c.object_name(x)] = c.morphism_name(c.identity(x));
    j["identities"] = ids;
    Json comp = Json::array();
    for (Mor f = 0; f < c.num_morphisms(); ++f) {
        if (c.is_identity(f))
            continue;
        for (Mor g : c.out(c.dst(f)))
            if (!c.is_identity(g))
                comp.push_back({c.morphism_name(g), c.morphism_name(f), c.morphism_name(c.compose(g, f))});
    }
    j["compose"] = comp;
    return j;
}

inline DoubleCategory double_from_json(const Json& j)
{
    return detail::guarded("double category", [&] {
        if (j.contains("trivial"))
            return trivial_double(share(category_from_json(j.at("trivial"))));
        auto h = share(validate_category(detail::raw_category(j, "morphisms", "compose", "identities")));
        auto v = share(validate_category(detail::raw_category(j, "vmorphisms", "vcompose", "videntities")));
        std::vector<std::array<std::string, 4>> squares;
        for (const auto& s : j.value("squares", Json::array()))
            squares.push_back({s.at(0).get<std::string>(), s.at(1).get<std::string>(), s.at(2).get<std::string>(),
                               s.at(3).get<std::string>()});
        DoubleOptions opts{j.value("auto_identity_squares", false), j.value("auto_close", false)};
        return validate_double(h, v, squares, opts);
    });
}

inline Json double_to_json(const DoubleCategory& d)
{
    Json j = category_to_json(d.hcat());
    Json v = category_to_json(d.vcat());
    j["vmorphisms"] = v["morphisms"];
    j["videntities"] = v["identities"];
    j["vcompose"] = v["compose"];
    Json sq = Json::array();
    for (const auto& s : d.squares())
        sq.push_back({d.hcat().morphism_name(s.top), d.hcat().morphism_name(s.bottom),
                      d.vcat().morphism_name(s.left), d.vcat().morphism_name(s.right)});
    j["squares"] = sq;
    return j;
}

inline ModelData model_from_json(const Json& j)
{
    return detail::guarded("model data", [&] {
        auto base = share(category_from_json(j));
        return validate_model_data(base, detail::morphism_list(*base, j, "W"), detail::morphism_list(*base, j, "Fib"),
                                   detail::morphism_list(*base, j, "Cof"), j.value("strict", false));
    });
}

inline Json model_to_json(const ModelData& m, bool strict = false)
{
    Json j = category_to_json(m.category());
    auto names = [&](const std::vector<char>& cls) {
        Json out = Json::array();
        for (Mor f : marked(cls))
            out.push_back(m.category().morphism_name(f));
        return out;
    };
    j["W"] = names(m.w);
    j["Fib"] = names(m.fib);
    j["Cof"] = names(m.cof);
    j["strict"] = strict;
    return j;
}

inline SetFunctor set_functor_from_json(const Json& j)
{
    return detail::guarded("set functor", [&] {
        SetFunctor f;
        f.base = share(category_from_json(j.at("category")));
        const FiniteCategory& c = *f.base;
        const Json& sets = j.at("sets");
        for (Obj x = 0; x < c.num_objects(); ++x) {
            auto names = sets.value(c.object_name(x), std::vector<std::string>{});
            f.sizes.push_back(names.size());
            f.element_names.push_back(std::move(names));
        }
        auto element = [&](Obj x, const Json& e) -> std::size_t {
            if (e.is_number_unsigned())
                return e.get<std::size_t>();
            const auto& names = f.element_names[x];
            auto it = std::find(names.begin(), names.end(), e.get<std::string>());
            if (it == names.end())
                throw Error(Errc::DanglingEndpoint, "'" + e.get<std::string>() + "' is not an element of F(" +
                                                        c.object_name(x) + ")");
            return static_cast<std::size_t>(it - names.begin());
        };
        const Json& action = j.value("action", Json::object());
        for (Mor m = 0; m < c.num_morphisms(); ++m) {
            std::vector<std::size_t> table;
            if (action.contains(c.morphism_name(m))) {
                for (const auto& e : action.at(c.morphism_name(m)))
                    table.push_back(element(c.dst(m), e));
            } else if (c.is_identity(m)) {
                for (std::size_t x = 0; x < f.sizes[c.src(m)]; ++x)
                    table.push_back(x);
            } else {
                throw Error(Errc::ParseError, "no action given for '" + c.morphism_name(m) + "'");
            }
            f.action.push_back(std::move(table));
        }
        check_set_functor(f);
        return f;
    });
}

inline std::string sset_to_text(const SimplicialSet& k)
{
    std::ostringstream os;
    os << "sset " << k.cap() << "\n";
    auto row = [&](const Table& t) {
        for (Index v : t)
            os << " " << v;
        os << "\n";
    };
    for (int n = 0; n <= k.cap(); ++n) {
        os << "level " << n << " " << k.size(n) << "\n";
        if (k.has_labels(n)) {
            os << "labels";
            for (Index s = 0; s < k.size(n); ++s)
                os << " " << k.label(n, s);
            os << "\n";
        }
        if (n > 0)
            for (int i = 0; i <= n; ++i) {
                os << "d " << i;
                row(k.face_table(n, i));
            }
        if (n < k.cap())
            for (int i = 0; i <= n; ++i) {
                os << "s " << i;
                row(k.degeneracy_table(n, i));
            }
    }
    os << "end\n";
    return os.str();
}

/// Labels must not contain whitespace.
inline SimplicialSet sset_from_text(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    auto fail = [&](const std::string& what) {
        throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": " + what);
    };
    std::vector<SimplicialSet::Level> levels;
    int cap = -1;
    bool ended = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word) || word[0] == '#')
            continue;
        if (ended)
            fail("content after 'end'");
        if (word == "sset") {
            if (!(ls >> cap) || cap < 0)
                fail("bad cap");
            continue;
        }
        if (cap < 0)
            fail("missing 'sset' header");
        if (word == "level") {
            int n = -1;
            Index count = 0;
            if (!(ls >> n >> count) || n != static_cast<int>(levels.size()) || n > cap)
                fail("levels must be numbered 0.." + std::to_string(cap) + " in order");
            levels.push_back({count, {}, {}, {}});
        } else if (word == "labels" || word == "d" || word == "s") {
            if (levels.empty())
                fail("'" + word + "' before any level");
            auto& l = levels.back();
            if (word == "labels") {
                std::string lab;
                while (ls >> lab)
                    l.labels.push_back(lab);
                continue;
            }
            auto& tables = word == "d" ? l.faces : l.degeneracies;
            int i = -1;
            if (!(ls >> i) || i != static_cast<int>(tables.size()))
                fail("operators must be listed in order");
            Table t;
            Index v;
            while (ls >> v)
                t.push_back(v);
            if (!ls.eof())
                fail("bad entry");
            tables.push_back(std::move(t));
        } else if (word == "end") {
            ended = true;
        } else {
            fail("unknown keyword '" + word + "'");
        }
    }
    if (!ended)
        fail("missing 'end'");
    if (static_cast<int>(levels.size()) != cap + 1)
        fail("expected " + std::to_string(cap + 1) + " levels");
    return SimplicialSet(std::move(levels));
}

inline Json to_json(const DegreeHomology& h)
{
    Json t = Json::array();
    for (const auto& d : h.torsion)
        t.push_back(d.str());
    return {{"betti", h.betti}, {"torsion", t}};
}

inline DegreeHomology degree_from_json(const Json& j)
{
    DegreeHomology h;
    h.betti = j.at("betti").get<std::size_t>();
    for (const auto& d : j.at("torsion"))
        h.torsion.emplace_back(d.get<std::string>());
    return h;
}

inline Json to_json(const HomologyReport& r)
{
    Json d = Json::array();
    for (const auto& h : r.degrees)
        d.push_back(to_json(h));
    return {{"report", "homology"},
            {"degrees", d},
            {"components", r.components},
            {"truncation_warning", r.truncation_warning},
            {"note", r.note}};
}

inline HomologyReport homology_report_from_json(const Json& j)
{
    return detail::guarded("homology report", [&] {
        HomologyReport r;
        for (const auto& h : j.at("degrees"))
            r.degrees.push_back(degree_from_json(h));
        r.components = j.at("components").get<std::size_t>();
        r.truncation_warning = j.at("truncation_warning").get<bool>();
        r.note = j.at("note").get<std::string>();
        return r;
    });
}

inline bool operator==(const HomologyReport& a, const HomologyReport& b)
{
    return a.degrees == b.degrees && a.components == b.components && a.truncation_warning == b.truncation_warning &&
           a.note == b.note;
}

inline Json to_json(const QuasiIsoReport& r)
{
    Json cone = Json::array();
    for (const auto& h : r.cone)
        cone.push_back(to_json(h));
    return {{"report", "quasi-iso"},       {"max_degree", r.max_degree},         {"pi0_bijective", r.pi0_bijective},
            {"cone", cone},                {"top_degree_iso", r.top_degree_iso}, {"verdict", r.verdict},
            {"failing_degree", r.failing_degree}, {"detail", r.detail}};
}

inline QuasiIsoReport quasi_iso_report_from_json(const Json& j)
{
    return detail::guarded("quasi-iso report", [&] {
        QuasiIsoReport r;
        r.max_degree = j.at("max_degree").get<int>();
        r.pi0_bijective = j.at("pi0_bijective").get<bool>();
        for (const auto& h : j.at("cone"))
            r.cone.push_back(degree_from_json(h));
        r.top_degree_iso = j.at("top_degree_iso").get<bool>();
        r.verdict = j.at("verdict").get<bool>();
        r.failing_degree = j.at("failing_degree").get<int>();
        r.detail = j.at("detail").get<std::string>();
        return r;
    });
}

inline bool operator==(const QuasiIsoReport& a, const QuasiIsoReport& b)
{
    return a.max_degree == b.max_degree && a.pi0_bijective == b.pi0_bijective && a.cone == b.cone &&
           a.top_degree_iso == b.top_degree_iso && a.verdict == b.verdict && a.failing_degree == b.failing_degree &&
           a.detail == b.detail;
}

}  // namespace nervekit
