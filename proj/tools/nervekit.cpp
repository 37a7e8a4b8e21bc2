// nervekit command line: finite categories, nerves, double categories and zig-zag moduli.
//
// Exit codes: 0 success, 1 a check ran and failed, 2 bad input or flags.

#include <nervekit/nervekit.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace nervekit;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kBadInput = 2;

struct Options {
    std::vector<std::string> inputs;
    int max_dim = 2;
    std::string format = "text";
    std::string out;
    std::string variant = "hom";
    std::string from, to;
    bool strict = false;
};

enum class Kind { category, double_category, model, set_functor, sset };

bool is_sset_path(const std::string& path) { return std::filesystem::path(path).extension() == ".sset"; }

Kind detect(const std::string& path, const Json& j)
{
    if (is_sset_path(path))
        return Kind::sset;
    if (!j.is_object())
        throw Error(Errc::ParseError, path + ": expected a JSON object");
    if (j.contains("trivial") || j.contains("vmorphisms"))
        return Kind::double_category;
    if (j.contains("sets") || j.contains("action"))
        return Kind::set_functor;
    if (j.contains("W") || j.contains("Fib") || j.contains("Cof"))
        return Kind::model;
    return Kind::category;
}

Json load_json(const std::string& path) { return parse_json(read_file(path), path); }

CategoryPtr load_category(const std::string& path) { return share(category_from_json(load_json(path))); }

/// A category file or a double category file (categories become trivial double categories).
DoublePtr load_double(const std::string& path)
{
    auto j = load_json(path);
    if (detect(path, j) == Kind::category)
        return share(trivial_double(share(category_from_json(j))));
    return share(double_from_json(j));
}

ModelData load_model(const std::string& path, bool strict)
{
    auto j = load_json(path);
    if (strict)
        j["strict"] = true;
    return model_from_json(j);
}

/// A simplicial set file, or the nerve of a category file truncated at `cap`.
struct Space {
    SSetPtr sset;
    bool truncation_warning = false;
    std::optional<Nerve> nerve;
};

Space load_space(const std::string& path, int cap)
{
    if (is_sset_path(path)) {
        auto k = share(sset_from_text(read_file(path)));
        if (k->cap() < cap)
            throw Error(Errc::CapMismatch, path + " stops at dimension " + std::to_string(k->cap()));
        return {k, false, std::nullopt};
    }
    auto nv = nerve(load_category(path), cap);
    return {nv.simplicial, nv.truncation_warning, nv};
}

Obj endpoint(const ModelData& m, const std::string& name, const char* flag)
{
    if (name.empty())
        throw Error(Errc::InvalidArgument, std::string(flag) + " is required");
    return m.category().object(name);
}

void emit(const Options& o, const std::string& text)
{
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f)
        throw Error(Errc::InvalidArgument, "cannot write " + o.out);
    f << text;
}

bool machine(const Options& o) { return o.format == "machine"; }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json counts_json(const SimplicialSet& k)
{
    Json levels = Json::array(), nd = Json::array();
    for (int n = 0; n <= k.cap(); ++n)
        levels.push_back(k.size(n));
    for (auto c : k.nondegenerate_counts())
        nd.push_back(c);
    return Json{{"cap", k.cap()}, {"simplices", levels}, {"nondegenerate", nd}};
}

std::string counts_text(const SimplicialSet& k)
{
    std::ostringstream os;
    auto nd = k.nondegenerate_counts();
    for (int n = 0; n <= k.cap(); ++n)
        os << "level " << n << ": " << k.size(n) << " simplices, " << nd[n] << " nondegenerate\n";
    return os.str();
}

/// One line: H_0 and every nonzero higher degree.
std::string homology_summary(const HomologyReport& h)
{
    std::ostringstream os;
    for (std::size_t n = 0; n < h.degrees.size(); ++n) {
        const auto& d = h.degrees[n];
        if (n > 0 && d.betti == 0 && d.torsion.empty())
            continue;
        if (n > 0)
            os << "; ";
        os << "H_" << n << " = " << to_string(d);
    }
    return os.str();
}

std::string category_summary(const FiniteCategory& c)
{
    return std::to_string(c.num_objects()) + " objects, " + std::to_string(c.num_morphisms()) + " morphisms";
}

// subcommands

int run_validate(const Options& o)
{
    const std::string& path = o.inputs.at(0);
    Json report;
    std::string line;
    if (is_sset_path(path)) {
        auto k = sset_from_text(read_file(path));
        report = counts_json(k);
        line = "valid simplicial set: cap " + std::to_string(k.cap());
    } else {
        auto j = load_json(path);
        switch (detect(path, j)) {
        case Kind::category: {
            auto c = category_from_json(j);
            report = {{"objects", c.num_objects()}, {"morphisms", c.num_morphisms()}};
            line = "valid category: " + category_summary(c);
            break;
        }
        case Kind::double_category: {
            auto d = double_from_json(j);
            report = {{"objects", d.hcat().num_objects()},
                      {"horizontal", d.hcat().num_morphisms()},
                      {"vertical", d.vcat().num_morphisms()},
                      {"squares", d.squares().size()}};
            line = "valid double category: " + std::to_string(d.hcat().num_objects()) + " objects, " +
                   std::to_string(d.hcat().num_morphisms()) + " horizontal, " +
                   std::to_string(d.vcat().num_morphisms()) + " vertical, " + std::to_string(d.squares().size()) +
                   " squares";
            break;
        }
        case Kind::model: {
            bool strict = o.strict || j.value("strict", false);
            auto m = load_model(path, o.strict);
            auto count = [](const std::vector<char>& v) { return std::count(v.begin(), v.end(), 1); };
            report = {{"objects", m.category().num_objects()},
                      {"morphisms", m.category().num_morphisms()},
                      {"W", count(m.w)},
                      {"Fib", count(m.fib)},
                      {"Cof", count(m.cof)},
                      {"strict", strict}};
            line = "valid model data: " + category_summary(m.category()) + (strict ? ", strict audit passed" : "");
            break;
        }
        case Kind::set_functor: {
            auto f = set_functor_from_json(j);
            check_set_functor(f);
            std::size_t total = 0;
            for (auto s : f.sizes)
                total += s;
            report = {{"objects", f.base->num_objects()}, {"elements", total}};
            line = "valid set functor: " + std::to_string(total) + " elements over " +
                   std::to_string(f.base->num_objects()) + " objects";
            break;
        }
        case Kind::sset: break;
        }
    }
    if (machine(o)) {
        report["valid"] = true;
        emit(o, dump(report));
    } else {
        emit(o, line + "\n");
    }
    return kOk;
}

int run_nerve(const Options& o)
{
    auto nv = nerve(load_category(o.inputs.at(0)), o.max_dim);
    if (!o.out.empty()) {
        emit(o, sset_to_text(*nv.simplicial));
        return kOk;
    }
    if (machine(o)) {
        auto j = counts_json(*nv.simplicial);
        j["truncation_warning"] = nv.truncation_warning;
        std::cout << dump(j);
        return kOk;
    }
    std::cout << counts_text(*nv.simplicial);
    if (nv.truncation_warning)
        std::cout << "warning: nondegenerate simplices continue past dimension " << o.max_dim << "\n";
    return kOk;
}

int run_binerve(const Options& o)
{
    auto b = binerve(load_double(o.inputs.at(0)), o.max_dim, o.max_dim);
    Json grid = Json::array();
    std::ostringstream os;
    for (int p = 0; p <= o.max_dim; ++p) {
        Json row = Json::array();
        os << "p=" << p << ":";
        for (int q = 0; q <= o.max_dim; ++q) {
            row.push_back(b.sset.size(p, q));
            os << " " << b.sset.size(p, q);
        }
        grid.push_back(row);
        os << "\n";
    }
    emit(o, machine(o) ? dump(Json{{"cap", o.max_dim}, {"sizes", grid}}) : os.str());
    return kOk;
}

int run_diag(const Options& o)
{
    auto data = diagonal_data(load_double(o.inputs.at(0)), o.max_dim);
    if (!o.out.empty()) {
        emit(o, sset_to_text(*data.diagonal));
        return kOk;
    }
    std::cout << (machine(o) ? dump(counts_json(*data.diagonal)) : counts_text(*data.diagonal));
    return kOk;
}

int run_chi_check(const Options& o)
{
    auto c = load_category(o.inputs.at(0));
    auto data = diagonal_data(share(trivial_double(c)), o.max_dim);
    auto nv = nerve(c, o.max_dim);
    auto x = chi(data, nv);
    auto id = identity_smap(nv.simplicial);
    bool h = compose(x, data.h_edge) == id;
    bool v = compose(x, data.v_edge) == id;
    if (machine(o))
        emit(o, dump(Json{{"h", h}, {"v", v}, {"cap", o.max_dim}}));
    else if (h && v)
        emit(o, "chi∘f1 = chi∘f2 = id: PASS\n");
    else
        emit(o, std::string("chi∘f1 = id: ") + (h ? "PASS" : "FAIL") + "; chi∘f2 = id: " + (v ? "PASS" : "FAIL") +
                    "\n");
    return h && v ? kOk : kFailed;
}

int run_homology(const Options& o)
{
    auto s = load_space(o.inputs.at(0), o.max_dim);
    auto h = homology(*s.sset, s.truncation_warning);
    if (machine(o)) {
        emit(o, dump(to_json(h)));
        return kOk;
    }
    std::string text = homology_summary(h) + "\n";
    if (!h.note.empty())
        text += "note: " + h.note + "\n";
    emit(o, text);
    return kOk;
}

std::vector<Table> levels_from_json(const Json& j)
{
    std::vector<Table> out;
    for (const auto& level : j.at("levels")) {
        Table t;
        for (const auto& v : level)
            t.push_back(v.get<Index>());
        out.push_back(std::move(t));
    }
    return out;
}

int run_compare(const Options& o)
{
    auto a = load_space(o.inputs.at(0), o.max_dim);
    auto b = load_space(o.inputs.at(1), o.max_dim);
    auto j = load_json(o.inputs.at(2));
    auto f = detail::guarded("map", [&] {
        if (j.contains("levels"))
            return validate_smap(a.sset, b.sset, levels_from_json(j));
        if (!a.nerve || !b.nerve)
            throw Error(Errc::InvalidArgument, "a functor map needs two category files");
        auto obj = j.at("objects").get<std::map<std::string, std::string>>();
        auto mor = j.value("morphisms", std::map<std::string, std::string>{});
        return nerve_map(validate_functor(a.nerve->category, b.nerve->category, obj, mor), *a.nerve, *b.nerve);
    });
    auto q = quasi_iso_check(f);
    emit(o, machine(o) ? dump(to_json(q)) : q.text() + "\n");
    return q.verdict ? kOk : kFailed;
}

int run_simplices(const Options& o)
{
    auto s = load_space(o.inputs.at(0), o.max_dim);
    auto sc = category_of_simplices(*s.sset);
    auto ns = nerve(sc.category, o.max_dim);
    auto hk = homology(*s.sset);
    auto hs = homology(*ns.simplicial);
    bool agree = hk.degrees == hs.degrees;
    if (machine(o)) {
        emit(o, dump(Json{{"objects", sc.category->num_objects()},
                          {"morphisms", sc.category->num_morphisms()},
                          {"not_regular", sc.not_regular},
                          {"homology", to_json(hk)},
                          {"simplices_homology", to_json(hs)},
                          {"agree", agree}}));
    } else {
        std::ostringstream os;
        os << "category of simplices: " << category_summary(*sc.category) << "\n";
        os << "homology of K: " << homology_summary(hk) << "\n";
        os << "homology of its category of simplices: " << homology_summary(hs) << "\n";
        if (sc.not_regular)
            os << "warning: some nondegenerate simplex has a degenerate face\n";
        os << "agree: " << (agree ? "PASS" : "FAIL") << "\n";
        emit(o, os.str());
    }
    return agree ? kOk : kFailed;
}

int run_hocolim(const Options& o)
{
    auto f = set_functor_from_json(load_json(o.inputs.at(0)));
    auto e = category_of_elements(f);
    auto nv = nerve(e.category, o.max_dim);
    auto h = homology(*nv.simplicial, nv.truncation_warning);
    if (machine(o)) {
        emit(o, dump(Json{{"elements", category_to_json(*e.category)}, {"homology", to_json(h)}}));
        return kOk;
    }
    std::string text = "category of elements: " + category_summary(*e.category) + "\n" + homology_summary(h) + "\n";
    if (!h.note.empty())
        text += "note: " + h.note + "\n";
    emit(o, text);
    return kOk;
}

int run_moduli(const Options& o)
{
    auto m = load_model(o.inputs.at(0), o.strict);
    auto x = endpoint(m, o.from, "--from");
    auto y = endpoint(m, o.to, "--to");
    auto mc = build_moduli(m, x, y, parse_variant(o.variant));
    const FiniteCategory& c = m.category();
    if (machine(o)) {
        Json j = category_to_json(*mc.category);
        j["variant"] = to_string(mc.variant);
        emit(o, dump(j));
        return kOk;
    }
    std::ostringstream os;
    os << o.variant << "(" << o.from << ", " << o.to << "): " << category_summary(*mc.category) << "\n";
    for (const auto& z : mc.objects)
        os << "  " << zigzag_name(c, z) << "\n";
    emit(o, os.str());
    return kOk;
}

/// Natural transformations between id and extend∘forget on chains of length one, bounded by NERVEKIT_SEARCH_BOUND.
std::string shift_search(const DoublePtr& d, std::size_t bound, Json& j)
{
    auto t = chain_tower(d, 1);
    auto id = identity_functor(t[1].category);
    auto fu = compose(chain_shift(t, 1, ShiftKind::extend), chain_shift(t, 1, ShiftKind::forget));
    try {
        auto into = nat_trans_search(id, fu, bound).size();
        auto back = nat_trans_search(fu, id, bound).size();
        j["shift_transformations"] = {into, back};
        return "natural transformations id => shift: " + std::to_string(into) + ", shift => id: " +
               std::to_string(back);
    } catch (const Error& e) {
        if (e.code() != Errc::ExplosionGuard)
            throw;
        j["shift_transformations"] = nullptr;
        return "natural transformations id <=> shift: skipped (search bound " + std::to_string(bound) + ")";
    }
}

std::string double_summary(const DoubleCategory& d, Json& j)
{
    j = {{"objects", d.hcat().num_objects()},
         {"horizontal", d.hcat().num_morphisms()},
         {"vertical", d.vcat().num_morphisms()},
         {"squares", d.squares().size()}};
    return std::to_string(d.hcat().num_objects()) + " objects, " + std::to_string(d.hcat().num_morphisms()) +
           " horizontal, " + std::to_string(d.vcat().num_morphisms()) + " vertical, " +
           std::to_string(d.squares().size()) + " squares";
}

/// Model input: moduli double category with witnesses in both directions. Category or trivial double input: trivial witness.
int run_double(const Options& o)
{
    const std::string& path = o.inputs.at(0);
    auto doc = load_json(path);
    Kind kind = detect(path, doc);
    std::vector<std::pair<std::string, ReductionWitness>> witnesses;
    DoublePtr d;
    Json j;
    std::ostringstream os;
    if (kind == Kind::model) {
        auto m = load_model(path, o.strict);
        auto x = endpoint(m, o.from, "--from");
        auto y = endpoint(m, o.to, "--to");
        auto md = moduli_double(m, x, y);
        d = md.d;
        os << "moduli double category: " << double_summary(*d, j) << "\n";
        // the v-direction witness certifies the h edge map and vice versa
        witnesses.emplace_back("h", moduli_witness(md, Direction::v));
        witnesses.emplace_back("v", moduli_witness(md, Direction::h));
    } else if (kind == Kind::category || (kind == Kind::double_category && doc.contains("trivial"))) {
        d = load_double(path);
        os << "trivial double category: " << double_summary(*d, j) << "\n";
        witnesses.emplace_back("h", trivial_witness(d));
    } else {
        throw Error(Errc::InvalidArgument, path + ": expected model data, a category or a trivial double category");
    }
    bool ok = true;
    for (const auto& [name, w] : witnesses) {
        auto r = reduction_check(w, o.max_dim);
        ok = ok && r.verdict();
        j[name] = {{"certificate", r.certificate.verified}, {"failure", r.certificate.failure}, {"edge", to_json(r.edge)}};
        os << name << ": certificate: " << (r.certificate.verified ? "PASS" : "FAIL (" + r.certificate.failure + ")")
           << "; edge map: " << r.edge.text() << "\n";
    }
    os << shift_search(d, search_bound_from_env(), j) << "\n";
    j["verdict"] = ok;
    emit(o, machine(o) ? dump(j) : os.str());
    return ok ? kOk : kFailed;
}

int run_theorem_main(const Options& o)
{
    auto m = load_model(o.inputs.at(0), o.strict);
    auto x = endpoint(m, o.from, "--from");
    auto y = endpoint(m, o.to, "--to");
    if (!is_fibrant(m, y))
        throw Error(Errc::NotFibrant, "'" + o.to + "' is not fibrant");
    auto hf = build_moduli(m, x, y, Variant::hom_f);
    auto h = build_moduli(m, x, y, Variant::hom);
    auto q = quasi_iso_check(
        nerve_map(moduli_inclusion(hf, h), nerve(hf.category, o.max_dim), nerve(h.category, o.max_dim)));
    auto hom_cert = retraction_functor(m, x, y, RetractionKind::hom_to_restricted).check;
    auto hom_f_cert = retraction_functor(m, x, y, RetractionKind::hom_f_to_wfib_inv).check;
    bool cert = hom_cert.verified && hom_f_cert.verified;
    bool ok = q.verdict && cert;
    if (machine(o)) {
        emit(o, dump(Json{{"inclusion", to_json(q)},
                          {"certificates", {{"hom", hom_cert.verified}, {"hom_f", hom_f_cert.verified}}},
                          {"verdict", ok}}));
    } else {
        std::string line = "hom-f → hom: " + q.text() + "; certificate: " + (cert ? "PASS" : "FAIL");
        if (!hom_cert.verified)
            line += " (hom retraction: " + hom_cert.failure + ")";
        if (!hom_f_cert.verified)
            line += " (hom-f retraction: " + hom_f_cert.failure + ")";
        emit(o, line + "\n");
    }
    return ok ? kOk : kFailed;
}

struct Command {
    const char* name;
    const char* help;
    int inputs;
    bool model_flags;
    int (*run)(const Options&);
};

const Command kCommands[] = {
    {"validate", "check a category, double category, model, set functor or .sset file", 1, true, run_validate},
    {"nerve", "level counts of the nerve; --out writes it as .sset text", 1, false, run_nerve},
    {"binerve", "level counts of the binerve of a double category", 1, false, run_binerve},
    {"diag", "diagonal of the binerve; --out writes it as .sset text", 1, false, run_diag},
    {"chi-check", "check that chi splits both edge maps for a category", 1, false, run_chi_check},
    {"homology", "integral homology of a nerve or .sset file", 1, false, run_homology},
    {"compare", "quasi-isomorphism check along a map file: SOURCE TARGET MAP", 3, false, run_compare},
    {"simplices", "category of simplices and its homology", 1, false, run_simplices},
    {"hocolim", "category of elements of a set functor and its homology", 1, false, run_hocolim},
    {"moduli", "zig-zag moduli category of a model", 1, true, run_moduli},
    {"double", "moduli double category (or trivial double category) and its edge-map reductions", 1, true, run_double},
    {"theorem-main", "hom-f into hom on nerves, with retraction certificates", 1, true, run_theorem_main},
};

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"nervekit: finite categories, nerves and zig-zag moduli"};
    app.require_subcommand(1);
    Options o;
    const Command* chosen = nullptr;
    for (const auto& cmd : kCommands) {
        auto* sub = app.add_subcommand(cmd.name, cmd.help);
        if (cmd.inputs == 3)
            sub->add_option("inputs", o.inputs, "source, target and map files")->required()->expected(3);
        else
            sub->add_option("input", o.inputs, "input file")->required()->expected(1);
        sub->add_option("--max-dim", o.max_dim, "truncation dimension")->check(CLI::NonNegativeNumber);
        sub->add_option("--format", o.format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
        sub->add_option("--out", o.out, "write output to a file");
        if (cmd.model_flags) {
            sub->add_flag("--strict", o.strict, "run the strict model audit");
            if (std::string(cmd.name) != "validate") {
                sub->add_option("--from", o.from, "source object");
                sub->add_option("--to", o.to, "target object");
            }
            if (std::string(cmd.name) == "moduli")
                sub->add_option("--variant", o.variant, "hom, hom-f, hom-tw, restricted, restricted-tw, wfib-inv");
        }
        sub->callback([&chosen, &cmd] { chosen = &cmd; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kBadInput;
    }
    try {
        return chosen->run(o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    }
}
