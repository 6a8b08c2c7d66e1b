// Command-line driver: validate fan/diagram files, lift fans through
// permutation data, extract group presentations, enumerate representation
// classes, and render diagrams.
#include <algorithm>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spherecover/diagram.hpp"
#include "spherecover/errors.hpp"
#include "spherecover/fan.hpp"
#include "spherecover/fpgroup.hpp"
#include "spherecover/lift.hpp"
#include "spherecover/monodromy.hpp"
#include "spherecover/perm.hpp"
#include "spherecover/pi1.hpp"
#include "spherecover/presentation.hpp"
#include "spherecover/render.hpp"
#include "spherecover/report.hpp"
#include "spherecover/textio.hpp"

namespace sc = spherecover;

namespace {

std::string sniff_kind(const std::string& text) {
    auto lines = sc::tokenize_lines(text);
    if (lines.empty()) sc::throw_parse("ParseError", "empty input");
    return lines[0].tokens[0];
}

std::string cycle_string(const std::vector<int>& sheets) {
    std::string s = "(";
    for (std::size_t i = 0; i < sheets.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(sheets[i] + 1);
    }
    return s + ")";
}

// Assemble the permutation assignment from --m/--c/--gen and -n (degree
// inferred from the largest entry when -n is absent).
sc::MonodromyRep build_rep(const sc::Fan& fan, const std::string& m_text,
                           const std::string& c_text, const std::vector<std::string>& gen_specs,
                           int n_flag) {
    std::map<std::string, std::string> texts;
    if (!m_text.empty()) texts[fan.meridian] = m_text;
    if (!c_text.empty()) {
        if (fan.duals.empty())
            sc::throw_parse("ParseError", "--c given but the fan declares no dual generator");
        texts[fan.duals[0].name] = c_text;
    }
    for (const std::string& spec : gen_specs) {
        auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0)
            sc::throw_parse("ParseError", "--gen expects name=cycles, got '" + spec + "'");
        texts[spec.substr(0, eq)] = spec.substr(eq + 1);
    }
    std::vector<std::string> known = fan.generator_names();
    for (const auto& [name, txt] : texts)
        if (std::find(known.begin(), known.end(), name) == known.end())
            sc::throw_parse("ParseError", "fan has no generator named '" + name + "'");

    int n = n_flag;
    if (n <= 0) {
        for (const auto& [name, txt] : texts) n = std::max(n, sc::scan_max_entry(txt));
        if (n < 1)
            sc::throw_parse("ParseError", "cannot infer the degree; pass -n or cycle entries");
    }
    sc::MonodromyRep rep;
    rep.degree = n;
    for (const std::string& name : known) {
        auto it = texts.find(name);
        if (it == texts.end())
            sc::throw_monodromy("MissingGenerator", "no permutation assigned to '" + name + "'");
        rep.names.push_back(name);
        rep.perms.push_back(sc::parse_cycles(it->second, n));
    }
    return rep;
}

void add_diagram_section(sc::Report& rep, const std::string& prefix, const sc::Diagram& d,
                         const sc::ValidationReport& vr) {
    rep.set(prefix + "name", d.name);
    rep.set(prefix + "components", vr.n_components);
    rep.set(prefix + "curves", vr.n_curves);
    rep.set(prefix + "crossings", vr.n_crossings);
    rep.set(prefix + "arcs", vr.n_arcs);
    rep.set(prefix + "faces", vr.n_faces);
    rep.set(prefix + "triplets", vr.n_triplets);
    rep.set(prefix + "marked", vr.n_marked);
    for (std::size_t c = 0; c < d.components.size(); ++c)
        if (c < vr.chi.size()) rep.set(prefix + "chi." + d.components[c], vr.chi[c]);
}

void add_flags_section(sc::Report& rep, const sc::RepFlags& flags) {
    rep.set("flags.relations_ok", flags.relations_ok);
    rep.set("flags.transitive", flags.transitive);
    rep.set("flags.cyclic", flags.cyclic);
    rep.set("flags.locally_cyclic", flags.locally_cyclic);
    rep.set("flags.regular", flags.regular);
}

void emit(const sc::Report& rep, const std::string& format) {
    std::cout << (format == "json" ? rep.json() : rep.text());
}

std::vector<std::string> ab_strings(const sc::Presentation& p) {
    std::vector<std::string> out;
    for (const sc::BigInt& v : sc::abelianization(p)) out.push_back(v.str());
    return out;
}

// Lift used by both `lift` and `analyze`: reject non-covering data, then
// require the lifted diagram to validate.
sc::LiftResult checked_lift(const sc::Fan& fan, const sc::MonodromyRep& mrep,
                            const sc::RepFlags& flags, sc::ValidationReport& vr_out) {
    if (!flags.relations_ok)
        sc::throw_monodromy("RelationsFailed",
                            "the permutations do not satisfy the fan's relations");
    if (!flags.transitive)
        sc::throw_monodromy("NotTransitive", "the permutation action is not transitive");
    sc::LiftResult lr = sc::lift_fan(fan, mrep);
    vr_out = sc::validate_diagram(lr.diagram);
    if (!vr_out.accepted) {
        std::string msg = "lifted diagram rejected:";
        for (const auto& f : vr_out.failures) msg += " " + f;
        sc::throw_validation("DiagramRejected", msg);
    }
    return lr;
}

struct PresText {
    std::string comments;
    sc::Presentation pres;
    std::string str() const { return comments + sc::serialize(pres); }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sphere diagrams of branched covers: validate, lift, present, enumerate, render"};
    app.require_subcommand(1);
    int exit_override = 0;

    // ------------------------------------------------------------ validate
    struct {
        std::string file, format = "text";
    } v;
    auto* sv = app.add_subcommand("validate", "Check a fan or diagram file and report counts");
    sv->add_option("file", v.file, "fan or diagram file")->required();
    sv->add_option("--format", v.format)->check(CLI::IsMember({"text", "json"}));
    sv->callback([&] {
        std::string text = sc::read_file(v.file);
        std::string kind = sniff_kind(text);
        sc::Report rep;
        if (kind == "fan") {
            sc::Fan fan = sc::parse_fan(text);
            rep.set("kind", "fan");
            rep.set("name", fan.name);
            rep.set("seam", fan.seam_k);
            rep.set("crossings", static_cast<int>(fan.crossings.size()));
            rep.set("segments", static_cast<int>(fan.segments.size()));
            rep.set("curves", static_cast<int>(fan.chains.size()));
            rep.set("sisters", static_cast<int>(fan.sisters.size()));
            rep.set("duals", static_cast<int>(fan.duals.size()));
            rep.set("relations", static_cast<int>(fan.relations.size()));
            rep.set("warnings", fan.warnings);
            rep.set("accepted", true);
            rep.set("digest", sc::content_digest(sc::serialize(fan)));
        } else if (kind == "diagram") {
            sc::Diagram dg = sc::parse_diagram(text);
            sc::ValidationReport vr = sc::validate_diagram(dg);
            rep.set("kind", "diagram");
            add_diagram_section(rep, "", dg, vr);
            rep.set("accepted", vr.accepted);
            rep.set("failures", vr.failures);
            rep.set("digest", sc::content_digest(sc::serialize(dg)));
            if (!vr.accepted) exit_override = 3;
        } else {
            sc::throw_parse("ParseError", "input is neither a fan nor a diagram file");
        }
        emit(rep, v.format);
    });

    // ---------------------------------------------------------------- lift
    struct {
        std::string file, m, c, out, format = "text";
        std::vector<std::string> gens;
        int n = 0;
    } l;
    auto* sl = app.add_subcommand("lift", "Lift a fan through permutation data to a diagram");
    sl->add_option("file", l.file, "fan file")->required();
    sl->add_option("--m", l.m, "meridian permutation, 1-based cycles");
    sl->add_option("--c", l.c, "permutation of the first dual generator");
    sl->add_option("--gen", l.gens, "extra assignment name=cycles");
    sl->add_option("-n,--degree", l.n, "number of sheets");
    sl->add_option("-o,--out", l.out, "write the diagram file here");
    sl->add_option("--format", l.format)->check(CLI::IsMember({"text", "json"}));
    sl->callback([&] {
        sc::Fan fan = sc::parse_fan(sc::read_file(l.file));
        sc::MonodromyRep mrep = build_rep(fan, l.m, l.c, l.gens, l.n);
        sc::RepFlags flags = sc::validate_rep(fan, mrep);
        sc::ValidationReport vr;
        sc::LiftResult lr = checked_lift(fan, mrep, flags, vr);

        sc::Report rep;
        rep.set("degree", mrep.degree);
        for (std::size_t i = 0; i < mrep.names.size(); ++i)
            rep.set("gen." + mrep.names[i], sc::format_cycles(mrep.perms[i]));
        add_flags_section(rep, flags);
        for (const auto& [comp, sheets] : lr.comp_sheets)
            rep.set("sheets." + comp, cycle_string(sheets));
        add_diagram_section(rep, "diagram.", lr.diagram, vr);
        rep.set("cut.faces", lr.cut.faces);
        rep.set("cut.classes", lr.cut.classes);
        std::string body = sc::serialize(lr.diagram);
        rep.set("digest", sc::content_digest(body));
        if (!l.out.empty()) {
            sc::write_file(l.out, body);
            rep.set("output", l.out);
        }
        emit(rep, l.format);
    });

    // ----------------------------------------------------------------- pi1
    struct {
        std::string file, method = "cell", punctured = "none", tree = "bfs", out,
                    format = "text";
    } p1;
    auto* sp = app.add_subcommand("pi1", "Fundamental-group presentation of a diagram");
    sp->add_option("file", p1.file, "diagram file")->required();
    sp->add_option("--method", p1.method)->check(CLI::IsMember({"cell", "dual"}));
    sp->add_option("--punctured", p1.punctured)->check(CLI::IsMember({"none", "all"}));
    sp->add_option("--tree", p1.tree)->check(CLI::IsMember({"bfs", "dfs"}));
    sp->add_option("-o,--out", p1.out, "write the presentation here");
    sp->add_option("--format", p1.format)->check(CLI::IsMember({"text", "json"}));
    sp->callback([&] {
        sc::Diagram dg = sc::parse_diagram(sc::read_file(p1.file));
        sc::ValidationReport vr = sc::validate_diagram(dg);
        if (!vr.accepted) {
            std::string msg = "diagram rejected:";
            for (const auto& f : vr.failures) msg += " " + f;
            sc::throw_validation("DiagramRejected", msg);
        }
        PresText out;
        sc::Report rep;
        rep.set("name", dg.name);
        rep.set("method", p1.method);
        if (p1.method == "cell") {
            sc::CellComplex cc = sc::build_complex(dg);
            std::set<int> punc;
            if (p1.punctured == "all")
                for (const auto& [id, fi] : cc.marked_faces) punc.insert(fi);
            sc::CellPresentation cp = sc::cell_presentation(
                cc, punc, p1.tree == "dfs" ? sc::TreeStrategy::Dfs : sc::TreeStrategy::Bfs);
            cp.pres.name = dg.name + ".cell";
            out.pres = cp.pres;
            out.comments += "# vertices: " + std::to_string(cc.nv) + "\n";
            out.comments += "# edges: " + std::to_string(cc.edges.size()) + "\n";
            out.comments += "# faces: " + std::to_string(cc.fwords.size()) + "\n";
            rep.set("vertices", cc.nv);
            rep.set("edges", static_cast<int>(cc.edges.size()));
            rep.set("faces", static_cast<int>(cc.fwords.size()));
            // meridian words follow face order; label them by marked point
            std::vector<std::pair<int, std::string>> by_face;
            if (p1.punctured == "all")
                for (const auto& [id, fi] : cc.marked_faces) by_face.push_back({fi, id});
            std::sort(by_face.begin(), by_face.end());
            for (std::size_t i = 0; i < cp.meridians.size(); ++i) {
                std::string w = sc::format_word(cp.meridians[i], cp.pres.gens);
                if (w.empty()) w = "1";
                std::string label = i < by_face.size() ? by_face[i].second : "?";
                out.comments += "# meridian " + label + ": " + w + "\n";
                rep.set("meridians." + label, w);
            }
        } else {
            sc::Presentation dp = sc::dual_presentation(dg);
            dp.name = dg.name + ".dual";
            out.pres = dp;
            out.comments += "# triplets: " + std::to_string(dp.rels.size()) + "\n";
            rep.set("triplets", static_cast<int>(dp.rels.size()));
        }
        rep.set("gens", static_cast<int>(out.pres.gens.size()));
        rep.set("rels", static_cast<int>(out.pres.rels.size()));
        rep.set("presentation.gens", out.pres.gens);
        {
            std::vector<std::string> rels;
            for (const auto& w : out.pres.rels) {
                std::string s = sc::format_word(w, out.pres.gens);
                rels.push_back(s.empty() ? "1" : s);
            }
            rep.set("presentation.rels", rels);
        }
        if (!p1.out.empty()) sc::write_file(p1.out, out.str());
        if (p1.format == "json")
            emit(rep, p1.format);
        else
            std::cout << out.str();
    });

    // ------------------------------------------------------------ enumerate
    struct {
        std::string file, format = "text";
        int n = 0, max_degree = sc::kDefaultMaxDegree;
        bool conjugacy = false;
    } en;
    auto* se = app.add_subcommand("enumerate",
                                  "List transitive covering representations by conjugacy class");
    se->add_option("file", en.file, "fan file")->required();
    se->add_option("-n,--degree", en.n, "number of sheets")->required();
    se->add_option("--max-degree", en.max_degree, "enumeration bound");
    se->add_flag("--conjugacy", en.conjugacy, "also list every representation with its class");
    se->add_option("--format", en.format)->check(CLI::IsMember({"text", "json"}));
    se->callback([&] {
        sc::Fan fan = sc::parse_fan(sc::read_file(en.file));
        auto all = sc::enumerate_reps(fan, en.n, en.max_degree);
        sc::Report rep;
        rep.set("degree", en.n);
        std::vector<const sc::EnumeratedRep*> classes;
        for (const auto& er : all)
            if (er.canonical) classes.push_back(&er);
        rep.set("classes", static_cast<int>(classes.size()));
        rep.set("representations", static_cast<int>(all.size()));
        for (std::size_t ci = 0; ci < classes.size(); ++ci) {
            const auto& er = *classes[ci];
            std::string pre = "class." + std::to_string(ci + 1) + ".";
            for (std::size_t i = 0; i < er.rep.names.size(); ++i)
                rep.set(pre + er.rep.names[i], sc::format_cycles(er.rep.perms[i]));
            rep.set(pre + "cyclic", er.flags.cyclic);
            rep.set(pre + "locally_cyclic", er.flags.locally_cyclic);
            rep.set(pre + "regular", er.flags.regular);
            int size = 0;
            for (const auto& other : all)
                if (other.class_id == er.class_id) ++size;
            rep.set(pre + "size", size);
        }
        if (en.conjugacy)
            for (std::size_t i = 0; i < all.size(); ++i) {
                std::string pre = "rep." + std::to_string(i + 1) + ".";
                for (std::size_t g = 0; g < all[i].rep.names.size(); ++g)
                    rep.set(pre + all[i].rep.names[g], sc::format_cycles(all[i].rep.perms[g]));
                rep.set(pre + "class", all[i].class_id + 1);
                rep.set(pre + "canonical", all[i].canonical);
            }
        emit(rep, en.format);
    });

    // -------------------------------------------------------------- analyze
    struct {
        std::string file, m, c, punctured = "none", format = "text";
        std::vector<std::string> gens;
        int n = 0, homs = 0;
        long long max_cosets = sc::kDefaultMaxCosets;
        bool match = false;
    } an;
    auto* sa = app.add_subcommand("analyze",
                                  "Lift, then compute both presentations and their invariants");
    sa->add_option("file", an.file, "fan file")->required();
    sa->add_option("--m", an.m, "meridian permutation, 1-based cycles");
    sa->add_option("--c", an.c, "permutation of the first dual generator");
    sa->add_option("--gen", an.gens, "extra assignment name=cycles");
    sa->add_option("-n,--degree", an.n, "number of sheets");
    sa->add_option("--punctured", an.punctured)->check(CLI::IsMember({"none", "all"}));
    sa->add_option("--max-cosets", an.max_cosets, "coset enumeration bound");
    sa->add_option("--homs", an.homs, "count homomorphisms to the symmetric group of this rank");
    sa->add_flag("--match", an.match, "compare the pair presentation against the cyclic family");
    sa->add_option("--format", an.format)->check(CLI::IsMember({"text", "json"}));
    sa->callback([&] {
        sc::Fan fan = sc::parse_fan(sc::read_file(an.file));
        sc::MonodromyRep mrep = build_rep(fan, an.m, an.c, an.gens, an.n);
        sc::RepFlags flags = sc::validate_rep(fan, mrep);
        sc::ValidationReport vr;
        sc::LiftResult lr = checked_lift(fan, mrep, flags, vr);

        sc::Report rep;
        rep.set("degree", mrep.degree);
        for (std::size_t i = 0; i < mrep.names.size(); ++i)
            rep.set("gen." + mrep.names[i], sc::format_cycles(mrep.perms[i]));
        add_flags_section(rep, flags);
        add_diagram_section(rep, "diagram.", lr.diagram, vr);
        rep.set("digest", sc::content_digest(sc::serialize(lr.diagram)));

        sc::CellComplex cc = sc::build_complex(lr.diagram);
        std::set<int> punc;
        if (an.punctured == "all")
            for (const auto& [id, fi] : cc.marked_faces) punc.insert(fi);
        sc::CellPresentation cp = sc::cell_presentation(cc, punc);
        rep.set("cell.gens", static_cast<int>(cp.pres.gens.size()));
        rep.set("cell.rels", static_cast<int>(cp.pres.rels.size()));
        rep.set("cell.meridians", static_cast<int>(cp.meridians.size()));
        rep.set("cell.order", sc::todd_coxeter(cp.pres, an.max_cosets).str());
        rep.set("cell.ab", ab_strings(cp.pres));
        if (an.homs > 0) rep.set("cell.homs." + std::to_string(an.homs),
                                 sc::hom_count(cp.pres, an.homs));

        if (lr.diagram.components.size() == 1) {
            sc::Presentation dp = sc::dual_presentation(lr.diagram);
            rep.set("dual.gens", static_cast<int>(dp.gens.size()));
            rep.set("dual.rels", static_cast<int>(dp.rels.size()));
            rep.set("dual.order", sc::todd_coxeter(dp, an.max_cosets).str());
            rep.set("dual.ab", ab_strings(dp));
            if (an.match) {
                auto mres = sc::match_sieradski(dp);
                if (mres)
                    rep.set("dual.match", *mres);
                else
                    rep.set("dual.match", "none");
            }
            if (an.homs > 0) rep.set("dual.homs." + std::to_string(an.homs),
                                     sc::hom_count(dp, an.homs));
        } else {
            rep.set("dual.skipped", "MultiComponentDomain");
        }
        emit(rep, an.format);
    });

    // ------------------------------------------------------------ sieradski
    struct {
        std::string format = "text";
        int n = 0;
        bool order = false;
        long long max_cosets = sc::kDefaultMaxCosets;
    } si;
    auto* ss = app.add_subcommand("sieradski", "Print the n-th cyclic-family presentation");
    ss->add_option("-n,--index", si.n, "family index (at least 2)")->required();
    ss->add_flag("--order", si.order, "also run coset enumeration and abelianization");
    ss->add_option("--max-cosets", si.max_cosets, "coset enumeration bound");
    ss->add_option("--format", si.format)->check(CLI::IsMember({"text", "json"}));
    ss->callback([&] {
        sc::Presentation p = sc::sieradski(si.n);
        p.name = "sieradski" + std::to_string(si.n);
        if (si.format == "json") {
            sc::Report rep;
            rep.set("n", si.n);
            rep.set("gens", p.gens);
            std::vector<std::string> rels;
            for (const auto& w : p.rels) rels.push_back(sc::format_word(w, p.gens));
            rep.set("rels", rels);
            if (si.order) {
                rep.set("order", sc::todd_coxeter(p, si.max_cosets).str());
                rep.set("ab", ab_strings(p));
            }
            emit(rep, si.format);
        } else {
            std::string out;
            if (si.order) {
                out += "# order: " + sc::todd_coxeter(p, si.max_cosets).str() + "\n";
                std::string ab = "[";
                auto abs = ab_strings(p);
                for (std::size_t i = 0; i < abs.size(); ++i) ab += (i ? " " : "") + abs[i];
                out += "# abelianization: " + ab + "]\n";
            }
            out += sc::serialize(p);
            std::cout << out;
        }
    });

    // --------------------------------------------------------------- render
    struct {
        std::string file, out;
    } rd;
    auto* sr = app.add_subcommand("render", "Draw a diagram file as SVG");
    sr->add_option("file", rd.file, "diagram file")->required();
    sr->add_option("-o,--out", rd.out, "write the SVG here (default: stdout)");
    sr->callback([&] {
        sc::Diagram dg = sc::parse_diagram(sc::read_file(rd.file));
        sc::ValidationReport vr = sc::validate_diagram(dg);
        if (!vr.accepted) {
            std::string msg = "diagram rejected:";
            for (const auto& f : vr.failures) msg += " " + f;
            sc::throw_validation("DiagramRejected", msg);
        }
        std::string svg = sc::render_svg(dg);
        if (rd.out.empty())
            std::cout << svg;
        else
            sc::write_file(rd.out, svg);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const sc::Error& e) {
        std::cerr << "spherecover: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "spherecover: internal error: " << e.what() << "\n";
        return 1;
    }
    return exit_override;
}
