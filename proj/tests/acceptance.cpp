// Acceptance checks: one line of output per criterion, nonzero exit on any
// failure.  Builds everything from the shipped fan file through the library.
#include <algorithm>
#include <array>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "spherecover/diagram.hpp"
#include "spherecover/fan.hpp"
#include "spherecover/fpgroup.hpp"
#include "spherecover/lift.hpp"
#include "spherecover/monodromy.hpp"
#include "spherecover/pi1.hpp"
#include "spherecover/textio.hpp"

using namespace spherecover;

namespace {

int failures = 0;

void report(int idx, bool ok, const std::string& what) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << idx << ": " << what << "\n";
    if (!ok) ++failures;
}

Fan reference_fan() {
    return parse_fan(read_file(std::string(SC_DATA_DIR) + "/banchoff.fan"));
}

MonodromyRep make_rep(const Fan& fan, int n, const std::string& m, const std::string& c) {
    MonodromyRep rep;
    rep.degree = n;
    rep.names = fan.generator_names();
    rep.perms = {parse_cycles(m, n), parse_cycles(c, n)};
    return rep;
}

MonodromyRep cyclic_rep(const Fan& fan, int n) {
    MonodromyRep rep;
    rep.degree = n;
    rep.names = fan.generator_names();
    Perm m(n);
    for (int i = 0; i < n; ++i) m[i] = (i + 1) % n;
    rep.perms = {m, power(m, 3)};
    return rep;
}

Presentation cyclic_dual(const Fan& fan, int n) {
    return dual_presentation(lift_fan(fan, cyclic_rep(fan, n)).diagram);
}

std::vector<Perm> symmetric_group(int k) {
    std::vector<Perm> out;
    Perm p = identity_perm(k);
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// Count pairs (pm, pc) in S_k x S_k with  pm pc pm == pc pm^-1 pc.
long long brute_force_knot_homs(int k) {
    long long count = 0;
    auto sym = symmetric_group(k);
    for (const Perm& pm : sym)
        for (const Perm& pc : sym) {
            Perm lhs = compose(compose(pm, pc), pm);
            Perm rhs = compose(compose(pc, inverse(pm)), pc);
            if (lhs == rhs) ++count;
        }
    return count;
}

std::string ab_str(const std::vector<BigInt>& ab) {
    std::string s = "[";
    for (std::size_t i = 0; i < ab.size(); ++i) s += (i ? "," : "") + ab[i].str();
    return s + "]";
}

void criterion1(const Fan& fan) {
    CellComplex cc = build_complex(base_diagram(fan).diagram);
    std::set<int> punc;
    for (const auto& [id, fi] : cc.marked_faces) punc.insert(fi);
    CellPresentation cp = cell_presentation(cc, punc);
    bool ok = abelianization(cp.pres) == std::vector<BigInt>{0};
    long long h2 = hom_count(cp.pres, 2), h3 = hom_count(cp.pres, 3);
    long long b2 = brute_force_knot_homs(2), b3 = brute_force_knot_homs(3);
    ok = ok && h2 == b2 && h3 == b3;
    std::ostringstream what;
    what << "punctured base group has infinite cyclic abelianization and hom counts "
         << h2 << "/" << h3 << " matching brute force " << b2 << "/" << b3;
    report(1, ok, what.str());
}

void criterion2(const Fan& fan) {
    struct Row {
        int n;
        CosetResult order;
        std::vector<BigInt> ab;
    };
    std::vector<Row> table = {{2, {true, 3}, {3}},
                              {3, {true, 8}, {2, 2}},
                              {4, {true, 24}, {3}},
                              {5, {true, 120}, {}},
                              {6, {false, kDefaultMaxCosets}, {0, 0}}};
    bool ok = true;
    std::string detail;
    for (const auto& row : table) {
        Presentation dp = cyclic_dual(fan, row.n);
        CosetResult tc = todd_coxeter(dp);
        auto ab = abelianization(dp);
        bool good = (tc == row.order) && (ab == row.ab);
        ok = ok && good;
        detail += " n" + std::to_string(row.n) + "=" + tc.str() + "/" + ab_str(ab);
    }
    report(2, ok, "cyclic cover groups:" + detail);
}

void criterion3(const Fan& fan) {
    bool ok = true;
    for (int n = 2; n <= 12; ++n) {
        Presentation dp = cyclic_dual(fan, n);
        if (static_cast<int>(dp.gens.size()) != n) {
            ok = false;
            break;
        }
        // position j (sheet j) maps to family generator position n-1-j
        std::set<Word> mapped;
        for (const Word& w : dp.rels) {
            Word mw = w;
            for (Letter& t : mw) t.gen = n - 1 - t.gen;
            mapped.insert(relator_class(mw));
        }
        std::set<Word> target;
        for (const Word& w : sieradski(n).rels) target.insert(relator_class(w));
        ok = ok && mapped == target && match_sieradski(dp) == n;
    }
    report(3, ok, "cyclic lifts for 2..12 sheets equal the reference family under index reversal");
}

void criterion4(const Fan& fan) {
    bool ok = true;
    for (int n = 2; n <= 7; ++n) {
        const Diagram& d = lift_fan(fan, cyclic_rep(fan, n)).diagram;
        for (int i = 0; i < n && ok; ++i) {
            int cu = d.curve_index("alpha[c1." + std::to_string(i + 1) + "]");
            int sc = d.sister[cu];
            ok = d.curves[sc].id == "beta[c1." + std::to_string((i + 2) % n + 1) + "]";
        }
    }
    report(4, ok, "cyclic sister pairing sends sheet i to sheet i+2 mod n for n=2..7");
}

void criterion5(const Fan& fan) {
    Presentation dp = dual_presentation(lift_fan(fan, make_rep(fan, 4, "(1 2 3 4)", "(1 2)")).diagram);
    std::set<Word> classes;
    for (const Word& w : dp.rels) classes.insert(relator_class(w));
    bool ok = dp.gens.size() == 4 && classes.size() == 4;

    std::vector<Word> display = {{{0, 1}, {1, -1}, {1, -1}},
                                 {{0, 1}, {2, 1}, {3, -1}},
                                 {{0, 1}, {2, -1}, {3, 1}},
                                 {{3, 1}, {1, -1}, {2, 1}}};
    ok = ok && match_relator_classes(dp, display, 4);

    // a relator of shape x y^-2 appears
    bool squarish = false;
    for (int x = 0; x < 4 && !squarish; ++x)
        for (int y = 0; y < 4 && !squarish; ++y)
            if (x != y) squarish = classes.count(relator_class({{x, 1}, {y, -1}, {y, -1}}));
    ok = ok && squarish;

    CosetResult tc = todd_coxeter(dp);
    auto ab = abelianization(dp);
    auto cyc_ab = abelianization(cyclic_dual(fan, 4));
    ok = ok && tc == CosetResult{true, 24} && ab != cyc_ab;
    report(5, ok,
           "four-sheet locally cyclic cover: 4 relator classes match the display, order 24, "
           "abelianization " + ab_str(ab) + " differs from cyclic " + ab_str(cyc_ab));
}

void criterion6(const Fan& fan) {
    LiftResult lr = lift_fan(fan, make_rep(fan, 3, "(1 2)", "(2 3)"));
    ValidationReport vr = validate_diagram(lr.diagram);
    bool ok = vr.accepted && lr.diagram.components.size() == 2;
    for (int chi : vr.chi) ok = ok && chi == 2;
    std::map<int, int> marked_per_comp;
    for (const auto& mk : lr.diagram.marked) ++marked_per_comp[mk.comp];
    ok = ok && marked_per_comp.size() == 2;
    for (const auto& [comp, cnt] : marked_per_comp) ok = ok && cnt == 2;
    CellPresentation closed = cell_presentation(build_complex(lr.diagram), {});
    ok = ok && todd_coxeter(closed.pres) == CosetResult{true, 1};
    report(6, ok, "transposition cover: two spheres, two marked points each, trivial group");
}

void criterion7(const Fan& fan) {
    auto c2 = enumerate_classes(fan, 2);
    bool ok = c2.size() == 1;

    auto all3 = enumerate_reps(fan, 3);
    std::vector<const EnumeratedRep*> c3;
    for (const auto& er : all3)
        if (er.canonical) c3.push_back(&er);
    ok = ok && c3.size() == 2;
    int n_cyclic = 0;
    int irregular_class = -1;
    for (const auto* er : c3) {
        if (er->flags.cyclic)
            ++n_cyclic;
        else
            irregular_class = er->class_id;
    }
    ok = ok && n_cyclic == 1 && irregular_class >= 0;

    // members of the irregular class with meridian image (1 2) have partner
    // image (1 3) or (2 3), and both occur
    Perm m12 = parse_cycles("(1 2)", 3);
    std::set<Perm> partners;
    for (const auto& er : all3)
        if (er.class_id == irregular_class && er.rep.perms[0] == m12)
            partners.insert(er.rep.perms[1]);
    ok = ok && partners == std::set<Perm>{parse_cycles("(1 3)", 3), parse_cycles("(2 3)", 3)};

    for (int n : {2, 3})
        for (const auto& er : enumerate_classes(fan, n))
            if (er.flags.locally_cyclic) ok = ok && er.flags.cyclic;
    report(7, ok,
           "one class at two sheets; two at three sheets with the irregular partner images "
           "(1 3)/(2 3); locally cyclic implies cyclic at low degree");
}

void criterion8(const Fan& fan) {
    bool ok = true;
    int checked = 0, compared = 0;
    for (int n = 1; n <= 5 && ok; ++n) {
        for (const auto& er : enumerate_reps(fan, n)) {
            LiftResult lr = lift_fan(fan, er.rep);
            ValidationReport vr = validate_diagram(lr.diagram);
            ok = ok && vr.accepted;
            ok = ok && lr.diagram.components.size() == cycles(er.rep.perms[0]).size();
            ok = ok && vr.n_triplets == 2 * n;
            for (int chi : vr.chi) ok = ok && chi == 2;
            ++checked;
            if (ok && lr.diagram.components.size() == 1) {
                Presentation cell = cell_presentation(build_complex(lr.diagram), {}).pres;
                Presentation dual = dual_presentation(lr.diagram);
                ok = ok && abelianization(cell) == abelianization(dual);
                ok = ok && todd_coxeter(cell) == todd_coxeter(dual);
                for (int k = 2; k <= 4; ++k) ok = ok && hom_count(cell, k) == hom_count(dual, k);
                ++compared;
            }
            if (!ok) break;
        }
    }
    std::ostringstream what;
    what << checked << " representations up to five sheets lift to spheres with 2n triplets; "
         << compared << " connected domains agree between both presentations";
    report(8, ok, what.str());
}

}  // namespace

int main() {
    try {
        Fan fan = reference_fan();
        criterion1(fan);
        criterion2(fan);
        criterion3(fan);
        criterion4(fan);
        criterion5(fan);
        criterion6(fan);
        criterion7(fan);
        criterion8(fan);
    } catch (const std::exception& e) {
        std::cout << "FAIL exception: " << e.what() << "\n";
        return 1;
    }
    return failures == 0 ? 0 : 1;
}
