#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "textio.hpp"

namespace spherecover {

// A curve arrangement on a disjoint union of spheres: every crossing is a
// transverse double point joining two passages, curves are paired by a
// position-preserving sister involution, and marked points single out faces.
//
// Positions are 0-based from the curve's arrow; arc k runs from the crossing
// at position k to the crossing at position k+1 (mod length).
struct Diagram {
    std::string name = "diagram";

    std::vector<std::string> components;  // canonical (natural) order

    struct Curve {
        std::string id;
        int comp = 0;  // index into components
        int len = 0;   // number of passages
    };
    std::vector<Curve> curves;  // canonical order by id

    struct Crossing {
        std::string id;
        int curve_a = 0, pos_a = 0;
        int curve_b = 0, pos_b = 0;
        int hand = 1;  // +1 or -1
    };
    std::vector<Crossing> crossings;  // canonical order by id

    std::vector<int> sister;  // curve index -> curve index (or -1)

    struct Marked {
        std::string id;
        int comp = 0;
        int curve = 0;  // anchor: face on the L (+1, forward) or R (-1,
        int arc = 0;    // backward) side of this arc
        int dir = 1;
    };
    std::vector<Marked> marked;  // canonical order by id

    int curve_index(const std::string& id) const {
        for (std::size_t i = 0; i < curves.size(); ++i)
            if (curves[i].id == id) return static_cast<int>(i);
        return -1;
    }
    int crossing_index(const std::string& id) const {
        for (std::size_t i = 0; i < crossings.size(); ++i)
            if (crossings[i].id == id) return static_cast<int>(i);
        return -1;
    }
};

// Raw, order-insensitive construction material for a Diagram.
struct DiagramData {
    std::string name = "diagram";
    std::vector<std::string> components;
    struct RawCurve {
        std::string id, comp;
        int len = 0;
    };
    std::vector<RawCurve> curves;
    struct RawCrossing {
        std::string id, curve_a, curve_b;
        int pos_a = 0, pos_b = 0, hand = 1;
    };
    std::vector<RawCrossing> crossings;
    std::vector<std::pair<std::string, std::string>> sisters;
    struct RawMarked {
        std::string id, comp, curve;
        int arc = 0, dir = 1;
    };
    std::vector<RawMarked> marked;
};

// Resolves names, checks reference-level well-formedness, and produces the
// canonical (natural-name-ordered) Diagram.  Structural invariants beyond
// reference validity are checked by validate_diagram, not here.
inline Diagram assemble_diagram(const DiagramData& data) {
    Diagram d;
    d.name = data.name;

    d.components = data.components;
    std::sort(d.components.begin(), d.components.end(), NaturalLess{});
    std::map<std::string, int> comp_idx;
    for (std::size_t i = 0; i < d.components.size(); ++i) {
        if (comp_idx.count(d.components[i]))
            throw_parse("ParseError", "duplicate component '" + d.components[i] + "'");
        comp_idx[d.components[i]] = static_cast<int>(i);
    }

    std::vector<DiagramData::RawCurve> curves = data.curves;
    std::sort(curves.begin(), curves.end(),
              [](const auto& a, const auto& b) { return natural_less(a.id, b.id); });
    std::map<std::string, int> curve_idx;
    for (const auto& rc : curves) {
        if (curve_idx.count(rc.id)) throw_parse("ParseError", "duplicate curve '" + rc.id + "'");
        if (!comp_idx.count(rc.comp))
            throw_parse("ParseError", "curve '" + rc.id + "' references unknown component '" + rc.comp + "'");
        if (rc.len < 0) throw_parse("ParseError", "curve '" + rc.id + "' has negative length");
        curve_idx[rc.id] = static_cast<int>(d.curves.size());
        d.curves.push_back({rc.id, comp_idx[rc.comp], rc.len});
    }

    std::vector<DiagramData::RawCrossing> crossings = data.crossings;
    std::sort(crossings.begin(), crossings.end(),
              [](const auto& a, const auto& b) { return natural_less(a.id, b.id); });
    std::set<std::string> xids;
    for (const auto& rx : crossings) {
        if (!xids.insert(rx.id).second)
            throw_parse("ParseError", "duplicate crossing '" + rx.id + "'");
        auto need_curve = [&](const std::string& cu) {
            auto it = curve_idx.find(cu);
            if (it == curve_idx.end())
                throw_parse("ParseError", "crossing '" + rx.id + "' references unknown curve '" + cu + "'");
            return it->second;
        };
        int ca = need_curve(rx.curve_a), cb = need_curve(rx.curve_b);
        auto need_pos = [&](int cu, int pos) {
            if (pos < 0 || pos >= d.curves[cu].len)
                throw_parse("OutOfRange", "crossing '" + rx.id + "' position " + std::to_string(pos) +
                                              " outside curve '" + d.curves[cu].id + "'");
        };
        need_pos(ca, rx.pos_a);
        need_pos(cb, rx.pos_b);
        if (rx.hand != 1 && rx.hand != -1)
            throw_parse("ParseError", "crossing '" + rx.id + "' has invalid handedness");
        d.crossings.push_back({rx.id, ca, rx.pos_a, cb, rx.pos_b, rx.hand});
    }

    d.sister.assign(d.curves.size(), -1);
    for (const auto& [a, b] : data.sisters) {
        auto ia = curve_idx.find(a), ib = curve_idx.find(b);
        if (ia == curve_idx.end() || ib == curve_idx.end())
            throw_parse("ParseError", "sister line references unknown curve");
        if (d.sister[ia->second] != -1 || d.sister[ib->second] != -1)
            throw_parse("ParseError", "curve paired twice in sister lines");
        d.sister[ia->second] = ib->second;
        d.sister[ib->second] = ia->second;
    }

    std::vector<DiagramData::RawMarked> marked = data.marked;
    std::sort(marked.begin(), marked.end(),
              [](const auto& a, const auto& b) { return natural_less(a.id, b.id); });
    std::set<std::string> mids;
    for (const auto& rm : marked) {
        if (!mids.insert(rm.id).second)
            throw_parse("ParseError", "duplicate marked point '" + rm.id + "'");
        if (!comp_idx.count(rm.comp))
            throw_parse("ParseError", "marked point '" + rm.id + "' references unknown component");
        auto it = curve_idx.find(rm.curve);
        if (it == curve_idx.end())
            throw_parse("ParseError", "marked point '" + rm.id + "' references unknown curve");
        if (rm.arc < 0 || rm.arc >= d.curves[it->second].len)
            throw_parse("OutOfRange", "marked point '" + rm.id + "' arc index out of range");
        if (rm.dir != 1 && rm.dir != -1)
            throw_parse("ParseError", "marked point '" + rm.id + "' has invalid side");
        d.marked.push_back({rm.id, comp_idx[rm.comp], it->second, rm.arc, rm.dir});
    }
    return d;
}

// ------------------------------------------------------------- text format

// Line format ('#' comments, blank lines ignored; declarations may appear in
// any order; serialization is canonical):
//   diagram <name>
//   format 1
//   component <id>
//   curve <id> <component> <len>
//   crossing <id> <curveA>:<posA> <curveB>:<posB> <+|->
//   sister <idA> <idB>
//   marked <id> <component> <curve>:<arc>:<L|R>
inline Diagram parse_diagram(const std::string& text) {
    DiagramData data;
    bool saw_header = false, saw_format = false;
    for (const TextLine& line : tokenize_lines(text)) {
        const auto& t = line.tokens;
        auto want = [&](std::size_t n) {
            if (t.size() != n)
                throw_parse("ParseError", "malformed '" + t[0] + "' line " + std::to_string(line.number));
        };
        if (t[0] == "diagram") {
            want(2);
            data.name = t[1];
            saw_header = true;
        } else if (t[0] == "format") {
            want(2);
            if (t[1] != "1")
                throw_parse("ParseError", "unsupported format version '" + t[1] + "'");
            saw_format = true;
        } else if (t[0] == "component") {
            want(2);
            data.components.push_back(t[1]);
        } else if (t[0] == "curve") {
            want(4);
            data.curves.push_back({t[1], t[2], static_cast<int>(parse_int_token(t[3], line))});
        } else if (t[0] == "crossing") {
            want(5);
            auto [ca, pa] = parse_ref(t[2], line);
            auto [cb, pb] = parse_ref(t[3], line);
            int hand;
            if (t[4] == "+")
                hand = 1;
            else if (t[4] == "-")
                hand = -1;
            else
                throw_parse("ParseError", "handedness must be + or - on line " + std::to_string(line.number));
            data.crossings.push_back(
                {t[1], ca, cb, static_cast<int>(pa), static_cast<int>(pb), hand});
        } else if (t[0] == "sister") {
            want(3);
            data.sisters.push_back({t[1], t[2]});
        } else if (t[0] == "marked") {
            want(4);
            // <curve>:<arc>:<L|R>
            auto last = t[3].rfind(':');
            if (last == std::string::npos || last + 2 != t[3].size())
                throw_parse("ParseError", "marked anchor must be <curve>:<arc>:<L|R> on line " +
                                              std::to_string(line.number));
            char side = t[3][last + 1];
            if (side != 'L' && side != 'R')
                throw_parse("ParseError", "marked anchor side must be L or R on line " +
                                              std::to_string(line.number));
            auto [cu, arc] = parse_ref(t[3].substr(0, last), line);
            data.marked.push_back({t[1], t[2], cu, static_cast<int>(arc), side == 'L' ? 1 : -1});
        } else {
            throw_parse("ParseError",
                        "unknown directive '" + t[0] + "' on line " + std::to_string(line.number));
        }
    }
    if (!saw_header) throw_parse("ParseError", "missing diagram header line");
    if (!saw_format) throw_parse("ParseError", "missing format line");
    return assemble_diagram(data);
}

inline std::string serialize(const Diagram& d) {
    std::ostringstream os;
    os << "diagram " << d.name << "\n";
    os << "format 1\n";
    for (const auto& c : d.components) os << "component " << c << "\n";
    for (const auto& cu : d.curves)
        os << "curve " << cu.id << ' ' << d.components[cu.comp] << ' ' << cu.len << "\n";
    for (const auto& x : d.crossings)
        os << "crossing " << x.id << ' ' << d.curves[x.curve_a].id << ':' << x.pos_a << ' '
           << d.curves[x.curve_b].id << ':' << x.pos_b << ' ' << (x.hand > 0 ? '+' : '-') << "\n";
    // one line per sister pair, smaller curve first, ordered by that curve
    for (std::size_t i = 0; i < d.curves.size(); ++i) {
        int j = d.sister[i];
        if (j >= 0 && static_cast<int>(i) < j)
            os << "sister " << d.curves[i].id << ' ' << d.curves[j].id << "\n";
    }
    for (const auto& m : d.marked)
        os << "marked " << m.id << ' ' << d.components[m.comp] << ' ' << d.curves[m.curve].id << ':'
           << m.arc << ':' << (m.dir > 0 ? 'L' : 'R') << "\n";
    return os.str();
}

// ------------------------------------------------- combinatorial map, faces

// Darts: every arc (curve, k) contributes a forward dart (along orientation)
// and a backward one.  Encoding: 2*(arc_base[curve]+k) + (0 fwd | 1 bwd);
// twin(d) = d^1.  Faces are orbits of d -> next_at_vertex[twin(d)], traced
// from ascending dart ids (canonical order).
struct DiagramMap {
    std::vector<int> arc_base;
    int total_arcs = 0;
    std::vector<int> next_at_vertex;

    int dart(int curve, int k, int dir) const {
        return 2 * (arc_base[curve] + k) + (dir > 0 ? 0 : 1);
    }
    static int twin(int dart) { return dart ^ 1; }
    // returns (curve, k, dir)
    std::array<int, 3> decode(int dart, const Diagram&) const {
        int arc = dart / 2;
        int cu = 0;
        while (cu + 1 < static_cast<int>(arc_base.size()) && arc_base[cu + 1] <= arc) ++cu;
        return {cu, arc - arc_base[cu], (dart & 1) ? -1 : 1};
    }
};

// Requires complete passage structure (validated separately).
inline DiagramMap build_map(const Diagram& d) {
    DiagramMap m;
    m.arc_base.resize(d.curves.size());
    int total = 0;
    for (std::size_t i = 0; i < d.curves.size(); ++i) {
        m.arc_base[i] = total;
        total += d.curves[i].len;
    }
    m.total_arcs = total;
    m.next_at_vertex.assign(2 * total, -1);
    auto add_rotation = [&](const std::array<int, 4>& rot) {
        for (int i = 0; i < 4; ++i) m.next_at_vertex[rot[i]] = rot[(i + 1) % 4];
    };
    for (const auto& x : d.crossings) {
        int la = d.curves[x.curve_a].len, lb = d.curves[x.curve_b].len;
        int a_in = m.dart(x.curve_a, (x.pos_a + la - 1) % la, -1);
        int a_out = m.dart(x.curve_a, x.pos_a, 1);
        int b_in = m.dart(x.curve_b, (x.pos_b + lb - 1) % lb, -1);
        int b_out = m.dart(x.curve_b, x.pos_b, 1);
        if (x.hand > 0)
            add_rotation({a_in, b_in, a_out, b_out});
        else
            add_rotation({a_in, b_out, a_out, b_in});
    }
    return m;
}

inline std::vector<std::vector<int>> trace_faces(const Diagram&, const DiagramMap& m) {
    int nd = 2 * m.total_arcs;
    std::vector<bool> seen(nd, false);
    std::vector<std::vector<int>> faces;
    for (int dart = 0; dart < nd; ++dart) {
        if (seen[dart]) continue;
        std::vector<int> orb;
        int x = dart;
        while (!seen[x]) {
            seen[x] = true;
            orb.push_back(x);
            x = m.next_at_vertex[DiagramMap::twin(x)];
            if (x < 0) throw_validation("EmbeddingInconsistent", "dart without rotation successor");
        }
        faces.push_back(std::move(orb));
    }
    return faces;
}

// ------------------------------------------------------- passages, triplets

// passage_at[(curve,pos)] = (crossing index, slot 0=a 1=b); empty optional on
// conflict (two crossings claiming one passage).
struct PassageIndex {
    std::map<std::pair<int, int>, std::pair<int, int>> at;
};

inline std::optional<PassageIndex> passage_index(const Diagram& d) {
    PassageIndex pi;
    for (std::size_t xi = 0; xi < d.crossings.size(); ++xi) {
        const auto& x = d.crossings[xi];
        auto ka = std::make_pair(x.curve_a, x.pos_a);
        auto kb = std::make_pair(x.curve_b, x.pos_b);
        if (pi.at.count(ka) || pi.at.count(kb) || ka == kb) return std::nullopt;
        pi.at[ka] = {static_cast<int>(xi), 0};
        pi.at[kb] = {static_cast<int>(xi), 1};
    }
    return pi;
}

// Orbits of the partner chain: the crossing whose passage on the sister curve
// sits at the same position.  Every orbit must close in exactly 3 steps.
inline std::optional<std::vector<std::array<int, 3>>> compute_triplets(const Diagram& d) {
    auto pi = passage_index(d);
    if (!pi) return std::nullopt;
    auto passage_of = [&](int xi, int slot) -> std::pair<int, int> {
        const auto& x = d.crossings[xi];
        return slot == 0 ? std::make_pair(x.curve_a, x.pos_a) : std::make_pair(x.curve_b, x.pos_b);
    };
    std::vector<int> owner(d.crossings.size(), -1);
    std::vector<std::array<int, 3>> orbits;
    for (int x0 = 0; x0 < static_cast<int>(d.crossings.size()); ++x0) {
        if (owner[x0] >= 0) continue;
        std::array<int, 3> orb{x0, -1, -1};
        int cur = x0, via = 0;
        for (int step = 0; step < 3; ++step) {
            auto [cu, pos] = passage_of(cur, via);
            int sc = d.sister[cu];
            if (sc < 0) return std::nullopt;
            auto it = pi->at.find({sc, pos});
            if (it == pi->at.end()) return std::nullopt;
            auto [nx, nslot] = it->second;
            via = 1 - nslot;
            cur = nx;
            if (step < 2) orb[step + 1] = nx;
        }
        if (cur != x0 || via != 0) return std::nullopt;
        if (orb[0] == orb[1] || orb[0] == orb[2] || orb[1] == orb[2]) return std::nullopt;
        for (int x : orb) {
            if (owner[x] >= 0) return std::nullopt;
            owner[x] = static_cast<int>(orbits.size());
        }
        orbits.push_back(orb);
    }
    return orbits;
}

// All sister arc pairs: arc (curve, k) pairs with arc (sister, k).  One entry
// per pair, smaller curve first, canonical order.
inline std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> sister_arc_pairs(
    const Diagram& d) {
    std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> out;
    for (int cu = 0; cu < static_cast<int>(d.curves.size()); ++cu) {
        int sc = d.sister[cu];
        if (sc < cu) continue;
        for (int k = 0; k < d.curves[cu].len; ++k) out.push_back({{cu, k}, {sc, k}});
    }
    return out;
}

// --------------------------------------------------------------- validation

struct ValidationReport {
    bool accepted = false;
    std::vector<std::string> failures;
    // counts
    int n_components = 0, n_curves = 0, n_crossings = 0, n_arcs = 0;
    int n_faces = 0, n_triplets = 0, n_marked = 0;
    std::vector<int> chi;  // per component (when face tracing ran)
};

inline ValidationReport validate_diagram(const Diagram& d) {
    ValidationReport rep;
    rep.n_components = static_cast<int>(d.components.size());
    rep.n_curves = static_cast<int>(d.curves.size());
    rep.n_crossings = static_cast<int>(d.crossings.size());
    rep.n_marked = static_cast<int>(d.marked.size());
    for (const auto& cu : d.curves) rep.n_arcs += cu.len;

    auto fail = [&](const std::string& code) {
        if (std::find(rep.failures.begin(), rep.failures.end(), code) == rep.failures.end())
            rep.failures.push_back(code);
    };

    std::vector<int> curves_per_comp(d.components.size(), 0);
    for (const auto& cu : d.curves) {
        ++curves_per_comp[cu.comp];
        if (cu.len < 1) fail("EmptyCurve");
    }
    for (int c : curves_per_comp)
        if (c == 0) fail("EmptyComponent");

    auto pi = passage_index(d);
    if (!pi) fail("PassageConflict");
    if (pi) {
        for (int cu = 0; cu < static_cast<int>(d.curves.size()); ++cu)
            for (int k = 0; k < d.curves[cu].len; ++k)
                if (!pi->at.count({cu, k})) {
                    fail("MissingPassage");
                    break;
                }
    }
    for (const auto& x : d.crossings)
        if (d.curves[x.curve_a].comp != d.curves[x.curve_b].comp) fail("CrossingComponents");

    bool sisters_ok = true;
    for (int cu = 0; cu < static_cast<int>(d.curves.size()); ++cu) {
        int sc = d.sister[cu];
        if (sc < 0 || sc == cu || d.sister[sc] != cu) {
            sisters_ok = false;
            break;
        }
    }
    if (!sisters_ok)
        fail("SisterPairing");
    else
        for (int cu = 0; cu < static_cast<int>(d.curves.size()); ++cu)
            if (d.curves[cu].len != d.curves[d.sister[cu]].len) {
                fail("SisterLength");
                break;
            }

    for (const auto& m : d.marked)
        if (d.curves[m.curve].comp != m.comp) fail("MarkedAnchor");

    if (!rep.failures.empty()) return rep;  // structural problems block the rest

    DiagramMap map = build_map(d);
    auto faces = trace_faces(d, map);
    rep.n_faces = static_cast<int>(faces.size());

    std::vector<int> V(d.components.size(), 0), E(d.components.size(), 0),
        F(d.components.size(), 0);
    for (const auto& x : d.crossings) ++V[d.curves[x.curve_a].comp];
    for (const auto& cu : d.curves) E[cu.comp] += cu.len;
    std::vector<int> face_comp(faces.size());
    std::vector<int> face_of_dart(2 * map.total_arcs, -1);
    for (std::size_t fi = 0; fi < faces.size(); ++fi) {
        auto dec = map.decode(faces[fi][0], d);
        face_comp[fi] = d.curves[dec[0]].comp;
        ++F[face_comp[fi]];
        for (int dart : faces[fi]) face_of_dart[dart] = static_cast<int>(fi);
    }
    rep.chi.resize(d.components.size());
    bool chi_ok = true;
    for (std::size_t c = 0; c < d.components.size(); ++c) {
        rep.chi[c] = V[c] - E[c] + F[c];
        if (rep.chi[c] != 2) chi_ok = false;
    }
    if (!chi_ok) fail("EmbeddingInconsistent");

    auto tr = compute_triplets(d);
    if (!tr)
        fail("TripletClosureFailed");
    else
        rep.n_triplets = static_cast<int>(tr->size());

    std::set<int> seen_faces;
    for (const auto& m : d.marked) {
        int dart = map.dart(m.curve, m.arc, m.dir);
        int fi = face_of_dart[dart];
        if (!seen_faces.insert(fi).second) fail("MarkedPointRule");
    }

    rep.accepted = rep.failures.empty();
    return rep;
}

}  // namespace spherecover
