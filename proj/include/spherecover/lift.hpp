#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "diagram.hpp"
#include "errors.hpp"
#include "fan.hpp"
#include "monodromy.hpp"
#include "perm.hpp"

namespace spherecover {

namespace detail {

// One atomic step of a base-curve traversal started at its arrow: either a
// crossing passage or a seam transition (+1 exits right, -1 exits left).
struct FanItem {
    bool is_pass = false;
    std::string xid;  // passage: crossing id
    int slot = 0;     // passage: 0 = crossing's first listed end, 1 = second
    std::string seg;  // owning segment (passage) or exiting segment (event)
    int idx = 0;      // passage: position within the segment
    int sign = 0;     // event: +1 = exit right, -1 = exit left
    int height = 0;   // event: seam height crossed
};

// The base curve's cyclic itinerary, rotated so it starts at the arrow.
inline std::vector<FanItem> curve_items(const Fan& fan, const std::string& curve) {
    const std::vector<std::string>* chain = fan.chain_of(curve);
    const auto& [aseg, agap] = fan.arrows.at(curve);
    std::size_t start = 0;
    while ((*chain)[start] != aseg) ++start;

    std::vector<FanItem> items;
    auto seg_at = [&](std::size_t i) -> const Fan::Segment& {
        return fan.segments[fan.segment_index((*chain)[(start + i) % chain->size()])];
    };
    auto push_pass = [&](const Fan::Segment& s, int p) {
        const Fan::Crossing& x = fan.crossings[fan.crossing_index(s.passages[p])];
        FanItem it;
        it.is_pass = true;
        it.xid = s.passages[p];
        it.slot = (x.seg_a == s.id && x.pos_a == p) ? 0 : 1;
        it.seg = s.id;
        it.idx = p;
        items.push_back(std::move(it));
    };
    auto push_exit = [&](const Fan::Segment& s) {
        if (s.exit.closed) return;
        FanItem it;
        it.sign = (s.exit.side == 'R') ? 1 : -1;
        it.height = s.exit.height;
        it.seg = s.id;
        items.push_back(std::move(it));
    };
    const Fan::Segment& s0 = seg_at(0);
    for (int p = agap; p < static_cast<int>(s0.passages.size()); ++p) push_pass(s0, p);
    push_exit(s0);
    for (std::size_t i = 1; i < chain->size(); ++i) {
        const Fan::Segment& s = seg_at(i);
        for (int p = 0; p < static_cast<int>(s.passages.size()); ++p) push_pass(s, p);
        push_exit(s);
    }
    for (int p = 0; p < agap; ++p) push_pass(s0, p);
    return items;
}

// (#passages, net seam winding) accumulated from the arrow to the gap point
// (seg, gap).  gap == #passages(seg) addresses the point past the last
// passage, just before the segment's exit.
inline std::pair<int, int> locate_point(const Fan& fan, const std::vector<FanItem>& items,
                                        const std::string& seg, int gap) {
    int np = static_cast<int>(fan.segments[fan.segment_index(seg)].passages.size());
    int p = 0, e = 0;
    for (const FanItem& it : items) {
        if (it.is_pass) {
            if (gap < np && it.seg == seg && it.idx == gap) return {p, e};
            ++p;
        } else {
            if (gap == np && it.seg == seg) return {p, e};
            e += it.sign;
        }
    }
    return {p, e};  // wrap point of a closed segment
}

// A seam transition of a lifted curve, pinned to the arc it subdivides.
struct LiftEvent {
    int arc = 0;
    int sub = 0;  // order among the events on the same arc
    int sign = 0;
    int height = 0;
    int before = 0;  // sheet before the transition
    int after = 0;   // sheet after
};

// One lifted copy of a base curve: its passage trace and seam transitions.
struct LiftTrace {
    std::string name;
    std::string base;
    std::string comp;
    std::vector<int> orbit;  // round-start sheets, rotated to the minimum
    struct Pass {
        std::string xid;
        int sheet = 0;
        int slot = 0;
    };
    std::vector<Pass> passes;
    std::vector<LiftEvent> events;  // traversal order; head events moved last
    std::map<int, int> events_on_arc;
    int ltot = 0;

    int subcount(int g) const {
        auto it = events_on_arc.find(g);
        return it == events_on_arc.end() ? 0 : it->second;
    }
};

}  // namespace detail

// Surface bookkeeping of the cut-open lift (seam punctures and poles).
struct CutInfo {
    std::map<std::string, int> chi;                   // per component
    std::map<std::string, std::array<int, 3>> vef;    // per-component V, E, F
    int faces = 0;    // faces of the cut-inclusive complex
    int classes = 0;  // face classes after sealing the seam (== plain faces)
};

struct LiftResult {
    Diagram diagram;  // canonical lifted diagram, marked points included
    CutInfo cut;
    std::map<std::string, std::vector<int>> comp_sheets;  // 0-based sheet cycles
};

namespace detail {

// Rebuild the surface with the seam left in place: curve arcs subdivided at
// seam transitions, one puncture vertex per (sheet, height), one pole vertex
// per component end.  Gluing data pins where the two marked points of each
// component fall, and a face bijection cross-checks against the plain map.
inline std::vector<DiagramData::RawMarked> cut_complex(
    const Fan& fan, const MonodromyRep& rep, const std::vector<LiftTrace>& traces,
    const std::vector<std::vector<int>>& ccycles, const std::vector<std::string>& comp_names,
    const std::vector<int>& comp_of_sheet, const Diagram& d0, CutInfo& info) {
    const int n = rep.degree;
    const int K = fan.seam_k;
    using Dart = std::array<int, 5>;  // kind(0 curve,1 seam), a, b, c, dir

    std::vector<Dart> darts;
    std::map<Dart, int> id_of;
    auto add_pair = [&](Dart d) {
        id_of[d] = static_cast<int>(darts.size());
        darts.push_back(d);
        d[4] = -1;
        id_of[d] = static_cast<int>(darts.size());
        darts.push_back(d);
    };
    for (std::size_t ci = 0; ci < traces.size(); ++ci)
        for (int g = 0; g < traces[ci].ltot; ++g)
            for (int i = 0; i <= traces[ci].subcount(g); ++i)
                add_pair({0, static_cast<int>(ci), g, i, 1});
    for (int t = 0; t < n; ++t)
        for (int j = 0; j <= K; ++j) add_pair({1, t, j, 0, 1});
    auto twin = [](int id) { return id ^ 1; };

    std::vector<std::vector<int>> rotations;
    auto rot_ids = [&](const std::vector<Dart>& rot) {
        std::vector<int> ids;
        for (const Dart& d : rot) ids.push_back(id_of.at(d));
        rotations.push_back(std::move(ids));
    };

    // crossing copies: the four incident half-arcs in rotation order
    std::map<std::pair<std::string, int>, std::array<std::pair<int, int>, 2>> xcopy;
    for (std::size_t ci = 0; ci < traces.size(); ++ci)
        for (std::size_t q = 0; q < traces[ci].passes.size(); ++q) {
            const auto& ps = traces[ci].passes[q];
            xcopy[{ps.xid, ps.sheet}][ps.slot] = {static_cast<int>(ci), static_cast<int>(q)};
        }
    for (const auto& [key, rec] : xcopy) {
        auto [ca, qa] = rec[0];
        auto [cb, qb] = rec[1];
        int ga = (qa - 1 + traces[ca].ltot) % traces[ca].ltot;
        int gb = (qb - 1 + traces[cb].ltot) % traces[cb].ltot;
        Dart a_in{0, ca, ga, traces[ca].subcount(ga), -1};
        Dart a_out{0, ca, qa, 0, 1};
        Dart b_in{0, cb, gb, traces[cb].subcount(gb), -1};
        Dart b_out{0, cb, qb, 0, 1};
        int hand = fan.crossings[fan.crossing_index(key.first)].hand;
        if (hand > 0)
            rot_ids({a_in, b_in, a_out, b_out});
        else
            rot_ids({a_in, b_out, a_out, b_in});
    }

    // seam punctures: one per (sheet interface, height), rotation
    // [seam below, east half-arc, seam above, west half-arc]
    std::map<std::pair<int, int>, std::vector<Dart>> punc;
    for (std::size_t ci = 0; ci < traces.size(); ++ci)
        for (const LiftEvent& ev : traces[ci].events) {
            Dart before{0, static_cast<int>(ci), ev.arc, ev.sub, -1};
            Dart after{0, static_cast<int>(ci), ev.arc, ev.sub + 1, 1};
            int t;
            Dart west, east;
            if (ev.sign > 0) {
                t = ev.before;
                west = before;
                east = after;
            } else {
                t = ev.after;
                east = before;
                west = after;
            }
            auto key = std::make_pair(t, ev.height);
            if (punc.count(key))
                throw_validation("SeamOverlap", "two seam transitions claim sheet " +
                                                    std::to_string(t + 1) + " height " +
                                                    std::to_string(ev.height));
            punc[key] = {Dart{1, t, ev.height - 1, 0, -1}, east, Dart{1, t, ev.height, 0, 1}, west};
        }
    if (static_cast<int>(punc.size()) != n * K)
        throw_validation("SeamCoverage", "lift covers " + std::to_string(punc.size()) +
                                             " of " + std::to_string(n * K) + " seam punctures");
    for (const auto& [key, rot] : punc) rot_ids(rot);

    // poles: one vertex at each end of every component's seam bundle
    for (std::size_t c = 0; c < ccycles.size(); ++c) {
        std::vector<Dart> a_rot, b_rot;
        for (auto it = ccycles[c].rbegin(); it != ccycles[c].rend(); ++it)
            a_rot.push_back(Dart{1, *it, 0, 0, 1});
        for (int t : ccycles[c]) b_rot.push_back(Dart{1, t, K, 0, -1});
        rot_ids(a_rot);
        rot_ids(b_rot);
    }

    std::vector<int> nxt(darts.size(), -1);
    for (const auto& rot : rotations)
        for (std::size_t i = 0; i < rot.size(); ++i) nxt[rot[i]] = rot[(i + 1) % rot.size()];

    std::vector<int> face_of(darts.size(), -1);
    std::vector<std::vector<int>> faces;
    for (int d0i = 0; d0i < static_cast<int>(darts.size()); ++d0i) {
        if (face_of[d0i] >= 0) continue;
        std::vector<int> orb;
        int x = d0i;
        while (face_of[x] < 0) {
            face_of[x] = static_cast<int>(faces.size());
            orb.push_back(x);
            x = nxt[twin(x)];
            if (x < 0) throw_validation("SeamCoverage", "cut complex has a dangling half-arc");
        }
        faces.push_back(std::move(orb));
    }
    info.faces = static_cast<int>(faces.size());

    // per-component counts
    std::vector<int> V(comp_names.size(), 0), E(comp_names.size(), 0), F(comp_names.size(), 0);
    for (const auto& [key, rec] : xcopy) ++V[comp_of_sheet[key.second]];
    for (int t = 0; t < n; ++t) {
        V[comp_of_sheet[t]] += K;
        E[comp_of_sheet[t]] += K + 1;
    }
    for (std::size_t c = 0; c < ccycles.size(); ++c) V[c] += 2;
    auto comp_of_trace = [&](int ci) { return comp_of_sheet[traces[ci].orbit[0]]; };
    for (std::size_t ci = 0; ci < traces.size(); ++ci)
        for (int g = 0; g < traces[ci].ltot; ++g)
            E[comp_of_trace(static_cast<int>(ci))] += traces[ci].subcount(g) + 1;
    for (const auto& orb : faces) {
        const Dart& d = darts[orb[0]];
        ++F[d[0] == 0 ? comp_of_trace(d[1]) : comp_of_sheet[d[1]]];
    }
    bool chi_ok = true;
    for (std::size_t c = 0; c < comp_names.size(); ++c) {
        info.vef[comp_names[c]] = {V[c], E[c], F[c]};
        info.chi[comp_names[c]] = V[c] - E[c] + F[c];
        if (V[c] - E[c] + F[c] != 2) chi_ok = false;
    }

    // seal the seam: faces meeting across a seam edge belong to one plain face
    std::vector<int> parent(faces.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (int t = 0; t < n; ++t)
        for (int j = 0; j <= K; ++j) {
            int a = find(face_of[id_of.at(Dart{1, t, j, 0, 1})]);
            int b = find(face_of[id_of.at(Dart{1, t, j, 0, -1})]);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }

    if (!chi_ok) {
        std::string msg = "cut surface is not a sphere union:";
        for (const auto& [cn, x] : info.chi) msg += " " + cn + "=" + std::to_string(x);
        throw_validation("CutChi", msg);
    }

    std::map<int, std::set<std::array<int, 3>>> cls_plain;  // root -> (curve, arc, dir)
    for (std::size_t fi = 0; fi < faces.size(); ++fi) {
        int cls = find(static_cast<int>(fi));
        for (int di : faces[fi]) {
            const Dart& d = darts[di];
            if (d[0] == 0) cls_plain[cls].insert({d[1], d[2], d[4]});
        }
    }

    // the sealed classes must reproduce the plain faces exactly
    DiagramMap map0 = build_map(d0);
    auto plain = trace_faces(d0, map0);
    std::vector<std::set<std::array<int, 3>>> plain_sets;
    for (const auto& orb : plain) {
        std::set<std::array<int, 3>> s;
        for (int dart : orb) {
            auto dec = map0.decode(dart, d0);
            s.insert({dec[0], dec[1], dec[2]});
        }
        plain_sets.push_back(std::move(s));
    }
    std::set<std::size_t> used;
    for (const auto& [cls, ds] : cls_plain) {
        bool found = false;
        for (std::size_t pfi = 0; pfi < plain_sets.size(); ++pfi)
            if (ds == plain_sets[pfi]) {
                if (used.count(pfi))
                    throw_validation("FaceMismatch", "two sealed face classes map to one plain face");
                used.insert(pfi);
                found = true;
                break;
            }
        if (!found)
            throw_validation("FaceMismatch", "sealed face class matches no plain face");
    }
    if (cls_plain.size() != plain_sets.size())
        throw_validation("FaceMismatch", "sealed face classes do not cover the plain faces");
    info.classes = static_cast<int>(cls_plain.size());

    // marked points: the faces swallowing each component's two pole vertices
    std::vector<DiagramData::RawMarked> marked;
    for (std::size_t c = 0; c < ccycles.size(); ++c) {
        int tmin = ccycles[c][0];
        int fa = find(face_of[id_of.at(Dart{1, tmin, 0, 0, 1})]);
        int fb = find(face_of[id_of.at(Dart{1, tmin, K, 0, -1})]);
        if (fa == fb)
            throw_validation("MarkedPointRule",
                             "both marked points of " + comp_names[c] + " fall in one face");
        for (auto [label, cls] : {std::pair{'A', fa}, std::pair{'B', fb}}) {
            auto it = cls_plain.find(cls);
            if (it == cls_plain.end() || it->second.empty())
                throw_validation("AnchorInexpressible",
                                 "marked face of " + comp_names[c] + " touches no curve arc");
            // anchor: least (curve, arc), forward side preferred
            std::array<int, 3> best = *std::min_element(
                it->second.begin(), it->second.end(), [](const auto& x, const auto& y) {
                    return std::tuple(x[0], x[1], x[2] > 0 ? 0 : 1) <
                           std::tuple(y[0], y[1], y[2] > 0 ? 0 : 1);
                });
            marked.push_back({std::string(1, label) + "." + comp_names[c], comp_names[c],
                              traces[best[0]].name, best[1], best[2]});
        }
    }
    return marked;
}

}  // namespace detail

// The identity data of degree 1 (gluing the fan back into the base diagram).
inline MonodromyRep trivial_rep(const Fan& fan) {
    MonodromyRep rep;
    rep.degree = 1;
    rep.names = fan.generator_names();
    rep.perms.assign(rep.names.size(), identity_perm(1));
    return rep;
}

// Lift the fan through permutation data: curves become orbit traces, crossings
// copy per sheet, the sister pairing transports along the dual paths, and the
// two marked points of every component are located on the cut surface.
inline LiftResult lift_fan(const Fan& fan, const MonodromyRep& rep) {
    const int n = rep.degree;
    if (n < 1) throw_validation("InvalidN", "degree must be at least 1");
    const Perm& sigma = rep.perm_of(fan.meridian);
    if (static_cast<int>(sigma.size()) != n)
        throw_validation("InvalidN", "permutation degree mismatch");
    Perm sig_inv = inverse(sigma);

    // components of the lifted surface = sheet cycles of the seam gluing
    std::vector<std::vector<int>> ccycles = cycles(sigma);
    std::vector<std::string> comp_names;
    std::vector<int> comp_of_sheet(n, 0);
    for (std::size_t i = 0; i < ccycles.size(); ++i) {
        comp_names.push_back("c" + std::to_string(i + 1));
        for (int t : ccycles[i]) comp_of_sheet[t] = static_cast<int>(i);
    }

    // trace every lifted curve from its arrow
    std::map<std::string, std::vector<detail::FanItem>> items_of;
    std::vector<detail::LiftTrace> traces;
    for (const auto& [curve, segs] : fan.chains) {
        auto items = detail::curve_items(fan, curve);
        int per_round = 0;
        for (const auto& it : items)
            if (it.is_pass) ++per_round;
        if (per_round == 0)
            throw_validation("EmptyCurve", "curve '" + curve + "' passes no crossing");
        auto step = [&](int u) {
            for (const auto& it : items)
                if (!it.is_pass) u = (it.sign > 0) ? sigma[u] : sig_inv[u];
            return u;
        };
        std::vector<bool> seen(n, false);
        for (int s0 = 0; s0 < n; ++s0) {
            if (seen[s0]) continue;
            std::vector<int> orb{s0};
            for (int u = step(s0); u != s0; u = step(u)) orb.push_back(u);
            auto mn = std::min_element(orb.begin(), orb.end());
            std::rotate(orb.begin(), mn, orb.end());
            for (int u : orb) seen[u] = true;

            detail::LiftTrace tr;
            tr.base = curve;
            tr.comp = comp_names[comp_of_sheet[orb[0]]];
            tr.name = curve + "[" + tr.comp + "." + std::to_string(orb[0] + 1) + "]";
            tr.orbit = orb;
            std::vector<detail::LiftEvent> head;
            int u = orb[0];
            for (std::size_t round = 0; round < orb.size(); ++round)
                for (const auto& it : items) {
                    if (it.is_pass) {
                        tr.passes.push_back({it.xid, u, it.slot});
                    } else {
                        int u2 = (it.sign > 0) ? sigma[u] : sig_inv[u];
                        detail::LiftEvent ev;
                        ev.arc = static_cast<int>(tr.passes.size()) - 1;
                        ev.sign = it.sign;
                        ev.height = it.height;
                        ev.before = u;
                        ev.after = u2;
                        (tr.passes.empty() ? head : tr.events).push_back(ev);
                        u = u2;
                    }
                }
            if (u != orb[0])
                throw_validation("LiftTraceBroken", "trace of '" + tr.name + "' does not close");
            tr.ltot = static_cast<int>(tr.passes.size());
            for (detail::LiftEvent ev : head) {
                ev.arc = tr.ltot - 1;  // events ahead of the arrow sit on the wrap arc
                tr.events.push_back(ev);
            }
            for (auto& ev : tr.events) ev.sub = tr.events_on_arc[ev.arc]++;
            traces.push_back(std::move(tr));
        }
        items_of[curve] = std::move(items);
    }
    std::sort(traces.begin(), traces.end(),
              [](const auto& a, const auto& b) { return natural_less(a.name, b.name); });

    // sheet -> (trace, round) per base curve, for transporting sister anchors
    std::map<std::string, std::vector<std::pair<int, int>>> locate;
    for (std::size_t ti = 0; ti < traces.size(); ++ti) {
        auto& slot = locate[traces[ti].base];
        if (slot.empty()) slot.assign(n, {-1, -1});
        for (std::size_t r = 0; r < traces[ti].orbit.size(); ++r)
            slot[traces[ti].orbit[r]] = {static_cast<int>(ti), static_cast<int>(r)};
    }

    // sister pairing: transport each lifted curve through the dual paths
    std::map<std::string, std::string> sisters;
    auto pair_names = [&](const std::string& a, const std::string& b) {
        auto ia = sisters.find(a);
        if (ia != sisters.end()) {
            if (ia->second != b)
                throw_validation("SisteringInconsistent",
                                 "conflicting sister assignments for '" + a + "'");
            return;
        }
        auto ib = sisters.find(b);
        if (ib != sisters.end() && ib->second != a)
            throw_validation("SisteringInconsistent",
                             "conflicting sister assignments for '" + b + "'");
        sisters[a] = b;
        sisters[b] = a;
    };
    for (const auto& dcl : fan.duals) {
        const std::string& X = dcl.alpha;
        std::string Y = fan.sister_of(X);
        const Perm& rho = rep.perm_of(dcl.name);
        Perm pa = power(sigma, -static_cast<long long>(dcl.w_a));
        Perm pb = power(sigma, dcl.w_b);
        auto [p_a, e_a] = detail::locate_point(fan, items_of[X], dcl.a_seg, dcl.a_gap);
        auto [p_b, e_b] = detail::locate_point(fan, items_of[Y], dcl.b_seg, dcl.b_gap);
        Perm ea_pow = power(sigma, e_a);
        Perm eb_inv = power(sigma, -static_cast<long long>(e_b));
        long long L = 0;
        for (const auto& it : items_of[X])
            if (it.is_pass) ++L;
        for (std::size_t ti = 0; ti < traces.size(); ++ti) {
            if (traces[ti].base != X) continue;
            const auto& orbA = traces[ti].orbit;
            long long R = static_cast<long long>(orbA.size());
            int target = -1;
            for (std::size_t r = 0; r < orbA.size(); ++r) {
                int v = ea_pow[orbA[r]];                 // sheet at the path's near end
                int t = pb[rho[pa[v]]];                  // sheet at the far end
                auto [tb, rp] = locate[Y][eb_inv[t]];    // receiving lifted curve, round
                if (target < 0) target = tb;
                if (tb != target || traces[tb].orbit.size() != orbA.size())
                    throw_validation("SisteringInconsistent",
                                     "dual '" + dcl.name + "' scatters the lifts of '" + X + "'");
                long long mod = R * L;
                long long posa = (static_cast<long long>(r) * L + p_a) % mod;
                long long posb = (static_cast<long long>(rp) * L + p_b) % mod;
                if (posa != posb)
                    throw_validation("SisteringInconsistent",
                                     "dual '" + dcl.name + "' misaligns positions on '" +
                                         traces[ti].name + "'");
            }
            pair_names(traces[ti].name, traces[target].name);
        }
    }
    for (const auto& [a, b] : fan.sisters) {
        bool pinned = false;
        for (const auto& dcl : fan.duals)
            if (dcl.alpha == a || dcl.alpha == b) pinned = true;
        if (!pinned)
            throw_validation("SisteringInconsistent",
                             "no dual path pins the lifted pairing of '" + a + "' and '" + b + "'");
    }
    if (sisters.size() != traces.size())
        throw_validation("SisteringInconsistent", "lifted sister pairing is incomplete");

    // crossing copies
    struct XRec {
        int hand = 1;
        std::array<std::pair<std::string, int>, 2> end{{{"", -1}, {"", -1}}};
    };
    std::map<std::string, XRec> xmap;
    for (const auto& tr : traces)
        for (std::size_t q = 0; q < tr.passes.size(); ++q) {
            const auto& ps = tr.passes[q];
            std::string key = ps.xid + "." + std::to_string(ps.sheet + 1);
            XRec& rec = xmap[key];
            rec.hand = fan.crossings[fan.crossing_index(ps.xid)].hand;
            if (rec.end[ps.slot].second >= 0)
                throw_validation("PassageConflict", "crossing copy '" + key + "' claimed twice");
            rec.end[ps.slot] = {tr.name, static_cast<int>(q)};
        }
    for (const auto& [key, rec] : xmap)
        if (rec.end[0].second < 0 || rec.end[1].second < 0)
            throw_validation("MissingPassage", "crossing copy '" + key + "' is passed only once");

    // assemble
    DiagramData data;
    data.name = fan.name + ".n" + std::to_string(n);
    data.components = comp_names;
    for (const auto& tr : traces) data.curves.push_back({tr.name, tr.comp, tr.ltot});
    for (const auto& [key, rec] : xmap)
        data.crossings.push_back({key, rec.end[0].first, rec.end[1].first, rec.end[0].second,
                                  rec.end[1].second, rec.hand});
    for (const auto& [a, b] : sisters)
        if (a < b) data.sisters.push_back({a, b});
    Diagram d0 = assemble_diagram(data);

    LiftResult res;
    data.marked = detail::cut_complex(fan, rep, traces, ccycles, comp_names, comp_of_sheet, d0,
                                      res.cut);
    res.diagram = assemble_diagram(data);
    for (std::size_t c = 0; c < ccycles.size(); ++c) res.comp_sheets[comp_names[c]] = ccycles[c];
    return res;
}

// The base diagram the fan folds back into.
inline LiftResult base_diagram(const Fan& fan) { return lift_fan(fan, trivial_rep(fan)); }

}  // namespace spherecover
