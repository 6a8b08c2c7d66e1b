#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "diagram.hpp"
#include "errors.hpp"
#include "presentation.hpp"
#include "words.hpp"

namespace spherecover {

// CW structure of the identification space: vertices are crossing triplets,
// edges are sister arc pairs (named by the smaller curve), faces are the
// diagram faces with boundary words over the edges.
struct CellComplex {
    int nv = 0;
    struct Edge {
        int curve = 0, k = 0;  // representative arc (smaller sister curve)
        int tail = 0, head = 0;
    };
    std::vector<Edge> edges;
    std::vector<Word> fwords;  // boundary word of each face, letters = edges
    std::vector<std::pair<std::string, int>> marked_faces;  // (marked id, face)
};

inline CellComplex build_complex(const Diagram& d) {
    auto tr = compute_triplets(d);
    if (!tr)
        throw_validation("TripletClosureFailed", "crossing partner chains do not close in triples");
    auto pi = passage_index(d);

    CellComplex cc;
    cc.nv = static_cast<int>(tr->size());
    std::vector<int> vtx_of_crossing(d.crossings.size(), -1);
    for (std::size_t vi = 0; vi < tr->size(); ++vi)
        for (int x : (*tr)[vi]) vtx_of_crossing[x] = static_cast<int>(vi);

    std::map<std::pair<int, int>, int> edge_idx;
    for (int cu = 0; cu < static_cast<int>(d.curves.size()); ++cu) {
        int sc = d.sister[cu];
        if (sc < cu) continue;
        int L = d.curves[cu].len;
        for (int k = 0; k < L; ++k) {
            int tail = vtx_of_crossing[pi->at.at({cu, k}).first];
            int head = vtx_of_crossing[pi->at.at({cu, (k + 1) % L}).first];
            edge_idx[{cu, k}] = static_cast<int>(cc.edges.size());
            cc.edges.push_back({cu, k, tail, head});
        }
    }

    DiagramMap m = build_map(d);
    auto faces = trace_faces(d, m);
    std::vector<int> face_of_dart(2 * m.total_arcs, -1);
    for (std::size_t fi = 0; fi < faces.size(); ++fi) {
        Word w;
        for (int dart : faces[fi]) {
            face_of_dart[dart] = static_cast<int>(fi);
            auto dec = m.decode(dart, d);
            int rep = std::min(dec[0], d.sister[dec[0]]);
            w.push_back({edge_idx.at({rep, dec[1]}), dec[2]});
        }
        cc.fwords.push_back(std::move(w));
    }
    for (const auto& mk : d.marked)
        cc.marked_faces.push_back({mk.id, face_of_dart[m.dart(mk.curve, mk.arc, mk.dir)]});
    return cc;
}

// Spanning-tree traversal order; both must yield the same group.
enum class TreeStrategy { Bfs, Dfs };

struct CellPresentation {
    Presentation pres;           // generators = non-tree edges, relators = sealed faces
    std::vector<Word> meridians;  // boundary words of the punctured faces
};

// Presentation of the identification space with the faces in `punctured`
// removed.  Generators e0, e1, ... are the non-tree edges in edge order.
inline CellPresentation cell_presentation(const CellComplex& cc, const std::set<int>& punctured,
                                          TreeStrategy strat = TreeStrategy::Bfs) {
    std::vector<std::vector<std::pair<int, int>>> adj(cc.nv);  // (edge, other end)
    for (std::size_t ei = 0; ei < cc.edges.size(); ++ei) {
        adj[cc.edges[ei].tail].push_back({static_cast<int>(ei), cc.edges[ei].head});
        adj[cc.edges[ei].head].push_back({static_cast<int>(ei), cc.edges[ei].tail});
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());

    std::set<int> intree;
    std::vector<bool> seen(cc.nv, false);
    if (cc.nv > 0) {
        seen[0] = true;
        if (strat == TreeStrategy::Bfs) {
            std::deque<int> q{0};
            while (!q.empty()) {
                int v = q.front();
                q.pop_front();
                for (auto [ei, w] : adj[v])
                    if (!seen[w]) {
                        seen[w] = true;
                        intree.insert(ei);
                        q.push_back(w);
                    }
            }
        } else {
            std::function<void(int)> dfs = [&](int v) {
                for (auto [ei, w] : adj[v])
                    if (!seen[w]) {
                        seen[w] = true;
                        intree.insert(ei);
                        dfs(w);
                    }
            };
            dfs(0);
        }
        for (bool s : seen)
            if (!s)
                throw_validation("SkeletonDisconnected",
                                 "the edge skeleton is not connected; no presentation from one "
                                 "basepoint");
    }

    CellPresentation out;
    out.pres.name = "pi1";
    std::vector<int> gen_of_edge(cc.edges.size(), -1);
    for (std::size_t ei = 0; ei < cc.edges.size(); ++ei)
        if (!intree.count(static_cast<int>(ei))) {
            gen_of_edge[ei] = static_cast<int>(out.pres.gens.size());
            out.pres.gens.push_back("e" + std::to_string(out.pres.gens.size()));
        }
    for (std::size_t fi = 0; fi < cc.fwords.size(); ++fi) {
        Word w;
        for (const Letter& t : cc.fwords[fi])
            if (gen_of_edge[t.gen] >= 0) w.push_back({gen_of_edge[t.gen], t.exp});
        if (punctured.count(static_cast<int>(fi)))
            out.meridians.push_back(std::move(w));
        else
            out.pres.rels.push_back(std::move(w));
    }
    return out;
}

// Presentation on one generator per sister pair (named after the larger
// curve), one length-3 relator per crossing triplet, read along the partner
// chain.  Only defined when the diagram lives on a single sphere.
inline Presentation dual_presentation(const Diagram& d) {
    if (d.components.size() > 1)
        throw_validation("MultiComponentDomain",
                         "pair presentation needs a single-sphere diagram");
    auto tr = compute_triplets(d);
    if (!tr)
        throw_validation("TripletClosureFailed", "crossing partner chains do not close in triples");
    auto pi = passage_index(d);

    Presentation p;
    p.name = "dual";
    std::vector<std::pair<int, int>> rep(d.curves.size(), {-1, 0});
    for (int cu = 0; cu < static_cast<int>(d.curves.size()); ++cu) {
        int sc = d.sister[cu];
        if (cu < sc) continue;
        int gi = static_cast<int>(p.gens.size());
        p.gens.push_back(d.curves[cu].id + "#");
        rep[cu] = {gi, 1};
        rep[sc] = {gi, -1};
    }
    auto passage_of = [&](int xi, int slot) {
        const auto& x = d.crossings[xi];
        return slot == 0 ? std::make_pair(x.curve_a, x.pos_a) : std::make_pair(x.curve_b, x.pos_b);
    };
    for (const auto& orb : *tr) {
        Word w;
        int cur = orb[0], via = 0;
        for (int step = 0; step < 3; ++step) {
            auto [cu, pos] = passage_of(cur, via);
            w.push_back({rep[cu].first, rep[cu].second});
            auto [nx, nslot] = pi->at.at({d.sister[cu], pos});
            via = 1 - nslot;
            cur = nx;
        }
        p.rels.push_back(std::move(w));
    }
    return p;
}

}  // namespace spherecover
