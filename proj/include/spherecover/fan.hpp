#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "textio.hpp"

namespace spherecover {

// The fan: a sphere diagram cut along an arc joining the two poles, leaving a
// left and a right seam with K matched puncture heights.  Curves decompose
// into segments between seam transitions; gluing right height h to left
// height h (one copy, identity) recovers the base diagram, and gluing across
// n copies along a permutation builds covers.
struct Fan {
    std::string name;
    int seam_k = 0;

    struct Crossing {
        std::string id;
        std::string seg_a;
        int pos_a = 0;  // index into the segment's passage list
        std::string seg_b;
        int pos_b = 0;
        int hand = 1;
    };
    std::vector<Crossing> crossings;  // file order (already canonical in data)

    struct End {
        bool closed = false;
        char side = 'L';  // 'L' or 'R'
        int height = 0;   // 1..K
    };
    struct Segment {
        std::string id;
        std::string curve;
        End entry, exit;
        std::vector<std::string> passages;  // crossing ids in traversal order
    };
    std::vector<Segment> segments;

    // curve -> ordered cyclic chain of segment ids
    std::vector<std::pair<std::string, std::vector<std::string>>> chains;

    // curve -> (segment id, gap index); gap g sits after g passages
    std::map<std::string, std::pair<std::string, int>> arrows;

    std::vector<std::pair<std::string, std::string>> sisters;

    struct Dual {
        std::string name;
        std::string alpha;  // base curve carrying path a
        std::string a_seg;
        int a_gap = 0;
        int w_a = 0;  // net seam crossings of path a
        std::string b_seg;
        int b_gap = 0;
        int w_b = 0;
    };
    std::vector<Dual> duals;

    std::string meridian;
    std::vector<std::vector<std::string>> relations;  // token words
    std::vector<std::string> warnings;

    int segment_index(const std::string& id) const {
        for (std::size_t i = 0; i < segments.size(); ++i)
            if (segments[i].id == id) return static_cast<int>(i);
        return -1;
    }
    int crossing_index(const std::string& id) const {
        for (std::size_t i = 0; i < crossings.size(); ++i)
            if (crossings[i].id == id) return static_cast<int>(i);
        return -1;
    }
    const std::vector<std::string>* chain_of(const std::string& curve) const {
        for (const auto& [cu, segs] : chains)
            if (cu == curve) return &segs;
        return nullptr;
    }
    std::string sister_of(const std::string& curve) const {
        for (const auto& [a, b] : sisters) {
            if (a == curve) return b;
            if (b == curve) return a;
        }
        return {};
    }
    // all generator names a monodromy representation must cover
    std::vector<std::string> generator_names() const {
        std::vector<std::string> out{meridian};
        for (const auto& dcl : duals) out.push_back(dcl.name);
        return out;
    }
};

namespace detail {

inline void check_fan(Fan& fan) {
    if (fan.seam_k < 1) throw_parse("ParseError", "fan needs at least one seam height");
    if (fan.meridian.empty()) throw_parse("ParseError", "fan is missing a meridian line");

    // name uniqueness across generator names
    {
        std::set<std::string> names{fan.meridian};
        for (const auto& dcl : fan.duals)
            if (!names.insert(dcl.name).second)
                throw_parse("ParseError", "duplicate generator name '" + dcl.name + "'");
    }

    // segments: referenced curves must have chains; passages resolve below
    std::map<std::string, int> seg_idx;
    for (std::size_t i = 0; i < fan.segments.size(); ++i) {
        const auto& s = fan.segments[i];
        if (seg_idx.count(s.id)) throw_parse("ParseError", "duplicate segment '" + s.id + "'");
        seg_idx[s.id] = static_cast<int>(i);
        if (s.entry.closed != s.exit.closed)
            throw_parse("ParseError", "segment '" + s.id + "' mixes closed and seam ends");
        for (const auto& e : {s.entry, s.exit})
            if (!e.closed && (e.height < 1 || e.height > fan.seam_k))
                throw_parse("OutOfRange", "segment '" + s.id + "' endpoint height outside seam");
    }

    // chains: cover all segments exactly once; segments belong to their curve
    std::set<std::string> chained;
    std::set<std::string> curve_names;
    for (const auto& [curve, segs] : fan.chains) {
        if (!curve_names.insert(curve).second)
            throw_parse("ParseError", "duplicate chain for curve '" + curve + "'");
        if (segs.empty()) throw_parse("ParseError", "empty chain for curve '" + curve + "'");
        for (const auto& sid : segs) {
            auto it = seg_idx.find(sid);
            if (it == seg_idx.end())
                throw_parse("ParseError", "chain references unknown segment '" + sid + "'");
            if (fan.segments[it->second].curve != curve)
                throw_parse("ParseError", "segment '" + sid + "' listed under the wrong curve");
            if (!chained.insert(sid).second)
                throw_parse("ParseError", "segment '" + sid + "' appears in two chain positions");
        }
        // closed chains are single closed segments; seam chains alternate
        bool closed = fan.segments[seg_idx[segs[0]]].entry.closed;
        if (closed && segs.size() != 1)
            throw_parse("ParseError", "closed curve '" + curve + "' must be a single segment");
        if (!closed) {
            for (std::size_t i = 0; i < segs.size(); ++i) {
                const auto& cur = fan.segments[seg_idx[segs[i]]];
                const auto& nxt = fan.segments[seg_idx[segs[(i + 1) % segs.size()]]];
                if (cur.exit.closed || nxt.entry.closed)
                    throw_parse("ParseError", "closed segment inside a seam chain");
                // exit R_h glues to entry L_h; exit L_h to entry R_h
                if (cur.exit.height != nxt.entry.height || cur.exit.side == nxt.entry.side)
                    throw_validation("SeamMismatch",
                                     "chain of '" + curve + "' breaks between '" + cur.id +
                                         "' and '" + nxt.id + "'");
            }
        }
    }
    for (const auto& s : fan.segments)
        if (!chained.count(s.id))
            throw_parse("ParseError", "segment '" + s.id + "' belongs to no chain");

    // every seam height carries exactly one left and one right endpoint with
    // complementary entry/exit roles
    for (int h = 1; h <= fan.seam_k; ++h) {
        int left = 0, right = 0, entries = 0, exits = 0;
        for (const auto& s : fan.segments) {
            if (!s.entry.closed && s.entry.height == h) {
                ++entries;
                (s.entry.side == 'L' ? left : right)++;
            }
            if (!s.exit.closed && s.exit.height == h) {
                ++exits;
                (s.exit.side == 'L' ? left : right)++;
            }
        }
        if (left != 1 || right != 1 || entries != 1 || exits != 1)
            throw_validation("SeamMismatch",
                             "seam height " + std::to_string(h) +
                                 " is not matched by exactly one left and one right endpoint");
    }

    // crossings resolve against segment passage lists, consistently
    std::map<std::string, int> seen_x;
    for (const auto& x : fan.crossings) {
        if (seen_x.count(x.id)) throw_parse("ParseError", "duplicate crossing '" + x.id + "'");
        seen_x[x.id] = 0;
        for (const auto& [sid, pos] : {std::pair{x.seg_a, x.pos_a}, std::pair{x.seg_b, x.pos_b}}) {
            auto it = seg_idx.find(sid);
            if (it == seg_idx.end())
                throw_parse("ParseError", "crossing '" + x.id + "' references unknown segment '" + sid + "'");
            const auto& s = fan.segments[it->second];
            if (pos < 0 || pos >= static_cast<int>(s.passages.size()))
                throw_parse("OutOfRange", "crossing '" + x.id + "' position outside segment '" + sid + "'");
            if (s.passages[pos] != x.id)
                throw_parse("ParseError", "crossing '" + x.id + "' disagrees with passage list of '" +
                                              sid + "'");
        }
    }
    for (const auto& s : fan.segments)
        for (std::size_t p = 0; p < s.passages.size(); ++p) {
            const std::string& xid = s.passages[p];
            auto it = seen_x.find(xid);
            if (it == seen_x.end())
                throw_parse("ParseError", "segment '" + s.id + "' lists undeclared crossing '" + xid + "'");
            it->second++;
        }
    for (const auto& [xid, cnt] : seen_x)
        if (cnt != 2)
            throw_parse("ParseError", "crossing '" + xid + "' must be traversed exactly twice");

    // arrows: one per curve, at a valid gap
    for (const auto& [curve, segs] : fan.chains) {
        auto it = fan.arrows.find(curve);
        if (it == fan.arrows.end())
            throw_parse("ParseError", "curve '" + curve + "' has no arrow");
        const auto& [sid, gap] = it->second;
        auto si = seg_idx.find(sid);
        if (si == seg_idx.end() || fan.segments[si->second].curve != curve)
            throw_parse("ParseError", "arrow of '" + curve + "' is not on its own chain");
        if (gap < 0 || gap > static_cast<int>(fan.segments[si->second].passages.size()))
            throw_parse("OutOfRange", "arrow gap of '" + curve + "' out of range");
    }
    for (const auto& [curve, pos] : fan.arrows)
        if (!fan.chain_of(curve)) throw_parse("ParseError", "arrow for unknown curve '" + curve + "'");

    // sisters: fixed-point-free involution on base curves
    {
        std::set<std::string> paired;
        for (const auto& [a, b] : fan.sisters) {
            if (a == b) throw_parse("ParseError", "curve '" + a + "' cannot be its own sister");
            for (const auto& cu : {a, b}) {
                if (!fan.chain_of(cu)) throw_parse("ParseError", "sister line references unknown curve '" + cu + "'");
                if (!paired.insert(cu).second)
                    throw_parse("ParseError", "curve '" + cu + "' paired twice");
            }
        }
        for (const auto& [curve, segs] : fan.chains)
            if (!paired.count(curve))
                throw_parse("ParseError", "curve '" + curve + "' has no sister");
        // sister chains must glue to equal total length
        for (const auto& [a, b] : fan.sisters) {
            auto total = [&](const std::string& cu) {
                int t = 0;
                for (const auto& sid : *fan.chain_of(cu))
                    t += static_cast<int>(fan.segments[seg_idx[sid]].passages.size());
                return t;
            };
            if (total(a) != total(b))
                throw_validation("OrientationError",
                                 "sister curves '" + a + "' and '" + b +
                                     "' have different lengths after gluing");
        }
    }

    // duals: endpoints are gap positions on the right chains
    for (const auto& dcl : fan.duals) {
        if (!fan.chain_of(dcl.alpha))
            throw_parse("ParseError", "dual '" + dcl.name + "' references unknown curve '" + dcl.alpha + "'");
        std::string beta = fan.sister_of(dcl.alpha);
        if (beta.empty())
            throw_parse("ParseError", "dual '" + dcl.name + "' needs a sister pair");
        auto check_end = [&](const std::string& sid, int gap, const std::string& curve) {
            auto it = seg_idx.find(sid);
            if (it == seg_idx.end() || fan.segments[it->second].curve != curve)
                throw_parse("ParseError",
                            "dual '" + dcl.name + "' endpoint '" + sid + "' is not on curve '" + curve + "'");
            if (gap < 0 || gap > static_cast<int>(fan.segments[it->second].passages.size()))
                throw_parse("OutOfRange", "dual '" + dcl.name + "' endpoint gap out of range");
        };
        check_end(dcl.a_seg, dcl.a_gap, dcl.alpha);
        check_end(dcl.b_seg, dcl.b_gap, beta);
    }

    // relations over declared generator names
    {
        std::set<std::string> names{fan.meridian};
        for (const auto& dcl : fan.duals) names.insert(dcl.name);
        for (const auto& word : fan.relations)
            for (std::string tok : word) {
                if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1")
                    tok = tok.substr(0, tok.size() - 3);
                if (!names.count(tok))
                    throw_parse("ParseError", "relation uses unknown generator '" + tok + "'");
            }
        if (fan.relations.empty())
            fan.warnings.push_back(
                "no relation lines: representation relation checks will be skipped");
    }
}

}  // namespace detail

// Line format ('#' comments, blank lines ignored):
//   fan <name> / format 1 / seam <K>
//   crossing <id> <segA>:<pA> <segB>:<pB> <+|->
//   segment <id> <curve> <L|R><h>|closed -> <L|R><h>|closed : <crossing ids>
//   chain <curve> : <segment ids>
//   arrow <curve> <segment>:<gap>
//   sister <curveA> <curveB>
//   dual <name> <curve> <segment>:<gap> <w_a> <segment>:<gap> <w_b>
//   meridian <name>
//   relation <word>           (tokens g, g^-1)
inline Fan parse_fan(const std::string& text) {
    Fan fan;
    bool saw_header = false, saw_format = false;
    auto parse_end = [](const std::string& tok, const TextLine& line) -> Fan::End {
        if (tok == "closed") return {true, 'L', 0};
        if (tok.size() < 2 || (tok[0] != 'L' && tok[0] != 'R'))
            throw_parse("ParseError",
                        "segment end must be closed, L<h> or R<h> (line " + std::to_string(line.number) + ")");
        TextLine sub = line;
        long h = parse_int_token(tok.substr(1), sub);
        return {false, tok[0], static_cast<int>(h)};
    };
    for (const TextLine& line : tokenize_lines(text)) {
        const auto& t = line.tokens;
        auto bad = [&]() {
            throw_parse("ParseError", "malformed '" + t[0] + "' line " + std::to_string(line.number));
        };
        if (t[0] == "fan") {
            if (t.size() != 2) bad();
            fan.name = t[1];
            saw_header = true;
        } else if (t[0] == "format") {
            if (t.size() != 2) bad();
            if (t[1] != "1") throw_parse("ParseError", "unsupported format version '" + t[1] + "'");
            saw_format = true;
        } else if (t[0] == "seam") {
            if (t.size() != 2) bad();
            fan.seam_k = static_cast<int>(parse_int_token(t[1], line));
        } else if (t[0] == "crossing") {
            if (t.size() != 5) bad();
            auto [sa, pa] = parse_ref(t[2], line);
            auto [sb, pb] = parse_ref(t[3], line);
            int hand;
            if (t[4] == "+")
                hand = 1;
            else if (t[4] == "-")
                hand = -1;
            else
                throw_parse("ParseError", "handedness must be + or - on line " + std::to_string(line.number));
            fan.crossings.push_back({t[1], sa, static_cast<int>(pa), sb, static_cast<int>(pb), hand});
        } else if (t[0] == "segment") {
            // segment <id> <curve> <end> -> <end> : <ids...>
            if (t.size() < 7 || t[4] != "->" || t[6] != ":") bad();
            Fan::Segment s;
            s.id = t[1];
            s.curve = t[2];
            s.entry = parse_end(t[3], line);
            s.exit = parse_end(t[5], line);
            for (std::size_t i = 7; i < t.size(); ++i) s.passages.push_back(t[i]);
            fan.segments.push_back(std::move(s));
        } else if (t[0] == "chain") {
            if (t.size() < 4 || t[2] != ":") bad();
            std::vector<std::string> segs(t.begin() + 3, t.end());
            fan.chains.push_back({t[1], std::move(segs)});
        } else if (t[0] == "arrow") {
            if (t.size() != 3) bad();
            auto [sid, gap] = parse_ref(t[2], line);
            if (fan.arrows.count(t[1]))
                throw_parse("ParseError", "duplicate arrow for curve '" + t[1] + "'");
            fan.arrows[t[1]] = {sid, static_cast<int>(gap)};
        } else if (t[0] == "sister") {
            if (t.size() != 3) bad();
            fan.sisters.push_back({t[1], t[2]});
        } else if (t[0] == "dual") {
            if (t.size() != 7) bad();
            auto [as, ag] = parse_ref(t[3], line);
            auto [bs, bg] = parse_ref(t[5], line);
            fan.duals.push_back({t[1], t[2], as, static_cast<int>(ag),
                                 static_cast<int>(parse_int_token(t[4], line)), bs,
                                 static_cast<int>(bg), static_cast<int>(parse_int_token(t[6], line))});
        } else if (t[0] == "meridian") {
            if (t.size() != 2) bad();
            if (!fan.meridian.empty()) throw_parse("ParseError", "duplicate meridian line");
            fan.meridian = t[1];
        } else if (t[0] == "relation") {
            fan.relations.push_back({t.begin() + 1, t.end()});
        } else {
            throw_parse("ParseError",
                        "unknown directive '" + t[0] + "' on line " + std::to_string(line.number));
        }
    }
    if (!saw_header) throw_parse("ParseError", "missing fan header line");
    if (!saw_format) throw_parse("ParseError", "missing format line");
    detail::check_fan(fan);
    return fan;
}

inline std::string serialize(const Fan& fan) {
    std::ostringstream os;
    os << "fan " << fan.name << "\n";
    os << "format 1\n";
    os << "seam " << fan.seam_k << "\n";
    for (const auto& x : fan.crossings)
        os << "crossing " << x.id << ' ' << x.seg_a << ':' << x.pos_a << ' ' << x.seg_b << ':'
           << x.pos_b << ' ' << (x.hand > 0 ? '+' : '-') << "\n";
    auto fmt_end = [](const Fan::End& e) {
        if (e.closed) return std::string("closed");
        return std::string(1, e.side) + std::to_string(e.height);
    };
    for (const auto& s : fan.segments) {
        os << "segment " << s.id << ' ' << s.curve << ' ' << fmt_end(s.entry) << " -> "
           << fmt_end(s.exit) << " :";
        for (const auto& p : s.passages) os << ' ' << p;
        os << "\n";
    }
    for (const auto& [curve, segs] : fan.chains) {
        os << "chain " << curve << " :";
        for (const auto& sid : segs) os << ' ' << sid;
        os << "\n";
    }
    for (const auto& [curve, pos] : fan.arrows)
        os << "arrow " << curve << ' ' << pos.first << ':' << pos.second << "\n";
    for (const auto& [a, b] : fan.sisters) os << "sister " << a << ' ' << b << "\n";
    for (const auto& dcl : fan.duals)
        os << "dual " << dcl.name << ' ' << dcl.alpha << ' ' << dcl.a_seg << ':' << dcl.a_gap << ' '
           << dcl.w_a << ' ' << dcl.b_seg << ':' << dcl.b_gap << ' ' << dcl.w_b << "\n";
    os << "meridian " << fan.meridian << "\n";
    for (const auto& word : fan.relations) {
        os << "relation";
        for (const auto& tok : word) os << ' ' << tok;
        os << "\n";
    }
    return os.str();
}

}  // namespace spherecover
