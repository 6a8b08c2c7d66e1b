#pragma once

#include <algorithm>
#include <compare>
#include <vector>

namespace spherecover {

// One letter of a group word: generator index with exponent +1 or -1.
struct Letter {
    int gen = 0;
    int exp = 1;
    friend auto operator<=>(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

inline Word free_reduce(const Word& w) {
    Word out;
    for (const Letter& t : w) {
        if (!out.empty() && out.back().gen == t.gen && out.back().exp == -t.exp)
            out.pop_back();
        else
            out.push_back(t);
    }
    return out;
}

inline Word inverse_word(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->gen, -it->exp});
    return out;
}

inline Word cyclic_reduce(const Word& w) {
    Word r = free_reduce(w);
    while (r.size() >= 2 && r.front().gen == r.back().gen && r.front().exp == -r.back().exp) {
        Word mid(r.begin() + 1, r.end() - 1);
        r = free_reduce(mid);
    }
    return r;
}

// Canonical representative of a relator up to cyclic rotation and inversion:
// the lexicographically smallest rotation of the cyclically reduced word or
// its inverse.  The empty word represents a trivial relator.
inline Word relator_class(const Word& w) {
    Word r = cyclic_reduce(w);
    if (r.empty()) return r;
    Word best;
    bool have = false;
    for (int flip = 0; flip < 2; ++flip) {
        Word u = flip ? inverse_word(r) : r;
        for (std::size_t i = 0; i < u.size(); ++i) {
            Word rot(u.begin() + i, u.end());
            rot.insert(rot.end(), u.begin(), u.begin() + i);
            if (!have || rot < best) {
                best = std::move(rot);
                have = true;
            }
        }
    }
    return best;
}

}  // namespace spherecover
