#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"
#include "perm.hpp"
#include "presentation.hpp"
#include "words.hpp"

namespace spherecover {

using BigInt = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------- Smith form

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

// Diagonal of the Smith normal form (non-negative, divisibility-ordered).
// Exact arbitrary-precision arithmetic throughout.
inline std::vector<BigInt> smith_diagonal(std::vector<std::vector<BigInt>> m, int ncols) {
    int nr = static_cast<int>(m.size());
    int nc = ncols;
    std::vector<BigInt> diag;
    int r0 = 0, c0 = 0;
    while (r0 < nr && c0 < nc) {
        int pi = -1, pj = -1;
        BigInt best = 0;
        for (int i = r0; i < nr; ++i)
            for (int j = c0; j < nc; ++j) {
                if (m[i][j] == 0) continue;
                BigInt a = abs(m[i][j]);
                if (pi < 0 || a < best) {
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        std::swap(m[r0], m[pi]);
        if (pj != c0)
            for (auto& row : m) std::swap(row[c0], row[pj]);
        while (true) {
            BigInt p = m[r0][c0];
            for (int i = r0 + 1; i < nr; ++i) {
                BigInt q = floor_div(m[i][c0], p);
                if (q != 0)
                    for (int j = c0; j < nc; ++j) m[i][j] -= q * m[r0][j];
            }
            for (int j = c0 + 1; j < nc; ++j) {
                BigInt q = floor_div(m[r0][j], p);
                if (q != 0)
                    for (int i = r0; i < nr; ++i) m[i][j] -= q * m[i][c0];
            }
            bool swapped = false;
            for (int i = r0 + 1; i < nr; ++i)
                if (m[i][c0] != 0) {
                    std::swap(m[r0], m[i]);
                    swapped = true;
                    break;
                }
            if (!swapped)
                for (int j = c0 + 1; j < nc; ++j)
                    if (m[r0][j] != 0) {
                        for (auto& row : m) std::swap(row[c0], row[j]);
                        swapped = true;
                        break;
                    }
            if (!swapped) break;
        }
        diag.push_back(abs(m[r0][c0]));
        ++r0;
        ++c0;
    }
    // Normalize the diagonal into a divisibility chain (0 = infinite order,
    // sorted after all finite entries).
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
            BigInt a = diag[i], b = diag[i + 1];
            if (a == 0 && b != 0) {
                diag[i] = b;
                diag[i + 1] = 0;
                changed = true;
            } else if (a != 0 && b != 0 && b % a != 0) {
                BigInt g = gcd(a, b);
                diag[i] = g;
                diag[i + 1] = a / g * b;
                changed = true;
            }
        }
    }
    return diag;
}

// Invariant factors of the abelianized group, in divisibility order; factor 0
// denotes an infinite cyclic summand; trivial factors (1) are dropped.
inline std::vector<BigInt> abelianization(const Presentation& p) {
    int ng = static_cast<int>(p.gens.size());
    std::vector<std::vector<BigInt>> rows;
    for (const Word& w : p.rels) {
        std::vector<BigInt> r(ng, 0);
        for (const Letter& t : w) r[t.gen] += t.exp;
        rows.push_back(std::move(r));
    }
    std::vector<BigInt> d = smith_diagonal(std::move(rows), ng);
    int rank_drop = 0;
    std::vector<BigInt> out;
    for (const BigInt& x : d)
        if (x != 0) ++rank_drop;
    for (const BigInt& x : d)
        if (x != 0 && x != 1) out.push_back(x);
    for (int i = 0; i < ng - rank_drop; ++i) out.push_back(0);
    return out;
}

// ------------------------------------------------------------- Todd-Coxeter

struct CosetResult {
    bool finite = false;
    long long count = 0;  // order when finite, configured bound otherwise
    std::string str() const {
        return (finite ? "Finite(" : "Exceeded(") + std::to_string(count) + ")";
    }
    friend bool operator==(const CosetResult&, const CosetResult&) = default;
};

constexpr long long kDefaultMaxCosets = 100000;

namespace detail {

// Plain deterministic HLT enumeration over the trivial subgroup: relator
// scans with immediate deductions, FIFO coincidence processing, row filling
// in scan order, no lookahead.  Cosets are numbered in discovery order.
struct CosetTable {
    int nc;                   // columns: one per generator direction
    long long limit;
    std::vector<int32_t> table;  // row-major, -1 = undefined
    std::vector<int32_t> parent;
    long long live = 1;
    bool overflow = false;

    explicit CosetTable(int ngens, long long max_cosets)
        : nc(2 * ngens), limit(max_cosets) {
        table.assign(nc, -1);
        parent.assign(1, 0);
    }

    static int inv_col(int c) { return c ^ 1; }
    int32_t& at(int row, int col) { return table[static_cast<std::size_t>(row) * nc + col]; }
    int rows() const { return static_cast<int>(parent.size()); }

    int find(int x) {
        int r = x;
        while (parent[r] != r) r = parent[r];
        while (parent[x] != r) {
            int nx = parent[x];
            parent[x] = r;
            x = nx;
        }
        return r;
    }

    int new_coset(int q, int c) {
        if (live >= limit || rows() >= 4 * limit + 16) {
            overflow = true;
            return -1;
        }
        int nv = rows();
        table.resize(table.size() + nc, -1);
        parent.push_back(nv);
        at(q, c) = nv;
        at(nv, inv_col(c)) = q;
        ++live;
        return nv;
    }

    void merge(int a, int b, std::deque<int>& q) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        parent[b] = a;
        q.push_back(b);
    }

    void coincidence(int a, int b) {
        std::deque<int> q;
        merge(a, b, q);
        while (!q.empty()) {
            int gamma = q.front();
            q.pop_front();
            --live;
            for (int x = 0; x < nc; ++x) {
                int delta = at(gamma, x);
                if (delta == -1) continue;
                if (at(delta, inv_col(x)) == gamma) at(delta, inv_col(x)) = -1;
                int mu = find(gamma), nu = find(delta);
                if (at(mu, x) != -1)
                    merge(nu, at(mu, x), q);
                else if (at(nu, inv_col(x)) != -1)
                    merge(mu, at(nu, inv_col(x)), q);
                else {
                    at(mu, x) = nu;
                    at(nu, inv_col(x)) = mu;
                }
            }
        }
    }

    void scan_and_fill(int q_in, const std::vector<int>& rel) {
        while (!overflow) {
            int q0 = find(q_in);
            int f = q0;
            std::size_t i = 0, n = rel.size();
            while (i < n && at(f, rel[i]) != -1) {
                f = at(f, rel[i]);
                ++i;
            }
            if (i == n) {
                if (f != q0) coincidence(f, q0);
                return;
            }
            int b = q0;
            std::size_t j = n;
            while (j > i && at(b, inv_col(rel[j - 1])) != -1) {
                b = at(b, inv_col(rel[j - 1]));
                --j;
            }
            if (j == i) {
                if (f != b) coincidence(f, b);
                return;
            }
            if (j == i + 1) {
                at(f, rel[i]) = b;
                at(b, inv_col(rel[i])) = f;
                return;
            }
            new_coset(f, rel[i]);
            // rescan from the (possibly merged) start
        }
    }
};

}  // namespace detail

inline CosetResult todd_coxeter(const Presentation& p, long long max_cosets = kDefaultMaxCosets) {
    int ng = static_cast<int>(p.gens.size());
    std::vector<std::vector<int>> rels;
    for (const Word& w : p.rels) {
        Word r = cyclic_reduce(w);
        if (r.empty()) continue;
        std::vector<int> cols;
        cols.reserve(r.size());
        for (const Letter& t : r) cols.push_back(2 * t.gen + (t.exp > 0 ? 0 : 1));
        rels.push_back(std::move(cols));
    }
    detail::CosetTable tc(ng, max_cosets);
    for (int q0 = 0; q0 < tc.rows() && !tc.overflow; ++q0) {
        if (tc.find(q0) != q0) continue;
        bool alive = true;
        for (const auto& rel : rels) {
            tc.scan_and_fill(q0, rel);
            if (tc.overflow) break;
            if (tc.find(q0) != q0) {
                alive = false;
                break;
            }
        }
        if (tc.overflow) break;
        if (alive) {
            for (int c = 0; c < tc.nc; ++c) {
                if (tc.find(q0) != q0) break;
                if (tc.at(q0, c) == -1) {
                    tc.new_coset(q0, c);
                    if (tc.overflow) break;
                }
            }
        }
    }
    if (tc.overflow) return {false, max_cosets};
    return {true, tc.live};
}

// ------------------------------------------------------------------- Tietze

// Bounded, deterministic simplification: deduplicate relators up to rotation
// and inversion, then repeatedly eliminate a generator that occurs exactly
// once in some relator (shortest relator first), guarding against blow-up.
// Only Tietze moves are used, so the presented group is unchanged.
inline Presentation tietze_simplify(const Presentation& pres, int max_passes = 80,
                                    int blowup = 16) {
    std::vector<std::string> gens = pres.gens;
    std::vector<Word> rels;
    for (const Word& w : pres.rels) {
        Word r = cyclic_reduce(w);
        if (!r.empty()) rels.push_back(std::move(r));
    }
    long long base_size = 1;
    for (const Word& w : rels) base_size += static_cast<long long>(w.size());

    for (int pass = 0; pass < max_passes; ++pass) {
        bool changed = false;

        std::vector<Word> sorted_rels = rels;
        std::stable_sort(sorted_rels.begin(), sorted_rels.end(),
                         [](const Word& a, const Word& b) {
                             if (a.size() != b.size()) return a.size() < b.size();
                             return a < b;
                         });
        std::set<Word> seen;
        std::vector<Word> deduped;
        for (const Word& w : sorted_rels) {
            Word c = relator_class(w);
            if (!c.empty() && !seen.count(c)) {
                seen.insert(c);
                deduped.push_back(c);
            }
        }
        if (deduped.size() != rels.size()) changed = true;
        rels = deduped;

        // best candidate: (relator length, relator index, generator)
        int best_ri = -1, best_g = -1;
        std::size_t best_len = 0;
        for (std::size_t ri = 0; ri < rels.size(); ++ri) {
            std::map<int, int> counts;
            for (const Letter& t : rels[ri]) counts[t.gen]++;
            for (const auto& [g, cnt] : counts) {
                if (cnt != 1) continue;
                if (best_ri < 0 || rels[ri].size() < best_len ||
                    (rels[ri].size() == best_len &&
                     (static_cast<int>(ri) < best_ri ||
                      (static_cast<int>(ri) == best_ri && g < best_g)))) {
                    best_len = rels[ri].size();
                    best_ri = static_cast<int>(ri);
                    best_g = g;
                }
            }
        }
        if (best_ri >= 0) {
            const Word& w = rels[best_ri];
            std::size_t i = 0;
            while (w[i].gen != best_g) ++i;
            Word rest(w.begin() + i + 1, w.end());
            rest.insert(rest.end(), w.begin(), w.begin() + i);
            Word sub = (w[i].exp > 0) ? inverse_word(rest) : rest;
            std::vector<Word> newrels;
            long long total = 0;
            for (std::size_t rj = 0; rj < rels.size(); ++rj) {
                if (static_cast<int>(rj) == best_ri) continue;
                Word v;
                for (const Letter& t : rels[rj]) {
                    if (t.gen == best_g) {
                        const Word& ins = (t.exp > 0) ? sub : inverse_word(sub);
                        v.insert(v.end(), ins.begin(), ins.end());
                    } else {
                        v.push_back(t);
                    }
                }
                v = cyclic_reduce(v);
                if (!v.empty()) {
                    total += static_cast<long long>(v.size());
                    newrels.push_back(std::move(v));
                }
            }
            if (total <= static_cast<long long>(blowup) * base_size) {
                std::vector<int> remap(gens.size(), -1);
                std::vector<std::string> ng;
                for (std::size_t gi = 0; gi < gens.size(); ++gi) {
                    if (static_cast<int>(gi) == best_g) continue;
                    remap[gi] = static_cast<int>(ng.size());
                    ng.push_back(gens[gi]);
                }
                for (Word& v : newrels)
                    for (Letter& t : v) t.gen = remap[t.gen];
                rels = std::move(newrels);
                gens = std::move(ng);
                changed = true;
            }
        }
        if (!changed) break;
    }
    Presentation out;
    out.name = pres.name;
    out.gens = std::move(gens);
    out.rels = std::move(rels);
    return out;
}

// ------------------------------------------------------------- hom counting

// Exact number of homomorphisms into the symmetric group of degree k, by
// exhaustive assignment with backtracking.  The input is simplified first;
// the count is invariant under Tietze moves, so this does not change it.
inline long long hom_count(const Presentation& pres, int k) {
    if (k < 1 || k > 5)
        throw_capacity("CapacityError", "homomorphism counting supports degrees 1..5");
    Presentation p = tietze_simplify(pres);
    int ng = static_cast<int>(p.gens.size());
    if (ng > 4)
        throw_capacity("CapacityError",
                       "presentation still has " + std::to_string(ng) +
                           " generators after simplification (limit 4)");
    std::vector<Perm> perms;
    {
        Perm base = identity_perm(k);
        do {
            perms.push_back(base);
        } while (std::next_permutation(base.begin(), base.end()));
    }
    std::vector<Word> rels;
    for (const Word& w : p.rels) {
        Word r = cyclic_reduce(w);
        if (!r.empty()) rels.push_back(std::move(r));
    }
    // check each relator as soon as all its generators are assigned
    std::vector<std::vector<Word>> due(ng + 1);
    for (const Word& w : rels) {
        int hi = 0;
        for (const Letter& t : w) hi = std::max(hi, t.gen + 1);
        due[hi].push_back(w);
    }
    std::vector<const Perm*> assign(ng, nullptr);
    Perm idp = identity_perm(k);
    long long count = 0;

    auto eval_ok = [&](const Word& w) {
        Perm r = idp;
        for (const Letter& t : w) {
            const Perm& q = *assign[t.gen];
            if (t.exp > 0)
                r = compose(r, q);
            else
                r = compose(r, inverse(q));
        }
        return r == idp;
    };

    // depth d: generators 0..d-1 assigned
    std::vector<std::size_t> choice(ng, 0);
    int d = 0;
    while (true) {
        if (d == ng) {
            ++count;
            if (ng == 0) break;
            --d;
            ++choice[d];
        }
        while (true) {
            if (choice[d] == perms.size()) {
                if (d == 0) return count;
                choice[d] = 0;
                --d;
                ++choice[d];
                continue;
            }
            assign[d] = &perms[choice[d]];
            bool ok = true;
            for (const Word& w : due[d + 1])
                if (!eval_ok(w)) {
                    ok = false;
                    break;
                }
            if (ok) break;
            ++choice[d];
        }
        ++d;
    }
    return count;
}

// -------------------------------------------------------- Sieradski pattern

// The cyclically presented group <g1..gn | gi = g(i-1) g(i+1)> (indices mod n).
inline Presentation sieradski(int n) {
    if (n < 2) throw_validation("InvalidN", "sieradski presentation needs n >= 2");
    Presentation p;
    p.name = "sieradski" + std::to_string(n);
    for (int i = 1; i <= n; ++i) p.gens.push_back("g" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        p.rels.push_back({{(i + n - 1) % n, 1}, {(i + 1) % n, 1}, {i, -1}});
    return p;
}

// Detects whether the presentation (generators cyclically indexed by list
// order) is the Sieradski pattern up to cyclic index shift, direction flip,
// and relator inversion/rotation.  Returns n on success.
inline std::optional<int> match_sieradski(const Presentation& pres) {
    int n = static_cast<int>(pres.gens.size());
    if (n < 2) return std::nullopt;
    std::set<Word> target;
    for (const Word& w : sieradski(n).rels) target.insert(relator_class(w));
    std::set<Word> cand;
    for (const Word& w : pres.rels) {
        Word c = relator_class(w);
        if (c.empty()) return std::nullopt;
        cand.insert(c);
    }
    for (int direction : {1, -1})
        for (int shift = 0; shift < n; ++shift) {
            std::set<Word> mapped;
            for (const Word& w : cand) {
                Word mw = w;
                for (Letter& t : mw) t.gen = ((direction * t.gen + shift) % n + n) % n;
                mapped.insert(relator_class(mw));
            }
            if (mapped == target) return n;
        }
    return std::nullopt;
}

// True iff the presentation's deduplicated relator classes equal the target
// relators under some generator bijection and optional global inversion.
inline bool match_relator_classes(const Presentation& pres, const std::vector<Word>& target_rels,
                                  int ngens) {
    if (static_cast<int>(pres.gens.size()) != ngens) return false;
    std::set<Word> cand;
    for (const Word& w : pres.rels) cand.insert(relator_class(w));
    std::set<Word> target;
    for (const Word& w : target_rels) target.insert(relator_class(w));
    if (cand.size() != target.size()) return false;
    std::vector<int> bij(ngens);
    std::iota(bij.begin(), bij.end(), 0);
    do {
        for (int flip : {1, -1}) {
            std::set<Word> mapped;
            for (const Word& w : cand) {
                Word mw = w;
                for (Letter& t : mw) {
                    t.gen = bij[t.gen];
                    t.exp *= flip;
                }
                mapped.insert(relator_class(mw));
            }
            if (mapped == target) return true;
        }
    } while (std::next_permutation(bij.begin(), bij.end()));
    return false;
}

}  // namespace spherecover
