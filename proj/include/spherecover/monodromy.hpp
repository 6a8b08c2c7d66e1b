#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "fan.hpp"
#include "perm.hpp"

namespace spherecover {

// An assignment of permutations of {1..n} to the fan's generator names.
struct MonodromyRep {
    int degree = 0;
    std::vector<std::string> names;  // meridian first, then duals in fan order
    std::vector<Perm> perms;         // parallel to names

    const Perm& perm_of(const std::string& name) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return perms[i];
        throw_monodromy("MissingGenerator", "no permutation assigned to '" + name + "'");
    }
    bool has(const std::string& name) const {
        return std::find(names.begin(), names.end(), name) != names.end();
    }
};

struct RepFlags {
    bool relations_ok = false;
    bool transitive = false;
    bool cyclic = false;          // all assigned permutations commute pairwise
    bool locally_cyclic = false;  // the meridian acts as a single n-cycle
    bool regular = false;         // every non-identity group element is fixed-point-free
};

namespace detail {

inline Perm eval_word(const std::vector<std::string>& word, const MonodromyRep& rep) {
    Perm out = identity_perm(rep.degree);
    for (std::string tok : word) {
        bool inv = false;
        if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
            inv = true;
            tok = tok.substr(0, tok.size() - 3);
        }
        const Perm& p = rep.perm_of(tok);
        out = compose(out, inv ? inverse(p) : p);
    }
    return out;
}

constexpr int kRegularCap = 500000;

// BFS closure of the generated group; throws CapacityError beyond the cap.
inline std::vector<Perm> group_closure(const std::vector<Perm>& gens, int degree) {
    std::set<Perm> seen;
    std::vector<Perm> queue{identity_perm(degree)};
    seen.insert(queue[0]);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Perm cur = queue[head];
        for (const Perm& g : gens) {
            Perm nxt = compose(cur, g);
            if (seen.insert(nxt).second) {
                if (static_cast<int>(seen.size()) > kRegularCap)
                    throw_capacity("CapacityError", "generated permutation group exceeds " +
                                                        std::to_string(kRegularCap) + " elements");
                queue.push_back(std::move(nxt));
            }
        }
    }
    return queue;
}

}  // namespace detail

// Validate a representation against the fan's relations and compute the
// structural flags used to classify covers.
inline RepFlags validate_rep(const Fan& fan, const MonodromyRep& rep) {
    for (const auto& name : fan.generator_names())
        if (!rep.has(name))
            throw_monodromy("MissingGenerator", "no permutation assigned to '" + name + "'");

    RepFlags flags;
    flags.relations_ok = true;
    for (const auto& word : fan.relations)
        if (!is_identity(detail::eval_word(word, rep))) {
            flags.relations_ok = false;
            break;
        }

    // transitivity of the joint action on {1..n}
    {
        std::vector<int> root(rep.degree);
        for (int i = 0; i < rep.degree; ++i) root[i] = i;
        std::function<int(int)> find = [&](int x) {
            while (root[x] != x) {
                root[x] = root[root[x]];
                x = root[x];
            }
            return x;
        };
        for (const Perm& p : rep.perms)
            for (int i = 0; i < rep.degree; ++i) {
                int a = find(i), b = find(p[i]);
                if (a != b) root[a] = b;
            }
        int classes = 0;
        for (int i = 0; i < rep.degree; ++i)
            if (find(i) == i) ++classes;
        flags.transitive = (classes <= 1);
    }

    flags.cyclic = true;
    for (std::size_t i = 0; i < rep.perms.size() && flags.cyclic; ++i)
        for (std::size_t j = i + 1; j < rep.perms.size(); ++j)
            if (compose(rep.perms[i], rep.perms[j]) != compose(rep.perms[j], rep.perms[i])) {
                flags.cyclic = false;
                break;
            }

    {
        const Perm& m = rep.perm_of(fan.meridian);
        auto cyc = cycles(m);
        flags.locally_cyclic = (cyc.size() == 1 && static_cast<int>(cyc[0].size()) == rep.degree);
    }

    flags.regular = true;
    if (rep.degree > 1) {
        for (const Perm& g : detail::group_closure(rep.perms, rep.degree)) {
            if (is_identity(g)) continue;
            for (int i = 0; i < rep.degree; ++i)
                if (g[i] == i) {
                    flags.regular = false;
                    break;
                }
            if (!flags.regular) break;
        }
    }
    return flags;
}

// A representation together with its flags and conjugacy bookkeeping.
struct EnumeratedRep {
    MonodromyRep rep;
    RepFlags flags;
    bool canonical = false;  // lex-least image tuple within its conjugacy class
    int class_id = -1;       // conjugacy class, in canonical-representative order
};

constexpr int kDefaultMaxDegree = 7;

namespace detail {

inline std::vector<int> image_tuple(const MonodromyRep& rep) {
    std::vector<int> key;
    for (const Perm& p : rep.perms) key.insert(key.end(), p.begin(), p.end());
    return key;
}

inline std::vector<Perm> all_perms(int n) {
    Perm base = identity_perm(n);
    std::vector<Perm> out;
    do {
        out.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    return out;
}

}  // namespace detail

// Enumerate all representations of degree n that satisfy the relations and act
// transitively, grouped into conjugacy classes (simultaneous relabeling of the
// sheets).  The class representative flagged canonical is the lexicographically
// least image tuple, meridian images first.
inline std::vector<EnumeratedRep> enumerate_reps(const Fan& fan, int n,
                                                 int max_degree = kDefaultMaxDegree) {
    if (n < 1) throw_validation("InvalidN", "degree must be at least 1");
    if (n > max_degree)
        throw_capacity("DegreeTooLarge", "degree " + std::to_string(n) +
                                             " exceeds the enumeration bound " +
                                             std::to_string(max_degree));
    std::vector<std::string> names = fan.generator_names();
    std::vector<Perm> sn = detail::all_perms(n);
    std::vector<Perm> sn_inv;
    sn_inv.reserve(sn.size());
    for (const Perm& p : sn) sn_inv.push_back(inverse(p));

    // Pre-resolve relation words to (generator slot, exponent) pairs so the
    // inner loop never touches strings.
    std::map<std::string, int> slot;
    for (std::size_t i = 0; i < names.size(); ++i) slot[names[i]] = static_cast<int>(i);
    std::vector<std::vector<std::pair<int, int>>> rel_words;
    for (const auto& word : fan.relations) {
        std::vector<std::pair<int, int>> w;
        for (const std::string& tok : word) {
            int exp = 1;
            std::string base = tok;
            if (base.size() > 3 && base.substr(base.size() - 3) == "^-1") {
                exp = -1;
                base = base.substr(0, base.size() - 3);
            }
            w.push_back({slot.at(base), exp});
        }
        rel_words.push_back(std::move(w));
    }

    std::vector<EnumeratedRep> found;
    std::set<std::vector<int>> seen;  // image tuples already assigned to a class
    std::vector<std::size_t> pick(names.size(), 0);
    int n_classes = 0;
    std::vector<int> stack;
    std::vector<char> visited;
    for (;;) {
        bool ok = true;
        for (const auto& w : rel_words) {
            for (int i = 0; ok && i < n; ++i) {
                int x = i;
                for (const auto& [g, exp] : w)
                    x = (exp > 0 ? sn[pick[g]] : sn_inv[pick[g]])[x];
                if (x != i) ok = false;
            }
            if (!ok) break;
        }
        if (ok) {  // transitivity: breadth-first over the point action
            visited.assign(n, 0);
            stack.assign(1, 0);
            visited[0] = 1;
            int reached = 1;
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                for (std::size_t g = 0; g < pick.size(); ++g) {
                    int y = sn[pick[g]][x];
                    if (!visited[y]) {
                        visited[y] = 1;
                        ++reached;
                        stack.push_back(y);
                    }
                    y = sn_inv[pick[g]][x];
                    if (!visited[y]) {
                        visited[y] = 1;
                        ++reached;
                        stack.push_back(y);
                    }
                }
            }
            ok = (reached == n);
        }
        if (ok) {
            MonodromyRep rep;
            rep.degree = n;
            rep.names = names;
            for (std::size_t i = 0; i < names.size(); ++i) rep.perms.push_back(sn[pick[i]]);
            auto key = detail::image_tuple(rep);
            if (!seen.count(key)) {
                RepFlags flags = validate_rep(fan, rep);
                int cls = n_classes++;
                EnumeratedRep er{rep, flags, true, cls};  // first hit in lex order is canonical
                found.push_back(er);
                // mark the whole conjugacy orbit
                for (const Perm& g : sn) {
                    MonodromyRep conj = rep;
                    Perm gi = inverse(g);
                    for (Perm& p : conj.perms) p = compose(gi, compose(p, g));
                    auto ck = detail::image_tuple(conj);
                    if (seen.insert(ck).second && ck != key) {
                        EnumeratedRep other{conj, flags, false, cls};
                        found.push_back(other);
                    }
                }
                seen.insert(key);
            }
        }
        // advance the odometer
        std::size_t i = pick.size();
        while (i > 0) {
            --i;
            if (++pick[i] < sn.size()) break;
            pick[i] = 0;
            if (i == 0) {
                std::sort(found.begin(), found.end(),
                          [](const EnumeratedRep& a, const EnumeratedRep& b) {
                              return detail::image_tuple(a.rep) < detail::image_tuple(b.rep);
                          });
                return found;
            }
        }
    }
}

// Canonical class representatives only, in lex order.
inline std::vector<EnumeratedRep> enumerate_classes(const Fan& fan, int n,
                                                    int max_degree = kDefaultMaxDegree) {
    std::vector<EnumeratedRep> all = enumerate_reps(fan, n, max_degree);
    std::vector<EnumeratedRep> out;
    for (const auto& er : all)
        if (er.canonical) out.push_back(er);
    return out;
}

// True when the two representations differ by a simultaneous relabeling.
inline bool conjugate_reps(const MonodromyRep& a, const MonodromyRep& b) {
    if (a.degree != b.degree || a.names != b.names) return false;
    for (const Perm& g : detail::all_perms(a.degree)) {
        Perm gi = inverse(g);
        bool ok = true;
        for (std::size_t i = 0; i < a.perms.size() && ok; ++i)
            ok = (compose(gi, compose(a.perms[i], g)) == b.perms[i]);
        if (ok) return true;
    }
    return false;
}

}  // namespace spherecover
