#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace spherecover {

// A permutation of {0..n-1} stored as its image vector.  External notation
// (parsing, formatting) is 1-based disjoint-cycle notation.
using Perm = std::vector<int>;

inline Perm identity_perm(int n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

inline bool is_identity(const Perm& p) {
    for (int i = 0; i < static_cast<int>(p.size()); ++i)
        if (p[i] != i) return false;
    return true;
}

// Right action: points move through p first, then q.
inline Perm compose(const Perm& p, const Perm& q) {
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[p[i]];
    return r;
}

inline Perm inverse(const Perm& p) {
    Perm r(p.size());
    for (int i = 0; i < static_cast<int>(p.size()); ++i) r[p[i]] = i;
    return r;
}

inline Perm power(const Perm& p, long long k) {
    Perm base = p;
    if (k < 0) {
        base = inverse(p);
        k = -k;
    }
    Perm r = identity_perm(static_cast<int>(p.size()));
    for (long long i = 0; i < k; ++i) r = compose(r, base);
    return r;
}

// All cycles (fixed points included), each starting at its smallest element,
// listed in increasing order of smallest element.
inline std::vector<std::vector<int>> cycles(const Perm& p) {
    int n = static_cast<int>(p.size());
    std::vector<bool> seen(n, false);
    std::vector<std::vector<int>> out;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        std::vector<int> c;
        int j = i;
        while (!seen[j]) {
            seen[j] = true;
            c.push_back(j);
            j = p[j];
        }
        out.push_back(std::move(c));
    }
    return out;
}

// Parses 1-based disjoint-cycle notation, e.g. "(1 2 3)(4 5)"; "()" is the
// identity.  Entries may be separated by spaces or commas.
inline Perm parse_cycles(const std::string& text, int n) {
    if (n < 1) throw_parse("ParseError", "degree must be at least 1");
    Perm p = identity_perm(n);
    std::vector<bool> used(n, false);
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    skip_ws();
    if (i == text.size()) throw_parse("ParseError", "empty permutation text");
    bool any = false;
    while (i < text.size()) {
        skip_ws();
        if (i == text.size()) break;
        if (text[i] != '(')
            throw_parse("ParseError", "expected '(' in cycle notation at offset " + std::to_string(i));
        ++i;
        any = true;
        std::vector<int> entries;
        while (true) {
            skip_ws();
            if (i < text.size() && text[i] == ',') {
                ++i;
                continue;
            }
            if (i < text.size() && text[i] == ')') {
                ++i;
                break;
            }
            if (i == text.size()) throw_parse("ParseError", "unterminated cycle");
            if (!(text[i] >= '0' && text[i] <= '9'))
                throw_parse("ParseError", std::string("unexpected character '") + text[i] + "' in cycle");
            long v = 0;
            while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
                v = v * 10 + (text[i] - '0');
                if (v > 1000000) throw_parse("OutOfRange", "cycle entry too large");
                ++i;
            }
            if (v < 1 || v > n)
                throw_parse("OutOfRange", "cycle entry " + std::to_string(v) + " outside 1.." + std::to_string(n));
            if (used[v - 1])
                throw_parse("RepeatedEntry", "entry " + std::to_string(v) + " appears twice");
            used[v - 1] = true;
            entries.push_back(static_cast<int>(v - 1));
        }
        for (std::size_t k = 0; k < entries.size(); ++k)
            p[entries[k]] = entries[(k + 1) % entries.size()];
    }
    skip_ws();
    if (i != text.size() || !any) throw_parse("ParseError", "malformed cycle notation");
    return p;
}

// Largest 1-based entry mentioned in cycle text (0 when none); used to infer
// a degree when the caller does not fix one.  Malformed text reports 0 and is
// diagnosed later by parse_cycles.
inline int scan_max_entry(const std::string& text) {
    int best = 0;
    long cur = -1;
    for (char ch : text) {
        if (ch >= '0' && ch <= '9') {
            cur = (cur < 0 ? 0 : cur) * 10 + (ch - '0');
            if (cur > 1000000) cur = 1000000;
        } else {
            if (cur > best) best = static_cast<int>(cur);
            cur = -1;
        }
    }
    if (cur > best) best = static_cast<int>(cur);
    return best;
}

// 1-based disjoint-cycle notation; fixed points omitted; identity is "()".
inline std::string format_cycles(const Perm& p) {
    std::ostringstream os;
    bool any = false;
    for (const auto& c : cycles(p)) {
        if (c.size() < 2) continue;
        any = true;
        os << '(';
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (k) os << ' ';
            os << (c[k] + 1);
        }
        os << ')';
    }
    if (!any) return "()";
    return os.str();
}

}  // namespace spherecover
