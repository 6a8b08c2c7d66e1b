#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "textio.hpp"
#include "words.hpp"

namespace spherecover {

// A finite group presentation: named generators and relator words.
struct Presentation {
    std::string name = "g";
    std::vector<std::string> gens;
    std::vector<Word> rels;

    int gen_index(const std::string& g) const {
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (gens[i] == g) return static_cast<int>(i);
        return -1;
    }
};

// Word tokens: "name" or "name^-1", whitespace separated.
inline std::string format_word(const Word& w, const std::vector<std::string>& gens) {
    std::ostringstream os;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) os << ' ';
        os << gens[w[i].gen];
        if (w[i].exp < 0) os << "^-1";
    }
    return os.str();
}

inline Word parse_word_tokens(const std::vector<std::string>& tokens, std::size_t first,
                              const std::map<std::string, int>& gen_index, int line_number) {
    Word w;
    for (std::size_t i = first; i < tokens.size(); ++i) {
        std::string tok = tokens[i];
        int exp = 1;
        if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
            exp = -1;
            tok = tok.substr(0, tok.size() - 3);
        }
        auto it = gen_index.find(tok);
        if (it == gen_index.end())
            throw_parse("ParseError",
                        "unknown generator '" + tok + "' on line " + std::to_string(line_number));
        w.push_back({it->second, exp});
    }
    return w;
}

// Text form:
//   group <name>
//   gen <names...>
//   rel <word>        (a bare "rel" line is the empty relator)
inline std::string serialize(const Presentation& p) {
    std::ostringstream os;
    os << "group " << p.name << "\n";
    os << "gen";
    for (const auto& g : p.gens) os << ' ' << g;
    os << "\n";
    for (const auto& r : p.rels) {
        os << "rel";
        std::string w = format_word(r, p.gens);
        if (!w.empty()) os << ' ' << w;
        os << "\n";
    }
    return os.str();
}

inline Presentation parse_presentation(const std::string& text) {
    Presentation p;
    p.name.clear();
    std::map<std::string, int> gen_index;
    bool saw_group = false;
    for (const TextLine& line : tokenize_lines(text)) {
        const auto& t = line.tokens;
        if (t[0] == "group") {
            if (t.size() != 2)
                throw_parse("ParseError", "group line needs a name (line " + std::to_string(line.number) + ")");
            if (saw_group)
                throw_parse("ParseError", "duplicate group line (line " + std::to_string(line.number) + ")");
            saw_group = true;
            p.name = t[1];
        } else if (t[0] == "gen") {
            for (std::size_t i = 1; i < t.size(); ++i) {
                if (gen_index.count(t[i]))
                    throw_parse("ParseError",
                                "duplicate generator '" + t[i] + "' (line " + std::to_string(line.number) + ")");
                gen_index[t[i]] = static_cast<int>(p.gens.size());
                p.gens.push_back(t[i]);
            }
        } else if (t[0] == "rel") {
            p.rels.push_back(parse_word_tokens(t, 1, gen_index, line.number));
        } else {
            throw_parse("ParseError",
                        "unknown directive '" + t[0] + "' (line " + std::to_string(line.number) + ")");
        }
    }
    if (!saw_group) throw_parse("ParseError", "missing group line");
    return p;
}

}  // namespace spherecover
