#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace spherecover {

// One logical input line: original number plus whitespace-split tokens,
// with '#' comments and blank lines already removed.
struct TextLine {
    int number = 0;
    std::vector<std::string> tokens;
};

inline std::vector<TextLine> tokenize_lines(const std::string& text) {
    std::vector<TextLine> out;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        TextLine line;
        line.number = number;
        std::string tok;
        while (ls >> tok) line.tokens.push_back(tok);
        if (!line.tokens.empty()) out.push_back(std::move(line));
    }
    return out;
}

inline long parse_int_token(const std::string& tok, const TextLine& line) {
    std::size_t pos = 0;
    long v = 0;
    bool neg = false;
    if (pos < tok.size() && (tok[pos] == '-' || tok[pos] == '+')) {
        neg = tok[pos] == '-';
        ++pos;
    }
    if (pos == tok.size())
        throw_parse("ParseError", "expected integer, got '" + tok + "' on line " + std::to_string(line.number));
    for (; pos < tok.size(); ++pos) {
        if (tok[pos] < '0' || tok[pos] > '9')
            throw_parse("ParseError", "expected integer, got '" + tok + "' on line " + std::to_string(line.number));
        v = v * 10 + (tok[pos] - '0');
        if (v > 100000000)
            throw_parse("ParseError", "integer too large on line " + std::to_string(line.number));
    }
    return neg ? -v : v;
}

// Splits "name:index" (used by crossing references and arrow positions).
inline std::pair<std::string, long> parse_ref(const std::string& tok, const TextLine& line) {
    auto colon = tok.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size())
        throw_parse("ParseError", "expected '<name>:<index>', got '" + tok + "' on line " + std::to_string(line.number));
    TextLine sub = line;
    return {tok.substr(0, colon), parse_int_token(tok.substr(colon + 1), sub)};
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_parse("ParseError", "cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw_parse("ParseError", "cannot write file: " + path);
    out << content;
}

// FNV-1a 64-bit content digest, reported in command output so runs on the
// same input are recognizably identical.
inline std::string content_digest(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

}  // namespace spherecover
