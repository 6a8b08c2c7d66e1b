#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace spherecover {

// Failure category, mapped 1:1 onto process exit codes by the CLI.
enum class ErrorKind {
    Parse,       // malformed input text or unresolvable references     (exit 2)
    Validation,  // well-formed input violating a structural invariant  (exit 3)
    Monodromy,   // permutation data rejected (relations/transitivity)  (exit 4)
    Capacity,    // configured resource bound reached                   (exit 5)
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), kind_(kind), code_(std::move(code)) {}

    ErrorKind kind() const { return kind_; }
    const std::string& code() const { return code_; }

    int exit_code() const {
        switch (kind_) {
            case ErrorKind::Parse: return 2;
            case ErrorKind::Validation: return 3;
            case ErrorKind::Monodromy: return 4;
            case ErrorKind::Capacity: return 5;
        }
        return 1;
    }

  private:
    ErrorKind kind_;
    std::string code_;
};

[[noreturn]] inline void throw_parse(const std::string& code, const std::string& msg) {
    throw Error(ErrorKind::Parse, code, msg);
}
[[noreturn]] inline void throw_validation(const std::string& code, const std::string& msg) {
    throw Error(ErrorKind::Validation, code, msg);
}
[[noreturn]] inline void throw_monodromy(const std::string& code, const std::string& msg) {
    throw Error(ErrorKind::Monodromy, code, msg);
}
[[noreturn]] inline void throw_capacity(const std::string& code, const std::string& msg) {
    throw Error(ErrorKind::Capacity, code, msg);
}

// Numeric-aware ("natural") name ordering: digit runs compare by value, so
// "x2.9" < "x2.10".  Used for every canonical ordering of named objects.
inline bool natural_less(const std::string& a, const std::string& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        char ca = a[i], cb = b[j];
        bool da = ca >= '0' && ca <= '9';
        bool db = cb >= '0' && cb <= '9';
        if (da && db) {
            std::size_t i2 = i, j2 = j;
            while (i2 < a.size() && a[i2] >= '0' && a[i2] <= '9') ++i2;
            while (j2 < b.size() && b[j2] >= '0' && b[j2] <= '9') ++j2;
            // strip leading zeros
            std::size_t si = i, sj = j;
            while (si + 1 < i2 && a[si] == '0') ++si;
            while (sj + 1 < j2 && b[sj] == '0') ++sj;
            std::size_t la = i2 - si, lb = j2 - sj;
            if (la != lb) return la < lb;
            int cmp = a.compare(si, la, b, sj, lb);
            if (cmp != 0) return cmp < 0;
            i = i2;
            j = j2;
        } else {
            if (ca != cb) return ca < cb;
            ++i;
            ++j;
        }
    }
    return (a.size() - i) < (b.size() - j);
}

struct NaturalLess {
    bool operator()(const std::string& a, const std::string& b) const {
        return natural_less(a, b);
    }
};

}  // namespace spherecover
