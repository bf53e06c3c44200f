#pragma once

// Three-valued, certificate-carrying answers for depth-bounded semidecidable
// questions, plus the deterministic check report emitted by the verifier.

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cscs {

enum class Truth { True, False, Unknown };

inline const char* truth_name(Truth t) {
    switch (t) {
        case Truth::True: return "pass";
        case Truth::False: return "fail";
        default: return "unknown";
    }
}

struct Verdict {
    Truth value = Truth::Unknown;
    long long depth = 0;          // resource bound exhausted (Unknown) or used
    std::string certificate;      // finite witness for True/False

    static Verdict yes(std::string cert = "", long long d = 0) {
        return Verdict{Truth::True, d, std::move(cert)};
    }
    static Verdict no(std::string cert = "", long long d = 0) {
        return Verdict{Truth::False, d, std::move(cert)};
    }
    static Verdict unknown(long long d, std::string cert = "") {
        return Verdict{Truth::Unknown, d, std::move(cert)};
    }

    bool is_true() const { return value == Truth::True; }
    bool is_false() const { return value == Truth::False; }
    bool is_unknown() const { return value == Truth::Unknown; }
};

// Library error taxonomy.  Each carries the operation-specific certificate
// text so failures reproduce the offending tuple.
struct Error : std::runtime_error {
    std::string kind;
    Error(std::string k, const std::string& what)
        : std::runtime_error(k + ": " + what), kind(std::move(k)) {}
};

inline Error precondition_violated(const std::string& what) { return Error("PreconditionViolated", what); }
inline Error stuck_search(const std::string& what) { return Error("StuckSearch", what); }
inline Error search_exhausted(const std::string& what) { return Error("SearchExhausted", what); }
inline Error kind_mismatch(const std::string& what) { return Error("KindMismatch", what); }
inline Error malformed(const std::string& what) { return Error("MalformedSetCode", what); }

struct CheckResult {
    std::string name;
    Truth status = Truth::Unknown;
    std::string certificate;
    long long depth = 0;
};

struct Report {
    std::vector<CheckResult> checks;

    void add(std::string name, Truth status, std::string cert, long long depth) {
        checks.push_back(CheckResult{std::move(name), status, std::move(cert), depth});
    }
    void add(std::string name, const Verdict& v) {
        checks.push_back(CheckResult{std::move(name), v.value, v.certificate, v.depth});
    }

    bool all_pass() const {
        for (const auto& c : checks)
            if (c.status != Truth::True) return false;
        return true;
    }
    bool any_fail() const {
        for (const auto& c : checks)
            if (c.status == Truth::False) return true;
        return false;
    }

    std::string to_string() const {
        std::ostringstream os;
        for (const auto& c : checks) {
            os << c.name << " " << truth_name(c.status) << " depth=" << c.depth;
            if (!c.certificate.empty()) os << " cert=[" << c.certificate << "]";
            os << "\n";
        }
        return os.str();
    }
};

}  // namespace cscs
