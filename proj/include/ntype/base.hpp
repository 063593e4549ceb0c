#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ntype {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MalformedSpec : Error { using Error::Error; };
struct SimplicialIdentityViolation : Error { using Error::Error; };
struct SearchBudgetExceeded : Error { using Error::Error; };
struct DimBudgetExceeded : Error { using Error::Error; };
struct NonInjectiveGlue : Error { using Error::Error; };
struct PreconditionFailed : Error { using Error::Error; };
struct NotFibrant : Error { using Error::Error; };
struct VertexNotFound : Error { using Error::Error; };
struct UnknownObject : Error { using Error::Error; };
struct EnumerationImpossible : Error { using Error::Error; };

// Shared search budget, ticked once per explored candidate. Throws when spent;
// callers that promise a three-valued verdict catch and report Unknown.
struct Budget {
    long long limit = 20'000'000;
    long long used = 0;

    void tick(long long n = 1) {
        used += n;
        if (used > limit)
            throw SearchBudgetExceeded("search budget exceeded (" + std::to_string(limit) + " nodes)");
    }
    long long left() const { return limit > used ? limit - used : 0; }
};

enum class Verdict { Certified, Refuted, Unknown };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Certified: return "certified";
        case Verdict::Refuted: return "refuted";
        default: return "unknown";
    }
}

inline int max_product_dim() { return 6; }  // default cap for dimension-truncated products

}  // namespace ntype
