#pragma once

#include <optional>

#include "ntype/scomplex.hpp"

namespace ntype {

// Lifting square: i : A -> B (mono), f : X -> Y, with f . top = bottom . i.
struct LiftProblem {
    SMap incl, f, top, bottom;

    LiftProblem(SMap i_, SMap f_, SMap top_, SMap bottom_);
    void check_square() const;
};

std::optional<SMap> solve_lift(const LiftProblem& p, Budget& budget);

// An unfillable horn: the witness map horn(n,k) -> X together with the bottom
// simplex when certifying a fibration.
struct HornWitness {
    int n = 0, k = 0;
    SMap horn_map;
    std::optional<SimplexRef> bottom;  // the base n-simplex for fibration checks
};

struct KanCertificate {
    Verdict verdict = Verdict::Unknown;
    int checked_dim = 0;
    std::optional<HornWitness> horn;
    std::string note;

    bool certified() const { return verdict == Verdict::Certified; }
};

KanCertificate is_kan(const SSetPtr& x, int up_to_dim, Budget& budget);
KanCertificate is_fibration(const SMap& f, int up_to_dim, Budget& budget);

// Barycentric subdivision by flags of nondegenerate cells.
SSetPtr sd(const SSetPtr& x);

struct ExResult {
    SSetPtr cx;
    SMap coaug;  // X -> Ex X (composed for iterates)
    int iterations = 1;
};
ExResult ex(const SSetPtr& x, int max_dim, Budget& budget);
ExResult ex_iterate(const SSetPtr& x, int k, int max_dim, Budget& budget);

}  // namespace ntype
