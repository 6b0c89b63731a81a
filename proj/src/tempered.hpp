#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "jordan.hpp"
#include "symbols.hpp"

namespace tempera {

// A unitarizable essentially-square-integrable symbol delta(rho,a) in D^u.
struct DeltaSym {
    GlId rho = 0;
    std::int64_t a = 0;
    friend auto operator<=>(const DeltaSym&, const DeltaSym&) = default;
};

struct SignedDelta {
    GlId rho = 0;
    std::int64_t b = 0;
    int sign = +1;
    friend auto operator<=>(const SignedDelta&, const SignedDelta&) = default;
};

// pi_{j_1 delta_1, ..., j_n delta_n}: a square-integrable core plus pairwise
// distinct reducing deltas with signs.
struct ETemperedParam {
    AdmissibleTriple core;
    std::vector<SignedDelta> deltas;
    friend auto operator<=>(const ETemperedParam&, const ETemperedParam&) = default;
};

// gamma_1 x ... x gamma_m |x e-tempered core.
struct TemperedParam {
    ETemperedParam e_core;
    std::vector<DeltaSym> gammas;
    friend auto operator<=>(const TemperedParam&, const TemperedParam&) = default;
};

// (Jord, sigma, eps) with Jord a multiset in D^u. eps holds one value per
// selfdual (J1) member: the designated sign for even multiplicities, the
// inherited square-integrable value for odd multiplicities (relative to the
// anchor when singletons are undefined on the line).
struct TemperedTriple {
    ClId cusp = 0;
    std::map<DeltaSym, std::int64_t> jord;
    std::map<DeltaSym, int> eps;
    friend auto operator<=>(const TemperedTriple&, const TemperedTriple&) = default;
};

std::vector<std::string> validate_param(const SymbolTable& tab, const TemperedParam& p);
std::vector<std::string> validate_tempered_triple(const SymbolTable& tab,
                                                  const TemperedTriple& t);

// 2^l with l the number of distinct reducing deltas in the list.
std::int64_t goldberg_length(const SymbolTable& tab, const std::vector<DeltaSym>& deltas,
                             const AdmissibleTriple& t);

// All 2^l sign vectors over the distinct reducing deltas of the list.
std::vector<std::vector<SignedDelta>> decompose_sign_vectors(const SymbolTable& tab,
                                                             const AdmissibleTriple& t,
                                                             const std::vector<DeltaSym>& deltas);

std::map<DeltaSym, std::int64_t> jord_of_tempered(const SymbolTable& tab,
                                                  const TemperedParam& p);
std::map<DeltaSym, int> eps_of_tempered(const SymbolTable& tab, const TemperedParam& p);

TemperedTriple param_to_triple(const SymbolTable& tab, const TemperedParam& p);
TemperedParam triple_to_param(const SymbolTable& tab, const TemperedTriple& t);

bool params_equivalent(const SymbolTable& tab, const TemperedParam& p, const TemperedParam& q);

bool is_generic(const SymbolTable& tab, const TemperedParam& p);

}  // namespace tempera
