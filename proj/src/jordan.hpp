#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "multiseg.hpp"
#include "symbols.hpp"

namespace tempera {

using BlockKey = std::pair<GlId, std::int64_t>;

struct JordanBlocks {
    std::map<GlId, std::set<std::int64_t>> blocks;

    const std::set<std::int64_t>& line(GlId rho) const;
    bool contains(GlId rho, std::int64_t a) const;
    friend auto operator<=>(const JordanBlocks&, const JordanBlocks&) = default;

  private:
    static const std::set<std::int64_t> empty_;
};

// Partially defined sign data. For a line where singletons are defined
// (even parity, or odd parity with Jord_rho(cusp) empty) val holds absolute
// signs; otherwise val holds signs relative to the anchor max(Jord_rho),
// normalized so the anchor carries +1. Pairwise values are the derived
// products, which makes the cocycle conditions hold by construction.
struct EpsilonMap {
    std::map<BlockKey, int> val;
    friend auto operator<=>(const EpsilonMap&, const EpsilonMap&) = default;
};

struct AdmissibleTriple {
    ClId cusp = 0;
    JordanBlocks jord;
    EpsilonMap eps;

    friend auto operator<=>(const AdmissibleTriple&, const AdmissibleTriple&) = default;
};

enum class Reducibility { Reduces, Irreducible };
enum class Irreducibility { Irreducible, Unknown };

// Triple of the cuspidal representation itself: jord = Jord(cusp) with the
// alternating sign pattern forced by (BA) together with the reducibility
// table (quotient -1 between neighbors, value -1 at the minimum when
// singletons are defined).
AdmissibleTriple base_triple(const SymbolTable& tab, ClId cusp);

// Whether absolute epsilon values exist on the rho line of this triple.
bool singletons_defined(const SymbolTable& tab, const AdmissibleTriple& t, GlId rho);

std::optional<int> eps_singleton(const SymbolTable& tab, const AdmissibleTriple& t, GlId rho,
                                 std::int64_t a);
// epsilon((rho,a)) epsilon((rho,b))^{-1}; defined for any two stored blocks
// on one line.
int eps_pair(const SymbolTable& tab, const AdmissibleTriple& t, GlId rho, std::int64_t a,
             std::int64_t b);

std::optional<std::int64_t> neighbor_below(const AdmissibleTriple& t, GlId rho, std::int64_t a);

// Membership of delta(rho,b) in D^u_{pi,red}.
bool delta_b_reduces(const SymbolTable& tab, const AdmissibleTriple& t, GlId rho, std::int64_t b);

// Reducibility of nu^alpha rho |x pi, the full case table.
Reducibility point_reduces(const SymbolTable& tab, const AdmissibleTriple& t, GlId rho,
                           HalfInt alpha);

// One-sided test: Irreducible when every point of the segment is, Unknown
// otherwise.
Irreducibility segment_irreducible(const SymbolTable& tab, const AdmissibleTriple& t,
                                   const std::optional<Segment>& seg);

// Jordan transfer along an embedding into delta([nu^y rho, nu^x rho]) |x pi'.
JordanBlocks jord_transfer(const SymbolTable& tab, const JordanBlocks& jp, GlId rho, HalfInt x,
                           HalfInt y);

AdmissibleTriple add_pair(const SymbolTable& tab, const AdmissibleTriple& t, GlId rho,
                          std::int64_t a_minus, std::int64_t a, std::optional<int> new_sign);

AdmissibleTriple remove_pair(const SymbolTable& tab, const AdmissibleTriple& t, GlId rho,
                             std::int64_t a_minus, std::int64_t a);

AdmissibleTriple deform_down(const SymbolTable& tab, const AdmissibleTriple& t, GlId rho,
                             std::int64_t a, std::int64_t k);

AdmissibleTriple deform_up(const SymbolTable& tab, const AdmissibleTriple& t, GlId rho,
                           std::int64_t a_low, std::int64_t a);

std::vector<std::string> validate_triple(const SymbolTable& tab, const AdmissibleTriple& t);

}  // namespace tempera
