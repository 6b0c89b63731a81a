#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "error.hpp"
#include "halfint.hpp"
#include "symbols.hpp"

namespace tempera {

// Nonempty segment [nu^lo rho, nu^hi rho]; hi - lo is a nonnegative integer.
// The empty segment delta(emptyset) is the identity of R and is represented
// by absence, never by a Segment value.
struct Segment {
    GlId rho = 0;
    HalfInt lo;
    HalfInt hi;

    std::int64_t length() const { return (hi - lo).as_integer() + 1; }
    friend constexpr auto operator<=>(const Segment&, const Segment&) = default;
};

// delta(rho,a) in normal form: [-(a-1)/2, (a-1)/2].
Segment centered_segment(GlId rho, std::int64_t a);

// Returns nullopt for the one-off empty range hi = lo - 1, a Segment for
// hi >= lo, and fails otherwise.
std::optional<Segment> segment_opt(GlId rho, HalfInt lo, HalfInt hi);

// Formal product of segments (basis element of R), kept sorted.
struct Multisegment {
    std::vector<Segment> segs;

    Multisegment() = default;
    explicit Multisegment(std::vector<Segment> s) : segs(std::move(s)) {
        std::sort(segs.begin(), segs.end());
    }
    static Multisegment one() { return Multisegment(); }
    static Multisegment single(const Segment& s) { return Multisegment({s}); }
    static Multisegment single(const std::optional<Segment>& s) {
        return s ? single(*s) : one();
    }

    bool is_one() const { return segs.empty(); }
    friend auto operator<=>(const Multisegment&, const Multisegment&) = default;
};

Multisegment operator*(const Multisegment& a, const Multisegment& b);

// Classical-side term of R(S): a stack of unevaluated |x layers over a core
// symbol. Core Tau(rho, sign) is the labeled constituent tau_{sign} of
// rho |x cusp from the fixed decomposition.
struct ClassicalTerm {
    enum class Core { Cusp, Tau };

    std::vector<Multisegment> stack;  // outermost layer first
    Core core = Core::Cusp;
    ClId base = 0;
    GlId tau_rho = 0;
    int tau_sign = +1;

    static ClassicalTerm cuspidal(ClId c) {
        ClassicalTerm t;
        t.base = c;
        return t;
    }
    static ClassicalTerm tau(GlId rho, int sign, ClId c) {
        ClassicalTerm t;
        t.core = Core::Tau;
        t.base = c;
        t.tau_rho = rho;
        t.tau_sign = sign;
        return t;
    }
    ClassicalTerm pushed(const Multisegment& layer) const {
        if (layer.is_one()) return *this;
        ClassicalTerm t = *this;
        t.stack.insert(t.stack.begin(), layer);
        return t;
    }
    bool is_bare_cusp() const { return stack.empty() && core == Core::Cusp; }

    friend auto operator<=>(const ClassicalTerm&, const ClassicalTerm&) = default;
};

using Coeff = std::int64_t;
using RElement = std::map<Multisegment, Coeff>;
using RTensor = std::map<std::pair<Multisegment, Multisegment>, Coeff>;
using RSElement = std::map<std::pair<Multisegment, ClassicalTerm>, Coeff>;

template <typename M, typename K>
void add_term(M& m, const K& key, Coeff c) {
    if (c == 0) return;
    auto [it, fresh] = m.emplace(key, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) m.erase(it);
    }
}

RElement r_one();

// Bilinear product on R; on basis elements, multiset union of segments.
RElement times(const RElement& x, const RElement& y);

// Segment-wise dual: [nu^x rho, nu^y rho]^ = [nu^-y rho^, nu^-x rho^].
Segment check_dual(const SymbolTable& tab, const Segment& s);
Multisegment check_dual(const SymbolTable& tab, const Multisegment& m);

// Comultiplication m* on one segment: sum over splits of the segment.
RTensor m_star(const Segment& s);
// Extended multiplicatively to multisegments and linearly to R.
RTensor m_star(const Multisegment& m);
RTensor m_star(const RElement& x);

RTensor tensor_product(const RTensor& a, const RTensor& b);

// Twisted comultiplication M* = (m x 1) o (^ x m*) o kappa o m*.
RTensor M_star_pipeline(const SymbolTable& tab, const RElement& x);

// Closed form of M* for a single segment; raw_count, when given, receives
// the number of (i,j)-indexed summands before collection.
RTensor M_star_segment(const SymbolTable& tab, const Segment& s,
                       std::size_t* raw_count = nullptr);
// Multiplicative extension over the segments of a multisegment.
RTensor M_star(const SymbolTable& tab, const Multisegment& m);

// The part of M* landing in R (x) R_0, for selfdual rho.
RElement M_star_GL(const SymbolTable& tab, const Segment& s);

// M*(x) |x s with the classical slot kept opaque unless the GL layer is 1.
RSElement mu_star_action(const SymbolTable& tab, const RElement& x, const RSElement& s);

// Multiset of support points nu^x rho, encoded as (exponent, rho) pairs.
std::map<std::pair<HalfInt, GlId>, std::int64_t> supp(const Multisegment& m);

// Total number of support points, counting stack layers and the tau point.
std::int64_t degree(const Multisegment& m);
std::int64_t degree(const ClassicalTerm& t);

}  // namespace tempera
