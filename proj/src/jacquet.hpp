#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "jordan.hpp"
#include "multiseg.hpp"
#include "symbols.hpp"

namespace tempera {

struct AddPairStep {
    GlId rho = 0;
    std::int64_t a_minus = 0;
    std::int64_t a = 0;
    std::optional<int> sign;
};

struct DeformUpStep {
    GlId rho = 0;
    std::int64_t a_low = 0;
    std::int64_t a = 0;
};

using Step = std::variant<AddPairStep, DeformUpStep>;

// Square-integrable parameter given by its build recipe from a cuspidal base.
struct ConstructionChain {
    ClId base = 0;
    std::vector<Step> steps;
};

// Defining embedding segment of a step: the pair segment for AddPair, the
// extension segment for DeformUp. AddPair(rho,1,1,..) style degenerate
// inputs cannot occur (a > a_minus), so the result is always a segment.
Segment step_segment(const Step& s);

// Folds the steps through the jordan module; failures name the step index.
AdmissibleTriple replay(const SymbolTable& tab, const ConstructionChain& chain,
                        std::optional<std::size_t> depth = std::nullopt);

ClId partial_cuspidal_support(const ConstructionChain& chain);

struct BoundOptions {
    // Adds, for every term, the variants obtained by merging disjoint
    // adjacent segments of the GL part. Redundant covers; presence queries
    // for single-segment shapes become complete under deformation seams.
    bool merge_closure = false;
    // Applies the per-stage pruning rules (Jacquet filter, square
    // integrability positivity, the sign-criteria exclusions, tau label
    // anchoring) after every step. Each rule only discards terms that are
    // provably absent from the genuine Jacquet module of the stage.
    bool stage_prune = false;
    // Discards terms whose GL degree exceeds the cap; sound for counting
    // terms of a fixed support since the GL part only grows along the fold.
    std::optional<std::int64_t> max_gl_degree;
    // Resolve slots through the cuspidal boundary of tau-split lines. Off
    // means every non-trivial layer is pushed opaquely.
    bool tau_refine = true;
    std::size_t max_terms = 1000000;
};

// Over-approximation of mu*(pi) for the parameter built by the chain.
RSElement mu_star_bound(const SymbolTable& tab, const ConstructionChain& chain,
                        std::optional<std::size_t> depth = std::nullopt,
                        const BoundOptions& opts = {});

// Drops terms all of whose segment tops are excluded by Jord(t); terms with
// a non-selfdual segment or a valid top are kept.
RSElement jordan_filter(const SymbolTable& tab, const RSElement& e, const AdmissibleTriple& t);

// One action step M*(x) |x e with the tau-aware slot refinements used by the
// bound engine (exact split of rho |x cusp and resolution of segments
// through the cuspidal boundary).
RSElement bound_action(const SymbolTable& tab, const RElement& x, const RSElement& e,
                       const BoundOptions& opts);

Coeff multiplicity(const std::pair<Multisegment, ClassicalTerm>& term, const RSElement& e);

struct PiDeltaCase {
    enum class Kind { Case1, Case2a, Case2bI, Case2bII };
    Kind kind = Kind::Case1;
    std::int64_t a = 0;                // Case1: max, Case2bI: min of the line
    std::optional<Segment> witness;    // Case1/Case2a witness; Case2bI: the b segment
    std::optional<Segment> seg_a;      // Case2bI only
    int tau_label = +1;                // Case2bII only
};

PiDeltaCase pi_delta_case(const SymbolTable& tab, const AdmissibleTriple& t, GlId rho,
                          std::int64_t b);

enum class EpsCheck { Plus, MinusOrAbsent };

EpsCheck eps_criterion_pair(const SymbolTable& tab, const ConstructionChain& chain, GlId rho,
                            std::int64_t a_minus, std::int64_t a);
EpsCheck eps_criterion_min_even(const SymbolTable& tab, const ConstructionChain& chain, GlId rho);
int eps_criterion_max_odd(const SymbolTable& tab, const ConstructionChain& chain, GlId rho);

struct CrossValidation {
    std::size_t pair_checks = 0;
    std::size_t min_even_checks = 0;
    std::size_t max_odd_checks = 0;
};

// Runs every applicable sign criterion of the chain against one shared
// bound; throws on the first disagreement with the replayed epsilon data.
CrossValidation cross_validate_chain(const SymbolTable& tab, const ConstructionChain& chain);

// Random valid chains for cross-validation; caps keep term counts small.
// max_total_degree bounds the summed length of the defining segments, the
// quantity that drives the bound's term count.
struct GenCaps {
    std::int64_t max_block = 9;
    std::size_t max_len = 4;
    std::int64_t max_total_degree = 16;
};

ConstructionChain random_chain(std::mt19937_64& rng, const SymbolTable& tab, ClId base,
                               const GenCaps& caps = {});

enum class LemmaKind { DefMain, DefEven, DefOdd2, PrDefT };

struct LemmaCheckRow {
    std::string instance;
    std::int64_t expected_terms = 0;
    std::int64_t got_terms = 0;
    std::int64_t expected_mult = 0;
    std::int64_t got_mult = 0;
    bool pass = false;
};

// Replays the named lemma's multiplicity statement on random instances.
std::vector<LemmaCheckRow> check_lemma(const SymbolTable& tab, LemmaKind kind, ClId base,
                                       std::uint64_t seed, std::size_t count,
                                       std::size_t max_terms = 1000000);

// One explicit instance (chain, rho, b) of the three constituent lemmas;
// preconditions of the named case are enforced.
LemmaCheckRow check_lemma_instance(const SymbolTable& tab, LemmaKind kind,
                                   const ConstructionChain& chain, GlId rho, std::int64_t b,
                                   std::size_t max_terms = 1000000);

}  // namespace tempera
