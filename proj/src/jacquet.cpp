#include "jacquet.hpp"

#include <algorithm>
#include <set>

namespace tempera {

namespace {

HalfInt half_of(std::int64_t num) { return HalfInt(num); }  // num/2

// [nu^{-(a_minus-1)/2} rho, nu^{(a-1)/2} rho]
Segment pair_segment(GlId rho, std::int64_t a_minus, std::int64_t a) {
    return Segment{rho, half_of(-(a_minus - 1)), half_of(a - 1)};
}

// [nu^{(a_low+1)/2} rho, nu^{(a-1)/2} rho]
Segment extension_segment(GlId rho, std::int64_t a_low, std::int64_t a) {
    return Segment{rho, half_of(a_low + 1), half_of(a - 1)};
}

}  // namespace

Segment step_segment(const Step& s) {
    if (const auto* ap = std::get_if<AddPairStep>(&s))
        return pair_segment(ap->rho, ap->a_minus, ap->a);
    const auto& d = std::get<DeformUpStep>(s);
    return extension_segment(d.rho, d.a_low, d.a);
}

AdmissibleTriple replay(const SymbolTable& tab, const ConstructionChain& chain,
                        std::optional<std::size_t> depth) {
    std::size_t n = depth.value_or(chain.steps.size());
    if (n > chain.steps.size()) fail(errc::invalid, "replay depth exceeds chain length");
    AdmissibleTriple t = base_triple(tab, chain.base);
    for (std::size_t i = 0; i < n; ++i) {
        try {
            if (const auto* ap = std::get_if<AddPairStep>(&chain.steps[i]))
                t = add_pair(tab, t, ap->rho, ap->a_minus, ap->a, ap->sign);
            else {
                const auto& d = std::get<DeformUpStep>(chain.steps[i]);
                t = deform_up(tab, t, d.rho, d.a_low, d.a);
            }
        } catch (const error& e) {
            fail(e.kind(), "step " + std::to_string(i) + ": " + e.what());
        }
    }
    return t;
}

ClId partial_cuspidal_support(const ConstructionChain& chain) { return chain.base; }

namespace {

bool tau_split_line(const SymbolTable& tab, ClId cusp, GlId rho) {
    return tab.gl(rho).selfdual && tab.gl(rho).parity == Parity::Odd &&
           tab.jord_cusp(cusp, rho).empty();
}

// Slot refinement at the cuspidal boundary. A single segment through the
// exponent-0 point of a tau-split line resolves exactly:
//   d([x..y]) |x cusp  <=  d([1..y]) |x ( d([1..-x]) |x (tau_+ + tau_-) ).
void push_onto(const SymbolTable& tab, const Multisegment& layer, const ClassicalTerm& slot,
               std::vector<ClassicalTerm>& out) {
    if (layer.is_one()) {
        out.push_back(slot);
        return;
    }
    if (slot.is_bare_cusp() && layer.segs.size() == 1) {
        const Segment& s = layer.segs.front();
        if (s.lo.is_integer() && s.lo <= HalfInt(0) && s.hi >= HalfInt(0) &&
            tau_split_line(tab, slot.base, s.rho)) {
            auto up = segment_opt(s.rho, HalfInt::whole(1), s.hi);
            auto dn = segment_opt(s.rho, HalfInt::whole(1), -s.lo);
            for (int sign : {+1, -1}) {
                ClassicalTerm t = ClassicalTerm::tau(s.rho, sign, slot.base);
                if (dn) t.stack.insert(t.stack.begin(), Multisegment::single(*dn));
                if (up) t.stack.insert(t.stack.begin(), Multisegment::single(*up));
                out.push_back(t);
            }
            return;
        }
    }
    out.push_back(slot.pushed(layer));
}

std::map<std::pair<HalfInt, GlId>, std::int64_t> stack_supp(const ClassicalTerm& t) {
    std::map<std::pair<HalfInt, GlId>, std::int64_t> out;
    for (const Multisegment& m : t.stack)
        for (const auto& [p, c] : supp(m)) out[p] += c;
    return out;
}

// The fully concatenated variant of a one-line multisegment whose segments
// tile an interval: the only merge the single-segment queries ever consult.
std::optional<Multisegment> single_merge(const Multisegment& m) {
    if (m.segs.size() < 2) return std::nullopt;
    const Segment& first = m.segs.front();
    HalfInt expect = first.lo;
    for (const Segment& s : m.segs) {
        if (s.rho != first.rho || s.lo != expect) return std::nullopt;
        expect = s.hi.succ();
    }
    return Multisegment::single(Segment{first.rho, first.lo, expect.pred()});
}

bool segment_top_allowed(const SymbolTable& tab, const AdmissibleTriple& t, const Segment& s) {
    if (!tab.gl(s.rho).selfdual) return true;
    std::int64_t top_block = s.hi.tw + 1;  // 2x+1 at the segment top
    return top_block > 0 && t.jord.contains(s.rho, top_block);
}

bool jordan_filter_keeps(const SymbolTable& tab, const AdmissibleTriple& t,
                         const Multisegment& m) {
    if (m.is_one()) return true;
    for (const Segment& s : m.segs)
        if (segment_top_allowed(tab, t, s)) return true;
    return false;
}

struct SignPrunes {
    // Single-segment GL shapes the sign criteria exclude.
    std::set<Segment> forbidden;
    // Required tau label for lines whose first touching step is this stage.
    // Later stages cannot prune by label: a pushed layer through the
    // exponent-0 point re-mixes the two constituents.
    std::map<GlId, int> tau_anchor;
};

SignPrunes sign_prunes(const SymbolTable& tab, const AdmissibleTriple& t,
                       const std::set<GlId>& first_touch) {
    SignPrunes out;
    for (const auto& [rho, line] : t.jord.blocks) {
        if (line.empty()) continue;
        // Adjacent pairs with quotient -1 exclude the gap segment.
        for (auto it = line.begin(); std::next(it) != line.end(); ++it) {
            std::int64_t b = *it, a = *std::next(it);
            if (eps_pair(tab, t, rho, a, b) == -1)
                out.forbidden.insert(Segment{rho, half_of(b - 1).succ(), half_of(a - 1)});
        }
        if (tab.gl(rho).parity == Parity::Even) {
            std::int64_t amin = *line.begin();
            if (eps_singleton(tab, t, rho, amin) == -1 && amin >= 2)
                out.forbidden.insert(Segment{rho, ONE_HALF, half_of(amin - 1)});
        } else if (first_touch.count(rho) && singletons_defined(tab, t, rho)) {
            out.tau_anchor[rho] = *eps_singleton(tab, t, rho, *line.rbegin());
        }
    }
    return out;
}

RSElement stage_prune(const SymbolTable& tab, const AdmissibleTriple& t, const RSElement& e,
                      const std::set<GlId>& first_touch) {
    SignPrunes sp = sign_prunes(tab, t, first_touch);
    RSElement out;
    for (const auto& [key, c] : e) {
        const Multisegment& m = key.first;
        const ClassicalTerm& slot = key.second;
        if (!m.is_one()) {
            std::int64_t sum = 0;
            for (const auto& [p, n] : supp(m)) sum += p.first.tw * n;
            if (sum <= 0) continue;  // square integrability positivity
            if (!jordan_filter_keeps(tab, t, m)) continue;
            if (m.segs.size() == 1 && sp.forbidden.count(m.segs.front())) continue;
        }
        if (slot.core == ClassicalTerm::Core::Tau) {
            auto it = sp.tau_anchor.find(slot.tau_rho);
            if (it != sp.tau_anchor.end() && it->second != slot.tau_sign) continue;
        }
        add_term(out, key, c);
    }
    return out;
}

}  // namespace

RSElement jordan_filter(const SymbolTable& tab, const RSElement& e, const AdmissibleTriple& t) {
    RSElement out;
    for (const auto& [key, c] : e)
        if (jordan_filter_keeps(tab, t, key.first)) add_term(out, key, c);
    return out;
}

RSElement bound_action_pruned(const SymbolTable& tab, const RElement& x, const RSElement& e,
                              const BoundOptions& opts, const AdmissibleTriple* stage) {
    RSElement out;
    std::vector<ClassicalTerm> slots;
    for (const auto& [m, cm] : x) {
        RTensor mx = M_star(tab, m);
        for (const auto& [k, ck] : mx) {
            for (const auto& [term, ct] : e) {
                Multisegment gl = k.first * term.first;
                if (opts.max_gl_degree && degree(gl) > *opts.max_gl_degree) continue;
                if (stage && !gl.is_one()) {
                    // local stage rules, applied before the term is stored
                    std::int64_t sum = 0;
                    for (const auto& [p, n] : supp(gl)) sum += p.first.tw * n;
                    if (sum <= 0) continue;
                    if (!jordan_filter_keeps(tab, *stage, gl)) continue;
                }
                slots.clear();
                if (opts.tau_refine)
                    push_onto(tab, k.second, term.second, slots);
                else
                    slots.push_back(term.second.pushed(k.second));
                for (const ClassicalTerm& s : slots)
                    add_term(out, std::make_pair(gl, s), cm * ck * ct);
                if (out.size() > opts.max_terms)
                    fail(errc::limit, "term cap exceeded (" + std::to_string(opts.max_terms) +
                                          "); raise --max-terms");
            }
        }
    }
    return out;
}

RSElement bound_action(const SymbolTable& tab, const RElement& x, const RSElement& e,
                       const BoundOptions& opts) {
    return bound_action_pruned(tab, x, e, opts, nullptr);
}

RSElement mu_star_bound(const SymbolTable& tab, const ConstructionChain& chain,
                        std::optional<std::size_t> depth, const BoundOptions& opts) {
    std::size_t n = depth.value_or(chain.steps.size());
    if (n > chain.steps.size()) fail(errc::invalid, "depth exceeds chain length");
    replay(tab, chain, n);  // validate prefix; errors carry the step index

    std::set<GlId> touched;
    RSElement bound;
    bound.emplace(std::make_pair(Multisegment::one(), ClassicalTerm::cuspidal(chain.base)), 1);
    for (std::size_t i = 0; i < n; ++i) {
        AdmissibleTriple stage = replay(tab, chain, i + 1);
        RElement seg;
        seg.emplace(Multisegment::single(step_segment(chain.steps[i])), 1);
        bound = bound_action_pruned(tab, seg, bound, opts,
                                    opts.stage_prune ? &stage : nullptr);
        if (opts.merge_closure) {
            RSElement withv = bound;
            for (const auto& [key, c] : bound)
                if (auto v = single_merge(key.first))
                    add_term(withv, std::make_pair(*v, key.second), c);
            bound = std::move(withv);
            if (bound.size() > opts.max_terms)
                fail(errc::limit, "term cap exceeded after merge closure");
        }
        GlId step_rho = std::visit([](const auto& s) { return s.rho; }, chain.steps[i]);
        std::set<GlId> first_touch;
        if (touched.insert(step_rho).second) first_touch.insert(step_rho);
        if (opts.stage_prune) bound = stage_prune(tab, stage, bound, first_touch);
    }
    return bound;
}

Coeff multiplicity(const std::pair<Multisegment, ClassicalTerm>& term, const RSElement& e) {
    auto it = e.find(term);
    return it == e.end() ? 0 : it->second;
}

PiDeltaCase pi_delta_case(const SymbolTable& tab, const AdmissibleTriple& t, GlId rho,
                          std::int64_t b) {
    if (!delta_b_reduces(tab, t, rho, b))
        fail(errc::invalid, "pi_delta_case requires delta(rho,b) |x pi to reduce");
    const auto& line = t.jord.line(rho);

    PiDeltaCase out;
    std::int64_t below = 0;
    for (std::int64_t x : line)
        if (x <= b) below = std::max(below, x);
    if (below > 0) {
        out.kind = PiDeltaCase::Kind::Case1;
        out.a = below;
        out.witness = Segment{rho, half_of(below - 1).succ(), half_of(b - 1)};
        return out;
    }
    if (b % 2 == 0) {
        out.kind = PiDeltaCase::Kind::Case2a;
        out.witness = Segment{rho, ONE_HALF, half_of(b - 1)};
        return out;
    }
    if (!line.empty()) {
        out.kind = PiDeltaCase::Kind::Case2bI;
        out.a = *line.begin();
        out.witness = segment_opt(rho, HalfInt::whole(1), half_of(b - 1));
        out.seg_a = segment_opt(rho, HalfInt::whole(1), half_of(out.a - 1));
        return out;
    }
    if (!tab.jord_cusp(t.cusp, rho).empty())
        fail(errc::internal,
             "pi_delta dispatch reached the cuspidal case with Jord_rho(cusp) nonempty");
    out.kind = PiDeltaCase::Kind::Case2bII;
    out.tau_label = +1;
    return out;
}

namespace {

RSElement criteria_bound(const SymbolTable& tab, const ConstructionChain& chain) {
    BoundOptions opts;
    opts.merge_closure = true;
    opts.stage_prune = true;
    return mu_star_bound(tab, chain, std::nullopt, opts);
}

bool has_single_segment_term(const RSElement& e, const Segment& s) {
    for (const auto& [key, c] : e)
        if (key.first.segs.size() == 1 && key.first.segs.front() == s) return true;
    return false;
}

EpsCheck pair_check(const SymbolTable& tab, const AdmissibleTriple& t, const RSElement& bound,
                    GlId rho, std::int64_t a_minus, std::int64_t a) {
    auto below = neighbor_below(t, rho, a);
    if (!t.jord.contains(rho, a) || !below || *below != a_minus)
        fail(errc::invalid, "blocks are not adjacent in Jord_rho");
    Segment gap{rho, half_of(a_minus - 1).succ(), half_of(a - 1)};
    bool present = has_single_segment_term(bound, gap);
    int stored = eps_pair(tab, t, rho, a, a_minus);
    if (present != (stored == 1))
        fail(errc::internal, "soundness failure: pair criterion disagrees with stored epsilon");
    return present ? EpsCheck::Plus : EpsCheck::MinusOrAbsent;
}

EpsCheck min_even_check(const SymbolTable& tab, const AdmissibleTriple& t,
                        const RSElement& bound, GlId rho) {
    const auto& line = t.jord.line(rho);
    if (line.empty() || tab.gl(rho).parity != Parity::Even)
        fail(errc::invalid, "min-even criterion needs even blocks on the line");
    std::int64_t amin = *line.begin();
    Segment half{rho, ONE_HALF, half_of(amin - 1)};
    bool present = has_single_segment_term(bound, half);
    int stored = *eps_singleton(tab, t, rho, amin);
    if (present != (stored == 1))
        fail(errc::internal, "soundness failure: min-even criterion disagrees with stored epsilon");
    return present ? EpsCheck::Plus : EpsCheck::MinusOrAbsent;
}

int max_odd_check(const SymbolTable& tab, const AdmissibleTriple& t, const RSElement& bound,
                  GlId rho) {
    const auto& line = t.jord.line(rho);
    if (line.empty()) fail(errc::invalid, "max-odd criterion needs a nonempty line");
    if (!tab.jord_cusp(t.cusp, rho).empty())
        fail(errc::invalid, "max-odd criterion needs Jord_rho(cusp) empty");
    if (tab.gl(rho).parity != Parity::Odd)
        fail(errc::invalid, "max-odd criterion needs an odd-parity line");
    std::int64_t amax = *line.rbegin();

    std::map<std::pair<HalfInt, GlId>, std::int64_t> want;
    for (std::int64_t x = 1; 2 * x <= amax - 1; ++x) want[{HalfInt::whole(x), rho}] = 1;

    // The witness term of the stored label must survive in the bound; its
    // absence would mean the expansion lost a genuine Jacquet term.
    int stored = *eps_singleton(tab, t, rho, amax);
    for (const auto& [key, c] : bound) {
        const ClassicalTerm& slot = key.second;
        if (slot.core == ClassicalTerm::Core::Tau && slot.tau_rho == rho &&
            slot.tau_sign == stored && stack_supp(slot) == want)
            return stored;
    }
    fail(errc::internal,
         "soundness failure: max-odd witness term missing from the filtered bound");
}

}  // namespace

EpsCheck eps_criterion_pair(const SymbolTable& tab, const ConstructionChain& chain, GlId rho,
                            std::int64_t a_minus, std::int64_t a) {
    return pair_check(tab, replay(tab, chain), criteria_bound(tab, chain), rho, a_minus, a);
}

EpsCheck eps_criterion_min_even(const SymbolTable& tab, const ConstructionChain& chain,
                                GlId rho) {
    return min_even_check(tab, replay(tab, chain), criteria_bound(tab, chain), rho);
}

int eps_criterion_max_odd(const SymbolTable& tab, const ConstructionChain& chain, GlId rho) {
    return max_odd_check(tab, replay(tab, chain), criteria_bound(tab, chain), rho);
}

CrossValidation cross_validate_chain(const SymbolTable& tab, const ConstructionChain& chain) {
    AdmissibleTriple t = replay(tab, chain);
    RSElement bound = criteria_bound(tab, chain);
    CrossValidation report;
    for (const auto& [rho, line] : t.jord.blocks) {
        if (line.empty()) continue;
        for (auto it = line.begin(); std::next(it) != line.end(); ++it) {
            (void)pair_check(tab, t, bound, rho, *it, *std::next(it));
            ++report.pair_checks;
        }
        if (tab.gl(rho).parity == Parity::Even) {
            (void)min_even_check(tab, t, bound, rho);
            ++report.min_even_checks;
        } else if (tab.jord_cusp(t.cusp, rho).empty()) {
            (void)max_odd_check(tab, t, bound, rho);
            ++report.max_odd_checks;
        }
    }
    return report;
}

ConstructionChain random_chain(std::mt19937_64& rng, const SymbolTable& tab, ClId base,
                               const GenCaps& caps) {
    ConstructionChain chain;
    chain.base = base;
    AdmissibleTriple t = base_triple(tab, base);
    std::size_t len = rng() % (caps.max_len + 1);
    std::int64_t budget = caps.max_total_degree;
    for (std::size_t i = 0; i < len; ++i) {
        std::vector<Step> candidates;
        for (GlId rho = 0; rho < tab.gl_count(); ++rho) {
            if (!tab.gl(rho).selfdual) continue;
            bool singles = singletons_defined(tab, t, rho);
            std::int64_t start = tab.gl(rho).parity == Parity::Odd ? 1 : 2;
            const auto& line = t.jord.line(rho);
            for (std::int64_t am = start; am <= caps.max_block - 2; am += 2)
                for (std::int64_t a = am + 2; a <= caps.max_block; a += 2) {
                    if ((am + a) / 2 > budget) continue;  // pair segment length
                    bool clash = false;
                    for (std::int64_t b : line) clash = clash || (am <= b && b <= a);
                    if (clash) continue;
                    if (singles) {
                        candidates.push_back(AddPairStep{rho, am, a, +1});
                        candidates.push_back(AddPairStep{rho, am, a, -1});
                    } else {
                        candidates.push_back(AddPairStep{rho, am, a, std::nullopt});
                    }
                }
            for (std::int64_t alow : line)
                for (std::int64_t a = alow + 2; a <= caps.max_block; a += 2) {
                    if ((a - alow) / 2 > budget) continue;  // extension segment length
                    bool clash = false;
                    for (std::int64_t b : line) clash = clash || (alow < b && b <= a);
                    if (!clash) candidates.push_back(DeformUpStep{rho, alow, a});
                }
        }
        if (candidates.empty()) break;
        Step s = candidates[rng() % candidates.size()];
        chain.steps.push_back(s);
        budget -= step_segment(s).length();
        if (const auto* ap = std::get_if<AddPairStep>(&s))
            t = add_pair(tab, t, ap->rho, ap->a_minus, ap->a, ap->sign);
        else {
            const auto& d = std::get<DeformUpStep>(s);
            t = deform_up(tab, t, d.rho, d.a_low, d.a);
        }
    }
    return chain;
}

namespace {

std::map<std::pair<HalfInt, GlId>, std::int64_t> interval_supp(GlId rho, HalfInt lo, HalfInt hi,
                                                               std::int64_t mult) {
    std::map<std::pair<HalfInt, GlId>, std::int64_t> out;
    for (HalfInt x = lo; x <= hi; x = x.succ()) out[{x, rho}] = mult;
    return out;
}

struct LemmaInstance {
    ConstructionChain chain;
    GlId rho = 0;
    std::int64_t b = 0;
    std::vector<Segment> deltas;  // PrDefT only; deltas.front() is delta_1
    std::string desc;
};

std::optional<GlId> pick_line(std::mt19937_64& rng, const SymbolTable& tab, Parity want,
                              ClId base, bool need_empty_cusp) {
    std::vector<GlId> ok;
    for (GlId rho = 0; rho < tab.gl_count(); ++rho)
        if (tab.gl(rho).selfdual && tab.gl(rho).parity == want &&
            (!need_empty_cusp || tab.jord_cusp(base, rho).empty()))
            ok.push_back(rho);
    if (ok.empty()) return std::nullopt;
    return ok[rng() % ok.size()];
}

constexpr int kGenRetries = 20000;

[[noreturn]] void gen_give_up() {
    fail(errc::invalid, "could not generate a lemma instance over this catalog");
}

LemmaInstance gen_def_main(std::mt19937_64& rng, const SymbolTable& tab, ClId base) {
    for (int tries = 0; tries < kGenRetries; ++tries) {
        Parity p = rng() % 2 ? Parity::Odd : Parity::Even;
        auto rho = pick_line(rng, tab, p, base, false);
        if (!rho) continue;
        ConstructionChain chain = random_chain(rng, tab, base, GenCaps{9, 2});
        AdmissibleTriple t = replay(tab, chain);
        const auto& line = t.jord.line(*rho);
        if (line.empty()) continue;
        std::vector<std::int64_t> bs;
        for (std::int64_t b = *line.begin() + 2; b <= 11; b += 2)
            if (!line.count(b)) bs.push_back(b);
        if (bs.empty()) continue;
        LemmaInstance inst;
        inst.chain = chain;
        inst.rho = *rho;
        inst.b = bs[rng() % bs.size()];
        return inst;
    }
    gen_give_up();
}

LemmaInstance gen_def_even(std::mt19937_64& rng, const SymbolTable& tab, ClId base) {
    for (int tries = 0; tries < kGenRetries; ++tries) {
        auto rho = pick_line(rng, tab, Parity::Even, base, true);
        if (!rho) fail(errc::invalid, "catalog has no even line with empty cuspidal blocks");
        ConstructionChain chain = random_chain(rng, tab, base, GenCaps{9, 2});
        AdmissibleTriple t = replay(tab, chain);
        const auto& line = t.jord.line(*rho);
        std::int64_t minb = line.empty() ? 11 : *line.begin();
        std::vector<std::int64_t> bs;
        for (std::int64_t b = 2; b < minb && b <= 8; b += 2) bs.push_back(b);
        if (bs.empty()) continue;
        LemmaInstance inst;
        inst.chain = chain;
        inst.rho = *rho;
        inst.b = bs[rng() % bs.size()];
        return inst;
    }
    gen_give_up();
}

LemmaInstance gen_def_odd2(std::mt19937_64& rng, const SymbolTable& tab, ClId base) {
    for (int tries = 0; tries < kGenRetries; ++tries) {
        auto rho = pick_line(rng, tab, Parity::Odd, base, true);
        if (!rho) fail(errc::invalid, "catalog has no odd line with empty cuspidal blocks");
        ConstructionChain chain;
        chain.base = base;
        if (rng() % 2) {
            // pair far above 1, directly
            std::int64_t am = 3 + 2 * static_cast<std::int64_t>(rng() % 3);  // 3,5,7
            std::int64_t a2 = am + 2;
            chain.steps.push_back(AddPairStep{*rho, am, a2, +1});
        } else {
            // pair at 1, then push the low block up
            std::int64_t m = 7 + 2 * static_cast<std::int64_t>(rng() % 2);  // 7,9
            std::int64_t m2 = 3 + 2 * static_cast<std::int64_t>(rng() % ((m - 5) / 2 + 1));
            chain.steps.push_back(AddPairStep{*rho, 1, m, rng() % 2 ? +1 : -1});
            chain.steps.push_back(DeformUpStep{*rho, 1, m2});
        }
        AdmissibleTriple t = replay(tab, chain);
        std::int64_t amin = *t.jord.line(*rho).begin();
        std::vector<std::int64_t> bs;
        for (std::int64_t b = 1; b < amin; b += 2) bs.push_back(b);
        if (bs.empty()) continue;
        LemmaInstance inst;
        inst.chain = chain;
        inst.rho = *rho;
        inst.b = bs[rng() % bs.size()];
        return inst;
    }
    gen_give_up();
}

LemmaInstance gen_pr_def_t(std::mt19937_64& rng, const SymbolTable& tab, ClId base) {
    for (int tries = 0; tries < kGenRetries; ++tries) {
        ConstructionChain chain = random_chain(rng, tab, base, GenCaps{5, 1});
        AdmissibleTriple t = replay(tab, chain);
        std::vector<Segment> reducing;
        for (GlId rho = 0; rho < tab.gl_count(); ++rho) {
            if (!tab.gl(rho).selfdual) continue;
            std::int64_t start = tab.gl(rho).parity == Parity::Odd ? 1 : 2;
            for (std::int64_t b = start; b <= 5; b += 2)
                if (delta_b_reduces(tab, t, rho, b))
                    reducing.push_back(centered_segment(rho, b));
        }
        std::size_t n = 2 + rng() % 2;
        if (reducing.size() < n) continue;
        std::shuffle(reducing.begin(), reducing.end(), rng);
        reducing.resize(n);
        // delta_1 must have maximal length
        std::sort(reducing.begin(), reducing.end(), [](const Segment& a, const Segment& b) {
            return a.length() > b.length();
        });
        LemmaInstance inst;
        inst.chain = chain;
        inst.deltas = reducing;
        return inst;
    }
    gen_give_up();
}

}  // namespace

std::vector<LemmaCheckRow> check_lemma(const SymbolTable& tab, LemmaKind kind, ClId base,
                                       std::uint64_t seed, std::size_t count,
                                       std::size_t max_terms) {
    std::mt19937_64 rng(seed);
    std::vector<LemmaCheckRow> rows;
    for (std::size_t it = 0; it < count; ++it) {
        LemmaCheckRow row;
        if (kind == LemmaKind::PrDefT) {
            LemmaInstance inst = gen_pr_def_t(rng, tab, base);
            const Segment& d1 = inst.deltas.front();
            BoundOptions opts;
            opts.stage_prune = true;
            opts.max_gl_degree = d1.length();
            opts.max_terms = max_terms;
            RSElement e = mu_star_bound(tab, inst.chain, std::nullopt, opts);
            BoundOptions fold = opts;
            fold.tau_refine = false;  // lemma statements are about opaque layers
            for (const Segment& d : inst.deltas) {
                RElement x;
                x.emplace(Multisegment::single(d), 1);
                e = bound_action(tab, x, e, fold);
            }
            Multisegment want = Multisegment::single(d1);
            std::int64_t terms = 0, mult = 0;
            for (const auto& [key, c] : e)
                if (key.first == want) { ++terms; mult += c; }
            row.instance = "n=" + std::to_string(inst.deltas.size()) +
                           " delta1=d(" + tab.gl(d1.rho).id + "," +
                           std::to_string(d1.length()) + ")";
            row.expected_terms = 1;
            row.got_terms = terms;
            row.expected_mult = 2;
            row.got_mult = mult;
            row.pass = terms == 1 && mult == 2;
            rows.push_back(row);
            continue;
        }

        LemmaInstance inst = kind == LemmaKind::DefMain ? gen_def_main(rng, tab, base)
                             : kind == LemmaKind::DefEven ? gen_def_even(rng, tab, base)
                                                          : gen_def_odd2(rng, tab, base);
        rows.push_back(check_lemma_instance(tab, kind, inst.chain, inst.rho, inst.b, max_terms));
    }
    return rows;
}

LemmaCheckRow check_lemma_instance(const SymbolTable& tab, LemmaKind kind,
                                   const ConstructionChain& chain, GlId rho, std::int64_t b,
                                   std::size_t max_terms) {
    if (kind == LemmaKind::PrDefT)
        fail(errc::invalid, "explicit instances are supported for the constituent lemmas only");
    AdmissibleTriple t = replay(tab, chain);
    const auto& line = t.jord.line(rho);
    if (!delta_b_reduces(tab, t, rho, b))
        fail(errc::invalid, "instance precondition: delta(rho,b) |x pi must reduce");
    std::int64_t below = 0;
    for (std::int64_t x : line)
        if (x <= b) below = std::max(below, x);

    std::map<std::pair<HalfInt, GlId>, std::int64_t> want;
    if (kind == LemmaKind::DefMain) {
        if (below == 0) fail(errc::invalid, "instance precondition: Jord meets [1,b]");
        want = interval_supp(rho, half_of(below - 1).succ(), half_of(b - 1), 2);
    } else if (kind == LemmaKind::DefEven) {
        if (b % 2 != 0 || below != 0)
            fail(errc::invalid, "instance precondition: b even and Jord disjoint from [1,b]");
        want = interval_supp(rho, ONE_HALF, half_of(b - 1), 2);
    } else {
        if (b % 2 == 0 || below != 0 || line.empty())
            fail(errc::invalid,
                 "instance precondition: b odd, Jord nonempty and disjoint from [1,b]");
        want = interval_supp(rho, HalfInt::whole(1), half_of(*line.begin() - 1), 1);
        if (b >= 3)
            for (const auto& [p, c] : interval_supp(rho, HalfInt::whole(1), half_of(b - 1), 2))
                want[p] += c;
    }
    std::int64_t deg = 0;
    for (const auto& [p, c] : want) deg += c;

    BoundOptions opts;
    opts.stage_prune = true;
    opts.max_gl_degree = deg;
    opts.max_terms = max_terms;
    RSElement bound = mu_star_bound(tab, chain, std::nullopt, opts);
    RElement x;
    x.emplace(Multisegment::single(centered_segment(rho, b)), 1);
    RSElement e = mu_star_action(tab, x, bound);

    LemmaCheckRow row;
    std::int64_t terms = 0, mult = 0;
    for (const auto& [key, c] : e) {
        if (degree(key.first) != deg) continue;
        if (supp(key.first) == want) {
            ++terms;
            mult += c;
        }
    }
    row.instance = "rho=" + tab.gl(rho).id + " b=" + std::to_string(b) +
                   " steps=" + std::to_string(chain.steps.size());
    row.expected_terms = 1;
    row.got_terms = terms;
    row.expected_mult = 1;
    row.got_mult = mult;
    row.pass = terms == 1 && mult == 1;
    return row;
}

}  // namespace tempera
