#include "multiseg.hpp"

namespace tempera {

Segment centered_segment(GlId rho, std::int64_t a) {
    if (a <= 0) fail(errc::invalid, "delta(rho,a) requires a > 0");
    return Segment{rho, HalfInt(-(a - 1)), HalfInt(a - 1)};
}

std::optional<Segment> segment_opt(GlId rho, HalfInt lo, HalfInt hi) {
    HalfInt d = hi - lo;
    if (!d.is_integer()) fail(errc::invalid, "segment endpoints differ by a non-integer");
    std::int64_t n = d.as_integer();
    if (n >= 0) return Segment{rho, lo, hi};
    if (n == -1) return std::nullopt;
    fail(errc::invalid, "segment range [" + lo.str() + ".." + hi.str() + "] is not a segment");
}

Multisegment operator*(const Multisegment& a, const Multisegment& b) {
    std::vector<Segment> all = a.segs;
    all.insert(all.end(), b.segs.begin(), b.segs.end());
    return Multisegment(std::move(all));
}

RElement r_one() {
    RElement e;
    e.emplace(Multisegment::one(), 1);
    return e;
}

RElement times(const RElement& x, const RElement& y) {
    RElement out;
    for (const auto& [mx, cx] : x)
        for (const auto& [my, cy] : y) add_term(out, mx * my, cx * cy);
    return out;
}

Segment check_dual(const SymbolTable& tab, const Segment& s) {
    return Segment{tab.dual_of(s.rho), -s.hi, -s.lo};
}

Multisegment check_dual(const SymbolTable& tab, const Multisegment& m) {
    std::vector<Segment> out;
    out.reserve(m.segs.size());
    for (const Segment& s : m.segs) out.push_back(check_dual(tab, s));
    return Multisegment(std::move(out));
}

RTensor m_star(const Segment& s) {
    RTensor out;
    // i runs from lo-1 to hi; the one-off ranges at the ends give delta(0) = 1.
    for (HalfInt i = s.lo.pred(); i <= s.hi; i = i.succ()) {
        Multisegment left = Multisegment::single(segment_opt(s.rho, i.succ(), s.hi));
        Multisegment right = Multisegment::single(segment_opt(s.rho, s.lo, i));
        add_term(out, std::make_pair(left, right), 1);
    }
    return out;
}

RTensor tensor_product(const RTensor& a, const RTensor& b) {
    RTensor out;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b)
            add_term(out, std::make_pair(ka.first * kb.first, ka.second * kb.second), ca * cb);
    return out;
}

RTensor m_star(const Multisegment& m) {
    RTensor acc;
    acc.emplace(std::make_pair(Multisegment::one(), Multisegment::one()), 1);
    for (const Segment& s : m.segs) acc = tensor_product(acc, m_star(s));
    return acc;
}

RTensor m_star(const RElement& x) {
    RTensor out;
    for (const auto& [m, c] : x)
        for (const auto& [k, v] : m_star(m)) add_term(out, k, c * v);
    return out;
}

RTensor M_star_pipeline(const SymbolTable& tab, const RElement& x) {
    RTensor out;
    for (const auto& [k1, c1] : m_star(x)) {
        const Multisegment& u = k1.first;
        const Multisegment& v = k1.second;
        // kappa swaps, ^ hits the (now first) slot v, m* expands u again.
        Multisegment vd = check_dual(tab, v);
        for (const auto& [k2, c2] : m_star(u))
            add_term(out, std::make_pair(vd * k2.first, k2.second), c1 * c2);
    }
    return out;
}

RTensor M_star_segment(const SymbolTable& tab, const Segment& s, std::size_t* raw_count) {
    RTensor out;
    GlId rho_dual = tab.dual_of(s.rho);
    std::size_t n = 0;
    for (HalfInt i = s.lo.pred(); i <= s.hi; i = i.succ()) {
        Multisegment dual_part = Multisegment::single(segment_opt(rho_dual, -i, -s.lo));
        for (HalfInt j = i; j <= s.hi; j = j.succ()) {
            Multisegment upper = Multisegment::single(segment_opt(s.rho, j.succ(), s.hi));
            Multisegment inner = Multisegment::single(segment_opt(s.rho, i.succ(), j));
            add_term(out, std::make_pair(dual_part * upper, inner), 1);
            ++n;
        }
    }
    if (raw_count) *raw_count = n;
    return out;
}

RTensor M_star(const SymbolTable& tab, const Multisegment& m) {
    RTensor acc;
    acc.emplace(std::make_pair(Multisegment::one(), Multisegment::one()), 1);
    for (const Segment& s : m.segs) acc = tensor_product(acc, M_star_segment(tab, s));
    return acc;
}

RElement M_star_GL(const SymbolTable& tab, const Segment& s) {
    if (!tab.gl(s.rho).selfdual)
        fail(errc::domain, "M*_GL requires a selfdual symbol, got " + tab.gl(s.rho).id);
    RElement out;
    for (HalfInt i = s.lo.pred(); i <= s.hi; i = i.succ()) {
        Multisegment dual_part = Multisegment::single(segment_opt(s.rho, -i, -s.lo));
        Multisegment upper = Multisegment::single(segment_opt(s.rho, i.succ(), s.hi));
        add_term(out, dual_part * upper, 1);
    }
    return out;
}

RSElement mu_star_action(const SymbolTable& tab, const RElement& x, const RSElement& s) {
    RSElement out;
    for (const auto& [m, cm] : x) {
        RTensor mx = M_star(tab, m);
        for (const auto& [k, ck] : mx)
            for (const auto& [t, ct] : s)
                add_term(out, std::make_pair(k.first * t.first, t.second.pushed(k.second)),
                         cm * ck * ct);
    }
    return out;
}

std::map<std::pair<HalfInt, GlId>, std::int64_t> supp(const Multisegment& m) {
    std::map<std::pair<HalfInt, GlId>, std::int64_t> out;
    for (const Segment& s : m.segs)
        for (HalfInt x = s.lo; x <= s.hi; x = x.succ()) ++out[{x, s.rho}];
    return out;
}

std::int64_t degree(const Multisegment& m) {
    std::int64_t d = 0;
    for (const Segment& s : m.segs) d += s.length();
    return d;
}

std::int64_t degree(const ClassicalTerm& t) {
    std::int64_t d = t.core == ClassicalTerm::Core::Tau ? 1 : 0;
    for (const Multisegment& m : t.stack) d += degree(m);
    return d;
}

}  // namespace tempera
