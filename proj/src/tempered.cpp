#include "tempered.hpp"

#include <algorithm>

namespace tempera {

namespace {

std::string sym_str(const SymbolTable& tab, const DeltaSym& d) {
    return "d(" + tab.gl(d.rho).id + "," + std::to_string(d.a) + ")";
}

bool is_j1_member(const SymbolTable& tab, const DeltaSym& d) {
    return tab.gl(d.rho).selfdual && tab.j1_satisfied(d.rho, d.a);
}

// Domain rule for singleton values on odd-multiplicity members.
bool odd_singleton_defined(const SymbolTable& tab, ClId cusp, const DeltaSym& d) {
    if (d.a % 2 == 0) return true;
    return tab.jord_cusp(cusp, d.rho).empty();
}

AdmissibleTriple extract_core(const SymbolTable& tab, const TemperedTriple& t) {
    AdmissibleTriple core;
    core.cusp = t.cusp;
    for (const auto& [d, mult] : t.jord) {
        if (mult % 2 == 0 || !is_j1_member(tab, d)) continue;
        core.jord.blocks[d.rho].insert(d.a);
        auto it = t.eps.find(d);
        if (it != t.eps.end()) core.eps.val[{d.rho, d.a}] = it->second;
    }
    return core;
}

}  // namespace

std::vector<std::string> validate_param(const SymbolTable& tab, const TemperedParam& p) {
    std::vector<std::string> out = validate_triple(tab, p.e_core.core);
    std::set<std::pair<GlId, std::int64_t>> seen;
    for (const SignedDelta& d : p.e_core.deltas) {
        if (d.sign != 1 && d.sign != -1) out.push_back("delta sign out of range");
        if (!seen.insert({d.rho, d.b}).second)
            out.push_back("deltas are not pairwise distinct: " +
                          sym_str(tab, DeltaSym{d.rho, d.b}));
        if (!delta_b_reduces(tab, p.e_core.core, d.rho, d.b))
            out.push_back("delta does not reduce: " + sym_str(tab, DeltaSym{d.rho, d.b}));
    }
    for (const DeltaSym& g : p.gammas) {
        if (g.a <= 0) {
            out.push_back("gamma with nonpositive block");
            continue;
        }
        if (delta_b_reduces(tab, p.e_core.core, g.rho, g.a) && !seen.count({g.rho, g.a}))
            out.push_back("gamma " + sym_str(tab, g) +
                          " reduces but is not one of the deltas");
    }
    return out;
}

std::int64_t goldberg_length(const SymbolTable& tab, const std::vector<DeltaSym>& deltas,
                             const AdmissibleTriple& t) {
    std::set<DeltaSym> reducing;
    for (const DeltaSym& d : deltas)
        if (delta_b_reduces(tab, t, d.rho, d.a)) reducing.insert(d);
    if (reducing.size() >= 62) fail(errc::limit, "too many reducing deltas");
    return std::int64_t(1) << reducing.size();
}

std::vector<std::vector<SignedDelta>> decompose_sign_vectors(
    const SymbolTable& tab, const AdmissibleTriple& t, const std::vector<DeltaSym>& deltas) {
    std::set<DeltaSym> reducing;
    for (const DeltaSym& d : deltas)
        if (delta_b_reduces(tab, t, d.rho, d.a)) reducing.insert(d);
    std::vector<DeltaSym> order(reducing.begin(), reducing.end());
    if (order.size() >= 20) fail(errc::limit, "too many reducing deltas to enumerate");
    std::vector<std::vector<SignedDelta>> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << order.size()); ++mask) {
        std::vector<SignedDelta> vec;
        for (std::size_t i = 0; i < order.size(); ++i)
            vec.push_back(SignedDelta{order[i].rho, order[i].a,
                                      (mask >> i) & 1 ? -1 : +1});
        out.push_back(std::move(vec));
    }
    return out;
}

std::map<DeltaSym, std::int64_t> jord_of_tempered(const SymbolTable& tab,
                                                  const TemperedParam& p) {
    std::map<DeltaSym, std::int64_t> out;
    for (const DeltaSym& g : p.gammas) {
        ++out[g];
        ++out[DeltaSym{tab.dual_of(g.rho), g.a}];
    }
    for (const SignedDelta& d : p.e_core.deltas) out[DeltaSym{d.rho, d.b}] += 2;
    for (const auto& [rho, line] : p.e_core.core.jord.blocks)
        for (std::int64_t a : line) out[DeltaSym{rho, a}] += 1;
    return out;
}

std::map<DeltaSym, int> eps_of_tempered(const SymbolTable& /*tab*/, const TemperedParam& p) {
    std::map<DeltaSym, int> out;
    for (const SignedDelta& d : p.e_core.deltas) out[DeltaSym{d.rho, d.b}] = d.sign;
    // Odd-multiplicity members are exactly the blocks of the core; they
    // inherit the square-integrable values (absolute or anchored-relative).
    for (const auto& [key, v] : p.e_core.core.eps.val) out[DeltaSym{key.first, key.second}] = v;
    return out;
}

TemperedTriple param_to_triple(const SymbolTable& tab, const TemperedParam& p) {
    auto viol = validate_param(tab, p);
    if (!viol.empty()) fail(errc::invalid, "invalid tempered param: " + viol.front());
    TemperedTriple t;
    t.cusp = p.e_core.core.cusp;
    t.jord = jord_of_tempered(tab, p);
    t.eps = eps_of_tempered(tab, p);
    return t;
}

TemperedParam triple_to_param(const SymbolTable& tab, const TemperedTriple& t) {
    auto viol = validate_tempered_triple(tab, t);
    if (!viol.empty()) fail(errc::invalid, "invalid tempered triple: " + viol.front());

    TemperedParam p;
    p.e_core.core = extract_core(tab, t);
    for (const auto& [d, mult] : t.jord) {
        const GlSymbol& r = tab.gl(d.rho);
        if (!r.selfdual) {
            GlId partner = tab.dual_of(d.rho);
            if (d.rho < partner)  // one gamma per dual pair member
                for (std::int64_t i = 0; i < mult; ++i) p.gammas.push_back(d);
            continue;
        }
        if (!tab.j1_satisfied(d.rho, d.a)) {
            for (std::int64_t i = 0; i < mult / 2; ++i) p.gammas.push_back(d);
            continue;
        }
        if (mult % 2 == 0) {
            p.e_core.deltas.push_back(SignedDelta{d.rho, d.a, t.eps.at(d)});
            for (std::int64_t i = 0; i < (mult - 2) / 2; ++i) p.gammas.push_back(d);
        } else {
            for (std::int64_t i = 0; i < (mult - 1) / 2; ++i) p.gammas.push_back(d);
        }
    }
    std::sort(p.gammas.begin(), p.gammas.end());
    std::sort(p.e_core.deltas.begin(), p.e_core.deltas.end());
    return p;
}

std::vector<std::string> validate_tempered_triple(const SymbolTable& tab,
                                                  const TemperedTriple& t) {
    std::vector<std::string> out;
    if (t.cusp >= tab.classical_count()) {
        out.push_back("unknown cuspidal base");
        return out;
    }
    for (const auto& [d, mult] : t.jord) {
        if (mult <= 0) out.push_back("nonpositive multiplicity at " + sym_str(tab, d));
        if (d.a <= 0) out.push_back("nonpositive block at " + sym_str(tab, d));
        const GlSymbol& r = tab.gl(d.rho);
        if (!r.selfdual) {
            if (!r.dual_partner) {
                out.push_back("dual symbol unknown for " + r.id);
                continue;
            }
            auto it = t.jord.find(DeltaSym{*r.dual_partner, d.a});
            if (it == t.jord.end() || it->second != mult)
                out.push_back("Jord is not selfdual-closed at " + sym_str(tab, d));
            if (t.eps.count(d)) out.push_back("epsilon defined on non-selfdual " + sym_str(tab, d));
            continue;
        }
        bool j1 = tab.j1_satisfied(d.rho, d.a);
        if (!j1) {
            if (mult % 2 != 0)
                out.push_back("odd multiplicity without (J1) at " + sym_str(tab, d));
            if (t.eps.count(d))
                out.push_back("epsilon defined without (J1) at " + sym_str(tab, d));
            continue;
        }
        if (mult % 2 == 0) {
            if (!t.eps.count(d))
                out.push_back("even-multiplicity member missing designated sign: " +
                              sym_str(tab, d));
        } else {
            if (!t.eps.count(d))
                out.push_back("odd-multiplicity member missing epsilon data: " + sym_str(tab, d));
            if (!odd_singleton_defined(tab, t.cusp, d)) {
                // relative line: anchored at the maximal odd-multiplicity member
                std::int64_t anchor = 0;
                for (const auto& [e, m] : t.jord)
                    if (e.rho == d.rho && m % 2 != 0 && is_j1_member(tab, e))
                        anchor = std::max(anchor, e.a);
                auto it = t.eps.find(DeltaSym{d.rho, anchor});
                if (it != t.eps.end() && it->second != 1)
                    out.push_back("relative line not anchored at max: " + tab.gl(d.rho).id);
            }
        }
    }
    for (const auto& [d, v] : t.eps) {
        if (v != 1 && v != -1) out.push_back("epsilon value out of range");
        if (!t.jord.count(d)) out.push_back("epsilon entry outside Jord: " + sym_str(tab, d));
    }
    AdmissibleTriple core = extract_core(tab, t);
    for (const std::string& v : validate_triple(tab, core)) out.push_back("core: " + v);
    return out;
}

bool params_equivalent(const SymbolTable& tab, const TemperedParam& p, const TemperedParam& q) {
    if (!(p.e_core.core == q.e_core.core)) return false;
    auto deltas_of = [](const TemperedParam& x) {
        std::set<SignedDelta> s(x.e_core.deltas.begin(), x.e_core.deltas.end());
        return s;
    };
    if (deltas_of(p) != deltas_of(q)) return false;
    auto closure = [&tab](const TemperedParam& x) {
        std::map<DeltaSym, std::int64_t> m;
        for (const DeltaSym& g : x.gammas) {
            ++m[g];
            ++m[DeltaSym{tab.dual_of(g.rho), g.a}];
        }
        return m;
    };
    return closure(p) == closure(q);
}

bool is_generic(const SymbolTable& tab, const TemperedParam& p) {
    const auto& flag = tab.classical(p.e_core.core.cusp).generic;
    if (!flag) fail(errc::domain, "genericity data missing for " +
                                      tab.classical(p.e_core.core.cusp).id);
    if (!*flag) return false;
    for (const auto& [key, v] : p.e_core.core.eps.val)
        if (v != 1) return false;
    for (const SignedDelta& d : p.e_core.deltas)
        if (d.sign != 1) return false;
    return true;
}

}  // namespace tempera
