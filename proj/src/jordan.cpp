#include "jordan.hpp"

#include <algorithm>

namespace tempera {

const std::set<std::int64_t> JordanBlocks::empty_{};

const std::set<std::int64_t>& JordanBlocks::line(GlId rho) const {
    auto it = blocks.find(rho);
    return it == blocks.end() ? empty_ : it->second;
}

bool JordanBlocks::contains(GlId rho, std::int64_t a) const { return line(rho).count(a) > 0; }

namespace {

std::string block_str(const SymbolTable& tab, GlId rho, std::int64_t a) {
    return "(" + tab.gl(rho).id + "," + std::to_string(a) + ")";
}

// Keeps the relative-line convention: the anchor max(Jord_rho) carries +1.
void normalize_anchor(const SymbolTable& tab, AdmissibleTriple& t, GlId rho) {
    if (singletons_defined(tab, t, rho)) return;
    const auto& line = t.jord.line(rho);
    if (line.empty()) return;
    std::int64_t anchor = *line.rbegin();
    int av = t.eps.val.at({rho, anchor});
    if (av == 1) return;
    for (std::int64_t a : line) t.eps.val.at({rho, a}) *= av;
}

void insert_block(const SymbolTable& tab, AdmissibleTriple& t, GlId rho, std::int64_t a) {
    if (!tab.j1_satisfied(rho, a))
        fail(errc::invalid, "block " + block_str(tab, rho, a) + " violates (J1)");
    if (!t.jord.blocks[rho].insert(a).second)
        fail(errc::invalid, "block " + block_str(tab, rho, a) + " already present");
}

}  // namespace

AdmissibleTriple base_triple(const SymbolTable& tab, ClId cusp) {
    AdmissibleTriple t;
    t.cusp = cusp;
    for (const auto& [rho, blocks] : tab.classical(cusp).jord_cusp) {
        t.jord.blocks[rho] = blocks;
        // Alternating pattern, anchored so that the reducibility exponent
        // (1+a_max)/2 is the only reducibility point of the cuspidal symbol.
        int sign = 1;
        for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) {
            t.eps.val[{rho, *it}] = sign;
            sign = -sign;
        }
        if (singletons_defined(tab, t, rho)) {
            // Even lines: absolute signs, alternating with -1 at the minimum.
            int min_sign = t.eps.val.at({rho, *blocks.begin()});
            if (min_sign == 1)
                for (std::int64_t a : blocks) t.eps.val.at({rho, a}) *= -1;
        }
    }
    return t;
}

bool singletons_defined(const SymbolTable& tab, const AdmissibleTriple& t, GlId rho) {
    if (!tab.gl(rho).selfdual) return false;
    if (tab.gl(rho).parity == Parity::Even) return true;
    return tab.jord_cusp(t.cusp, rho).empty();
}

std::optional<int> eps_singleton(const SymbolTable& tab, const AdmissibleTriple& t, GlId rho,
                                 std::int64_t a) {
    if (!singletons_defined(tab, t, rho)) return std::nullopt;
    auto it = t.eps.val.find({rho, a});
    if (it == t.eps.val.end()) return std::nullopt;
    return it->second;
}

int eps_pair(const SymbolTable& tab, const AdmissibleTriple& t, GlId rho, std::int64_t a,
             std::int64_t b) {
    if (!t.jord.contains(rho, a) || !t.jord.contains(rho, b))
        fail(errc::domain, "epsilon pair undefined: block missing on line " + tab.gl(rho).id);
    auto ia = t.eps.val.find({rho, a});
    auto ib = t.eps.val.find({rho, b});
    if (ia == t.eps.val.end() || ib == t.eps.val.end())
        fail(errc::internal, "epsilon undefined on stored block of " + tab.gl(rho).id);
    return ia->second * ib->second;
}

std::optional<std::int64_t> neighbor_below(const AdmissibleTriple& t, GlId rho, std::int64_t a) {
    const auto& line = t.jord.line(rho);
    auto it = line.find(a);
    if (it == line.end() || it == line.begin()) return std::nullopt;
    return *std::prev(it);
}

bool delta_b_reduces(const SymbolTable& tab, const AdmissibleTriple& t, GlId rho, std::int64_t b) {
    if (!tab.gl(rho).selfdual) return false;
    return tab.j1_satisfied(rho, b) && !t.jord.contains(rho, b);
}

Reducibility point_reduces(const SymbolTable& tab, const AdmissibleTriple& t, GlId rho,
                           HalfInt alpha) {
    if (!tab.gl(rho).selfdual) return Reducibility::Irreducible;
    if (alpha < HalfInt(0)) alpha = -alpha;
    const auto& line = t.jord.line(rho);
    if (alpha == HalfInt(0)) {
        bool odd = tab.gl(rho).parity == Parity::Odd;
        return odd && !line.count(1) ? Reducibility::Reduces : Reducibility::Irreducible;
    }
    if (alpha == ONE_HALF) {
        if (tab.gl(rho).parity == Parity::Even && !line.count(2)) return Reducibility::Reduces;
        if (line.count(2)) {
            auto e = eps_singleton(tab, t, rho, 2);
            if (!e) fail(errc::internal, "epsilon undefined at (rho,2)");
            return *e == 1 ? Reducibility::Reduces : Reducibility::Irreducible;
        }
        return Reducibility::Irreducible;
    }
    // alpha = (a+1)/2 for the positive integer a = 2 alpha - 1.
    std::int64_t a = alpha.tw - 1;
    if (!line.count(a)) return Reducibility::Irreducible;
    if (!line.count(a + 2)) return Reducibility::Reduces;
    return eps_pair(tab, t, rho, a, a + 2) == 1 ? Reducibility::Reduces
                                                : Reducibility::Irreducible;
}

Irreducibility segment_irreducible(const SymbolTable& tab, const AdmissibleTriple& t,
                                   const std::optional<Segment>& seg) {
    if (!seg) return Irreducibility::Irreducible;
    for (HalfInt x = seg->lo; x <= seg->hi; x = x.succ())
        if (point_reduces(tab, t, seg->rho, x) == Reducibility::Reduces)
            return Irreducibility::Unknown;
    return Irreducibility::Irreducible;
}

JordanBlocks jord_transfer(const SymbolTable& tab, const JordanBlocks& jp, GlId rho, HalfInt x,
                           HalfInt y) {
    if (!tab.gl(rho).selfdual) fail(errc::domain, "jord_transfer needs a selfdual symbol");
    if (!(x - y).is_integer() || (x - y) < HalfInt(0))
        fail(errc::invalid, "jord_transfer requires x - y a nonnegative integer");
    bool integral = x.is_integer();
    if (!y.is_integer() == integral)
        fail(errc::internal, "x and y must share integrality");
    bool odd = tab.gl(rho).parity == Parity::Odd;
    if (integral != odd)
        fail(errc::invalid, "parity mismatch: exponents integral iff the line is odd");

    JordanBlocks out = jp;
    auto& line = out.blocks[rho];
    if (y > HalfInt(0)) {
        std::int64_t removed = y.tw - 1;  // 2y - 1
        if (y >= HalfInt::whole(1)) {
            if (!line.count(removed))
                fail(errc::invalid,
                     "jord_transfer: required block " + block_str(tab, rho, removed) + " missing");
            line.erase(removed);
        }
        std::int64_t added = x.tw + 1;  // 2x + 1
        if (!line.insert(added).second)
            fail(errc::invalid, "jord_transfer: block " + block_str(tab, rho, added) + " present");
    } else {
        std::int64_t a1 = x.tw + 1;   // 2x + 1
        std::int64_t a2 = -y.tw + 1;  // -2y + 1
        if (a1 == a2)
            fail(errc::invalid, "jord_transfer: duplicate block " + block_str(tab, rho, a1));
        for (std::int64_t a : {a1, a2}) {
            if (line.count(a))
                fail(errc::invalid, "jord_transfer: block " + block_str(tab, rho, a) + " present");
            line.insert(a);
        }
    }
    if (line.empty()) out.blocks.erase(rho);
    return out;
}

AdmissibleTriple add_pair(const SymbolTable& tab, const AdmissibleTriple& t, GlId rho,
                          std::int64_t a_minus, std::int64_t a, std::optional<int> new_sign) {
    if (a_minus <= 0 || (a - a_minus) <= 0 || (a - a_minus) % 2 != 0)
        fail(errc::invalid, "add_pair requires 0 < a_minus < a with a - a_minus even");
    if (!tab.j1_satisfied(rho, a_minus) || !tab.j1_satisfied(rho, a))
        fail(errc::invalid, "add_pair blocks violate (J1)");
    for (std::int64_t b : t.jord.line(rho))
        if (a_minus <= b && b <= a)
            fail(errc::invalid, "add_pair overlaps existing block " + block_str(tab, rho, b));
    if (new_sign && *new_sign != 1 && *new_sign != -1)
        fail(errc::invalid, "add_pair sign must be +1 or -1");

    AdmissibleTriple out = t;
    bool have_singletons = singletons_defined(tab, out, rho);
    if (have_singletons && !new_sign)
        fail(errc::invalid, "add_pair on " + tab.gl(rho).id + " needs an absolute sign");
    if (!have_singletons && new_sign)
        fail(errc::invalid, "add_pair sign given but singletons are undefined on " +
                                tab.gl(rho).id);
    insert_block(tab, out, rho, a_minus);
    insert_block(tab, out, rho, a);
    if (have_singletons) {
        out.eps.val[{rho, a_minus}] = *new_sign;
        out.eps.val[{rho, a}] = *new_sign;
    } else {
        // The new pair joins the relative web with quotient +1 against the
        // previous anchor; internal quotient +1 is forced either way.
        out.eps.val[{rho, a_minus}] = 1;
        out.eps.val[{rho, a}] = 1;
        normalize_anchor(tab, out, rho);
    }
    return out;
}

AdmissibleTriple remove_pair(const SymbolTable& tab, const AdmissibleTriple& t, GlId rho,
                             std::int64_t a_minus, std::int64_t a) {
    const auto& line = t.jord.line(rho);
    if (line.empty()) fail(errc::invalid, "remove_pair on a line with no blocks");
    if (!line.count(a_minus) || !line.count(a))
        fail(errc::invalid, "remove_pair: blocks absent");
    auto below = neighbor_below(t, rho, a);
    if (!below || *below != a_minus)
        fail(errc::invalid, "remove_pair: blocks are not adjacent");
    if (eps_pair(tab, t, rho, a_minus, a) != 1)
        fail(errc::invalid, "remove_pair: pair quotient is not +1");

    AdmissibleTriple out = t;
    auto& l = out.jord.blocks.at(rho);
    l.erase(a_minus);
    l.erase(a);
    out.eps.val.erase({rho, a_minus});
    out.eps.val.erase({rho, a});
    if (l.empty()) out.jord.blocks.erase(rho);
    normalize_anchor(tab, out, rho);
    return out;
}

AdmissibleTriple deform_down(const SymbolTable& tab, const AdmissibleTriple& t, GlId rho,
                             std::int64_t a, std::int64_t k) {
    if (!t.jord.contains(rho, a))
        fail(errc::invalid, "deform_down: block " + block_str(tab, rho, a) + " absent");
    if (a < 3) fail(errc::invalid, "deform_down requires a >= 3");
    if (k < 1) fail(errc::invalid, "deform_down requires k >= 1");
    std::int64_t target = a - 2 * k;
    std::int64_t floor = tab.gl(rho).parity == Parity::Odd ? 1 : 2;
    if (target < floor)
        fail(errc::invalid, "deform_down target " + std::to_string(target) + " below floor");
    for (std::int64_t b : t.jord.line(rho))
        if (target <= b && b <= a - 2)
            fail(errc::invalid,
                 "deform_down gap condition violated by " + block_str(tab, rho, b));

    AdmissibleTriple out = t;
    auto& line = out.jord.blocks.at(rho);
    line.erase(a);
    line.insert(target);
    int v = out.eps.val.at({rho, a});
    out.eps.val.erase({rho, a});
    out.eps.val[{rho, target}] = v;
    normalize_anchor(tab, out, rho);
    return out;
}

AdmissibleTriple deform_up(const SymbolTable& tab, const AdmissibleTriple& t, GlId rho,
                           std::int64_t a_low, std::int64_t a) {
    if (!t.jord.contains(rho, a_low))
        fail(errc::invalid, "deform_up: block " + block_str(tab, rho, a_low) + " absent");
    if (a <= a_low || (a - a_low) % 2 != 0)
        fail(errc::invalid, "deform_up requires a > a_low of the same parity");
    for (std::int64_t b : t.jord.line(rho))
        if (a_low < b && b <= a)
            fail(errc::invalid, "deform_up gap condition violated by " + block_str(tab, rho, b));

    AdmissibleTriple out = t;
    auto& line = out.jord.blocks.at(rho);
    line.erase(a_low);
    line.insert(a);
    int v = out.eps.val.at({rho, a_low});
    out.eps.val.erase({rho, a_low});
    out.eps.val[{rho, a}] = v;
    normalize_anchor(tab, out, rho);
    return out;
}

std::vector<std::string> validate_triple(const SymbolTable& tab, const AdmissibleTriple& t) {
    std::vector<std::string> out;
    if (t.cusp >= tab.classical_count()) {
        out.push_back("unknown cuspidal base");
        return out;
    }
    for (const auto& [rho, line] : t.jord.blocks) {
        if (!tab.gl(rho).selfdual) {
            out.push_back("jordan line on non-selfdual symbol " + tab.gl(rho).id);
            continue;
        }
        for (std::int64_t a : line) {
            if (a <= 0) out.push_back("nonpositive block on " + tab.gl(rho).id);
            else if (!tab.j1_satisfied(rho, a))
                out.push_back("block " + block_str(tab, rho, a) + " violates (J1)");
        }
        bool have_singletons = singletons_defined(tab, t, rho);
        for (std::int64_t a : line) {
            if (!t.eps.val.count({rho, a}))
                out.push_back((have_singletons ? "even block missing required singleton: "
                                               : "block missing relative sign: ") +
                              block_str(tab, rho, a));
        }
        if (!have_singletons && !line.empty()) {
            std::int64_t anchor = *line.rbegin();
            auto it = t.eps.val.find({rho, anchor});
            if (it != t.eps.val.end() && it->second != 1)
                out.push_back("relative line not anchored at max: " + tab.gl(rho).id);
        }
    }
    for (const auto& [key, v] : t.eps.val) {
        if (v != 1 && v != -1) out.push_back("epsilon value out of range");
        if (!t.jord.contains(key.first, key.second))
            out.push_back("epsilon entry on absent block " +
                          block_str(tab, key.first, key.second));
    }
    return out;
}

}  // namespace tempera
