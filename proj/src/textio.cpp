#include "textio.hpp"

#include <map>
#include <sstream>

namespace tempera {

namespace {

std::string coeff_prefix(Coeff c) {
    if (c == 1) return "";
    return std::to_string(c) + " ";
}

// Resolves relative sign entries {a, b, rel} on one line into per-block
// values; absolute entries fix components outright.
struct LineSigns {
    std::map<std::int64_t, int> abs;                                  // a -> sign
    std::vector<std::tuple<std::int64_t, std::int64_t, int>> rels;    // (a, b, rel)
};

std::map<std::int64_t, int> resolve_line(const std::set<std::int64_t>& blocks,
                                         const LineSigns& in, bool absolute_ok,
                                         const std::string& line_name,
                                         std::vector<std::string>& violations) {
    std::map<std::int64_t, int> out;
    for (const auto& [a, s] : in.abs) {
        if (!absolute_ok) {
            violations.push_back("singleton eps on odd block with cuspidal blocks: " + line_name);
            continue;
        }
        out[a] = s;
    }
    // Propagate relative constraints until stable.
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [a, b, r] : in.rels) {
            auto ia = out.find(a), ib = out.find(b);
            if (ia != out.end() && ib != out.end()) {
                if (ia->second * ib->second != r) {
                    violations.push_back("inconsistent relative sign data on " + line_name);
                    return out;
                }
            } else if (ia != out.end()) {
                out[b] = ia->second * r;
                changed = true;
            } else if (ib != out.end()) {
                out[a] = ib->second * r;
                changed = true;
            }
        }
        if (!changed && out.empty() && !blocks.empty() && !in.rels.empty()) {
            // no absolute anchor: seed the largest mentioned block with +1
            out[std::get<1>(in.rels.back())] = 1;
            changed = true;
        }
    }
    if (!absolute_ok) {
        // Relative lines: anchor unconstrained blocks and normalize at max.
        for (std::int64_t a : blocks)
            if (!out.count(a)) out[a] = 1;
        if (!blocks.empty()) {
            int anchor = out.at(*blocks.rbegin());
            if (anchor != 1)
                for (auto& [a, s] : out) s *= anchor;
        }
    }
    return out;
}

}  // namespace

std::string render(const SymbolTable& tab, const Segment& s) {
    return "d(" + tab.gl(s.rho).id + ";" + s.lo.str() + ".." + s.hi.str() + ")";
}

std::string render(const SymbolTable& tab, const Multisegment& m) {
    if (m.is_one()) return "1";
    std::string out;
    for (std::size_t i = 0; i < m.segs.size(); ++i) {
        if (i) out += "*";
        out += render(tab, m.segs[i]);
    }
    return out;
}

std::string render(const SymbolTable& tab, const ClassicalTerm& t) {
    std::string out;
    for (const Multisegment& m : t.stack) out += render(tab, m) + " |x ";
    if (t.core == ClassicalTerm::Core::Cusp) {
        out += tab.classical(t.base).id;
    } else {
        out += "tau[" + std::string(t.tau_sign > 0 ? "+1" : "-1") + "](" + tab.gl(t.tau_rho).id +
               ";" + tab.classical(t.base).id + ")";
    }
    return out;
}

std::string render(const SymbolTable& tab, const RElement& e) {
    if (e.empty()) return "0\n";
    std::string out;
    for (const auto& [m, c] : e) out += coeff_prefix(c) + render(tab, m) + "\n";
    return out;
}

std::string render(const SymbolTable& tab, const RTensor& e) {
    if (e.empty()) return "0\n";
    std::string out;
    for (const auto& [k, c] : e)
        out += coeff_prefix(c) + render(tab, k.first) + " (x) " + render(tab, k.second) + "\n";
    return out;
}

std::string render(const SymbolTable& tab, const RSElement& e) {
    if (e.empty()) return "0\n";
    std::string out;
    for (const auto& [k, c] : e)
        out += coeff_prefix(c) + render(tab, k.first) + " (x) " + render(tab, k.second) + "\n";
    return out;
}

json to_json(const SymbolTable& tab, const Multisegment& m) {
    json segs = json::array();
    for (const Segment& s : m.segs)
        segs.push_back({{"rho", tab.gl(s.rho).id}, {"lo", s.lo.str()}, {"hi", s.hi.str()}});
    return segs;
}

json to_json(const SymbolTable& tab, const RTensor& e) {
    json out = json::array();
    for (const auto& [k, c] : e)
        out.push_back({{"coeff", c},
                       {"left", to_json(tab, k.first)},
                       {"right", to_json(tab, k.second)}});
    return out;
}

json to_json(const SymbolTable& tab, const RSElement& e) {
    json out = json::array();
    for (const auto& [k, c] : e) {
        json slot;
        json stack = json::array();
        for (const Multisegment& m : k.second.stack) stack.push_back(to_json(tab, m));
        slot["stack"] = stack;
        if (k.second.core == ClassicalTerm::Core::Cusp) {
            slot["core"] = {{"cusp", tab.classical(k.second.base).id}};
        } else {
            slot["core"] = {{"tau", tab.gl(k.second.tau_rho).id},
                            {"sign", k.second.tau_sign},
                            {"cusp", tab.classical(k.second.base).id}};
        }
        out.push_back({{"coeff", c}, {"gl", to_json(tab, k.first)}, {"slot", slot}});
    }
    return out;
}

HalfInt parse_half(const std::string& s) {
    std::size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return HalfInt::whole(std::stoll(s));
        }
        if (s.substr(slash + 1) != "2") fail(errc::parse, "half-integers use denominator 2");
        return HalfInt(std::stoll(s.substr(0, slash)));
    } catch (const std::invalid_argument&) {
        fail(errc::parse, "bad half-integer: " + s);
    } catch (const std::out_of_range&) {
        fail(errc::parse, "half-integer out of range: " + s);
    }
}

Segment parse_segment(const SymbolTable& tab, const std::string& s) {
    if (s.size() < 4 || s.substr(0, 2) != "d(" || s.back() != ')')
        fail(errc::parse, "segment syntax is d(rho;lo..hi), got: " + s);
    std::string body = s.substr(2, s.size() - 3);
    std::size_t semi = body.find(';');
    if (semi == std::string::npos) fail(errc::parse, "segment missing ';': " + s);
    std::string id = body.substr(0, semi);
    std::string range = body.substr(semi + 1);
    std::size_t dots = range.find("..");
    if (dots == std::string::npos) fail(errc::parse, "segment missing '..': " + s);
    GlId rho = tab.require_gl(id);
    HalfInt lo = parse_half(range.substr(0, dots));
    HalfInt hi = parse_half(range.substr(dots + 2));
    auto seg = segment_opt(rho, lo, hi);
    if (!seg) fail(errc::parse, "empty segment range: " + s);
    return *seg;
}

Multisegment parse_multisegment(const SymbolTable& tab, const std::string& s) {
    if (s == "1") return Multisegment::one();
    std::vector<Segment> segs;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t star = s.find('*', pos);
        std::string piece =
            star == std::string::npos ? s.substr(pos) : s.substr(pos, star - pos);
        segs.push_back(parse_segment(tab, piece));
        if (star == std::string::npos) break;
        pos = star + 1;
    }
    if (segs.empty()) fail(errc::parse, "empty multisegment expression");
    return Multisegment(std::move(segs));
}

SymbolTable catalog_from_json(const json& j) {
    if (!j.is_object()) fail(errc::parse, "catalog must be a JSON object");
    SymbolTable tab;
    for (const json& g : j.value("gl", json::array())) {
        GlSymbol s;
        s.id = g.at("id").get<std::string>();
        s.selfdual = g.value("selfdual", true);
        std::string parity = g.value("parity", "odd");
        if (parity != "even" && parity != "odd")
            fail(errc::parse, "parity must be \"even\" or \"odd\"");
        s.parity = parity == "even" ? Parity::Even : Parity::Odd;
        if (g.contains("dim")) s.dim = g.at("dim").get<std::int64_t>();
        tab.add_gl(std::move(s));
    }
    for (const json& c : j.value("classical", json::array())) {
        ClSymbol s;
        s.id = c.at("id").get<std::string>();
        json jord = c.value("jord", json::object());
        for (const auto& [rho_id, blocks] : jord.items()) {
            auto& set = s.jord_cusp[tab.require_gl(rho_id)];
            for (const json& a : blocks) set.insert(a.get<std::int64_t>());
        }
        if (c.contains("generic")) s.generic = c.at("generic").get<bool>();
        tab.add_classical(std::move(s));
    }
    for (const json& pair : j.value("dual_pairs", json::array())) {
        if (!pair.is_array() || pair.size() != 2)
            fail(errc::parse, "dual_pairs entries are two-element arrays");
        tab.declare_dual_pair(tab.require_gl(pair[0].get<std::string>()),
                              tab.require_gl(pair[1].get<std::string>()));
    }
    return tab;
}

AdmissibleTriple triple_from_json(const SymbolTable& tab, const json& j,
                                  std::vector<std::string>& violations) {
    AdmissibleTriple t;
    t.cusp = tab.require_classical(j.at("cusp").get<std::string>());
    for (const json& b : j.value("jord", json::array())) {
        GlId rho = tab.require_gl(b.at("rho").get<std::string>());
        std::int64_t a = b.at("a").get<std::int64_t>();
        if (!t.jord.blocks[rho].insert(a).second)
            violations.push_back("duplicate jordan block");
    }
    std::map<GlId, LineSigns> lines;
    for (const json& e : j.value("eps", json::array())) {
        GlId rho = tab.require_gl(e.at("rho").get<std::string>());
        if (e.contains("sign")) {
            lines[rho].abs[e.at("a").get<std::int64_t>()] = e.at("sign").get<int>();
        } else {
            lines[rho].rels.emplace_back(e.at("a").get<std::int64_t>(),
                                         e.at("b").get<std::int64_t>(),
                                         e.at("rel").get<int>());
        }
    }
    for (const auto& [rho, ls] : lines) {
        bool absolute_ok = singletons_defined(tab, t, rho);
        auto vals = resolve_line(t.jord.line(rho), ls, absolute_ok, tab.gl(rho).id, violations);
        for (const auto& [a, s] : vals) t.eps.val[{rho, a}] = s;
    }
    // lines with blocks but no sign data at all: anchor everything at +1
    for (const auto& [rho, line] : t.jord.blocks)
        for (std::int64_t a : line)
            if (!t.eps.val.count({rho, a})) {
                if (singletons_defined(tab, t, rho))
                    violations.push_back("even block missing required singleton: " +
                                         tab.gl(rho).id + "," + std::to_string(a));
                t.eps.val[{rho, a}] = 1;
            }
    return t;
}

json triple_to_json(const SymbolTable& tab, const AdmissibleTriple& t) {
    json out;
    out["kind"] = "admissible";
    out["cusp"] = tab.classical(t.cusp).id;
    json jord = json::array();
    json eps = json::array();
    for (const auto& [rho, line] : t.jord.blocks) {
        for (std::int64_t a : line) jord.push_back({{"rho", tab.gl(rho).id}, {"a", a}});
        bool absolute = singletons_defined(tab, t, rho);
        if (absolute) {
            for (std::int64_t a : line)
                eps.push_back({{"rho", tab.gl(rho).id},
                               {"a", a},
                               {"sign", t.eps.val.at({rho, a})}});
        } else {
            for (auto it = line.begin(); std::next(it) != line.end(); ++it)
                eps.push_back({{"rho", tab.gl(rho).id},
                               {"a", *it},
                               {"b", *std::next(it)},
                               {"rel", eps_pair(tab, t, rho, *it, *std::next(it))}});
        }
    }
    out["jord"] = jord;
    out["eps"] = eps;
    return out;
}

TemperedTriple tempered_triple_from_json(const SymbolTable& tab, const json& j,
                                         std::vector<std::string>& violations) {
    TemperedTriple t;
    t.cusp = tab.require_classical(j.at("cusp").get<std::string>());
    for (const json& b : j.value("jord", json::array())) {
        GlId rho = tab.require_gl(b.at("rho").get<std::string>());
        std::int64_t a = b.at("a").get<std::int64_t>();
        t.jord[DeltaSym{rho, a}] += b.value("mult", std::int64_t(1));
    }
    std::map<GlId, LineSigns> lines;
    for (const json& e : j.value("eps", json::array())) {
        GlId rho = tab.require_gl(e.at("rho").get<std::string>());
        if (e.contains("rho2") && tab.require_gl(e.at("rho2").get<std::string>()) != rho) {
            violations.push_back("pair epsilon across distinct lines");
            continue;
        }
        if (e.contains("sign")) {
            lines[rho].abs[e.at("a").get<std::int64_t>()] = e.at("sign").get<int>();
        } else {
            lines[rho].rels.emplace_back(e.at("a").get<std::int64_t>(),
                                         e.at("b").get<std::int64_t>(),
                                         e.at("rel").get<int>());
        }
    }
    for (const auto& [rho, ls] : lines) {
        if (!tab.gl(rho).selfdual) {
            violations.push_back("epsilon data on non-selfdual line " + tab.gl(rho).id);
            continue;
        }
        // Absolute signs are admissible on even-multiplicity members and on
        // singleton-defined odd members; pair data covers the rest.
        std::set<std::int64_t> odd_blocks;
        for (const auto& [d, m] : t.jord)
            if (d.rho == rho && m % 2 != 0) odd_blocks.insert(d.a);
        bool absolute_ok =
            tab.gl(rho).parity == Parity::Even || tab.jord_cusp(t.cusp, rho).empty();
        LineSigns split = ls;
        std::map<std::int64_t, int> even_signs;
        if (!absolute_ok) {
            // even-multiplicity members still carry designated absolute signs
            split.abs.clear();
            for (const auto& [a, s] : ls.abs) {
                auto it = t.jord.find(DeltaSym{rho, a});
                bool even_mult = it != t.jord.end() && it->second % 2 == 0;
                if (even_mult)
                    even_signs[a] = s;
                else
                    split.abs[a] = s;
            }
        }
        auto vals = resolve_line(odd_blocks, split, absolute_ok, tab.gl(rho).id, violations);
        for (const auto& [a, s] : vals) t.eps[DeltaSym{rho, a}] = s;
        for (const auto& [a, s] : even_signs) t.eps[DeltaSym{rho, a}] = s;
    }
    // even-multiplicity (J1) members default check happens in validation
    return t;
}

json tempered_triple_to_json(const SymbolTable& tab, const TemperedTriple& t) {
    json out;
    out["kind"] = "tempered";
    out["cusp"] = tab.classical(t.cusp).id;
    json jord = json::array();
    for (const auto& [d, m] : t.jord)
        jord.push_back({{"rho", tab.gl(d.rho).id}, {"a", d.a}, {"mult", m}});
    json eps = json::array();
    std::map<GlId, std::set<std::int64_t>> rel_lines;
    for (const auto& [d, s] : t.eps) {
        bool absolute = tab.gl(d.rho).parity == Parity::Even ||
                        tab.jord_cusp(t.cusp, d.rho).empty() ||
                        (t.jord.count(d) && t.jord.at(d) % 2 == 0);
        if (absolute)
            eps.push_back({{"rho", tab.gl(d.rho).id}, {"a", d.a}, {"sign", s}});
        else
            rel_lines[d.rho].insert(d.a);
    }
    for (const auto& [rho, blocks] : rel_lines)
        for (auto it = blocks.begin(); std::next(it) != blocks.end(); ++it) {
            int rel = t.eps.at(DeltaSym{rho, *it}) * t.eps.at(DeltaSym{rho, *std::next(it)});
            eps.push_back(
                {{"rho", tab.gl(rho).id}, {"a", *it}, {"b", *std::next(it)}, {"rel", rel}});
        }
    out["jord"] = jord;
    out["eps"] = eps;
    return out;
}

ConstructionChain chain_from_json(const SymbolTable& tab, const json& j) {
    ConstructionChain c;
    c.base = tab.require_classical(j.at("base").get<std::string>());
    for (const json& s : j.value("steps", json::array())) {
        std::string op = s.at("op").get<std::string>();
        if (op == "add_pair") {
            AddPairStep st;
            st.rho = tab.require_gl(s.at("rho").get<std::string>());
            st.a_minus = s.at("a_minus").get<std::int64_t>();
            st.a = s.at("a").get<std::int64_t>();
            if (s.contains("sign")) st.sign = s.at("sign").get<int>();
            c.steps.push_back(st);
        } else if (op == "deform_up") {
            DeformUpStep st;
            st.rho = tab.require_gl(s.at("rho").get<std::string>());
            st.a_low = s.at("a_low").get<std::int64_t>();
            st.a = s.at("a").get<std::int64_t>();
            c.steps.push_back(st);
        } else {
            fail(errc::parse, "unknown step op: " + op);
        }
    }
    return c;
}

json chain_to_json(const SymbolTable& tab, const ConstructionChain& c) {
    json out;
    out["base"] = tab.classical(c.base).id;
    json steps = json::array();
    for (const Step& s : c.steps) {
        if (const auto* ap = std::get_if<AddPairStep>(&s)) {
            json e = {{"op", "add_pair"},
                      {"rho", tab.gl(ap->rho).id},
                      {"a_minus", ap->a_minus},
                      {"a", ap->a}};
            if (ap->sign) e["sign"] = *ap->sign;
            steps.push_back(e);
        } else {
            const auto& d = std::get<DeformUpStep>(s);
            steps.push_back({{"op", "deform_up"},
                             {"rho", tab.gl(d.rho).id},
                             {"a_low", d.a_low},
                             {"a", d.a}});
        }
    }
    out["steps"] = steps;
    return out;
}

TemperedParam param_from_json(const SymbolTable& tab, const json& j) {
    TemperedParam p;
    std::vector<std::string> violations;
    p.e_core.core = triple_from_json(tab, j.at("core"), violations);
    if (!violations.empty()) fail(errc::invalid, "invalid core triple: " + violations.front());
    for (const json& d : j.value("deltas", json::array()))
        p.e_core.deltas.push_back(SignedDelta{tab.require_gl(d.at("rho").get<std::string>()),
                                              d.at("b").get<std::int64_t>(),
                                              d.value("sign", 1)});
    for (const json& g : j.value("gammas", json::array()))
        p.gammas.push_back(DeltaSym{tab.require_gl(g.at("rho").get<std::string>()),
                                    g.at("a").get<std::int64_t>()});
    std::sort(p.e_core.deltas.begin(), p.e_core.deltas.end());
    std::sort(p.gammas.begin(), p.gammas.end());
    return p;
}

json param_to_json(const SymbolTable& tab, const TemperedParam& p) {
    json out;
    out["core"] = triple_to_json(tab, p.e_core.core);
    json deltas = json::array();
    for (const SignedDelta& d : p.e_core.deltas)
        deltas.push_back({{"rho", tab.gl(d.rho).id}, {"b", d.b}, {"sign", d.sign}});
    json gammas = json::array();
    for (const DeltaSym& g : p.gammas)
        gammas.push_back({{"rho", tab.gl(g.rho).id}, {"a", g.a}});
    out["deltas"] = deltas;
    out["gammas"] = gammas;
    return out;
}

json parse_json_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(errc::parse, "malformed JSON");
    return j;
}

}  // namespace tempera
