#include "symbols.hpp"

namespace tempera {

const std::set<std::int64_t> SymbolTable::empty_set_{};

GlId SymbolTable::add_gl(GlSymbol s) {
    if (s.id.empty()) fail(errc::invalid, "GL symbol id must be nonempty");
    if (gl_by_name_.count(s.id)) fail(errc::invalid, "duplicate GL symbol id: " + s.id);
    if (s.dim && *s.dim <= 0) fail(errc::invalid, "GL symbol dim must be positive");
    GlId id = static_cast<GlId>(gl_.size());
    gl_by_name_.emplace(s.id, id);
    gl_.push_back(std::move(s));
    return id;
}

ClId SymbolTable::add_classical(ClSymbol s) {
    if (s.id.empty()) fail(errc::invalid, "classical symbol id must be nonempty");
    if (cl_by_name_.count(s.id)) fail(errc::invalid, "duplicate classical symbol id: " + s.id);
    for (const auto& [rho, blocks] : s.jord_cusp) {
        const GlSymbol& r = gl(rho);
        if (!r.selfdual)
            fail(errc::invalid, "jord_cusp key " + r.id + " is not selfdual");
        if (blocks.empty())
            fail(errc::invalid, "jord_cusp entry for " + r.id + " is empty; omit the key instead");
        for (std::int64_t a : blocks) {
            if (a <= 0) fail(errc::invalid, "jord_cusp blocks must be positive");
            if (!j1_satisfied(rho, a))
                fail(errc::invalid, "block " + std::to_string(a) + " violates (J1) parity of " + r.id);
        }
    }
    ClId id = static_cast<ClId>(cl_.size());
    cl_by_name_.emplace(s.id, id);
    cl_.push_back(std::move(s));
    return id;
}

void SymbolTable::declare_dual_pair(GlId a, GlId b) {
    if (a == b) fail(errc::invalid, "dual pair must join two distinct symbols");
    if (gl_.at(a).selfdual || gl_.at(b).selfdual)
        fail(errc::invalid, "dual pairs are only for non-selfdual symbols");
    if (gl_.at(a).dual_partner || gl_.at(b).dual_partner)
        fail(errc::invalid, "dual partner already declared");
    gl_.at(a).dual_partner = b;
    gl_.at(b).dual_partner = a;
}

std::optional<GlId> SymbolTable::find_gl(const std::string& id) const {
    auto it = gl_by_name_.find(id);
    if (it == gl_by_name_.end()) return std::nullopt;
    return it->second;
}

std::optional<ClId> SymbolTable::find_classical(const std::string& id) const {
    auto it = cl_by_name_.find(id);
    if (it == cl_by_name_.end()) return std::nullopt;
    return it->second;
}

GlId SymbolTable::require_gl(const std::string& id) const {
    auto r = find_gl(id);
    if (!r) fail(errc::invalid, "unknown GL symbol: " + id);
    return *r;
}

ClId SymbolTable::require_classical(const std::string& id) const {
    auto r = find_classical(id);
    if (!r) fail(errc::invalid, "unknown classical symbol: " + id);
    return *r;
}

GlId SymbolTable::dual_of(GlId rho) const {
    const GlSymbol& r = gl(rho);
    if (r.selfdual) return rho;
    if (!r.dual_partner) fail(errc::domain, "dual symbol unknown for " + r.id);
    return *r.dual_partner;
}

void SymbolTable::require_selfdual(GlId rho) const {
    if (!gl(rho).selfdual)
        fail(errc::domain, "parity undefined for non-selfdual symbol " + gl(rho).id);
}

bool SymbolTable::j1_satisfied(GlId rho, std::int64_t a) const {
    require_selfdual(rho);
    if (a <= 0) fail(errc::invalid, "Jordan block size must be positive");
    bool even = (a % 2 == 0);
    return even == (gl(rho).parity == Parity::Even);
}

std::int64_t SymbolTable::a_max(ClId pc, GlId rho) const {
    require_selfdual(rho);
    const auto& jc = classical(pc).jord_cusp;
    auto it = jc.find(rho);
    if (it != jc.end() && !it->second.empty()) return *it->second.rbegin();
    return gl(rho).parity == Parity::Even ? 0 : -1;
}

HalfInt SymbolTable::cuspidal_reducibility_exponent(ClId pc, GlId rho) const {
    return HalfInt(1 + a_max(pc, rho));
}

const std::set<std::int64_t>& SymbolTable::jord_cusp(ClId pc, GlId rho) const {
    const auto& jc = classical(pc).jord_cusp;
    auto it = jc.find(rho);
    return it == jc.end() ? empty_set_ : it->second;
}

}  // namespace tempera
