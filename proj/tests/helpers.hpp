#pragma once

#include "jordan.hpp"
#include "symbols.hpp"

namespace tempera::test {

// Shared fixture: rho (odd, no cuspidal blocks), rhoe (even, none over c0),
// rhoc (odd, cuspidal blocks {1,3} on c1), mu/mud a non-selfdual dual pair.
// c2 gives rhoe the cuspidal blocks {2,4}.
struct World {
    SymbolTable tab;
    GlId rho, rhoe, rhoc, mu, mud;
    ClId c0, c1, c2;
};

inline World make_world() {
    World w;
    w.rho = w.tab.add_gl(GlSymbol{"rho", true, Parity::Odd, std::nullopt, std::nullopt});
    w.rhoe = w.tab.add_gl(GlSymbol{"rhoe", true, Parity::Even, std::nullopt, std::nullopt});
    w.rhoc = w.tab.add_gl(GlSymbol{"rhoc", true, Parity::Odd, std::nullopt, std::nullopt});
    w.mu = w.tab.add_gl(GlSymbol{"mu", false, Parity::Odd, std::nullopt, std::nullopt});
    w.mud = w.tab.add_gl(GlSymbol{"mud", false, Parity::Odd, std::nullopt, std::nullopt});
    w.tab.declare_dual_pair(w.mu, w.mud);
    ClSymbol c0;
    c0.id = "c0";
    c0.generic = true;
    w.c0 = w.tab.add_classical(std::move(c0));
    ClSymbol c1;
    c1.id = "c1";
    c1.jord_cusp[w.rhoc] = {1, 3};
    c1.generic = false;
    w.c1 = w.tab.add_classical(std::move(c1));
    ClSymbol c2;
    c2.id = "c2";
    c2.jord_cusp[w.rhoe] = {2, 4};
    c2.generic = true;
    w.c2 = w.tab.add_classical(std::move(c2));
    return w;
}

}  // namespace tempera::test
