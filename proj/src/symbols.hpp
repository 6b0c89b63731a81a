#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"
#include "halfint.hpp"

namespace tempera {

// Interned handles into a SymbolTable. Ordering follows catalog order, which
// is deterministic for a fixed catalog file.
using GlId = std::uint32_t;
using ClId = std::uint32_t;

enum class Parity { Even, Odd };

// Formal cuspidal symbol of a general linear group. parity records which
// block sizes (J1) allows and is meaningful only for selfdual symbols.
struct GlSymbol {
    std::string id;
    bool selfdual = true;
    Parity parity = Parity::Odd;
    std::optional<std::int64_t> dim;
    std::optional<GlId> dual_partner;  // declared partner for non-selfdual symbols
};

// Formal cuspidal symbol of a classical group together with the Jordan data
// of the basic assumption. jord_cusp keys are selfdual GL symbols.
struct ClSymbol {
    std::string id;
    std::map<GlId, std::set<std::int64_t>> jord_cusp;
    std::optional<bool> generic;
};

class SymbolTable {
  public:
    GlId add_gl(GlSymbol s);
    ClId add_classical(ClSymbol s);
    void declare_dual_pair(GlId a, GlId b);

    const GlSymbol& gl(GlId id) const { return gl_.at(id); }
    const ClSymbol& classical(ClId id) const { return cl_.at(id); }
    std::size_t gl_count() const { return gl_.size(); }
    std::size_t classical_count() const { return cl_.size(); }

    std::optional<GlId> find_gl(const std::string& id) const;
    std::optional<ClId> find_classical(const std::string& id) const;
    GlId require_gl(const std::string& id) const;
    ClId require_classical(const std::string& id) const;

    // Dual symbol under the check operation; identity on selfdual symbols,
    // declared partner otherwise.
    GlId dual_of(GlId rho) const;

    // (J1): even blocks when the symbol has even parity, odd blocks otherwise.
    bool j1_satisfied(GlId rho, std::int64_t a) const;

    // The (BA) case table for a_{pi_c,max,rho}.
    std::int64_t a_max(ClId pc, GlId rho) const;

    // (1 + a_max)/2, the unique nonnegative reducibility exponent under (BA).
    HalfInt cuspidal_reducibility_exponent(ClId pc, GlId rho) const;

    const std::set<std::int64_t>& jord_cusp(ClId pc, GlId rho) const;

  private:
    void require_selfdual(GlId rho) const;

    std::vector<GlSymbol> gl_;
    std::vector<ClSymbol> cl_;
    std::map<std::string, GlId> gl_by_name_;
    std::map<std::string, ClId> cl_by_name_;
    static const std::set<std::int64_t> empty_set_;
};

}  // namespace tempera
