#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "jacquet.hpp"
#include "jordan.hpp"
#include "multiseg.hpp"
#include "symbols.hpp"
#include "tempered.hpp"

namespace tempera {

using nlohmann::json;

std::string render(const SymbolTable& tab, const Segment& s);
std::string render(const SymbolTable& tab, const Multisegment& m);
std::string render(const SymbolTable& tab, const ClassicalTerm& t);
std::string render(const SymbolTable& tab, const RElement& e);
std::string render(const SymbolTable& tab, const RTensor& e);
std::string render(const SymbolTable& tab, const RSElement& e);

json to_json(const SymbolTable& tab, const Multisegment& m);
json to_json(const SymbolTable& tab, const RTensor& e);
json to_json(const SymbolTable& tab, const RSElement& e);

HalfInt parse_half(const std::string& s);
Segment parse_segment(const SymbolTable& tab, const std::string& s);
// `*`-joined segments; "1" is the identity.
Multisegment parse_multisegment(const SymbolTable& tab, const std::string& s);

SymbolTable catalog_from_json(const json& j);

AdmissibleTriple triple_from_json(const SymbolTable& tab, const json& j,
                                  std::vector<std::string>& violations);
json triple_to_json(const SymbolTable& tab, const AdmissibleTriple& t);

TemperedTriple tempered_triple_from_json(const SymbolTable& tab, const json& j,
                                         std::vector<std::string>& violations);
json tempered_triple_to_json(const SymbolTable& tab, const TemperedTriple& t);

ConstructionChain chain_from_json(const SymbolTable& tab, const json& j);
json chain_to_json(const SymbolTable& tab, const ConstructionChain& c);

TemperedParam param_from_json(const SymbolTable& tab, const json& j);
json param_to_json(const SymbolTable& tab, const TemperedParam& p);

json parse_json_text(const std::string& text);

}  // namespace tempera
