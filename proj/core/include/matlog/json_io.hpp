#pragma once

#include <json.hpp>

#include "matlog/calculus.hpp"
#include "matlog/kripke.hpp"
#include "matlog/lindenbaum.hpp"

namespace matlog {

using nlohmann::json;

// Formula wire format: {"var":"p"} | {"const":"⊥"} | {"app":{"op":"→","args":[...]}}
// with {"metavar":"α"} for rule material.
json formula_to_json(const formula& f);
formula formula_from_json(const json& j, const signature& sig);

// Substitution: {"p": <formula>, ...}
json substitution_to_json(const substitution& s);
substitution substitution_from_json(const json& j, const signature& sig);

// Matrix: {"elements":[...], "designated":[...],
//          "ops":{"→":{"arity":2,"table":[[...]]}}, "consts":{"⊤":"1"}}
json matrix_to_json(const matrix& m);
matrix matrix_from_json(const json& j);

// Proof: {"premises":[...], "steps":[{"formula":..., "by":"Premise"|
//        {"rule":"b-iii","from":[0,1],"inst":{...}}}]}
json derivation_to_json(const derivation& d);
derivation derivation_from_json(const json& j, const signature& sig);

// Confirmation node: {"premises":[...], "goal":..., "by":{"type":1,
//   "derivation":...} | {"type":2,"hyperrule":"c-i","children":[...]} |
//   {"type":3,"children":[...],"derivation":...}}
json confirmation_to_json(const confirmation& c);
confirmation confirmation_from_json(const json& j, const signature& sig);

// Kripke model: {"worlds":n, "order":[[i,j]...], "valuation":{"p":[w...]}}
json model_to_json(const kripke_model& m);
kripke_model model_from_json(const json& j);

json valuation_to_json(const valuation& v);
valuation valuation_from_json(const json& j);

json report_to_json(const property_report& r);

}  // namespace matlog
