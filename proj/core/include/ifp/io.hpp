#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "ifp/boundary.hpp"
#include "ifp/survival.hpp"

namespace ifp {

/// Thrown on malformed input documents; `field` names the offending entry.
struct ParseError : std::invalid_argument {
    ParseError(const std::string& field_, const std::string& what_)
        : std::invalid_argument(what_), field(field_) {}
    std::string field;
};

/// Survival function JSON schema:
///   {"kind": "piecewise_constant", "breakpoints": [...], "values": [...]}
///   {"kind": "empirical",          "breakpoints": [...], "values": [...]}
///   {"kind": "analytic", "family": "constant_barrier"|"linear_barrier",
///    "params": {"a": ..} | {"a": .., "c": ..}}
SurvivalFn survival_from_json(const std::string& text);
std::string survival_to_json(const SurvivalFn& g);

/// Boundary CSV: header "t,b", one row per grid time, "inf"/"-inf"
/// sentinels. The interpolation convention is not part of the CSV; the
/// reader takes it as a parameter.
void boundary_to_csv(const Boundary& b, std::ostream& os);
Boundary boundary_from_csv(std::istream& is,
                           Boundary::Interp interp = Boundary::Interp::mesh_only);

/// JSON mirror carrying the convention and the standard flag.
std::string boundary_to_json(const Boundary& b);
Boundary boundary_from_json(const std::string& text);

}  // namespace ifp
