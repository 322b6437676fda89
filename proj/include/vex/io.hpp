#pragma once

#include <json.hpp>
#include <ostream>
#include <string>

#include "vex/fields.hpp"
#include "vex/interpolation.hpp"
#include "vex/radial_examples.hpp"
#include "vex/spaces.hpp"

namespace vex {

// Insertion-ordered JSON keeps report serialization deterministic.
using Json = nlohmann::ordered_json;

// ---- configuration parsing (schemas shipped under schemas/) ---------------

Domain domain_from_json(const Json& j);
// Builds the grid, honoring {"representation": "lattice" | "radial"}.
GridPtr grid_from_json(const Json& j);
ExponentFamily exponent_from_json(const Json& j);
FieldFamily field_from_json(const Json& j);

// ---- result serialization --------------------------------------------------

Json to_json(const NormResult& r);
Json to_json(const RatioStats& s);
Json to_json(const LevelScan& s, bool include_scan = true);
Json to_json(const KProfile& p, bool include_profile = true);

// ---- CSV exports -----------------------------------------------------------

void write_field_csv(std::ostream& os, const ScalarField& f);
void write_level_scan_csv(std::ostream& os, const LevelScan& s);
void write_kprofile_csv(std::ostream& os, const KProfile& p);
void write_solution_csv(std::ostream& os, const RadialSolution& sol);

}  // namespace vex
