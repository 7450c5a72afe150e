#pragma once

#include <string>

#include <json.hpp>

#include "eternalbar/algebra.hpp"
#include "eternalbar/filtered_complex.hpp"
#include "eternalbar/persistence.hpp"
#include "eternalbar/torus.hpp"

namespace eternalbar::io {

using nlohmann::json;

// Parses a file, rethrowing parse errors as MalformedInput with the byte
// position of the failure.
json load_json_file(const std::string& path);

json scalar_to_json(const NovikovScalar& s);
NovikovScalar scalar_from_json(const json& j);

// {"generators":[{"id":..,"action":..,"hclass":..,"grading":..}],
//  "boundary":{"y":[["x","0"],...]}}; a repeated target accumulates monomials.
FilteredComplex complex_from_json(const json& j);
json complex_to_json(const FilteredComplex& c);

// {"generators":[{"id":..,"birth":..}],"relations":[{"level":..,"support":[..]}]}
Presentation presentation_from_json(const json& j);
json presentation_to_json(const Presentation& p);

// {"bars":[{"birth":"-inf","death":"inf"},...]}
Barcode barcode_from_json(const json& j);
json barcode_to_json(const Barcode& b);

// {"labels":[..],"identity":..,"compose":[[g,h,gh],..],"inverse":{g:gi},
//  "modules":{label:barcode},"unit":[indices] (or one index),
//  "unit_overrides":{label:[indices]},"products":[{g,h,in1,in2,out},..]}
// strict additionally enforces the product shift rule and unitality.
PersistenceAlgebra algebra_from_json(const json& j, bool strict);
json algebra_to_json(const PersistenceAlgebra& a);

// CLI grammar: "linear:a1,...,an" | "pl:<file>" | "samples:<file>".
// pl files: {"dimension":n,"vertices":[{"dir":[..],"value":..}],"cells":[[..]]}
// samples files: CSV; optional "resolution,<r>" and "lipschitz,<L>" header
// rows, then rows of n direction components and a value.
SphereHamiltonian ham_from_spec(const std::string& spec);

// Classes separated by ';', components by ','; "a..b" expands an integer
// range for the 1-dimensional case.
std::vector<LatticeClass> classes_from_spec(const std::string& spec);
LatticeClass class_from_spec(const std::string& spec);

} // namespace eternalbar::io
