#pragma once

#include <nlohmann/json.hpp>

#include <string>

#include "ibody/intersection_body.hpp"

namespace ibody {

using Json = nlohmann::ordered_json;

// ---- Polytope input --------------------------------------------------------
// {"dimension": d, "vertices": [["1", "-2/3", ...], ...], "name": optional}.
// Coordinates are exact rational strings (or JSON integers); floats are
// rejected so exactness can never silently erode.
VPolytope polytope_from_json(const Json& doc);
VPolytope read_polytope_file(const std::string& path);

// FNV-1a 64-bit over the canonical vertex text; stable content fingerprint.
std::string polytope_hash(const VPolytope& p);

// ---- Result output ---------------------------------------------------------
// Serializes the full computation: arrangement size, every chamber with its
// witness/rays/piece polynomials, the degree histogram, and the bound report.
// Deterministic: chamber order is canonical and keys are emitted in insertion
// order, so identical input + mode yields identical bytes.
Json result_to_json(const IntersectionBody& body);

std::string mode_to_string(NormalizationMode mode);
NormalizationMode mode_from_string(const std::string& text);

// Re-validates a ResultFile document structurally: parses every polynomial,
// rechecks derivable facts (normalization, homogeneity, degrees, histogram,
// bounds, canonical chamber order, antipodal pairing). Returns the name of
// the first violated invariant, or an empty string when the file is
// consistent.
std::string validate_result_json(const Json& doc);

// ---- Mesh / graph text formats --------------------------------------------
// OBJ: "v x y z" decimal lines (12 significant digits) and 1-based "f i j k"
// faces, grouped per chamber as "g chamber_<id>".
std::string mesh_to_obj(const BoundaryMesh& mesh);

// DOT: one node per chamber labeled by its boundary degree, one undirected
// edge per wall between adjacent chambers.
std::string chambers_to_dot(
    const std::vector<ChamberPiece>& pieces,
    const std::vector<std::pair<std::size_t, std::size_t>>& adjacency);

} // namespace ibody
