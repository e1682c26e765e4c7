#pragma once

#include <string>

#include "json.hpp"
#include "rlab/bigraded.hpp"
#include "rlab/connection.hpp"
#include "rlab/filtration.hpp"
#include "rlab/graded_module.hpp"
#include "rlab/matrix.hpp"

namespace rlab {

// All files share one JSON schema family: a top-level "kind" in
// {multifiltration, filtered_map, bigraded_complex, connection,
// graded_module_dump, report} plus "schema_version": 1.  Scalars are
// always the exact string literals, never floats.
using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// {"shape": [rows, cols], "entries": row-major scalar strings}
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json multifiltration_to_json(const MultiFilteredSpace& v);
MultiFilteredSpace multifiltration_from_json(const Json& j);

Json filtered_map_to_json(const FilteredMap& f);
FilteredMap filtered_map_from_json(const Json& j);

Json bigraded_complex_to_json(const BigradedComplex& x);
BigradedComplex bigraded_complex_from_json(const Json& j);

Json connection_to_json(const EquivariantConnection& c);
EquivariantConnection connection_from_json(const Json& j);

Json graded_module_to_json(const GradedModule& m);
GradedModule graded_module_from_json(const Json& j);

// Reads the discriminator after checking the version.
std::string kind_of(const Json& j);

// Skeleton for emitted reports: kind, version, command.
Json report_envelope(const std::string& command);

Json parse_json_text(const std::string& text);  // InputError with position
Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);
// 2-space indent plus trailing newline; emission is deterministic.
std::string dump_json(const Json& j);

}  // namespace rlab
