#pragma once

#include <iosfwd>
#include <string>

#include "specdec/catalog.hpp"

namespace specdec {

/// Parses a fractal definition file (see docs/fractal-format.md). Throws
/// ConfigError with the offending line on malformed input; the returned
/// structure is validated.
CatalogEntry parse_definition(std::istream& in, const std::string& source_name);
CatalogEntry load_definition_file(const std::string& path);

/// Serializes an entry in the definition-file format (round-trips through
/// parse_definition).
std::string write_definition(const CatalogEntry& entry);

/// Catalog name or path to a definition file.
CatalogEntry resolve_fractal(const std::string& name_or_path);

}  // namespace specdec
