#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specdec/polynomial.hpp"
#include "specdec/structure.hpp"

namespace specdec {

/// Regression data pinned for a catalog entry; exact where hand-derivable,
/// decimal approximations elsewhere.
struct ExpectedBlock {
  std::optional<Polynomial> r_num;
  std::optional<Polynomial> r_den;  // canonical: monic
  std::optional<Rational> c_delta;
  std::vector<double> exceptional;  // sorted approximations, checked to 1e-8
  std::optional<std::string> classification;  // "INTERVAL" or "TOTALLY_DISCONNECTED"
  std::optional<bool> has_gaps;
};

struct CatalogEntry {
  FractalStructure structure;
  ExpectedBlock expected;
};

/// Built-in structures: unit-interval, sierpinski-gasket, vicsek,
/// tree-3branch.
const std::vector<CatalogEntry>& catalog();

/// nullptr when the name is unknown.
const CatalogEntry* catalog_find(const std::string& name);

std::vector<std::string> catalog_names();

}  // namespace specdec
