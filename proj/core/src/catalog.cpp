#include "specdec/catalog.hpp"

namespace specdec {

namespace {

Polynomial poly_l(std::initializer_list<long> ascending) {
  std::vector<Rational> c;
  for (long v : ascending) c.emplace_back(v);
  return Polynomial::from_coeffs(std::move(c));
}

std::vector<CatalogEntry> make_catalog() {
  std::vector<CatalogEntry> out;

  {
    CatalogEntry e;
    e.structure.name = "unit-interval";
    e.structure.num_cells = 2;
    e.structure.boundary_size = 2;
    e.structure.v1_size = 3;
    e.structure.v0_embedding = {0, 1};
    e.structure.cell_maps = {{0, 2}, {2, 1}};
    e.expected.r_num = poly_l({0, 4, -2});  // R(z) = 4z - 2z^2
    e.expected.r_den = poly_l({1});
    e.expected.c_delta = Rational(4);
    e.expected.exceptional = {1.0};
    e.expected.classification = "INTERVAL";
    e.expected.has_gaps = false;
    out.push_back(std::move(e));
  }

  {
    CatalogEntry e;
    e.structure.name = "sierpinski-gasket";
    e.structure.num_cells = 3;
    e.structure.boundary_size = 3;
    e.structure.v1_size = 6;
    e.structure.v0_embedding = {0, 1, 2};
    // Midpoints: 3 between corners 0-1, 4 between 0-2, 5 between 1-2.
    e.structure.cell_maps = {{0, 3, 4}, {3, 1, 5}, {4, 5, 2}};
    e.expected.r_num = poly_l({0, 5, -4});  // R(z) = z(5 - 4z)
    e.expected.r_den = poly_l({1});
    e.expected.c_delta = Rational(5);
    e.expected.exceptional = {0.5, 1.25, 1.5};
    e.expected.classification = "TOTALLY_DISCONNECTED";
    e.expected.has_gaps = true;
    out.push_back(std::move(e));
  }

  {
    CatalogEntry e;
    e.structure.name = "vicsek";
    e.structure.num_cells = 5;
    e.structure.boundary_size = 4;
    e.structure.v1_size = 16;
    e.structure.v0_embedding = {0, 1, 2, 3};
    // Corners 0..3; center-cell corners 4..7 (vertex 4+j glued into corner
    // cell j); the remaining two corners of each corner cell are unshared.
    e.structure.cell_maps = {
        {0, 8, 4, 9},     // cell 0
        {10, 1, 11, 5},   // cell 1
        {6, 12, 2, 13},   // cell 2
        {15, 7, 14, 3},   // cell 3
        {4, 5, 6, 7},     // center cell
    };
    // Regression block generated by the pipeline and confirmed by the
    // interpolation oracle; audited: R(0) = 0, c_delta = 15 > N = 5,
    // sigma(D) real with total multiplicity 12, and the factorization
    // R(z) = 3z(2z-1)(6z-5). The irrational pair are the roots of
    // 18z^2 - 21z + 4.
    e.expected.r_num = poly_l({0, 15, -48, 36});
    e.expected.r_den = poly_l({1});
    e.expected.c_delta = Rational(15);
    e.expected.exceptional = {0.23974119786542, 0.5, 0.92692546880125, 4.0 / 3.0};
    e.expected.classification = "TOTALLY_DISCONNECTED";
    e.expected.has_gaps = true;
    out.push_back(std::move(e));
  }

  {
    CatalogEntry e;
    e.structure.name = "tree-3branch";
    e.structure.num_cells = 4;
    e.structure.boundary_size = 3;
    e.structure.v1_size = 9;
    e.structure.v0_embedding = {0, 1, 2};
    // Leaves 0,1,2; central triangle 3,4,5 (vertex 3+j glued into leaf cell
    // j); 6,7,8 are the unshared third corners of the leaf cells.
    e.structure.cell_maps = {
        {0, 6, 3},  // leaf cell 0
        {7, 1, 4},  // leaf cell 1
        {8, 5, 2},  // leaf cell 2
        {3, 4, 5},  // center cell
    };
    // Pipeline-generated, oracle-confirmed; audited: R(0) = 0,
    // c_delta = 12 > N = 4, R(z) = 4z(4z-3)(z-1). The irrational pair are
    // the roots of 8z^2 - 12z + 3 (i.e. (3±sqrt(3))/4).
    e.expected.r_num = poly_l({0, 12, -28, 16});
    e.expected.r_den = poly_l({1});
    e.expected.c_delta = Rational(12);
    e.expected.exceptional = {0.31698729810778, 0.75, 1.18301270189222, 1.5};
    e.expected.classification = "TOTALLY_DISCONNECTED";
    e.expected.has_gaps = true;
    out.push_back(std::move(e));
  }

  return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = make_catalog();
  return entries;
}

const CatalogEntry* catalog_find(const std::string& name) {
  for (const CatalogEntry& e : catalog()) {
    if (e.structure.name == name) return &e;
  }
  return nullptr;
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (const CatalogEntry& e : catalog()) names.push_back(e.structure.name);
  return names;
}

}  // namespace specdec
