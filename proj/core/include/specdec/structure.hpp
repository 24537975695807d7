#pragma once

#include <string>
#include <utility>
#include <vector>

#include "specdec/error.hpp"

namespace specdec {

/// Declarative level-1 data of a fully symmetric finitely ramified
/// self-similar set: N cells, each an injection of the boundary index set
/// into the level-1 vertex ids, plus the embedding of the boundary itself.
struct FractalStructure {
  std::string name;
  int num_cells = 0;      // N
  int boundary_size = 0;  // |V0|
  int v1_size = 0;        // |V1|
  std::vector<std::vector<int>> cell_maps;  // [N][|V0|] -> V1 vertex id
  std::vector<int> v0_embedding;            // [|V0|] -> V1 vertex id

  /// Throws MalformedStructureError when any declaration invariant fails:
  /// injective cell maps covering V1, distinct boundary embedding, at most
  /// one boundary vertex per cell image with fixed-point labeling, and a
  /// connected level-1 graph.
  void validate() const;

  /// Vertices identified per substitution step: sum over V1 vertices of
  /// (number of (cell, boundary-index) preimages - 1).
  int gluing_count() const;
};

/// Graph approximation G_n.
struct LevelGraph {
  int level = 0;
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;  // a < b, sorted, no duplicates
  std::vector<int> v_prev_ids;             // graph ids embedding V_{n-1} (empty at level 0)
  std::vector<int> v0_ids;                 // graph ids of the original boundary V_0
  std::vector<int> degrees;
  std::vector<std::vector<int>> adjacency;  // sorted neighbor lists
  // Minimal (cell, previous-level vertex) address of each vertex; the
  // canonical representative used for the deterministic numbering.
  std::vector<std::pair<int, int>> rep_address;  // empty at level 0
};

/// Builds G_n: G_0 is the complete graph on V_0; each further level
/// substitutes a copy of G_{n-1} into every cell and identifies vertices by
/// union-find over (cell, vertex) addresses, numbering classes by their
/// lexicographically smallest address.
LevelGraph build_graph(const FractalStructure& s, int n);

/// G_0 .. G_n.
std::vector<LevelGraph> build_chain(const FractalStructure& s, int n);

struct SymmetryReport {
  /// Cell-structure automorphisms of G_1 (pairs of a vertex permutation and
  /// a cell permutation with per-cell boundary relabelings realizable by the
  /// group itself).
  int automorphism_count = 0;
  /// Distinct permutations of boundary indices realized on V_0.
  std::vector<std::vector<int>> boundary_actions;
  bool doubly_transitive = false;
  /// True when every automorphism uses one global boundary relabeling in all
  /// cells (the strict reading of the compatibility condition).
  bool strict_global_relabeling = false;
};

/// Exhaustive search for level-1 structure automorphisms and the induced
/// action on V_0; the verdict is whether that action is doubly transitive.
SymmetryReport validate_full_symmetry(const FractalStructure& s);

/// True iff every boundary vertex lies in the image of exactly one cell.
bool check_pcf(const FractalStructure& s);

}  // namespace specdec
