#include "specdec/structure.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace specdec {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n, -1) {}
  int find(int x) {
    while (parent[x] >= 0) {
      if (parent[parent[x]] >= 0) parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);  // keep the smallest address as the root
    parent[b] = a;
  }
};

void check_connected(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n == 0) return;
  std::vector<std::vector<int>> adj(n);
  for (auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  if (count != n) throw MalformedStructureError("level-1 graph is not connected");
}

std::vector<std::pair<int, int>> level1_edges(const FractalStructure& s) {
  std::set<std::pair<int, int>> edges;
  for (const auto& cm : s.cell_maps) {
    for (size_t i = 0; i < cm.size(); ++i) {
      for (size_t j = i + 1; j < cm.size(); ++j) {
        int a = cm[i], b = cm[j];
        if (a > b) std::swap(a, b);
        edges.emplace(a, b);
      }
    }
  }
  return {edges.begin(), edges.end()};
}

void finalize_graph(LevelGraph& g) {
  std::sort(g.edges.begin(), g.edges.end());
  g.degrees.assign(g.num_vertices, 0);
  g.adjacency.assign(g.num_vertices, {});
  for (auto& [a, b] : g.edges) {
    g.adjacency[a].push_back(b);
    g.adjacency[b].push_back(a);
    ++g.degrees[a];
    ++g.degrees[b];
  }
  for (auto& nb : g.adjacency) std::sort(nb.begin(), nb.end());
}

}  // namespace

void FractalStructure::validate() const {
  if (num_cells < 2) throw MalformedStructureError("num_cells must be >= 2");
  if (boundary_size < 2) throw MalformedStructureError("boundary_size must be >= 2");
  if (v1_size < boundary_size) throw MalformedStructureError("v1_size must be >= boundary_size");
  if (static_cast<int>(cell_maps.size()) != num_cells) {
    throw MalformedStructureError("cell_maps must list one map per cell");
  }
  std::vector<int> covered(v1_size, 0);
  for (int j = 0; j < num_cells; ++j) {
    const auto& cm = cell_maps[j];
    if (static_cast<int>(cm.size()) != boundary_size) {
      throw MalformedStructureError("cell map " + std::to_string(j) + " has wrong arity");
    }
    std::set<int> image;
    for (int v : cm) {
      if (v < 0 || v >= v1_size) {
        throw MalformedStructureError("cell map " + std::to_string(j) + " targets an invalid vertex");
      }
      if (!image.insert(v).second) {
        throw MalformedStructureError("cell map " + std::to_string(j) + " is not injective");
      }
      ++covered[v];
    }
  }
  for (int v = 0; v < v1_size; ++v) {
    if (covered[v] == 0) {
      throw MalformedStructureError("vertex " + std::to_string(v) + " not covered by any cell image");
    }
  }
  if (static_cast<int>(v0_embedding.size()) != boundary_size) {
    throw MalformedStructureError("v0_embedding must have boundary_size entries");
  }
  std::set<int> v0set;
  for (int v : v0_embedding) {
    if (v < 0 || v >= v1_size) throw MalformedStructureError("v0_embedding targets an invalid vertex");
    if (!v0set.insert(v).second) throw MalformedStructureError("v0_embedding entries must be distinct");
  }
  // Fixed-point conditions: a cell image holds at most one boundary vertex,
  // and that vertex must be the image of its own boundary index.
  for (int j = 0; j < num_cells; ++j) {
    int hits = 0;
    for (int u = 0; u < boundary_size; ++u) {
      auto it = std::find(cell_maps[j].begin(), cell_maps[j].end(), v0_embedding[u]);
      if (it == cell_maps[j].end()) continue;
      ++hits;
      int idx = static_cast<int>(it - cell_maps[j].begin());
      if (idx != u) {
        throw MalformedStructureError("boundary vertex " + std::to_string(u) + " is not the fixed point of cell " +
                                      std::to_string(j));
      }
    }
    if (hits > 1) {
      throw MalformedStructureError("cell " + std::to_string(j) + " holds more than one boundary vertex");
    }
  }
  for (int u = 0; u < boundary_size; ++u) {
    bool found = false;
    for (int j = 0; j < num_cells && !found; ++j) {
      found = std::find(cell_maps[j].begin(), cell_maps[j].end(), v0_embedding[u]) != cell_maps[j].end();
    }
    if (!found) {
      throw MalformedStructureError("boundary vertex " + std::to_string(u) + " lies in no cell image");
    }
  }
  check_connected(v1_size, level1_edges(*this));
}

int FractalStructure::gluing_count() const {
  std::vector<int> preimages(v1_size, 0);
  for (const auto& cm : cell_maps) {
    for (int v : cm) ++preimages[v];
  }
  int glued = 0;
  for (int c : preimages) glued += c - 1;
  return glued;
}

LevelGraph build_graph(const FractalStructure& s, int n) {
  return build_chain(s, n).back();
}

std::vector<LevelGraph> build_chain(const FractalStructure& s, int n) {
  s.validate();
  std::vector<LevelGraph> chain;
  chain.reserve(n + 1);

  LevelGraph g0;
  g0.level = 0;
  g0.num_vertices = s.boundary_size;
  for (int i = 0; i < s.boundary_size; ++i) {
    for (int j = i + 1; j < s.boundary_size; ++j) g0.edges.emplace_back(i, j);
    g0.v0_ids.push_back(i);
  }
  finalize_graph(g0);
  chain.push_back(std::move(g0));

  for (int level = 1; level <= n; ++level) {
    const LevelGraph& prev = chain.back();
    const int pv = prev.num_vertices;
    const int raw = s.num_cells * pv;
    UnionFind uf(raw);
    auto raw_id = [pv](int cell, int v) { return cell * pv + v; };

    // Identify the glued copies: cell j's copy of boundary vertex u sits at
    // the level-(n-1) embedded boundary, and two copies coincide exactly
    // when the corresponding level-1 images coincide.
    std::map<int, std::vector<std::pair<int, int>>> shared;  // V1 id -> (cell, boundary u)
    for (int j = 0; j < s.num_cells; ++j) {
      for (int u = 0; u < s.boundary_size; ++u) {
        shared[s.cell_maps[j][u]].emplace_back(j, u);
      }
    }
    for (auto& [w, copies] : shared) {
      for (size_t k = 1; k < copies.size(); ++k) {
        auto [j1, u1] = copies[k - 1];
        auto [j2, u2] = copies[k];
        uf.unite(raw_id(j1, prev.v0_ids[u1]), raw_id(j2, prev.v0_ids[u2]));
      }
    }

    // Number classes by their smallest raw address.
    std::vector<int> roots;
    for (int r = 0; r < raw; ++r) {
      if (uf.find(r) == r) roots.push_back(r);
    }
    std::sort(roots.begin(), roots.end());
    std::vector<int> class_id(raw, -1);
    for (size_t i = 0; i < roots.size(); ++i) class_id[roots[i]] = static_cast<int>(i);

    LevelGraph g;
    g.level = level;
    g.num_vertices = static_cast<int>(roots.size());
    int expected = s.num_cells * pv - s.gluing_count();
    if (g.num_vertices != expected) {
      throw MalformedStructureError("substitution produced an inconsistent vertex count");
    }
    g.rep_address.reserve(roots.size());
    for (int r : roots) g.rep_address.emplace_back(r / pv, r % pv);

    auto vat = [&](int cell, int v) { return class_id[uf.find(raw_id(cell, v))]; };

    // Per-cell injectivity: two distinct vertices of a copy must stay distinct.
    for (int j = 0; j < s.num_cells; ++j) {
      std::set<int> seen;
      for (int v = 0; v < pv; ++v) {
        if (!seen.insert(vat(j, v)).second) {
          throw MalformedStructureError("identification collapsed two vertices inside one cell");
        }
      }
    }

    std::set<std::pair<int, int>> edges;
    for (int j = 0; j < s.num_cells; ++j) {
      for (auto& [a, b] : prev.edges) {
        int x = vat(j, a), y = vat(j, b);
        if (x > y) std::swap(x, y);
        edges.emplace(x, y);
      }
    }
    g.edges.assign(edges.begin(), edges.end());

    // Embed V_{n-1}: a previous-level vertex with minimal address (j, v')
    // lands at cell j's copy of v' embedded one level up.
    g.v_prev_ids.resize(pv);
    if (level == 1) {
      // G_0 vertex u sits at any cell's copy whose image is v0_embedding[u];
      // the classes coincide, so the first hit serves.
      for (int u = 0; u < s.boundary_size; ++u) {
        for (int j = 0; j < s.num_cells; ++j) {
          if (s.cell_maps[j][u] == s.v0_embedding[u]) {
            g.v_prev_ids[u] = vat(j, u);
            break;
          }
        }
      }
    } else {
      for (int v = 0; v < pv; ++v) {
        auto [cell, inner] = prev.rep_address[v];
        g.v_prev_ids[v] = vat(cell, prev.v_prev_ids[inner]);
      }
    }

    // Boundary chain.
    g.v0_ids.resize(s.boundary_size);
    for (int u = 0; u < s.boundary_size; ++u) {
      g.v0_ids[u] = g.v_prev_ids[prev.v0_ids[u]];
    }

    finalize_graph(g);
    chain.push_back(std::move(g));
  }
  return chain;
}

bool check_pcf(const FractalStructure& s) {
  for (int u = 0; u < s.boundary_size; ++u) {
    int count = 0;
    for (int j = 0; j < s.num_cells; ++j) {
      if (std::find(s.cell_maps[j].begin(), s.cell_maps[j].end(), s.v0_embedding[u]) !=
          s.cell_maps[j].end()) {
        ++count;
      }
    }
    if (count != 1) return false;
  }
  return true;
}

namespace {

struct AutoSearch {
  const FractalStructure& s;
  std::vector<int> cell_order;              // cells visited shared-first
  std::vector<std::vector<int>> vertex_of;  // = s.cell_maps
  std::vector<char> is_boundary;            // per V1 vertex
  std::vector<std::pair<std::vector<int>, std::vector<int>>> found;  // (pi, rho)

  explicit AutoSearch(const FractalStructure& st) : s(st) {
    is_boundary.assign(s.v1_size, 0);
    for (int v : s.v0_embedding) is_boundary[v] = 1;
    // Visit cells so that each one (after the first) shares a vertex with an
    // earlier one where possible; fixes most of the relabeling early.
    std::vector<char> used(s.num_cells, 0);
    std::vector<char> seen_vertex(s.v1_size, 0);
    for (int step = 0; step < s.num_cells; ++step) {
      int best = -1, best_shared = -1;
      for (int j = 0; j < s.num_cells; ++j) {
        if (used[j]) continue;
        int sharedv = 0;
        for (int v : s.cell_maps[j]) sharedv += seen_vertex[v];
        if (sharedv > best_shared) {
          best_shared = sharedv;
          best = j;
        }
      }
      used[best] = 1;
      cell_order.push_back(best);
      for (int v : s.cell_maps[best]) seen_vertex[v] = 1;
    }
  }

  void run() {
    std::vector<int> rho(s.num_cells, -1);
    std::vector<char> rho_used(s.num_cells, 0);
    std::vector<int> pi(s.v1_size, -1), pi_inv(s.v1_size, -1);
    descend(0, rho, rho_used, pi, pi_inv);
  }

  void descend(size_t depth, std::vector<int>& rho, std::vector<char>& rho_used,
               std::vector<int>& pi, std::vector<int>& pi_inv) {
    if (depth == cell_order.size()) {
      found.emplace_back(pi, rho);
      return;
    }
    int j = cell_order[depth];
    for (int target = 0; target < s.num_cells; ++target) {
      if (rho_used[target]) continue;
      rho[j] = target;
      rho_used[target] = 1;
      try_bijections(depth, j, target, rho, rho_used, pi, pi_inv);
      rho_used[target] = 0;
      rho[j] = -1;
    }
  }

  void try_bijections(size_t depth, int j, int target, std::vector<int>& rho,
                      std::vector<char>& rho_used, std::vector<int>& pi,
                      std::vector<int>& pi_inv) {
    const int b = s.boundary_size;
    std::vector<int> sigma(b, -1);
    std::vector<char> sig_used(b, 0);
    std::vector<std::pair<int, int>> assigned;  // (v1 vertex, image) set here

    std::function<void(int)> rec = [&](int u) {
      if (u == b) {
        descend(depth + 1, rho, rho_used, pi, pi_inv);
        return;
      }
      int v = s.cell_maps[j][u];
      if (pi[v] >= 0) {
        // Already forced: the image must sit in the target cell at a free slot.
        int img = pi[v];
        const auto& tm = s.cell_maps[target];
        auto it = std::find(tm.begin(), tm.end(), img);
        if (it == tm.end()) return;
        int idx = static_cast<int>(it - tm.begin());
        if (sig_used[idx]) return;
        sigma[u] = idx;
        sig_used[idx] = 1;
        rec(u + 1);
        sig_used[idx] = 0;
        sigma[u] = -1;
        return;
      }
      for (int idx = 0; idx < b; ++idx) {
        if (sig_used[idx]) continue;
        int img = s.cell_maps[target][idx];
        if (pi_inv[img] >= 0) continue;
        if (is_boundary[v] != is_boundary[img]) continue;
        pi[v] = img;
        pi_inv[img] = v;
        sigma[u] = idx;
        sig_used[idx] = 1;
        rec(u + 1);
        sig_used[idx] = 0;
        sigma[u] = -1;
        pi_inv[img] = -1;
        pi[v] = -1;
      }
    };
    rec(0);
  }
};

}  // namespace

SymmetryReport validate_full_symmetry(const FractalStructure& s) {
  s.validate();
  AutoSearch search(s);
  search.run();

  const int b = s.boundary_size;
  auto boundary_action = [&](const std::vector<int>& pi) {
    std::vector<int> sigma(b);
    for (int u = 0; u < b; ++u) {
      int img = pi[s.v0_embedding[u]];
      auto it = std::find(s.v0_embedding.begin(), s.v0_embedding.end(), img);
      sigma[u] = static_cast<int>(it - s.v0_embedding.begin());
    }
    return sigma;
  };
  auto cell_relabeling = [&](const std::vector<int>& pi, const std::vector<int>& rho, int j) {
    std::vector<int> sig(b);
    const auto& tm = s.cell_maps[rho[j]];
    for (int u = 0; u < b; ++u) {
      int img = pi[s.cell_maps[j][u]];
      auto it = std::find(tm.begin(), tm.end(), img);
      sig[u] = static_cast<int>(it - tm.begin());
    }
    return sig;
  };

  // Keep only automorphisms whose per-cell relabelings are themselves
  // realizable boundary actions (the combinatorial surrogate for the
  // compatibility of the symmetry group with the cell structure).
  std::vector<size_t> alive(search.found.size());
  std::iota(alive.begin(), alive.end(), 0);
  std::set<std::vector<int>> actions;
  bool strict = true;
  for (;;) {
    actions.clear();
    for (size_t i : alive) actions.insert(boundary_action(search.found[i].first));
    std::vector<size_t> next;
    for (size_t i : alive) {
      const auto& [pi, rho] = search.found[i];
      bool ok = true;
      for (int j = 0; j < s.num_cells && ok; ++j) {
        ok = actions.count(cell_relabeling(pi, rho, j)) > 0;
      }
      if (ok) next.push_back(i);
    }
    if (next.size() == alive.size()) break;
    alive = std::move(next);
  }
  for (size_t i : alive) {
    const auto& [pi, rho] = search.found[i];
    auto global = boundary_action(pi);
    for (int j = 0; j < s.num_cells; ++j) {
      if (cell_relabeling(pi, rho, j) != global) strict = false;
    }
  }

  SymmetryReport report;
  report.automorphism_count = static_cast<int>(alive.size());
  report.boundary_actions.assign(actions.begin(), actions.end());
  report.strict_global_relabeling = strict && !alive.empty();

  // Doubly transitive: every ordered pair of distinct boundary indices maps
  // to every other ordered pair under some realized action.
  bool doubly = true;
  for (int a = 0; a < b && doubly; ++a) {
    for (int c = 0; c < b && doubly; ++c) {
      if (a == c) continue;
      for (int x = 0; x < b && doubly; ++x) {
        for (int y = 0; y < b && doubly; ++y) {
          if (x == y) continue;
          bool hit = false;
          for (const auto& sigma : report.boundary_actions) {
            if (sigma[a] == x && sigma[c] == y) {
              hit = true;
              break;
            }
          }
          if (!hit) doubly = false;
        }
      }
    }
  }
  report.doubly_transitive = doubly;
  return report;
}

}  // namespace specdec
