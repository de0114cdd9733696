// SPDX-License-Identifier: Apache-2.0

#include "topo_orca/topology.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <queue>

#include "topo_orca/kernels.hpp"

namespace topo_orca {

namespace {

constexpr std::array<int, 8> kNbrDx = {0, 1, 1, 1, 0, -1, -1, -1};
constexpr std::array<int, 8> kNbrDy = {1, 1, 0, -1, -1, -1, 0, 1};

/// Zero-padded foreground buffer used by the thinning passes.
struct Padded {
  std::size_t w = 0;  // includes the pad ring
  std::size_t h = 0;
  std::vector<std::uint8_t> cells;

  std::uint8_t& at(std::size_t x, std::size_t y) { return cells[y * w + x]; }
  std::uint8_t at(std::size_t x, std::size_t y) const {
    return cells[y * w + x];
  }
};

Padded to_padded_foreground(const OccupancyGrid& mask) {
  Padded p;
  p.w = static_cast<std::size_t>(mask.width()) + 2;
  p.h = static_cast<std::size_t>(mask.height()) + 2;
  p.cells.assign(p.w * p.h, 0);
  for (int iy = 0; iy < mask.height(); ++iy) {
    for (int ix = 0; ix < mask.width(); ++ix) {
      p.at(ix + 1, iy + 1) = mask.free(ix, iy) ? 1 : 0;
    }
  }
  return p;
}

/// Crossing number: 0->1 transitions around the 8-neighborhood ring. A
/// foreground pixel with exactly one transition can be deleted without
/// breaking local 8-connectivity.
int padded_transitions(const Padded& p, std::size_t x, std::size_t y) {
  const int ring[8] = {
      p.at(x, y - 1),     p.at(x + 1, y - 1), p.at(x + 1, y),
      p.at(x + 1, y + 1), p.at(x, y + 1),     p.at(x - 1, y + 1),
      p.at(x - 1, y),     p.at(x - 1, y - 1)};
  int t = 0;
  for (int k = 0; k < 8; ++k) {
    t += (ring[k] == 0 && ring[(k + 1) % 8] == 1) ? 1 : 0;
  }
  return t;
}

/// True when deleting (x, y) keeps its foreground neighbors 8-connected
/// within the punctured 3x3 neighborhood (the component-based simple-pixel
/// test; exact, unlike the crossing number, for diagonal contacts).
bool is_simple(const Padded& p, std::size_t x, std::size_t y) {
  int idx_of[3][3];
  int count = 0;
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) {
      const bool self = dx == 0 && dy == 0;
      idx_of[dy + 1][dx + 1] =
          (!self && p.at(x + dx, y + dy)) ? count++ : -1;
    }
  }
  if (count == 0) return false;
  int parent[8];
  for (int i = 0; i < count; ++i) parent[i] = i;
  const auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (int ay = 0; ay < 3; ++ay) {
    for (int ax = 0; ax < 3; ++ax) {
      if (idx_of[ay][ax] < 0) continue;
      for (int by = ay; by < 3; ++by) {
        for (int bx = 0; bx < 3; ++bx) {
          if (idx_of[by][bx] < 0) continue;
          if (std::abs(ax - bx) <= 1 && std::abs(ay - by) <= 1) {
            parent[find(idx_of[ay][ax])] = find(idx_of[by][bx]);
          }
        }
      }
    }
  }
  int roots = 0;
  for (int i = 0; i < count; ++i) roots += find(i) == i ? 1 : 0;
  return roots == 1;
}

/// Zhang-Suen leaves two-pixel-wide diagonal staircases (every pixel keeps
/// ring-crossing number 2, so the parallel passes spare them). Sequentially
/// deleting simple pixels of degree >= 3 straightens them without touching
/// endpoints, plain corners, or topology.
void remove_redundant_junction_pixels(Padded& p) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t y = 1; y + 1 < p.h; ++y) {
      for (std::size_t x = 1; x + 1 < p.w; ++x) {
        if (!p.at(x, y)) continue;
        int deg = 0;
        for (int k = 0; k < 8; ++k) {
          deg += p.at(x + kNbrDx[k], y + kNbrDy[k]);
        }
        if (deg < 3) continue;
        if (!is_simple(p, x, y)) continue;
        p.at(x, y) = 0;
        changed = true;
      }
    }
  }
}

/// Deletes one connectivity-preserving pixel from every remaining
/// all-foreground 2x2 block, repeating until none is left. Pixels inside a
/// full block always have >= 3 neighbors, so no endpoint is ever removed.
void shave_full_blocks(Padded& p) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t y = 1; y + 2 < p.h; ++y) {
      for (std::size_t x = 1; x + 2 < p.w; ++x) {
        if (!(p.at(x, y) && p.at(x + 1, y) && p.at(x, y + 1) &&
              p.at(x + 1, y + 1))) {
          continue;
        }
        const std::array<std::pair<std::size_t, std::size_t>, 4> corners = {
            {{x, y}, {x + 1, y}, {x, y + 1}, {x + 1, y + 1}}};
        for (const auto& [cx, cy] : corners) {
          if (padded_transitions(p, cx, cy) == 1) {
            p.at(cx, cy) = 0;
            changed = true;
            break;
          }
        }
      }
    }
  }
}

/// Labels 8-connected components of `fg` (1 = foreground); returns the label
/// grid (-1 background) and component count.
std::pair<std::vector<int>, int> label_components(
    const std::vector<std::uint8_t>& fg, int w, int h) {
  std::vector<int> labels(fg.size(), -1);
  int count = 0;
  std::vector<std::pair<int, int>> stack;
  for (int sy = 0; sy < h; ++sy) {
    for (int sx = 0; sx < w; ++sx) {
      const std::size_t si = static_cast<std::size_t>(sy) * w + sx;
      if (!fg[si] || labels[si] >= 0) continue;
      labels[si] = count;
      stack.push_back({sx, sy});
      while (!stack.empty()) {
        auto [cx, cy] = stack.back();
        stack.pop_back();
        for (int k = 0; k < 8; ++k) {
          const int nx = cx + kNbrDx[k];
          const int ny = cy + kNbrDy[k];
          if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
          const std::size_t ni = static_cast<std::size_t>(ny) * w + nx;
          if (fg[ni] && labels[ni] < 0) {
            labels[ni] = count;
            stack.push_back({nx, ny});
          }
        }
      }
      ++count;
    }
  }
  return {std::move(labels), count};
}

}  // namespace

std::size_t Skeleton::pixel_count() const {
  std::size_t n = 0;
  for (std::uint8_t c : cells_) n += c;
  return n;
}

int Skeleton::degree(int ix, int iy) const {
  int n = 0;
  for (int k = 0; k < 8; ++k) {
    const int nx = ix + kNbrDx[k];
    const int ny = iy + kNbrDy[k];
    if (nx >= 0 && nx < width_ && ny >= 0 && ny < height_ && at(nx, ny)) ++n;
  }
  return n;
}

int TopoGraph::degree(int node_id) const {
  int d = 0;
  for (const TopoEdge& e : edges) {
    if (e.a == node_id) ++d;
    if (e.b == node_id) ++d;
  }
  return d;
}

int TopoGraph::cycle_rank() const {
  const int n = static_cast<int>(nodes.size());
  if (n == 0) return 0;
  // Union-find over node indices (ids are dense after construction/pruning).
  std::vector<int> parent(nodes.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  const auto find = [&](int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (const TopoEdge& e : edges) {
    const int ra = find(e.a);
    const int rb = find(e.b);
    if (ra != rb) parent[ra] = rb;
  }
  int components = 0;
  for (std::size_t i = 0; i < parent.size(); ++i) {
    if (find(static_cast<int>(i)) == static_cast<int>(i)) ++components;
  }
  return static_cast<int>(edges.size()) - n + components;
}

Skeleton thin(const OccupancyGrid& mask) {
  Padded cur = to_padded_foreground(mask);
  Padded next = cur;

  const auto original = label_components(cur.cells, static_cast<int>(cur.w),
                                         static_cast<int>(cur.h));

  for (;;) {
    std::size_t deleted =
        kernels::thin_pass(cur.cells.data(), next.cells.data(), cur.w, cur.h, 0);
    std::swap(cur.cells, next.cells);
    deleted +=
        kernels::thin_pass(cur.cells.data(), next.cells.data(), cur.w, cur.h, 1);
    std::swap(cur.cells, next.cells);
    if (deleted == 0) break;
  }

  remove_redundant_junction_pixels(cur);
  shave_full_blocks(cur);

  // Parallel thinning can consume blobs of only a few pixels outright (a 2x2
  // square is the canonical case). Restore one pixel per vanished component
  // so skeleton components match free-space components.
  const int n_components = original.second;
  if (n_components > 0) {
    std::vector<std::size_t> survivor(static_cast<std::size_t>(n_components),
                                      std::size_t(-1));
    std::vector<std::size_t> first_pixel(static_cast<std::size_t>(n_components),
                                         std::size_t(-1));
    for (std::size_t i = 0; i < cur.cells.size(); ++i) {
      const int label = original.first[i];
      if (label < 0) continue;
      if (first_pixel[label] == std::size_t(-1)) first_pixel[label] = i;
      if (cur.cells[i] && survivor[label] == std::size_t(-1)) {
        survivor[label] = i;
      }
    }
    for (int c = 0; c < n_components; ++c) {
      if (survivor[c] == std::size_t(-1)) cur.cells[first_pixel[c]] = 1;
    }
  }

  Skeleton s(mask.width(), mask.height());
  for (int iy = 0; iy < mask.height(); ++iy) {
    for (int ix = 0; ix < mask.width(); ++ix) {
      s.set(ix, iy, cur.at(ix + 1, iy + 1) != 0);
    }
  }
  return s;
}

namespace {

struct PixelRef {
  int x = 0;
  int y = 0;
};

}  // namespace

TopoGraph skeleton_to_graph(const Skeleton& s, const OccupancyGrid& grid) {
  TopoGraph g;
  const int w = s.width();
  const int h = s.height();
  if (w == 0 || h == 0) return g;

  const auto idx = [w](int x, int y) {
    return static_cast<std::size_t>(y) * w + x;
  };

  std::vector<int> deg(static_cast<std::size_t>(w) * h, -1);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (s.at(x, y)) deg[idx(x, y)] = s.degree(x, y);
    }
  }

  // Cluster ids: -1 = not a node pixel. Junction pixels (degree >= 3) that
  // touch each other share a cluster; endpoints and isolated pixels are
  // singleton clusters.
  std::vector<int> cluster(static_cast<std::size_t>(w) * h, -1);
  std::vector<std::vector<PixelRef>> members;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int d = deg[idx(x, y)];
      if (d < 0 || d == 2 || cluster[idx(x, y)] >= 0) continue;
      const int cid = static_cast<int>(members.size());
      members.push_back({});
      cluster[idx(x, y)] = cid;
      members[cid].push_back({x, y});
      if (d >= 3) {
        std::vector<PixelRef> stack{{x, y}};
        while (!stack.empty()) {
          const PixelRef p = stack.back();
          stack.pop_back();
          for (int k = 0; k < 8; ++k) {
            const int nx = p.x + kNbrDx[k];
            const int ny = p.y + kNbrDy[k];
            if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
            if (deg[idx(nx, ny)] >= 3 && cluster[idx(nx, ny)] < 0) {
              cluster[idx(nx, ny)] = cid;
              members[cid].push_back({nx, ny});
              stack.push_back({nx, ny});
            }
          }
        }
      }
    }
  }

  // Node position: centroid of the cluster snapped to the nearest member
  // pixel (ties by raster order, which is the member insertion order).
  for (std::size_t cid = 0; cid < members.size(); ++cid) {
    Vec2 centroid{0.0, 0.0};
    for (const PixelRef& p : members[cid]) {
      centroid = centroid + grid.cell_center(p.x, p.y);
    }
    centroid = centroid / static_cast<double>(members[cid].size());
    const PixelRef* best = &members[cid][0];
    double best_d = distance_sq(grid.cell_center(best->x, best->y), centroid);
    for (const PixelRef& p : members[cid]) {
      const double d = distance_sq(grid.cell_center(p.x, p.y), centroid);
      if (d < best_d) {
        best = &p;
        best_d = d;
      }
    }
    g.nodes.push_back({static_cast<int>(cid),
                       grid.cell_center(best->x, best->y)});
  }

  const auto polyline_length = [](const std::vector<Vec2>& poly) {
    double len = 0.0;
    for (std::size_t i = 1; i < poly.size(); ++i) {
      len += distance(poly[i - 1], poly[i]);
    }
    return len;
  };

  std::vector<std::uint8_t> chain_visited(static_cast<std::size_t>(w) * h, 0);
  // At most one zero-interior edge per cluster pair: several 1-step
  // adjacencies between the same two clusters bound no area and would only
  // fabricate cycles.
  std::vector<std::pair<int, int>> direct_pairs;

  const auto emit_edge = [&](int ca, int cb, std::vector<Vec2> poly) {
    TopoEdge e;
    e.a = ca;
    e.b = cb;
    e.polyline = std::move(poly);
    e.length = polyline_length(e.polyline);
    g.edges.push_back(std::move(e));
  };

  for (std::size_t cid = 0; cid < members.size(); ++cid) {
    for (const PixelRef& mp : members[cid]) {
      for (int k = 0; k < 8; ++k) {
        const int nx = mp.x + kNbrDx[k];
        const int ny = mp.y + kNbrDy[k];
        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
        if (deg[idx(nx, ny)] < 0) continue;
        const int ncid = cluster[idx(nx, ny)];
        if (ncid >= 0) {
          if (static_cast<std::size_t>(ncid) == cid) {
            continue;  // intra-cluster adjacency
          }
          // Direct node-to-node edge with no interior pixels.
          const std::pair<int, int> kp{
              std::min(static_cast<int>(cid), ncid),
              std::max(static_cast<int>(cid), ncid)};
          if (std::find(direct_pairs.begin(), direct_pairs.end(), kp) !=
              direct_pairs.end()) {
            continue;
          }
          direct_pairs.push_back(kp);
          emit_edge(static_cast<int>(cid), ncid,
                    {g.nodes[cid].pos, grid.cell_center(mp.x, mp.y),
                     grid.cell_center(nx, ny), g.nodes[ncid].pos});
          continue;
        }
        if (chain_visited[idx(nx, ny)]) continue;

        // Walk the degree-2 chain until the next node pixel.
        std::vector<Vec2> poly{g.nodes[cid].pos,
                               grid.cell_center(mp.x, mp.y)};
        if (poly[0].x == poly[1].x && poly[0].y == poly[1].y) {
          poly.erase(poly.begin());
        }
        PixelRef prev = mp;
        PixelRef curp{nx, ny};
        int end_cluster = -1;
        int interior = 0;
        while (true) {
          chain_visited[idx(curp.x, curp.y)] = 1;
          poly.push_back(grid.cell_center(curp.x, curp.y));
          ++interior;
          PixelRef nxt{-1, -1};
          bool found_node = false;
          for (int j = 0; j < 8; ++j) {
            const int tx = curp.x + kNbrDx[j];
            const int ty = curp.y + kNbrDy[j];
            if (tx < 0 || tx >= w || ty < 0 || ty >= h) continue;
            if (deg[idx(tx, ty)] < 0) continue;
            if (tx == prev.x && ty == prev.y) continue;
            if (cluster[idx(tx, ty)] >= 0) {
              end_cluster = cluster[idx(tx, ty)];
              nxt = {tx, ty};
              found_node = true;
              break;
            }
            if (!chain_visited[idx(tx, ty)]) nxt = {tx, ty};
          }
          if (found_node) {
            const Vec2 endp = grid.cell_center(nxt.x, nxt.y);
            if (!(poly.back().x == endp.x && poly.back().y == endp.y)) {
              poly.push_back(endp);
            }
            break;
          }
          if (nxt.x < 0) {
            // Chain ran out without hitting a node pixel; treat the walk's
            // last pixel as returning to the starting cluster (tight loop).
            end_cluster = static_cast<int>(cid);
            break;
          }
          prev = curp;
          curp = nxt;
        }
        // A loop back onto the starting cluster with at most 2 interior
        // pixels cannot enclose a blocked cell; it is a junction-zone
        // artifact, not a homotopy class.
        if (end_cluster == static_cast<int>(cid) && interior <= 2) continue;
        const Vec2 endpos = g.nodes[end_cluster].pos;
        if (!(poly.back().x == endpos.x && poly.back().y == endpos.y)) {
          poly.push_back(endpos);
        }
        emit_edge(static_cast<int>(cid), end_cluster, std::move(poly));
      }
    }
  }

  // Remaining unvisited degree-2 pixels belong to isolated cycles: give each
  // one synthetic node and a self-loop edge tracing the cycle.
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (deg[idx(x, y)] != 2 || chain_visited[idx(x, y)] ||
          cluster[idx(x, y)] >= 0) {
        continue;
      }
      const int cid = static_cast<int>(g.nodes.size());
      g.nodes.push_back({cid, grid.cell_center(x, y)});
      std::vector<Vec2> poly{grid.cell_center(x, y)};
      chain_visited[idx(x, y)] = 1;
      PixelRef prev{x, y};
      PixelRef curp{-1, -1};
      for (int k = 0; k < 8; ++k) {
        const int nx2 = x + kNbrDx[k];
        const int ny2 = y + kNbrDy[k];
        if (nx2 >= 0 && nx2 < w && ny2 >= 0 && ny2 < h &&
            deg[idx(nx2, ny2)] == 2) {
          curp = {nx2, ny2};
          break;
        }
      }
      while (curp.x >= 0 && !(curp.x == x && curp.y == y)) {
        chain_visited[idx(curp.x, curp.y)] = 1;
        poly.push_back(grid.cell_center(curp.x, curp.y));
        PixelRef nxt{-1, -1};
        for (int j = 0; j < 8; ++j) {
          const int tx = curp.x + kNbrDx[j];
          const int ty = curp.y + kNbrDy[j];
          if (tx < 0 || tx >= w || ty < 0 || ty >= h) continue;
          if (deg[idx(tx, ty)] != 2) continue;
          if (tx == prev.x && ty == prev.y) continue;
          if (tx == x && ty == y) {
            nxt = {tx, ty};
            break;
          }
          if (!chain_visited[idx(tx, ty)]) nxt = {tx, ty};
        }
        if (nxt.x < 0) break;
        prev = curp;
        curp = nxt;
      }
      poly.push_back(grid.cell_center(x, y));
      emit_edge(cid, cid, std::move(poly));
    }
  }

  return g;
}

TopoGraph prune_spurs(const TopoGraph& g, double min_length) {
  TopoGraph out = g;
  std::vector<std::uint8_t> edge_live(out.edges.size(), 1);
  std::vector<std::uint8_t> node_live(out.nodes.size(), 1);

  const auto degrees = [&]() {
    std::vector<int> deg(out.nodes.size(), 0);
    for (std::size_t i = 0; i < out.edges.size(); ++i) {
      if (!edge_live[i]) continue;
      ++deg[out.edges[i].a];
      ++deg[out.edges[i].b];
    }
    return deg;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int> deg = degrees();

    // Remove short dead-end edges. An edge that is a whole component (both
    // ends degree 1) is kept so pruning never deletes a component outright.
    for (std::size_t i = 0; i < out.edges.size(); ++i) {
      if (!edge_live[i] || out.edges[i].length >= min_length) continue;
      const int a = out.edges[i].a;
      const int b = out.edges[i].b;
      if (a == b) continue;  // self-loops are cycles, never spurs
      const bool leaf_a = deg[a] == 1;
      const bool leaf_b = deg[b] == 1;
      if (leaf_a == leaf_b) continue;  // neither a spur nor safely removable
      edge_live[i] = 0;
      --deg[a];
      --deg[b];
      if (deg[a] == 0) node_live[a] = 0;
      if (deg[b] == 0) node_live[b] = 0;
      changed = true;
    }

    // Merge through degree-2 nodes joining two distinct edges.
    deg = degrees();
    for (std::size_t n = 0; n < out.nodes.size(); ++n) {
      if (!node_live[n] || deg[n] != 2) continue;
      int e1 = -1;
      int e2 = -1;
      for (std::size_t i = 0; i < out.edges.size(); ++i) {
        if (!edge_live[i]) continue;
        if (out.edges[i].a == static_cast<int>(n) ||
            out.edges[i].b == static_cast<int>(n)) {
          if (e1 < 0) {
            e1 = static_cast<int>(i);
          } else {
            e2 = static_cast<int>(i);
            break;
          }
        }
      }
      if (e2 < 0) continue;  // degree 2 via a self-loop: isolated cycle node

      TopoEdge& ea = out.edges[e1];
      TopoEdge& eb = out.edges[e2];
      // Orient ea to end at n and eb to start at n.
      std::vector<Vec2> poly = ea.polyline;
      int start = ea.a;
      if (ea.a == static_cast<int>(n)) {
        std::reverse(poly.begin(), poly.end());
        start = ea.b;
      }
      std::vector<Vec2> tail = eb.polyline;
      int end = eb.b;
      if (eb.b == static_cast<int>(n)) {
        std::reverse(tail.begin(), tail.end());
        end = eb.a;
      }
      poly.insert(poly.end(), tail.begin() + 1, tail.end());

      TopoEdge merged;
      merged.a = start;
      merged.b = end;
      merged.length = ea.length + eb.length;
      merged.polyline = std::move(poly);
      out.edges.push_back(std::move(merged));
      edge_live.push_back(1);
      edge_live[e1] = 0;
      edge_live[e2] = 0;
      node_live[n] = 0;
      changed = true;
      break;  // degrees are stale; restart the sweep
    }
  }

  // Compact to dense ids in stable order.
  TopoGraph compact;
  std::vector<int> remap(out.nodes.size(), -1);
  for (std::size_t n = 0; n < out.nodes.size(); ++n) {
    if (!node_live[n]) continue;
    remap[n] = static_cast<int>(compact.nodes.size());
    compact.nodes.push_back({remap[n], out.nodes[n].pos});
  }
  for (std::size_t i = 0; i < out.edges.size(); ++i) {
    if (!edge_live[i]) continue;
    TopoEdge e = out.edges[i];
    e.a = remap[e.a];
    e.b = remap[e.b];
    compact.edges.push_back(std::move(e));
  }
  return compact;
}

TopoGraph subdivide_edges(const TopoGraph& g, double max_segment_length) {
  TopoGraph out;
  out.nodes = g.nodes;
  for (const TopoEdge& e : g.edges) {
    const int pieces = static_cast<int>(
        std::ceil(e.length / max_segment_length - 1e-12));
    if (pieces <= 1 || e.polyline.size() < 3) {
      out.edges.push_back(e);
      continue;
    }
    // Cut at the polyline vertices nearest to the equal-arc positions.
    std::vector<double> arc(e.polyline.size(), 0.0);
    for (std::size_t i = 1; i < e.polyline.size(); ++i) {
      arc[i] = arc[i - 1] + distance(e.polyline[i - 1], e.polyline[i]);
    }
    std::vector<std::size_t> cuts{0};
    for (int k = 1; k < pieces; ++k) {
      const double target = e.length * k / pieces;
      std::size_t best = cuts.back() + 1;
      double best_err = std::numeric_limits<double>::infinity();
      for (std::size_t i = cuts.back() + 1; i + 1 < e.polyline.size(); ++i) {
        const double err = std::abs(arc[i] - target);
        if (err < best_err) {
          best_err = err;
          best = i;
        }
      }
      if (best > cuts.back() && best + 1 < e.polyline.size()) {
        cuts.push_back(best);
      }
    }
    cuts.push_back(e.polyline.size() - 1);

    int prev_node = e.a;
    for (std::size_t c = 1; c < cuts.size(); ++c) {
      const bool last = c + 1 == cuts.size();
      int next_node;
      if (last) {
        next_node = e.b;
      } else {
        next_node = static_cast<int>(out.nodes.size());
        out.nodes.push_back({next_node, e.polyline[cuts[c]]});
      }
      TopoEdge piece;
      piece.a = prev_node;
      piece.b = next_node;
      piece.polyline.assign(e.polyline.begin() + cuts[c - 1],
                            e.polyline.begin() + cuts[c] + 1);
      piece.length = arc[cuts[c]] - arc[cuts[c - 1]];
      out.edges.push_back(std::move(piece));
      prev_node = next_node;
    }
  }
  return out;
}

void write_graph(const TopoGraph& g, std::ostream& out) {
  for (const TopoNode& n : g.nodes) {
    out << "node " << n.id << " " << n.pos.x << " " << n.pos.y << "\n";
  }
  for (const TopoEdge& e : g.edges) {
    out << "edge " << e.a << " " << e.b << " " << e.length << " "
        << e.polyline.size() << "\n";
    for (const Vec2& p : e.polyline) {
      out << p.x << " " << p.y << "\n";
    }
  }
}

}  // namespace topo_orca
