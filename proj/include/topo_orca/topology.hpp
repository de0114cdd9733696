// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "topo_orca/grid.hpp"
#include "topo_orca/vec2.hpp"

namespace topo_orca {

/// Medial-axis skeleton of the free region of an OccupancyGrid. Each cell is
/// true iff it is a skeleton pixel; skeleton pixels are always free cells of
/// the source grid and no 2x2 block is entirely skeleton.
class Skeleton {
 public:
  Skeleton() = default;
  Skeleton(int width, int height)
      : width_(width),
        height_(height),
        cells_(static_cast<std::size_t>(width) * height, 0) {}

  int width() const { return width_; }
  int height() const { return height_; }
  bool at(int ix, int iy) const {
    return cells_[static_cast<std::size_t>(iy) * width_ + ix] != 0;
  }
  void set(int ix, int iy, bool v) {
    cells_[static_cast<std::size_t>(iy) * width_ + ix] = v ? 1 : 0;
  }
  std::size_t pixel_count() const;
  /// Number of skeleton 8-neighbors of (ix, iy).
  int degree(int ix, int iy) const;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> cells_;
};

struct TopoNode {
  int id = 0;
  Vec2 pos;
};

/// Edge along a skeleton branch. The polyline starts at node a's position and
/// ends at node b's; `length` always equals the polyline arc length.
struct TopoEdge {
  int a = 0;
  int b = 0;
  double length = 0.0;
  std::vector<Vec2> polyline;
};

/// Topological multigraph of the environment: nodes at skeleton junctions and
/// endpoints, edges along branches. Parallel edges and positive-length
/// self-loops are kept; they encode distinct homotopy classes around
/// obstacles.
struct TopoGraph {
  std::vector<TopoNode> nodes;
  std::vector<TopoEdge> edges;

  int degree(int node_id) const;
  /// |E| - |V| + number of connected components (independent cycle count).
  int cycle_rank() const;
};

/// Two-subiteration parallel thinning (Zhang-Suen) of the free region down to
/// a fixpoint. Grid borders are treated as blocked. Two conditioning passes
/// follow the fixpoint: any remaining all-skeleton 2x2 block is shaved by
/// deleting a connectivity-preserving pixel, and any free-region component
/// the erosion consumed entirely (possible only for blobs of a few cells)
/// gets one representative pixel back so component counts match the mask.
Skeleton thin(const OccupancyGrid& mask);

/// Extracts the node/edge multigraph from a skeleton. Node pixels are those
/// with 8-neighbor degree != 2; mutually adjacent junction pixels (degree
/// >= 3) collapse into one node at the cluster centroid snapped to the
/// nearest member pixel. Isolated cycles get one synthetic node carrying a
/// self-loop edge.
TopoGraph skeleton_to_graph(const Skeleton& skeleton,
                            const OccupancyGrid& grid);

/// Iteratively removes dead-end edges shorter than min_length and merges the
/// two edges of any resulting degree-2 node, repeating to a fixpoint. Edges
/// whose removal would disconnect junctions are never touched (only edges
/// hanging off a degree-1 node qualify), and an edge that is an entire
/// component by itself is kept.
TopoGraph prune_spurs(const TopoGraph& g, double min_length);

/// Splits every edge longer than max_segment_length at polyline vertices into
/// roughly equal pieces, inserting degree-2 nodes. Junction graphs are
/// sparse; planning connects start and goal only to nodes, so this keeps a
/// visible node within reach of any free position. Cycle structure is
/// unchanged. Apply after prune_spurs (pruning would merge the splits away).
TopoGraph subdivide_edges(const TopoGraph& g, double max_segment_length);

/// Plain-text export: `node <id> <x> <y>` lines, then
/// `edge <id_a> <id_b> <length> <n>` lines each followed by n `x y` lines.
void write_graph(const TopoGraph& g, std::ostream& out);

}  // namespace topo_orca
