#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "isodeform/config.hpp"
#include "isodeform/parallel.hpp"

namespace isodeform {

/// A fixed-ruling slice z -> F_theta(z, t) of the sample disc, projected to three
/// ambient directions.
struct SliceSpec {
  double theta = 0.0;
  std::vector<double> t;       // empty means the zero section
  Eigen::MatrixXd projection;  // 3 x N
  int grid = 20;
};

/// Coordinate projection onto ambient axes (1-based).
Eigen::MatrixXd coordinate_projection(const std::array<int, 3>& coords, int N);

/// "theta=<r>;t=<a,b,...>;coords=<i,j,k>;grid=<n>" or "...;proj=<3N row-major numbers>".
/// Missing fields keep their defaults (coords 1,2,3).
SliceSpec parse_slice(const std::string& text, int N);

/// Edge lengths measured in the metric induced by the immersion (arc length of the
/// image of each straight parameter edge), so isometric slices give equal statistics.
struct EdgeStats {
  long edges = 0;
  double min = 0.0, max = 0.0, mean = 0.0, total = 0.0;
};

struct Mesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 3>> faces;  // 1-based
  EdgeStats edge_stats;
};

/// Throws ProjectionError when the projection has rank below 3.
Mesh slice_mesh(const RunConfig& cfg, const SurfaceChart& chart, const SliceSpec& slice,
                Exec exec = Exec::parallel);

void write_obj(std::ostream& os, const Mesh& mesh);

}  // namespace isodeform
