#include "isodeform/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "isodeform/errors.hpp"

namespace isodeform {

namespace {

std::vector<double> numbers(const std::string& list, const std::string& field) {
  std::vector<double> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("slice: field " + field + ": not a number: '" + item + "'");
    }
  }
  return out;
}

// Gram matrix in (u, v) of z -> image(z) + sum t_j e_{j+4}(z), frames from `base`.
Eigen::Matrix2d slice_gram(const SurfaceChart& base, const SurfaceChart& image, const std::vector<double>& t, cplx z) {
  const auto D = evaluate_surface(image, z, 1);
  Eigen::MatrixXd M(base.N, 2);
  for (int k = 0; k < base.N; ++k) {
    M(k, 0) = D.at(1, 0)[k];
    M(k, 1) = D.at(0, 1)[k];
  }
  if (!t.empty()) {
    const AdaptedFrame f = adapted_frame(base, z);
    for (std::size_t j = 0; j < t.size(); ++j) {
      const auto& e = f.e_jet(static_cast<int>(j) + 5);
      for (int k = 0; k < base.N; ++k) {
        M(k, 0) += t[j] * e[k].d_u();
        M(k, 1) += t[j] * e[k].d_v();
      }
    }
  }
  return M.transpose() * M;
}

double arc_length(const SurfaceChart& base, const SurfaceChart& image, const std::vector<double>& t, cplx a, cplx b) {
  // 5-point Gauss-Legendre on [0, 1]
  static const double x[5] = {0.0469100770306680, 0.2307653449471585, 0.5, 0.7692346550528415, 0.9530899229693320};
  static const double w[5] = {0.1184634425280945, 0.2393143352496832, 0.2844444444444444, 0.2393143352496832, 0.1184634425280945};
  const cplx d = b - a;
  const Eigen::Vector2d dir(d.real(), d.imag());
  double len = 0.0;
  for (int q = 0; q < 5; ++q) {
    const Eigen::Matrix2d G = slice_gram(base, image, t, a + x[q] * d);
    len += w[q] * std::sqrt(dir.dot(G * dir));
  }
  return len;
}

}  // namespace

Eigen::MatrixXd coordinate_projection(const std::array<int, 3>& coords, int N) {
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(3, N);
  for (int r = 0; r < 3; ++r) {
    if (coords[r] < 1 || coords[r] > N)
      throw ProjectionError("slice: coordinate " + std::to_string(coords[r]) + " outside 1.." + std::to_string(N));
    P(r, coords[r] - 1) = 1.0;
  }
  return P;
}

SliceSpec parse_slice(const std::string& text, int N) {
  SliceSpec s;
  s.projection = coordinate_projection({1, 2, 3}, N);
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ';')) {
    if (field.empty()) continue;
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw ConfigError("slice: expected key=value, got '" + field + "'");
    const std::string key = field.substr(0, eq), val = field.substr(eq + 1);
    const auto v = numbers(val, key);
    if (key == "theta") {
      if (v.size() != 1) throw ConfigError("slice: theta takes one value");
      s.theta = v[0];
    } else if (key == "t") {
      s.t = v;
    } else if (key == "grid") {
      if (v.size() != 1 || v[0] < 2 || v[0] != std::floor(v[0])) throw ConfigError("slice: grid must be an integer >= 2");
      s.grid = static_cast<int>(v[0]);
    } else if (key == "coords") {
      if (v.size() != 3) throw ConfigError("slice: coords takes three indices");
      s.projection = coordinate_projection({static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2])}, N);
    } else if (key == "proj") {
      if (static_cast<int>(v.size()) != 3 * N) throw ConfigError("slice: proj needs 3N numbers");
      s.projection.resize(3, N);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < N; ++c) s.projection(r, c) = v[static_cast<std::size_t>(r * N + c)];
    } else {
      throw ConfigError("slice: unknown field '" + key + "'");
    }
  }
  return s;
}

Mesh slice_mesh(const RunConfig& cfg, const SurfaceChart& chart, const SliceSpec& slice, Exec exec) {
  if (slice.projection.rows() != 3 || slice.projection.cols() != chart.N)
    throw ProjectionError("slice: projection must be 3 x " + std::to_string(chart.N));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(slice.projection);
  const auto& sv = svd.singularValues();
  if (sv(2) <= 1e-12 * std::max(1.0, sv(0))) throw ProjectionError("slice: projection has rank below 3");
  if (!slice.t.empty() && static_cast<int>(slice.t.size()) != chart.N - 4)
    throw ConfigError("slice: t must have " + std::to_string(chart.N - 4) + " entries");
  const bool zero_section = std::all_of(slice.t.begin(), slice.t.end(), [](double v) { return v == 0.0; });
  const std::vector<double> t = zero_section ? std::vector<double>{} : slice.t;

  const DeformedChart d = associated_surface(chart, slice.theta);
  const int n = slice.grid;
  const auto grid = sample_grid(cfg, n);

  Mesh mesh;
  mesh.vertices.resize(grid.size());
  for_each_index(
      static_cast<long>(grid.size()),
      [&](long i) {
        const cplx z = grid[static_cast<std::size_t>(i)];
        Eigen::VectorXd p;
        if (t.empty()) {
          const auto v = evaluate_surface(d.chart, z, 0).at(0, 0);
          p = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
        } else {
          const DeformedPoint dp = deformed_immersion(chart, d, RuledPoint{z, t});
          p = Eigen::Map<const Eigen::VectorXd>(dp.F.data(), static_cast<Eigen::Index>(dp.F.size()));
        }
        mesh.vertices[static_cast<std::size_t>(i)] = slice.projection * p;
      },
      exec);

  auto id = [n](int i, int j) { return j * n + i; };
  for (int j = 0; j + 1 < n; ++j)
    for (int i = 0; i + 1 < n; ++i) {
      const int a = id(i, j) + 1, b = id(i + 1, j) + 1, c = id(i + 1, j + 1) + 1, e = id(i, j + 1) + 1;
      mesh.faces.push_back({a, b, c});
      mesh.faces.push_back({a, c, e});
    }

  std::vector<std::pair<int, int>> edges;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if (i + 1 < n) edges.emplace_back(id(i, j), id(i + 1, j));
      if (j + 1 < n) edges.emplace_back(id(i, j), id(i, j + 1));
      if (i + 1 < n && j + 1 < n) edges.emplace_back(id(i, j), id(i + 1, j + 1));
    }
  std::vector<double> len(edges.size());
  for_each_index(
      static_cast<long>(edges.size()),
      [&](long k) {
        const auto [a, b] = edges[static_cast<std::size_t>(k)];
        len[static_cast<std::size_t>(k)] = arc_length(chart, d.chart, t, grid[static_cast<std::size_t>(a)],
                                                      grid[static_cast<std::size_t>(b)]);
      },
      exec);
  EdgeStats& st = mesh.edge_stats;
  st.edges = static_cast<long>(len.size());
  st.min = *std::min_element(len.begin(), len.end());
  st.max = *std::max_element(len.begin(), len.end());
  for (double l : len) st.total += l;
  st.mean = st.total / static_cast<double>(st.edges);
  return mesh;
}

void write_obj(std::ostream& os, const Mesh& mesh) {
  os << std::setprecision(17);
  for (const auto& v : mesh.vertices) os << "v " << v(0) << ' ' << v(1) << ' ' << v(2) << '\n';
  for (const auto& f : mesh.faces) os << "f " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
}

}  // namespace isodeform
