#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bellsim/errors.hpp"
#include "bellsim/numerics.hpp"

namespace bellsim::numerics {
namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

using Point = std::vector<double>;

double diameter(const std::vector<Point>& vertices) {
  double d = 0.0;
  for (std::size_t v = 1; v < vertices.size(); ++v) {
    for (std::size_t i = 0; i < vertices[0].size(); ++i) {
      d = std::max(d, std::abs(vertices[v][i] - vertices[0][i]));
    }
  }
  return d;
}

Point blend(const Point& centroid, const Point& worst, double coeff) {
  Point p(centroid.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = centroid[i] + coeff * (centroid[i] - worst[i]);
  }
  return p;
}

}  // namespace

SimplexResult minimize_simplex(const Objective& f, std::span<const double> start,
                               const SimplexOptions& options) {
  const std::size_t k = start.size();
  if (k == 0 || k > 8) {
    throw PreconditionError("minimize_simplex: dimension must lie in [1, 8], got " +
                            std::to_string(k));
  }

  std::vector<Point> vertices(k + 1, Point(start.begin(), start.end()));
  for (std::size_t i = 0; i < k; ++i) vertices[i + 1][i] += options.initial_step;
  std::vector<double> values(k + 1);
  for (std::size_t v = 0; v <= k; ++v) values[v] = f(vertices[v]);

  std::vector<std::size_t> order(k + 1);
  auto sort_vertices = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<Point> sorted_vertices(k + 1);
    std::vector<double> sorted_values(k + 1);
    for (std::size_t i = 0; i <= k; ++i) {
      sorted_vertices[i] = std::move(vertices[order[i]]);
      sorted_values[i] = values[order[i]];
    }
    vertices = std::move(sorted_vertices);
    values = std::move(sorted_values);
  };

  SimplexResult result;
  sort_vertices();
  int iter = 0;
  for (; iter < options.max_iter; ++iter) {
    if (diameter(vertices) < options.tol) {
      result.converged = true;
      break;
    }

    Point centroid(k, 0.0);
    for (std::size_t v = 0; v < k; ++v) {
      for (std::size_t i = 0; i < k; ++i) centroid[i] += vertices[v][i];
    }
    for (double& c : centroid) c /= static_cast<double>(k);

    const Point& worst = vertices[k];
    Point reflected = blend(centroid, worst, kReflect);
    const double f_reflected = f(reflected);

    if (f_reflected < values[0]) {
      Point expanded = blend(centroid, worst, kExpand);
      const double f_expanded = f(expanded);
      if (f_expanded < f_reflected) {
        vertices[k] = std::move(expanded);
        values[k] = f_expanded;
      } else {
        vertices[k] = std::move(reflected);
        values[k] = f_reflected;
      }
    } else if (f_reflected < values[k - 1]) {
      vertices[k] = std::move(reflected);
      values[k] = f_reflected;
    } else {
      const bool outside = f_reflected < values[k];
      Point contracted = outside ? blend(centroid, worst, kContract * kReflect)
                                 : blend(centroid, worst, -kContract);
      const double f_contracted = f(contracted);
      if (f_contracted < std::min(f_reflected, values[k])) {
        vertices[k] = std::move(contracted);
        values[k] = f_contracted;
      } else {
        for (std::size_t v = 1; v <= k; ++v) {
          for (std::size_t i = 0; i < k; ++i) {
            vertices[v][i] = vertices[0][i] + kShrink * (vertices[v][i] - vertices[0][i]);
          }
          values[v] = f(vertices[v]);
        }
      }
    }
    sort_vertices();
  }
  if (!result.converged && diameter(vertices) < options.tol) result.converged = true;

  result.point = vertices[0];
  result.value = values[0];
  result.iterations = iter;
  return result;
}

}  // namespace bellsim::numerics
