#include "rigidstab/lieclass.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "rigidstab/diagram.hpp"

namespace rigidstab {

namespace {

bool real_parameter(const PencilParameter& lambda, const Tolerances& tol) {
  if (lambda.infinite) return false;
  const double scale = std::max(1.0, std::abs(lambda.value));
  return std::abs(lambda.value.imag()) <= tol.class_tol * scale;
}

// value separating the planes into intersection clusters: the parabola
// ordinate at finite parameters, the leading coefficient at infinity
std::complex<double> cluster_value(const StationaryRotation& rot, int i,
                                   const PencilParameter& lambda) {
  const double p = rot.lam[2 * i] * rot.lam[2 * i];
  const double q = rot.lam[2 * i + 1] * rot.lam[2 * i + 1];
  const double m = rot.momenta[i];
  if (lambda.infinite) return {1.0 / (m * m), 0.0};
  return (lambda.value - p) * (lambda.value - q) / (m * m);
}

std::string subscripted(const char* stem, int low, int high) {
  std::ostringstream os;
  if (low == 0) {
    os << stem << "(" << high << ")";
  } else {
    os << stem << "(" << low << "," << high << ")";
  }
  return os.str();
}

}  // namespace

CombinatoricsAt combinatorics_at(const StationaryRotation& rot,
                                 const PencilParameter& lambda,
                                 const Tolerances& tol) {
  CombinatoricsAt out;
  out.lambda = lambda;

  const int m = rot.m;
  const int n = rot.body.n;

  out.lines_total = rot.fixed_count();
  if (!lambda.infinite) {
    const std::vector<int> at = line_slots_at(rot, lambda, tol);
    out.on_line = !at.empty();
    if (real_parameter(lambda, tol)) {
      for (int s = 2 * m; s < n; ++s) {
        if (std::find(at.begin(), at.end(), s) != at.end()) continue;
        const double x0 = rot.lam[s] * rot.lam[s];
        (x0 < lambda.value.real() ? out.lines_left : out.lines_right)++;
      }
    }
  }

  // union-find over planes, joined exactly when the interaction block drops
  // rank at this parameter
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (pair_block_degenerate(rot, lambda, i, j, tol)) {
        parent[find(i)] = find(j);
      }
    }
  }

  std::vector<std::vector<int>> groups(m);
  for (int i = 0; i < m; ++i) groups[find(i)].push_back(i);

  const bool singles_count = out.on_line && real_parameter(lambda, tol);
  for (const std::vector<int>& g : groups) {
    if (g.empty()) continue;
    if (static_cast<int>(g.size()) < 2 && !singles_count) continue;
    DiagramPoint z;
    z.planes = g;
    z.ordinate = cluster_value(rot, g.front(), lambda);
    if (!lambda.infinite && real_parameter(lambda, tol)) {
      z.upper = z.ordinate.real() > 0.0;
      for (int i : g) {
        const double p = rot.lam[2 * i] * rot.lam[2 * i];
        const double q = rot.lam[2 * i + 1] * rot.lam[2 * i + 1];
        const double vertex = 0.5 * (p + q);
        (vertex < lambda.value.real() ? z.vertices_left : z.vertices_right)++;
      }
    }
    out.points.push_back(std::move(z));
  }
  std::sort(out.points.begin(), out.points.end(),
            [](const DiagramPoint& a, const DiagramPoint& b) {
              return a.planes.front() < b.planes.front();
            });
  return out;
}

LieClassification classify_g_lambda(const StationaryRotation& rot,
                                    const PencilParameter& lambda,
                                    const Tolerances& tol) {
  const CombinatoricsAt comb = combinatorics_at(rot, lambda, tol);

  LieClassification out;
  out.lambda = lambda;
  out.complex_case = !lambda.infinite && !real_parameter(lambda, tol);
  out.total_dim = expected_kernel_dim(rot, lambda, tol);

  int used = 0;
  const auto push = [&](std::string name, int dim) {
    used += dim;
    out.factors.push_back({std::move(name), dim});
  };

  if (lambda.infinite) {
    const int v = comb.lines_total;
    if (v >= 2) push(subscripted("so", 0, v), v * (v - 1) / 2);
    for (const DiagramPoint& z : comb.points) {
      const int k = static_cast<int>(z.planes.size());
      push(subscripted("u", 0, k), k * k);
    }
  } else if (out.complex_case) {
    const int v = comb.lines_total;
    if (v >= 2) {
      std::ostringstream os;
      os << "so(" << v << ",C)";
      push(os.str(), v * (v - 1) / 2);
    }
    for (const DiagramPoint& z : comb.points) {
      const int k = static_cast<int>(z.planes.size());
      std::ostringstream os;
      os << "gl(" << k << ",C)";
      push(os.str(), k * k);
    }
  } else {
    const int l = comb.lines_left;
    const int r = comb.lines_right;
    if (l + r >= 2) {
      std::string name = subscripted("so", std::min(l, r), std::max(l, r));
      int dim = (l + r) * (l + r - 1) / 2;
      if (comb.on_line) {
        name += " (+) R^" + std::to_string(l + r);
        dim += l + r;
      }
      push(std::move(name), dim);
    }
    for (const DiagramPoint& z : comb.points) {
      const int k = static_cast<int>(z.planes.size());
      std::string name;
      int dim = k * k;
      if (z.upper) {
        const int lo = std::min(z.vertices_left, z.vertices_right);
        const int hi = std::max(z.vertices_left, z.vertices_right);
        name = subscripted("u", lo, hi);
        if (comb.on_line) {
          name += " (+) C^" + std::to_string(k);
          dim += 2 * k;
        }
      } else {
        name = "gl(" + std::to_string(k) + ",R)";
        if (comb.on_line) {
          name += " (+) R^" + std::to_string(2 * k);
          dim += 2 * k;
        }
      }
      push(std::move(name), dim);
    }
  }

  out.residual_dim = out.total_dim - used;
  if (out.residual_dim < 0) {
    std::ostringstream os;
    os << "factor dimensions exceed the stabilizer dimension (" << used
       << " > " << out.total_dim << ")";
    throw Error(ErrorCode::NegativeResidualDimension, os.str());
  }

  std::ostringstream os;
  for (std::size_t k = 0; k < out.factors.size(); ++k) {
    if (k) os << " + ";
    os << out.factors[k].name;
  }
  if (out.residual_dim > 0) {
    if (!out.factors.empty()) os << " + ";
    os << (out.complex_case ? "C^" : "R^") << out.residual_dim;
  }
  if (out.factors.empty() && out.residual_dim == 0) os << "0";
  out.canonical = os.str();
  return out;
}

std::vector<LieClassification> classify_spectrum(const StationaryRotation& rot,
                                                 const Tolerances& tol) {
  const ParabolicDiagram d = build_diagram(rot, tol);
  std::vector<PencilParameter> where = distinct_spectrum(d);
  const bool has_inf = std::any_of(where.begin(), where.end(),
                                   [](const PencilParameter& p) { return p.infinite; });
  if (!has_inf) where.push_back(PencilParameter::infinity());

  std::vector<LieClassification> out;
  out.reserve(where.size());
  for (const PencilParameter& p : where) {
    out.push_back(classify_g_lambda(rot, p, tol));
  }
  return out;
}

}  // namespace rigidstab
