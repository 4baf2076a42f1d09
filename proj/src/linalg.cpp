#include "rigidstab/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

namespace rigidstab {

std::vector<std::pair<int, int>> antisym_index_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      pairs.emplace_back(p, q);
    }
  }
  return pairs;
}

Eigen::MatrixXd antisym_unit(int n, int p, int q) {
  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(n, n);
  E(p, q) = 1.0;
  E(q, p) = -1.0;
  return E;
}

Eigen::VectorXcd so_coordinates(const Eigen::MatrixXcd& X) {
  const int n = static_cast<int>(X.rows());
  Eigen::VectorXcd c(n * (n - 1) / 2);
  int k = 0;
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      c(k++) = X(p, q);
    }
  }
  return c;
}

Eigen::MatrixXcd so_embed(int n, const Eigen::VectorXcd& coords) {
  Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(n, n);
  int k = 0;
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      X(p, q) = coords(k);
      X(q, p) = -coords(k);
      ++k;
    }
  }
  return X;
}

double antisymmetry_defect(const Eigen::MatrixXd& X) {
  return (X + X.transpose()).norm();
}

int numerical_rank(const Eigen::MatrixXcd& A, double rel_tol) {
  if (A.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i) {
    if (s(i) > rel_tol * s(0)) ++r;
  }
  return r;
}

Eigen::MatrixXcd column_space(const Eigen::MatrixXcd& A, double rel_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  int r = 0;
  if (s.size() > 0 && s(0) > 0.0) {
    for (int i = 0; i < s.size(); ++i) {
      if (s(i) > rel_tol * s(0)) ++r;
    }
  }
  return svd.matrixU().leftCols(r);
}

double max_principal_angle(const Eigen::MatrixXcd& U, const Eigen::MatrixXcd& V) {
  if (U.cols() != V.cols()) {
    throw Error(ErrorCode::BadDimensions,
                "principal angles need equal subspace dimensions");
  }
  if (U.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(U.adjoint() * V);
  const double smin = svd.singularValues().minCoeff();
  return std::acos(std::clamp(smin, -1.0, 1.0));
}

MatchingResult match_multisets(const std::vector<std::complex<double>>& a,
                               const std::vector<std::complex<double>>& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::BadDimensions,
                "multiset matching needs lists of equal size");
  }
  const int n = static_cast<int>(a.size());
  MatchingResult res;
  res.assignment.assign(n, -1);
  if (n == 0) return res;

  // Hungarian algorithm with potentials, O(n^3)
  const double INF = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> cost(n + 1, std::vector<double>(n + 1, 0.0));
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      cost[i][j] = std::abs(a[i - 1] - b[j - 1]);
    }
  }
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, INF);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = INF;
      int j1 = -1;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0][j] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  for (int j = 1; j <= n; ++j) {
    res.assignment[p[j] - 1] = j - 1;
  }
  for (int i = 0; i < n; ++i) {
    const double c = std::abs(a[i] - b[res.assignment[i]]);
    res.max_cost = std::max(res.max_cost, c);
    res.total_cost += c;
  }
  return res;
}

void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int t = 0; t < jobs; ++t) {
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace rigidstab
