#include "rigidstab/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rigidstab {

namespace {

using cd = std::complex<double>;

Eigen::VectorXcd scalars_vector(const std::vector<double>& lam,
                                const PencilParameter& lambda) {
  const int n = static_cast<int>(lam.size());
  Eigen::VectorXcd a(n);
  for (int k = 0; k < n; ++k) {
    a(k) = lambda.infinite ? cd(1.0, 0.0) : cd(lam[k] * lam[k], 0.0) - lambda.value;
  }
  return a;
}

cd sqrt_principal(const PencilParameter& lambda) {
  return std::sqrt(lambda.value);
}

// unit 2x2 matrices in the (a, b; c, d) entry order
Eigen::Matrix2cd entry_unit(int k) {
  Eigen::Matrix2cd E = Eigen::Matrix2cd::Zero();
  E(k / 2, k % 2) = 1.0;
  return E;
}

}  // namespace

std::vector<std::complex<double>> pencil_scalars(const std::vector<double>& lam,
                                                 const PencilParameter& lambda) {
  const Eigen::VectorXcd a = scalars_vector(lam, lambda);
  return {a.data(), a.data() + a.size()};
}

Eigen::MatrixXcd bracket_lambda(const Eigen::MatrixXcd& X,
                                const Eigen::MatrixXcd& Y,
                                const std::vector<double>& lam,
                                const PencilParameter& lambda) {
  const Eigen::VectorXcd a = scalars_vector(lam, lambda);
  return X * a.asDiagonal() * Y - Y * a.asDiagonal() * X;
}

std::complex<double> poisson_eval(const Eigen::MatrixXd& M,
                                  const std::vector<double>& lam,
                                  const PencilParameter& lambda,
                                  const Eigen::MatrixXcd& X,
                                  const Eigen::MatrixXcd& Y) {
  const Eigen::MatrixXcd Z = bracket_lambda(X, Y, lam, lambda);
  cd s(0.0, 0.0);
  for (int p = 0; p < M.rows(); ++p) {
    for (int q = 0; q < M.cols(); ++q) {
      s += M(p, q) * Z(p, q);
    }
  }
  return s;
}

Eigen::MatrixXcd pencil_tensor(const Eigen::MatrixXd& M,
                               const std::vector<double>& lam,
                               const PencilParameter& lambda) {
  const int n = static_cast<int>(lam.size());
  const Eigen::VectorXcd a = scalars_vector(lam, lambda);
  const auto pairs = antisym_index_pairs(n);
  const int N = static_cast<int>(pairs.size());
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(N, N);
  // <M, G_k A G_l - G_l A G_k> under <U,V> = Tr(U^T V), written out on the
  // elementary matrices; delta terms survive only on shared indices
  for (int k = 0; k < N; ++k) {
    const auto [p, q] = pairs[k];
    for (int l = k + 1; l < N; ++l) {
      const auto [r, s] = pairs[l];
      cd e(0.0, 0.0);
      if (q == r) e += a(q) * M(p, s);
      if (q == s) e -= a(q) * M(p, r);
      if (p == r) e -= a(p) * M(q, s);
      if (p == s) e += a(p) * M(q, r);
      if (s == p) e -= a(s) * M(r, q);
      if (s == q) e += a(s) * M(r, p);
      if (r == p) e += a(r) * M(s, q);
      if (r == q) e -= a(r) * M(s, p);
      T(k, l) = e;
      T(l, k) = -e;
    }
  }
  return T;
}

std::vector<Eigen::MatrixXd> stabilizer_basis(const StationaryRotation& rot) {
  const int n = rot.body.n;
  std::vector<Eigen::MatrixXd> out = center_basis(rot);
  for (int p = 2 * rot.m; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      out.push_back(antisym_unit(n, p, q));
    }
  }
  return out;
}

std::vector<Eigen::MatrixXd> center_basis(const StationaryRotation& rot) {
  std::vector<Eigen::MatrixXd> out;
  for (int i = 0; i < rot.m; ++i) {
    out.push_back(antisym_unit(rot.body.n, 2 * i, 2 * i + 1));
  }
  return out;
}

Eigen::MatrixXcd embed_plane_pair(int n, int i, int j,
                                  const Eigen::Matrix2cd& X) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  out.block<2, 2>(2 * i, 2 * j) = X;
  out.block<2, 2>(2 * j, 2 * i) = -X.transpose();
  return out;
}

Eigen::Matrix2cd extract_plane_pair(const Eigen::MatrixXcd& X, int i, int j) {
  return X.block<2, 2>(2 * i, 2 * j);
}

Eigen::MatrixXcd embed_plane_axis(int n, int i, int s,
                                  const Eigen::Vector2cd& v) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  out(2 * i, s) = v(0);
  out(2 * i + 1, s) = v(1);
  out(s, 2 * i) = -v(0);
  out(s, 2 * i + 1) = -v(1);
  return out;
}

Eigen::Vector2cd extract_plane_axis(const Eigen::MatrixXcd& X, int i, int s) {
  return Eigen::Vector2cd(X(2 * i, s), X(2 * i + 1, s));
}

Eigen::MatrixXcd block_diag_element(int n, const std::vector<std::complex<double>>& x) {
  Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(n, n);
  for (size_t i = 0; i < x.size(); ++i) {
    X(2 * i, 2 * i + 1) = x[i];
    X(2 * i + 1, 2 * i) = -x[i];
  }
  return X;
}

Eigen::Matrix4cd restrict_pair_block(const StationaryRotation& rot,
                                     const PencilParameter& lambda, int i, int j) {
  const Eigen::VectorXcd a = scalars_vector(rot.lam, lambda);
  Eigen::Matrix2cd Mi = Eigen::Matrix2cd::Zero();
  Mi(0, 1) = rot.momenta[i];
  Mi(1, 0) = -rot.momenta[i];
  Eigen::Matrix2cd Mj = Eigen::Matrix2cd::Zero();
  Mj(0, 1) = rot.momenta[j];
  Mj(1, 0) = -rot.momenta[j];
  const Eigen::Matrix2cd Ai = Eigen::Vector2cd(a(2 * i), a(2 * i + 1)).asDiagonal();
  const Eigen::Matrix2cd Aj = Eigen::Vector2cd(a(2 * j), a(2 * j + 1)).asDiagonal();

  Eigen::Matrix4cd G;
  for (int k = 0; k < 4; ++k) {
    const Eigen::Matrix2cd X = entry_unit(k);
    for (int l = 0; l < 4; ++l) {
      const Eigen::Matrix2cd Y = entry_unit(l);
      G(k, l) = 2.0 * (Mi * X * Aj * Y.transpose() +
                       Mj * X.transpose() * Ai * Y).trace();
    }
  }
  return G;
}

Eigen::Matrix2cd restrict_axis_block(const StationaryRotation& rot,
                                     const PencilParameter& lambda, int i, int s) {
  const Eigen::VectorXcd a = scalars_vector(rot.lam, lambda);
  Eigen::Matrix2cd Mi = Eigen::Matrix2cd::Zero();
  Mi(0, 1) = rot.momenta[i];
  Mi(1, 0) = -rot.momenta[i];
  return -2.0 * a(s) * Mi;
}

std::complex<double> pair_block_det(const StationaryRotation& rot,
                                    const PencilParameter& lambda, int i, int j) {
  const Eigen::VectorXcd a = scalars_vector(rot.lam, lambda);
  const double mi2 = rot.momenta[i] * rot.momenta[i];
  const double mj2 = rot.momenta[j] * rot.momenta[j];
  return mj2 * a(2 * i) * a(2 * i + 1) - mi2 * a(2 * j) * a(2 * j + 1);
}

bool pair_block_degenerate(const StationaryRotation& rot,
                           const PencilParameter& lambda, int i, int j,
                           const Tolerances& tol) {
  const Eigen::VectorXcd a = scalars_vector(rot.lam, lambda);
  const double mi2 = rot.momenta[i] * rot.momenta[i];
  const double mj2 = rot.momenta[j] * rot.momenta[j];
  const cd t1 = mj2 * a(2 * i) * a(2 * i + 1);
  const cd t2 = mi2 * a(2 * j) * a(2 * j + 1);
  const double scale = std::abs(t1) + std::abs(t2);
  return std::abs(t1 - t2) <= tol.class_tol * std::max(scale, 1e-300);
}

std::vector<std::pair<int, int>> degenerate_pairs(const StationaryRotation& rot,
                                                  const PencilParameter& lambda,
                                                  const Tolerances& tol) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < rot.m; ++i) {
    for (int j = i + 1; j < rot.m; ++j) {
      if (pair_block_degenerate(rot, lambda, i, j, tol)) {
        out.emplace_back(i, j);
      }
    }
  }
  return out;
}

std::vector<int> line_slots_at(const StationaryRotation& rot,
                               const PencilParameter& lambda,
                               const Tolerances& tol) {
  std::vector<int> out;
  if (lambda.infinite) return out;
  for (int s = 2 * rot.m; s < rot.body.n; ++s) {
    const double x0 = rot.lam[s] * rot.lam[s];
    const double scale = std::max({1.0, std::abs(lambda.value), x0});
    if (std::abs(lambda.value - x0) <= tol.class_tol * scale) {
      out.push_back(s);
    }
  }
  return out;
}

std::array<Eigen::MatrixXcd, 2> kernel_basis_pair(const StationaryRotation& rot,
                                                  const PencilParameter& lambda,
                                                  int i, int j,
                                                  const Tolerances& tol) {
  if (!pair_block_degenerate(rot, lambda, i, j, tol)) {
    std::ostringstream os;
    os << "interaction block of planes " << i + 1 << ", " << j + 1
       << " is nondegenerate at the given parameter";
    throw Error(ErrorCode::NotDegenerate, os.str());
  }
  const Eigen::VectorXcd a = scalars_vector(rot.lam, lambda);
  const double mi = rot.momenta[i];
  const double mj = rot.momenta[j];
  Eigen::Matrix2cd X1;
  X1 << mj * a(2 * i + 1), 0.0, 0.0, mi * a(2 * j);
  Eigen::Matrix2cd X2;
  X2 << 0.0, mi * a(2 * j), -mj * a(2 * i), 0.0;
  return {embed_plane_pair(rot.body.n, i, j, X1),
          embed_plane_pair(rot.body.n, i, j, X2)};
}

int generic_kernel_dim(const StationaryRotation& rot) {
  const int f = rot.fixed_count();
  return rot.m + f * (f - 1) / 2;
}

int expected_kernel_dim(const StationaryRotation& rot,
                        const PencilParameter& lambda, const Tolerances& tol) {
  const int pairs = static_cast<int>(degenerate_pairs(rot, lambda, tol).size());
  const int lines = static_cast<int>(line_slots_at(rot, lambda, tol).size());
  return generic_kernel_dim(rot) + 2 * pairs + 2 * rot.m * lines;
}

std::vector<RankSample> rank_scan(const StationaryRotation& rot,
                                  const std::vector<PencilParameter>& samples,
                                  const Tolerances& tol) {
  const int N = rot.body.n * (rot.body.n - 1) / 2;
  std::vector<RankSample> out;
  out.reserve(samples.size());
  for (const PencilParameter& s : samples) {
    const Eigen::MatrixXcd T = pencil_tensor(rot.M, rot.lam, s);
    RankSample r;
    r.where = s;
    r.rank = numerical_rank(T, tol.rank_tol);
    r.kernel_dim = N - r.rank;
    out.push_back(r);
  }
  return out;
}

std::complex<double> hamiltonian(const Eigen::MatrixXd& M,
                                 const std::vector<double>& lam,
                                 const PencilParameter& lambda) {
  const Eigen::MatrixXd Om = velocity_from_momentum(M, lam);
  if (lambda.infinite) {
    return 0.5 * (Om * M).trace();
  }
  const cd root = sqrt_principal(lambda);
  const int n = static_cast<int>(lam.size());
  Eigen::VectorXcd c(n);
  for (int k = 0; k < n; ++k) {
    c(k) = 1.0 / (lam[k] + root);
  }
  const Eigen::MatrixXcd CtOmC =
      c.asDiagonal() * Om.cast<cd>() * c.asDiagonal();
  return -0.5 * (CtOmC * M.cast<cd>()).trace();
}

std::vector<std::complex<double>> gradient_block_coords(const StationaryRotation& rot,
                                                        const PencilParameter& lambda) {
  std::vector<cd> x(rot.m);
  if (lambda.infinite) {
    for (int i = 0; i < rot.m; ++i) x[i] = rot.omega[i];
    return x;
  }
  const cd root = sqrt_principal(lambda);
  for (int i = 0; i < rot.m; ++i) {
    x[i] = -rot.omega[i] /
           ((rot.lam[2 * i] + root) * (rot.lam[2 * i + 1] + root));
  }
  return x;
}

Eigen::MatrixXcd gradient_matrix(const StationaryRotation& rot,
                                 const PencilParameter& lambda) {
  return block_diag_element(rot.body.n, gradient_block_coords(rot, lambda));
}

std::complex<double> cocycle_eval(const Eigen::MatrixXd& M,
                                  const std::vector<double>& lam,
                                  const PencilParameter& lambda,
                                  const Eigen::MatrixXcd& X,
                                  const Eigen::MatrixXcd& Y,
                                  const Eigen::MatrixXcd& Z) {
  const PencilParameter inf = PencilParameter::infinity();
  const cd byz = poisson_eval(M, lam, inf, bracket_lambda(X, Y, lam, lambda), Z);
  const cd bzy = poisson_eval(M, lam, inf, bracket_lambda(X, Z, lam, lambda), Y);
  return 0.5 * (byz + bzy);
}

CocycleForm cocycle_form(const StationaryRotation& rot, double lambda,
                         const std::vector<double>& x, const Tolerances& tol) {
  if (static_cast<int>(x.size()) != rot.m) {
    throw Error(ErrorCode::BadDimensions,
                "one in-plane coefficient per rotation plane expected");
  }
  const PencilParameter par = PencilParameter::finite(lambda);
  const Eigen::VectorXcd ac = scalars_vector(rot.lam, par);
  std::vector<double> a(ac.size());
  for (int k = 0; k < ac.size(); ++k) a[k] = ac(k).real();

  CocycleForm form;
  std::vector<double> diag;

  for (const auto& [i, j] : degenerate_pairs(rot, par, tol)) {
    const double mi = rot.momenta[i];
    const double mj = rot.momenta[j];
    const double bi = a[2 * i] + a[2 * i + 1];
    const double bj = a[2 * j] + a[2 * j + 1];
    const double f = -2.0 * a[2 * j] * (mi * mi * bj - mj * mj * bi) *
                     (mi * x[i] - mj * x[j]);
    auto gen = kernel_basis_pair(rot, par, i, j, tol);
    const double n0 = gen[0].norm();
    const double n1 = gen[1].norm();
    form.basis.push_back(gen[0] / n0);
    form.basis.push_back(gen[1] / n1);
    diag.push_back(f * a[2 * i + 1] / (n0 * n0));
    diag.push_back(f * a[2 * i] / (n1 * n1));
  }
  for (int s : line_slots_at(rot, par, tol)) {
    for (int i = 0; i < rot.m; ++i) {
      const double g = -2.0 * rot.momenta[i] * x[i];
      const Eigen::MatrixXcd w0 =
          embed_plane_axis(rot.body.n, i, s, Eigen::Vector2cd(1.0, 0.0));
      const Eigen::MatrixXcd w1 =
          embed_plane_axis(rot.body.n, i, s, Eigen::Vector2cd(0.0, 1.0));
      form.basis.push_back(w0 / w0.norm());
      form.basis.push_back(w1 / w1.norm());
      diag.push_back(g * a[2 * i] / 2.0);
      diag.push_back(g * a[2 * i + 1] / 2.0);
    }
  }

  form.gram = Eigen::MatrixXd::Zero(diag.size(), diag.size());
  for (size_t k = 0; k < diag.size(); ++k) form.gram(k, k) = diag[k];
  return form;
}

CompactnessCertificate compactness_certificate(const StationaryRotation& rot,
                                               const PencilParameter& lambda,
                                               const Tolerances& tol) {
  CompactnessCertificate cert;
  cert.lambda = lambda;
  if (lambda.infinite) {
    cert.applicable = true;
    cert.compact = true;
    cert.note = "at infinity the bracket is the standard compact one; its "
                "stabilizer subalgebras are compact";
    return cert;
  }
  if (std::abs(lambda.value.imag()) > 0.0) {
    cert.applicable = false;
    cert.note = "certificate applies to real parameters only";
    return cert;
  }
  cert.applicable = true;
  const double lv = lambda.value.real();
  const PencilParameter par = PencilParameter::finite(lv);
  const Eigen::VectorXcd ac = scalars_vector(rot.lam, par);

  const auto pairs = degenerate_pairs(rot, par, tol);
  const auto lines = line_slots_at(rot, par, tol);
  if (pairs.empty() && lines.empty()) {
    cert.compact = true;
    cert.note = "no degenerate directions at this parameter";
    return cert;
  }

  std::vector<char> participates(rot.m, 0);
  for (const auto& [i, j] : pairs) participates[i] = participates[j] = 1;
  if (!lines.empty()) std::fill(participates.begin(), participates.end(), 1);

  cert.element.resize(rot.m, 0.0);
  bool vertex_hit = false;
  for (int i = 0; i < rot.m; ++i) {
    const double bi = (ac(2 * i) + ac(2 * i + 1)).real();
    const double bscale = std::abs(ac(2 * i)) + std::abs(ac(2 * i + 1));
    if (std::abs(bi) <= 1e-14 * std::max(bscale, 1e-300)) {
      cert.element[i] = 0.0;
      if (participates[i]) vertex_hit = true;
    } else {
      cert.element[i] = -rot.momenta[i] / bi;
    }
  }

  const CocycleForm form = cocycle_form(rot, lv, cert.element, tol);
  cert.gram_norm = form.gram.norm();
  if (form.gram.rows() == 0) {
    cert.compact = true;
    cert.note = "no degenerate directions at this parameter";
    return cert;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(form.gram);
  cert.min_eigenvalue = es.eigenvalues().minCoeff();
  cert.compact =
      cert.min_eigenvalue > tol.pd_tol * std::max(cert.gram_norm, 1e-300);
  if (vertex_hit) {
    cert.compact = false;
    cert.note = "certifying element undefined: parameter sits at a parabola "
                "vertex of a participating plane";
  }
  return cert;
}

DiagonalizabilityCheck diagonalizability_check(const ParabolicDiagram& d) {
  DiagonalizabilityCheck out;
  for (const Intersection& s : d.intersections) {
    if (s.tangent) {
      out.ok = false;
      out.tangencies.push_back(s);
    }
  }
  return out;
}

Eigen::MatrixXcd pencil_isomorphism(double alpha, double beta,
                                    const Eigen::MatrixXcd& X,
                                    const std::vector<double>& lam) {
  const int n = static_cast<int>(lam.size());
  if (X.rows() != n || X.cols() != n) {
    throw Error(ErrorCode::BadDimensions, "element size does not match body");
  }
  double min_sq = lam[0] * lam[0];
  for (double l : lam) min_sq = std::min(min_sq, l * l);
  if (!(alpha < min_sq) || !(beta < min_sq)) {
    throw Error(ErrorCode::BadParameters,
                "conjugation parameters must lie below the smallest squared "
                "eigenvalue");
  }
  Eigen::VectorXd sa(n), sb(n);
  for (int k = 0; k < n; ++k) {
    sa(k) = std::sqrt(lam[k] * lam[k] - alpha);
    sb(k) = 1.0 / std::sqrt(lam[k] * lam[k] - beta);
  }
  return sb.asDiagonal() * (sa.asDiagonal() * X * sa.asDiagonal()) *
         sb.asDiagonal();
}

}  // namespace rigidstab
