#include "doctest.h"

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "rigidstab/pencil.hpp"

using namespace rigidstab;
using cd = std::complex<double>;

namespace {

// first positive root of the pair quadratic for body4_outer(0.5)
constexpr double kRoot1 = 0.5240718916905517;
constexpr double kRoot2 = 17.809261441642782;

Eigen::MatrixXcd random_antisym(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(n, n);
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) {
      X(p, q) = dist(rng);
      X(q, p) = -X(p, q);
    }
  return X;
}

double kernel_defect(const Eigen::MatrixXcd& T, const Eigen::MatrixXcd& X) {
  const Eigen::VectorXcd v = so_coordinates(X);
  return (T * v).norm() / std::max(T.norm() * v.norm(), 1e-300);
}

// five-dimensional fixture whose fixed-axis line passes through the
// intersection abscissa of the two parabolas
StationaryRotation mixed_fixture() {
  return fixtures::make({std::sqrt(kRoot1), 1.0, 2.0, 3.0, 4.0},
                        {{2, 5, 0.5}, {3, 4, 1.0}});
}

}  // namespace

TEST_CASE("pencil scalars in slot order") {
  const auto rot = fixtures::body3_middle();  // slots (1, 3, 2)
  const auto a = pencil_scalars(rot.lam, PencilParameter::finite(2.0));
  REQUIRE(a.size() == 3);
  CHECK(a[0] == cd(-1.0));
  CHECK(a[1] == cd(7.0));
  CHECK(a[2] == cd(2.0));
  const auto ai = pencil_scalars(rot.lam, PencilParameter::infinity());
  for (const auto& v : ai) CHECK(v == cd(1.0));
}

TEST_CASE("twisted bracket reduces to the plain commutator at infinity") {
  std::mt19937_64 rng(5);
  const std::vector<double> lam{1.0, 2.0, 3.0, 4.0};
  const auto X = random_antisym(4, rng);
  const auto Y = random_antisym(4, rng);
  const auto B = bracket_lambda(X, Y, lam, PencilParameter::infinity());
  CHECK((B - (X * Y - Y * X)).norm() < 1e-14 * B.norm());
  // antisymmetry in the arguments and of the value
  const auto C = bracket_lambda(Y, X, lam, PencilParameter::finite(1.7));
  const auto D = bracket_lambda(X, Y, lam, PencilParameter::finite(1.7));
  CHECK((C + D).norm() < 1e-14 * D.norm());
  CHECK((D + D.transpose()).norm() < 1e-14 * D.norm());
}

TEST_CASE("pairing values are pinned") {
  const auto rot = fixtures::body3_middle();
  const Eigen::MatrixXcd G01 = antisym_unit(3, 0, 1);
  const Eigen::MatrixXcd G02 = antisym_unit(3, 0, 2);
  const Eigen::MatrixXcd G12 = antisym_unit(3, 1, 2);
  const auto at2 = PencilParameter::finite(2.0);
  CHECK(std::abs(poisson_eval(rot.M, rot.lam, at2, G01, G12)) < 1e-14);
  CHECK(poisson_eval(rot.M, rot.lam, at2, G02, G12).real() ==
        doctest::Approx(-16.0).epsilon(1e-14));
  CHECK(poisson_eval(rot.M, rot.lam, PencilParameter::infinity(), G02, G12)
            .real() == doctest::Approx(-8.0).epsilon(1e-14));
}

TEST_CASE("tensor entries equal the pairing on elementary generators") {
  std::mt19937_64 rng(17);
  const struct {
    StationaryRotation rot;
    PencilParameter par;
  } cases[] = {
      {fixtures::body3_middle(), PencilParameter::finite(2.0)},
      {fixtures::body4_outer(0.5), PencilParameter::finite(kRoot1)},
      {fixtures::body4_outer(0.5), PencilParameter::finite(cd(1.3, 0.7))},
      {fixtures::body5(), PencilParameter::infinity()},
  };
  for (const auto& c : cases) {
    const int n = c.rot.body.n;
    const auto pairs = antisym_index_pairs(n);
    const Eigen::MatrixXcd T = pencil_tensor(c.rot.M, c.rot.lam, c.par);
    CHECK((T + T.transpose()).norm() < 1e-13 * std::max(T.norm(), 1.0));
    for (size_t k = 0; k < pairs.size(); ++k) {
      for (size_t l = 0; l < pairs.size(); ++l) {
        const auto Gk = antisym_unit(n, pairs[k].first, pairs[k].second);
        const auto Gl = antisym_unit(n, pairs[l].first, pairs[l].second);
        const cd want = poisson_eval(c.rot.M, c.rot.lam, c.par, Gk, Gl);
        CHECK(std::abs(T(k, l) - want) < 1e-12 * std::max(T.norm(), 1.0));
      }
    }
  }
}

TEST_CASE("stabilizer elements annihilate the pairing at every parameter") {
  const PencilParameter params[] = {
      PencilParameter::finite(0.7), PencilParameter::finite(kRoot1),
      PencilParameter::finite(cd(2.0, -1.1)), PencilParameter::infinity()};
  const StationaryRotation rots[] = {
      fixtures::body3_middle(), fixtures::body4_outer(0.5), fixtures::body5(),
      fixtures::make({1, 2, 3, 4, 5, 6}, {{1, 2, 1.0}, {3, 4, 0.8}})};
  for (const auto& rot : rots) {
    const auto K = stabilizer_basis(rot);
    CHECK(static_cast<int>(K.size()) == generic_kernel_dim(rot));
    for (const auto& par : params) {
      const Eigen::MatrixXcd T = pencil_tensor(rot.M, rot.lam, par);
      for (const auto& S : K) {
        CHECK(kernel_defect(T, S.cast<cd>()) < 1e-12);
      }
    }
  }
}

TEST_CASE("pair block matches the ambient pairing and has pinned entries") {
  const auto rot = fixtures::body4_outer(0.5);  // momenta 2.5 and 5
  const auto par = PencilParameter::finite(2.0);  // a = (-1, 14, 2, 7)
  const Eigen::Matrix4cd G = restrict_pair_block(rot, par, 0, 1);

  CHECK(G(0, 1).real() == doctest::Approx(10.0).epsilon(1e-13));
  CHECK(G(0, 2).real() == doctest::Approx(-10.0).epsilon(1e-13));
  CHECK(G(1, 3).real() == doctest::Approx(-35.0).epsilon(1e-13));
  CHECK(G(2, 3).real() == doctest::Approx(-140.0).epsilon(1e-13));
  CHECK(std::abs(G(0, 3)) < 1e-13);
  CHECK(std::abs(G(1, 2)) < 1e-13);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(G(k, k)) < 1e-13);

  // ambient agreement on the embedded entry basis
  for (int k = 0; k < 4; ++k) {
    Eigen::Matrix2cd Ek = Eigen::Matrix2cd::Zero();
    Ek(k / 2, k % 2) = 1.0;
    const auto Xk = embed_plane_pair(4, 0, 1, Ek);
    for (int l = 0; l < 4; ++l) {
      Eigen::Matrix2cd El = Eigen::Matrix2cd::Zero();
      El(l / 2, l % 2) = 1.0;
      const auto Xl = embed_plane_pair(4, 0, 1, El);
      const cd want = poisson_eval(rot.M, rot.lam, par, Xk, Xl);
      CHECK(std::abs(G(k, l) - want) < 1e-12 * std::max(1.0, G.norm()));
    }
  }
}

TEST_CASE("axis block matches the ambient pairing") {
  const auto rot = fixtures::body3_middle();
  const auto par = PencilParameter::finite(2.0);  // a(slot 2) = 2
  const Eigen::Matrix2cd B = restrict_axis_block(rot, par, 0, 2);
  CHECK(B(0, 1).real() == doctest::Approx(-16.0).epsilon(1e-13));
  CHECK(B(1, 0).real() == doctest::Approx(16.0).epsilon(1e-13));
  CHECK(std::abs(B(0, 0)) < 1e-14);
  CHECK(std::abs(B(1, 1)) < 1e-14);
  for (int u = 0; u < 2; ++u) {
    for (int v = 0; v < 2; ++v) {
      const auto Wu = embed_plane_axis(3, 0, 2, Eigen::Vector2cd::Unit(u));
      const auto Wv = embed_plane_axis(3, 0, 2, Eigen::Vector2cd::Unit(v));
      const cd want = poisson_eval(rot.M, rot.lam, par, Wu, Wv);
      CHECK(std::abs(B(u, v) - want) < 1e-13 * std::max(1.0, B.norm()));
    }
  }
}

TEST_CASE("pair block pfaffian equals four times the block determinant") {
  const auto rot4 = fixtures::body4_outer(0.5);
  const auto rot5 = fixtures::body5();
  const PencilParameter params[] = {
      PencilParameter::finite(-3.1), PencilParameter::finite(5.5),
      PencilParameter::finite(cd(2.0, 4.0)), PencilParameter::infinity()};
  for (const auto* rot : {&rot4, &rot5}) {
    for (const auto& par : params) {
      const Eigen::Matrix4cd G = restrict_pair_block(*rot, par, 0, 1);
      const cd pf = G(0, 1) * G(2, 3) - G(0, 2) * G(1, 3) + G(0, 3) * G(1, 2);
      const cd det4 = 4.0 * pair_block_det(*rot, par, 0, 1);
      CHECK(std::abs(pf - det4) < 1e-11 * std::max(1.0, std::abs(det4)));
      CHECK(std::abs(G.determinant() - pf * pf) <
            1e-9 * std::max(1.0, std::abs(pf * pf)));
    }
  }
}

TEST_CASE("block degeneracy happens exactly at diagram abscissas") {
  const auto rot = fixtures::body4_outer(0.5);
  CHECK(pair_block_degenerate(rot, PencilParameter::finite(kRoot1), 0, 1, {}));
  CHECK(pair_block_degenerate(rot, PencilParameter::finite(kRoot2), 0, 1, {}));
  CHECK_FALSE(pair_block_degenerate(rot, PencilParameter::finite(2.0), 0, 1, {}));
  CHECK(degenerate_pairs(rot, PencilParameter::finite(kRoot1), {}).size() == 1);
  CHECK(degenerate_pairs(rot, PencilParameter::finite(2.0), {}).empty());

  const auto rot5 = fixtures::body5();
  CHECK(line_slots_at(rot5, PencilParameter::finite(1.0), {}) ==
        std::vector<int>{4});
  CHECK(line_slots_at(rot5, PencilParameter::finite(2.0), {}).empty());
  CHECK(line_slots_at(rot5, PencilParameter::infinity(), {}).empty());
}

TEST_CASE("kernel generators of a degenerate pair block") {
  const auto rot = fixtures::body4_outer(0.5);
  for (double root : {kRoot1, kRoot2}) {
    const auto par = PencilParameter::finite(root);
    const auto gen = kernel_basis_pair(rot, par, 0, 1, {});
    const Eigen::MatrixXcd T = pencil_tensor(rot.M, rot.lam, par);
    CHECK(kernel_defect(T, gen[0]) < 1e-10);
    CHECK(kernel_defect(T, gen[1]) < 1e-10);
    CHECK((gen[0] + gen[0].transpose()).norm() == 0.0);
    CHECK((gen[1] + gen[1].transpose()).norm() == 0.0);
  }
  CHECK_THROWS_AS(
      (void)kernel_basis_pair(rot, PencilParameter::finite(2.0), 0, 1, {}),
      Error);
}

TEST_CASE("kernel dimensions by block counting and by rank") {
  const auto rot3 = fixtures::body3_middle();
  const auto rot4 = fixtures::body4_outer(0.5);
  const auto rot5 = fixtures::body5();
  const auto rot6 = fixtures::make({1, 2, 3, 4, 5, 6}, {{1, 2, 1.0}, {3, 4, 0.8}});
  CHECK(generic_kernel_dim(rot3) == 1);
  CHECK(generic_kernel_dim(rot4) == 2);
  CHECK(generic_kernel_dim(rot5) == 2);
  CHECK(generic_kernel_dim(rot6) == 3);

  struct Expect {
    const StationaryRotation* rot;
    PencilParameter par;
    int kernel;
  };
  const Expect table[] = {
      {&rot3, PencilParameter::finite(4.0), 3},
      {&rot3, PencilParameter::finite(2.5), 1},
      {&rot4, PencilParameter::finite(2.0), 2},
      {&rot4, PencilParameter::finite(kRoot1), 4},
      {&rot4, PencilParameter::finite(kRoot2), 4},
      {&rot5, PencilParameter::finite(1.0), 6},
      {&rot5, PencilParameter::finite(2.2), 2},
  };
  for (const auto& e : table) {
    CHECK(expected_kernel_dim(*e.rot, e.par, {}) == e.kernel);
    const auto scan = rank_scan(*e.rot, {e.par}, {});
    REQUIRE(scan.size() == 1);
    CHECK(scan[0].kernel_dim == e.kernel);
    const int N = e.rot->body.n * (e.rot->body.n - 1) / 2;
    CHECK(scan[0].rank == N - e.kernel);
  }
}

TEST_CASE("quadratic invariants of the momentum") {
  const auto rot = fixtures::body3_middle();
  CHECK(hamiltonian(rot.M, rot.lam, PencilParameter::infinity()).real() ==
        doctest::Approx(-4.0).epsilon(1e-14));
  CHECK(hamiltonian(rot.M, rot.lam, PencilParameter::finite(4.0)).real() ==
        doctest::Approx(4.0 / 15.0).epsilon(1e-13));
}

TEST_CASE("gradient matches a central difference in every direction") {
  std::mt19937_64 rng(23);
  const auto rot = fixtures::body4_outer(0.5);
  const PencilParameter params[] = {PencilParameter::finite(0.7),
                                    PencilParameter::finite(4.2),
                                    PencilParameter::infinity()};
  for (const auto& par : params) {
    const Eigen::MatrixXcd grad = gradient_matrix(rot, par);
    for (int trial = 0; trial < 5; ++trial) {
      const Eigen::MatrixXd V = random_antisym(4, rng).real();
      const double t = 1e-6;
      const cd hp = hamiltonian(rot.M + t * V, rot.lam, par);
      const cd hm = hamiltonian(rot.M - t * V, rot.lam, par);
      const cd fd = (hp - hm) / (2.0 * t);
      const cd want = (grad * V.cast<cd>()).trace();
      CHECK(std::abs(fd - want) < 1e-8 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("gradient coordinates at pinned parameters") {
  const auto rot = fixtures::body3_middle();
  const auto x4 = gradient_block_coords(rot, PencilParameter::finite(4.0));
  REQUIRE(x4.size() == 1);
  CHECK(x4[0].real() == doctest::Approx(-1.0 / 15.0).epsilon(1e-14));
  CHECK(x4[0].imag() == 0.0);
  const auto xi = gradient_block_coords(rot, PencilParameter::infinity());
  CHECK(xi[0].real() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("gradient lies in the kernel of the pairing") {
  const auto rot4 = fixtures::body4_outer(0.5);
  const auto rot5 = fixtures::body5();
  const PencilParameter params[] = {
      PencilParameter::finite(0.7), PencilParameter::finite(kRoot1),
      PencilParameter::finite(cd(1.3, 0.7)), PencilParameter::infinity()};
  for (const auto& par : params) {
    const Eigen::MatrixXcd T = pencil_tensor(rot4.M, rot4.lam, par);
    CHECK(kernel_defect(T, gradient_matrix(rot4, par)) < 1e-12);
  }
  const auto par5 = PencilParameter::finite(2.2);
  const Eigen::MatrixXcd T5 = pencil_tensor(rot5.M, rot5.lam, par5);
  CHECK(kernel_defect(T5, gradient_matrix(rot5, par5)) < 1e-12);
}

TEST_CASE("stability form: closed Gram equals the ambient polarization") {
  const auto rot = mixed_fixture();
  const std::vector<double> x{0.7, -0.3};
  const auto form = cocycle_form(rot, kRoot1, x, {});
  REQUIRE(form.basis.size() == 6);  // one pair block + one line times two planes
  REQUIRE(form.gram.rows() == 6);

  const double expected[6] = {9.345229679769961,  21.465700343395252,
                              -0.8328741895415344, -27.082874189541528,
                              5.213892162464171,   12.71389216246417};
  for (int k = 0; k < 6; ++k) {
    CHECK(form.gram(k, k) == doctest::Approx(expected[k]).epsilon(1e-11));
  }

  const Eigen::MatrixXcd Xel = block_diag_element(rot.body.n, {x[0], x[1]});
  const auto par = PencilParameter::finite(kRoot1);
  const double scale = form.gram.norm();
  for (int u = 0; u < 6; ++u) {
    for (int v = 0; v < 6; ++v) {
      const cd amb = cocycle_eval(rot.M, rot.lam, par, Xel, form.basis[u],
                                  form.basis[v]);
      CHECK(std::abs(amb - cd(form.gram(u, v))) < 1e-11 * scale);
    }
  }
}

TEST_CASE("pairing at infinity on a degenerate pair kernel is symplectic") {
  const auto rot = fixtures::body4_outer(0.5);
  const auto par = PencilParameter::finite(kRoot1);
  const auto a = pencil_scalars(rot.lam, par);
  const double m1 = rot.momenta[0];
  const double m2 = rot.momenta[1];
  const auto gen = kernel_basis_pair(rot, par, 0, 1, {});

  const auto element = [&](double al, double be) {
    return Eigen::MatrixXcd(al * gen[0] + be * gen[1]);
  };
  const double al = 0.3, be = -0.8, alt = 1.1, bet = 0.4;
  const cd got = poisson_eval(rot.M, rot.lam, PencilParameter::infinity(),
                              element(al, be), element(alt, bet));
  CHECK(got.real() == doctest::Approx(-5632.694645075222).epsilon(1e-12));

  const double b1 = (a[0] + a[1]).real();
  const double b2 = (a[2] + a[3]).real();
  const double closed =
      2.0 * m1 * a[2].real() * (m1 * m1 * b2 - m2 * m2 * b1) * (al * bet - alt * be);
  CHECK(got.real() == doctest::Approx(closed).epsilon(1e-12));
  // alternating: vanishes on equal arguments
  CHECK(std::abs(poisson_eval(rot.M, rot.lam, PencilParameter::infinity(),
                              element(al, be), element(al, be))) <
        1e-10 * std::abs(got));
}

TEST_CASE("compactness certificates across the catalogue") {
  SUBCASE("stable four dimensional rotation passes at both roots") {
    const auto rot = fixtures::body4_outer(0.5);
    for (double root : {kRoot1, kRoot2}) {
      const auto cert =
          compactness_certificate(rot, PencilParameter::finite(root), {});
      CHECK(cert.applicable);
      CHECK(cert.compact);
      CHECK(cert.min_eigenvalue > 0.0);
      REQUIRE(cert.element.size() == 2);
    }
  }
  SUBCASE("stable three dimensional rotations pass at the line") {
    for (const auto& rot : {fixtures::body3_long(), fixtures::body3_short()}) {
      const double x0 = rot.lam[2] * rot.lam[2];
      const auto cert =
          compactness_certificate(rot, PencilParameter::finite(x0), {});
      CHECK(cert.applicable);
      CHECK(cert.compact);
    }
  }
  SUBCASE("unstable rotations fail at their lower intersections") {
    const auto rot3 = fixtures::body3_middle();
    const auto c3 = compactness_certificate(rot3, PencilParameter::finite(4.0), {});
    CHECK(c3.applicable);
    CHECK_FALSE(c3.compact);
    CHECK(c3.min_eigenvalue < 0.0);

    const auto rot4 = fixtures::body4_outer(4.0);
    for (double root : {4.5775017466240495, 8.155831586709283}) {
      const auto cert =
          compactness_certificate(rot4, PencilParameter::finite(root), {});
      CHECK(cert.applicable);
      CHECK_FALSE(cert.compact);
    }
  }
  SUBCASE("infinity passes trivially, complex parameters do not apply") {
    const auto rot = fixtures::body4_outer(2.0);
    const auto ci = compactness_certificate(rot, PencilParameter::infinity(), {});
    CHECK(ci.applicable);
    CHECK(ci.compact);
    const auto cc = compactness_certificate(
        rot, PencilParameter::finite(cd(35.0 / 6.0, 2.9391986814247337)), {});
    CHECK_FALSE(cc.applicable);
  }
  SUBCASE("nondegenerate parameters pass vacuously") {
    const auto rot = fixtures::body4_outer(0.5);
    const auto cert =
        compactness_certificate(rot, PencilParameter::finite(2.0), {});
    CHECK(cert.applicable);
    CHECK(cert.compact);
    CHECK(cert.note.find("no degenerate") != std::string::npos);
  }
}

TEST_CASE("semisimplicity proxy follows tangency") {
  const auto good = build_diagram(fixtures::body4_outer(0.5), {});
  CHECK(diagonalizability_check(good).ok);
  const auto bad = build_diagram(fixtures::body4_tangent(), {});
  const auto chk = diagonalizability_check(bad);
  CHECK_FALSE(chk.ok);
  REQUIRE(chk.tangencies.size() == 1);
}

TEST_CASE("parameter change intertwines the brackets") {
  std::mt19937_64 rng(31);
  const std::vector<double> lam{1.0, 4.0, 2.0, 3.0};
  const double alpha = 0.3, beta = -2.1;  // both below 1 = min squared
  for (int trial = 0; trial < 4; ++trial) {
    const auto X = random_antisym(4, rng);
    const auto Y = random_antisym(4, rng);
    const auto lhs = pencil_isomorphism(
        alpha, beta, bracket_lambda(X, Y, lam, PencilParameter::finite(alpha)),
        lam);
    const auto rhs = bracket_lambda(pencil_isomorphism(alpha, beta, X, lam),
                                    pencil_isomorphism(alpha, beta, Y, lam),
                                    lam, PencilParameter::finite(beta));
    CHECK((lhs - rhs).norm() < 1e-12 * std::max(1.0, rhs.norm()));
  }
  CHECK_THROWS_AS((void)pencil_isomorphism(1.0, -2.0,
                                           Eigen::MatrixXcd::Zero(4, 4), lam),
                  Error);
  CHECK_THROWS_AS((void)pencil_isomorphism(0.5, -2.0,
                                           Eigen::MatrixXcd::Zero(3, 3), lam),
                  Error);
}
