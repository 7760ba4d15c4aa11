#include "nicolai/fock.hpp"
#include "nicolai/errors.hpp"
#include "nicolai/model.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <random>
#include <sstream>

using namespace nicolai;
using namespace nicolai::car;
using namespace nicolai::fock;

namespace {

double mat_dist(const SparseMatrix& a, const SparseMatrix& b) {
  return SparseMatrix(a - b).norm();
}

Polynomial random_poly(std::mt19937& rng, Site lo, Site hi) {
  std::uniform_int_distribution<int> site(lo, hi);
  std::uniform_int_distribution<int> kind(0, 1);
  std::uniform_int_distribution<int> num(-2, 2);
  std::uniform_int_distribution<int> len(0, 4);
  Polynomial p;
  for (int t = 0; t < 3; ++t) {
    Polynomial w = Polynomial::identity(Scalar{Rational(num(rng)),
                                               Rational(num(rng))});
    int l = len(rng);
    for (int i = 0; i < l; ++i)
      w = multiply(w, kind(rng) ? creator(site(rng)) : annihilator(site(rng)));
    p += w;
  }
  return p;
}

}  // namespace

TEST_CASE("window slots and dimensions", "[fock]") {
  Window w = Window::interval(-1, 2);
  REQUIRE(w.size() == 4);
  REQUIRE(w.dim() == 16);
  REQUIRE(w.slot(-1) == 0);
  REQUIRE(w.slot(2) == 3);
  REQUIRE(w.slot(5) == -1);
  REQUIRE(w.contains(number_op(0)));
  REQUIRE(!w.contains(number_op(3)));

  REQUIRE_THROWS_AS(Window::interval(0, 20), WindowTooLarge);
  REQUIRE_THROWS_AS(Window({3, 1, 2}), Error);
  REQUIRE_THROWS_AS(Window({1, 1}), Error);
  REQUIRE_THROWS_AS(Window(std::vector<Site>{}), EmptyInput);

  Window r = Window::of_region(model::Region::periodic(2, 2));
  REQUIRE(r == Window::interval(-1, 2));
}

TEST_CASE("annihilator matrices carry the crossing signs", "[fock]") {
  // two-site window; the slot of site 0 is the least significant bit
  Window w = Window::interval(0, 1);
  Eigen::MatrixXcd c0 = Eigen::MatrixXcd(represent(annihilator(0), w).matrix);
  Eigen::MatrixXcd c1 = Eigen::MatrixXcd(represent(annihilator(1), w).matrix);

  Eigen::MatrixXcd e0 = Eigen::MatrixXcd::Zero(4, 4);
  e0(0, 1) = 1;   // |10> -> |00>
  e0(2, 3) = 1;   // |11> -> |01>
  Eigen::MatrixXcd e1 = Eigen::MatrixXcd::Zero(4, 4);
  e1(0, 2) = 1;   // |01> -> |00>
  e1(1, 3) = -1;  // |11> -> |10>, one occupied slot crossed
  REQUIRE((c0 - e0).norm() == 0.0);
  REQUIRE((c1 - e1).norm() == 0.0);
}

TEST_CASE("number operators are diagonal occupation counts", "[fock]") {
  Window w = Window::interval(0, 2);
  for (Site s : {0, 1, 2}) {
    Eigen::MatrixXcd n = Eigen::MatrixXcd(represent(number_op(s), w).matrix);
    for (std::size_t state = 0; state < w.dim(); ++state) {
      double occ = (state >> w.slot(s)) & 1 ? 1.0 : 0.0;
      REQUIRE(n(long(state), long(state)) == std::complex<double>(occ, 0));
    }
  }
}

TEST_CASE("representation is a star homomorphism", "[fock]") {
  Window w = Window::interval(-1, 3);
  std::mt19937 rng(71);
  for (int trial = 0; trial < 15; ++trial) {
    Polynomial a = random_poly(rng, -1, 3);
    Polynomial b = random_poly(rng, -1, 3);
    FockOperator fa = represent(a, w);
    FockOperator fb = represent(b, w);
    FockOperator fab = represent(multiply(a, b), w);
    REQUIRE(mat_dist(fab.matrix, SparseMatrix(fa.matrix * fb.matrix)) <
            1e-12);
    FockOperator fadj = represent(adjoint(a), w);
    REQUIRE(mat_dist(fadj.matrix, SparseMatrix(fa.matrix.adjoint())) <
            1e-12);
    FockOperator fsum = represent(a + b, w);
    REQUIRE(mat_dist(fsum.matrix, SparseMatrix(fa.matrix + fb.matrix)) <
            1e-12);
  }
}

TEST_CASE("canonical relations hold at matrix level", "[fock]") {
  Window w = Window::interval(0, 3);
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(16, 16);
  for (Site i : {0, 1, 2, 3}) {
    Eigen::MatrixXcd c = Eigen::MatrixXcd(represent(annihilator(i), w).matrix);
    Eigen::MatrixXcd cd = Eigen::MatrixXcd(represent(creator(i), w).matrix);
    REQUIRE((c * cd + cd * c - id).norm() < 1e-14);
    REQUIRE((c * c).norm() == 0.0);
    for (Site j : {0, 1, 2, 3}) {
      if (i == j) continue;
      Eigen::MatrixXcd cj =
          Eigen::MatrixXcd(represent(annihilator(j), w).matrix);
      REQUIRE((c * cj + cj * c).norm() == 0.0);
    }
  }
}

TEST_CASE("product with a contraction, checked against matrices", "[fock]") {
  // independent confirmation of the symbolic identity
  // (c_1 c*_2 c_3) c*_1 = c*_2 c_3 + c*_1 c*_2 c_1 c_3
  Window w = Window::interval(1, 3);
  Polynomial lhs =
      multiply(multiply(multiply(annihilator(1), creator(2)), annihilator(3)),
               creator(1));
  SparseMatrix direct =
      SparseMatrix(represent(annihilator(1), w).matrix *
                   represent(creator(2), w).matrix *
                   represent(annihilator(3), w).matrix *
                   represent(creator(1), w).matrix);
  REQUIRE(mat_dist(represent(lhs, w).matrix, direct) < 1e-14);

  Polynomial expected = Polynomial::term(Monomial({2}, {3})) +
                        Polynomial::term(Monomial({1, 2}, {1, 3}));
  REQUIRE(mat_dist(represent(expected, w).matrix, direct) < 1e-14);
}

TEST_CASE("hermiticity is detected from the polynomial", "[fock]") {
  Window w = Window::interval(-1, 2);
  Polynomial q = model::periodic_supercharge({Scalar(1),
                                              model::Region::periodic(2, 2)});
  REQUIRE(!represent(q, w).hermitian);
  REQUIRE(represent(model::local_hamiltonian(q), w).hermitian);
  REQUIRE(represent(number_op(0), w).hermitian);
}

TEST_CASE("support outside the window is rejected", "[fock]") {
  Window w = Window::interval(0, 2);
  REQUIRE_THROWS_AS(represent(number_op(3), w), SupportOutsideWindow);
  REQUIRE_NOTHROW(represent(Polynomial::identity(), w));
}

TEST_CASE("norms of elementary operators", "[fock]") {
  Window w = Window::interval(0, 4);
  REQUIRE(operator_norm(represent(creator(2), w)).value ==
          Catch::Approx(1.0).margin(1e-12));
  REQUIRE(operator_norm(represent(Polynomial::identity(), w)).value ==
          Catch::Approx(1.0).margin(1e-12));
  REQUIRE(operator_norm(represent(Scalar(-3) * number_op(1), w)).value ==
          Catch::Approx(3.0).margin(1e-12));
  REQUIRE(operator_norm(represent(Polynomial::zero(), w)).value == 0.0);
  // self-adjoint square root of one
  Polynomial x = annihilator(0) + creator(0);
  REQUIRE(operator_norm(represent(x, w)).value ==
          Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("dense and iterative norms agree", "[fock]") {
  Window w = Window::interval(-1, 3);
  std::mt19937 rng(83);
  for (int trial = 0; trial < 8; ++trial) {
    Polynomial a = random_poly(rng, -1, 3);
    FockOperator op = represent(a, w);
    NormResult dense = operator_norm(op, NormMethod::dense_eig);
    NormResult iter = operator_norm(op, NormMethod::iterative, 1e-12, 99);
    REQUIRE(iter.converged);
    REQUIRE(iter.value ==
            Catch::Approx(dense.value).margin(1e-8 * (1 + dense.value)));
  }
}

TEST_CASE("automatic norm method switches on window size", "[fock]") {
  Window small = Window::interval(0, 3);
  NormResult rs = operator_norm(represent(number_op(1), small));
  REQUIRE(rs.method == NormMethod::dense_eig);

  Window large = Window::interval(0, 12);  // 13 sites
  NormResult rl = operator_norm(represent(creator(5), large));
  REQUIRE(rl.method == NormMethod::iterative);
  REQUIRE(rl.converged);
  REQUIRE(rl.value == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("matrix nilpotency of a represented supercharge", "[fock]") {
  model::Region reg = model::Region::periodic(4, 6);
  Polynomial q = model::periodic_supercharge({Scalar{Rational(3, 5)}, reg});
  FockOperator fq = represent(q, Window::of_region(reg));
  REQUIRE(SparseMatrix(fq.matrix * fq.matrix).norm() == 0.0);
}

TEST_CASE("expectation values", "[fock]") {
  Window w = Window::interval(0, 1);
  FockVector v{w, Eigen::VectorXcd::Zero(4)};
  v.amplitudes(1) = 1;  // site 0 occupied
  REQUIRE(expectation(represent(number_op(0), w), v) ==
          std::complex<double>(1, 0));
  REQUIRE(expectation(represent(number_op(1), w), v) ==
          std::complex<double>(0, 0));

  FockVector other{Window::interval(0, 2), Eigen::VectorXcd::Zero(8)};
  REQUIRE_THROWS_AS(expectation(represent(number_op(0), w), other),
                    WindowMismatch);
}

TEST_CASE("coordinate text dump is deterministic", "[fock]") {
  Window w = Window::interval(0, 0);
  std::ostringstream a, b;
  write_coordinate_text(represent(creator(0), w), a);
  write_coordinate_text(represent(creator(0), w), b);
  REQUIRE(a.str() == b.str());
  REQUIRE(a.str() == "2 1\n1 0 1 0\n");
}
