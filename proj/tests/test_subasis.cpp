#include <doctest.h>

#include "oracles.hpp"
#include "subasis.hpp"

using namespace qpure;

TEST_CASE("qubit basis is identity then the Pauli matrices") {
  const auto b = generators(2);
  REQUIRE(b->size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(((*b)[i] - oracle::pauli(i)).norm() < 1e-15);
  CHECK(((*b)[1] * (*b)[1]).trace().real() == doctest::Approx(2.0));
}

TEST_CASE("Gram matrix Tr[s_a s_b] = d delta_ab") {
  for (std::size_t d = 2; d <= 6; ++d) {
    const auto b = generators(d);
    REQUIRE(b->size() == d * d);
    double worst = 0.0;
    for (std::size_t a = 0; a < b->size(); ++a)
      for (std::size_t c = 0; c < b->size(); ++c) {
        const Complex g = ((*b)[a] * (*b)[c]).trace();
        worst = std::max(worst, std::abs(g - Complex(a == c ? static_cast<double>(d) : 0.0)));
      }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("elements are Hermitian, generators traceless, and match the textbook construction") {
  for (std::size_t d = 2; d <= 5; ++d) {
    const auto b = generators(d);
    const auto ref = oracle::gell_mann(d);
    for (std::size_t a = 0; a < b->size(); ++a) {
      CHECK(((*b)[a] - (*b)[a].adjoint()).norm() < 1e-15);
      if (a) CHECK(std::abs((*b)[a].trace()) < 1e-14);
      CHECK(((*b)[a] - ref[a]).norm() < 1e-13);
    }
  }
}

TEST_CASE("sparse entries reproduce the dense elements") {
  const auto b = generators(4);
  for (std::size_t a = 0; a < b->size(); ++a) {
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    for (const auto& e : b->entries(a)) m(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) = e.value;
    CHECK((m - (*b)[a]).norm() < 1e-15);
  }
}

TEST_CASE("Casimir sum") {
  CHECK(casimir_check(2) < 1e-15);
  CHECK(casimir_check(3) <= 1e-12);
  CHECK(casimir_check(4) <= 1e-12);
  // Independent: sum of squares of the textbook set for d = 3 is 8 * 1.
  const auto ref = oracle::gell_mann(3);
  ComplexMatrix sum = ComplexMatrix::Zero(3, 3);
  for (std::size_t a = 1; a < ref.size(); ++a) sum += ref[a] * ref[a];
  CHECK((sum - 8.0 * ComplexMatrix::Identity(3, 3)).norm() < 1e-12);
  // Each Pauli squares to the identity on its own.
  for (int i = 1; i <= 3; ++i) CHECK(((*generators(2))[i] * (*generators(2))[i] - ComplexMatrix::Identity(2, 2)).norm() == 0.0);
}

TEST_CASE("memoized basis is shared and invalid dimensions rejected") {
  CHECK(generators(3).get() == generators(3).get());
  CHECK_THROWS_AS(generators(1), Error);
}
