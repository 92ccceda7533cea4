#include <doctest.h>

#include <cmath>

#include "expect.hpp"
#include "support.hpp"
#include "tensegrity/builders.hpp"
#include "tensegrity/modal.hpp"
#include "tensegrity/stability.hpp"

using namespace tensegrity;

namespace {

const MaterialMap kMaterials = MaterialMap::steel_and_kevlar();

Model nine() { return build_nine_segrity(Angle::degrees(210.0), 4.0); }

/// Generalized eigenvalues of (K, M) by Eigen's dense solver, ascending.
Eigen::VectorXd generalized_eigenvalues(const Eigen::MatrixXd& k, const Eigen::VectorXd& m) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(k, m.asDiagonal().toDenseMatrix());
  return solver.eigenvalues();
}

}  // namespace

TEST_SUITE("modal") {

TEST_CASE("single bar stiffness") {
  MaterialSpec unit{1.0, 1.0, 1.0 / std::sqrt(M_PI), true};
  const Model bar(3, {Point(0, 0, 0), Point(2, 0, 0)}, {{0, 1}}, {});
  const Eigen::MatrixXd k = tangent_stiffness(bar, MaterialMap{unit, std::nullopt});
  CHECK((k - k.transpose()).norm() < 1e-12);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(k);
  const double ea_over_l = 0.5;
  CHECK(eig.eigenvalues()(5) == doctest::Approx(2.0 * ea_over_l));
  CHECK(eig.eigenvalues().head(5).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(kind_of([&] { tangent_stiffness(bar, MaterialMap{std::nullopt, unit}); }) == ErrorKind::missing_material);
}

TEST_CASE("unstressed stiffness is positive semi-definite with the expected nullity") {
  const Eigen::MatrixXd k9 = tangent_stiffness(nine(), kMaterials);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> e9(k9);
  CHECK(e9.eigenvalues().minCoeff() >= -1e-10 * e9.eigenvalues().maxCoeff());
  int null9 = 0;
  for (Eigen::Index i = 0; i < 18; ++i) null9 += e9.eigenvalues()(i) < 1e-9 * e9.eigenvalues().maxCoeff();
  CHECK(null9 == 7);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> e10(tangent_stiffness(build_ten_segrity(), kMaterials));
  int null10 = 0;
  for (Eigen::Index i = 0; i < 18; ++i) null10 += e10.eigenvalues()(i) < 1e-9 * e10.eigenvalues().maxCoeff();
  CHECK(null10 == 6);
}

TEST_CASE("slack cables carry no material stiffness") {
  const Model ten = build_ten_segrity();
  std::vector<double> lengths(ten.cable_lengths().begin(), ten.cable_lengths().end());
  lengths[0] *= 1.5;
  const Eigen::MatrixXd taut = tangent_stiffness(ten, kMaterials);
  const Eigen::MatrixXd slack = tangent_stiffness(ten.with_cable_lengths(lengths), kMaterials);
  const Pair c = ten.cables()[0];
  CHECK((taut - slack).norm() > 0.0);
  CHECK(slack.block(3 * c.i, 3 * c.j, 3, 3).isZero());
}

TEST_CASE("lumped masses") {
  const Model rod(3, {Point(0, 0, 0), Point(0, 0, 4)}, {{0, 1}}, {});
  const Eigen::VectorXd m = mass_matrix(rod, kMaterials);
  CHECK(m(0) == doctest::Approx(8000.0 * M_PI * 1e-4 * 4.0 / 2.0).epsilon(1e-14));
  CHECK(2.0 * m(0) == doctest::Approx(10.0530964914873).epsilon(1e-12));
  const Model string(3, {Point(0, 0, 0), Point(0, 0, 4)}, {}, {{0, 1}});
  CHECK(2.0 * mass_matrix(string, kMaterials)(2) == doctest::Approx(0.018095573684677).epsilon(1e-12));
  const Model empty(3, {Point(0, 0, 0)}, {}, {});
  CHECK(kind_of([&] { mass_matrix(empty, kMaterials); }) == ErrorKind::invalid_model);
}

TEST_CASE("free ten-segrity spectrum") {
  const Model ten = build_ten_segrity();
  const auto r = modal_analysis(ten, kMaterials);
  REQUIRE(r.frequencies.size() == 12);
  CHECK(r.rigid_modes == 6);
  for (int j = 0; j < 6; ++j) {
    CHECK(r.tags[j] == ModeTag::rigid);
    CHECK(std::abs(r.frequencies(j)) < 1e-6 * r.frequencies(6));
  }
  for (int j = 6; j < 12; ++j) CHECK(r.tags[j] == ModeTag::stiff);
  CHECK(r.frequencies(6) / r.frequencies(7) > 0.1);

  // Frozen values, checked against Eigen's generalized solver.
  const Eigen::VectorXd lambda = generalized_eigenvalues(tangent_stiffness(ten, kMaterials), mass_matrix(ten, kMaterials));
  CHECK(std::sqrt(lambda(6)) == doctest::Approx(r.frequencies(6)).epsilon(1e-8));
  CHECK(std::sqrt(lambda(7)) == doctest::Approx(r.frequencies(7)).epsilon(1e-8));
  CHECK(r.frequencies(6) == doctest::Approx(55.750426204043883).epsilon(1e-9));
  CHECK(r.frequencies(7) == doctest::Approx(124.2585796552487).epsilon(1e-9));
}

TEST_CASE("free nine-segrity has an isolated mechanism") {
  const Model m = nine();
  const auto r = modal_analysis(m, kMaterials);
  CHECK(r.rigid_modes == 6);
  CHECK(r.frequencies(6) < 1e-6 * r.frequencies(7));
  CHECK(r.tags[6] == ModeTag::soft);
  for (int j = 0; j < 6; ++j) CHECK(r.tags[j] == ModeTag::rigid);
  for (int j = 7; j < 12; ++j) CHECK(r.tags[j] == ModeTag::stiff);
  CHECK(r.frequencies(7) == doctest::Approx(164.2068090209595).epsilon(1e-9));

  const Eigen::MatrixXd soft = soft_modes(m);
  const Eigen::VectorXd phi = r.modes.col(6).normalized();
  CHECK((soft.transpose() * phi).norm() >= 0.99);
}

TEST_CASE("modes are mass-orthonormal and satisfy the eigen equation") {
  for (double s : {0.0, 1.0, 25.0}) {
    for (const Model& m : {build_ten_segrity(), nine()}) {
      const auto r = modal_analysis(m, kMaterials, {{}, s, 18});
      const Eigen::MatrixXd k = tangent_stiffness(m, kMaterials, s);
      const Eigen::VectorXd mass = mass_matrix(m, kMaterials);
      const Eigen::MatrixXd gram = r.modes.transpose() * mass.asDiagonal() * r.modes;
      CHECK((gram - Eigen::MatrixXd::Identity(18, 18)).cwiseAbs().maxCoeff() < 1e-8);
      for (Eigen::Index j = 0; j < r.frequencies.size(); ++j) {
        const double w = r.frequencies(j);
        const Eigen::VectorXd res = k * r.modes.col(j) - std::copysign(w * w, w) * mass.asDiagonal() * r.modes.col(j);
        CHECK(res.norm() <= 1e-8 * k.norm());
      }
      for (Eigen::Index j = 1; j < r.frequencies.size(); ++j) CHECK(r.frequencies(j) >= r.frequencies(j - 1));
    }
  }
}

TEST_CASE("fixed nodes remove the rigid modes") {
  const Model ten = build_ten_segrity();
  const auto r = modal_analysis(ten, kMaterials, {{0, 1, 2}, 0.0, 9});
  CHECK(r.rigid_modes == 0);
  CHECK(r.frequencies.size() == 9);
  CHECK(r.frequencies.minCoeff() > 1.0);
  for (int i = 0; i < 3; ++i) CHECK(r.modes.middleRows(3 * i, 3).isZero());

  const auto one = modal_analysis(ten, kMaterials, {{0}, 0.0, 12});
  CHECK(one.rigid_modes == 3);
  CHECK(kind_of([&] { modal_analysis(ten, kMaterials, {{7}, 0.0, 12}); }) == ErrorKind::invalid_argument);
}

TEST_CASE("prestress raises the mechanism frequency") {
  const Model m = nine();
  double previous = -1.0;
  for (double s : {0.0, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    const auto r = modal_analysis(m, kMaterials, {{}, s, 8});
    CHECK_FALSE(r.indefinite);
    CHECK(r.frequencies(6) >= previous);
    previous = r.frequencies(6);
  }
  CHECK(previous > 1.0);
  CHECK(kind_of([&] {
          modal_analysis(build_ten_segrity().with_cables({}), kMaterials, {{}, 1.0, 6});
        }) == ErrorKind::invalid_argument);
}

TEST_CASE("negative prestress is reported as indefinite") {
  const auto r = modal_analysis(nine(), kMaterials, {{}, -1.0, 8});
  CHECK(r.indefinite);
  CHECK(r.min_eigenvalue < 0.0);
  CHECK(r.frequencies(0) < 0.0);
}

TEST_CASE("classification of an all-zero spectrum") {
  ModalResult zero;
  zero.frequencies = Eigen::VectorXd::Zero(4);
  zero.rigid_fraction = Eigen::VectorXd::Zero(4);
  const auto tagged = classify_modes(zero);
  for (const auto t : tagged.tags) CHECK(t == ModeTag::rigid);
}

}  // TEST_SUITE
