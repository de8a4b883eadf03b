#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"

#include "darboux/eig_general.hpp"
#include "darboux/errors.hpp"
#include "darboux/lax.hpp"
#include "darboux/scattering.hpp"
#include "darboux/seed.hpp"

using namespace darboux;

namespace {

const double kS3 = std::sqrt(3.0);

StateVector unit(std::size_t n, std::size_t i) {
  StateVector v(n);
  v[i] = 1.0;
  return v;
}

// Bra eigenvector <psi|(m) = z <psi|, as row components.
EigenPair left_eigen(const Matrix& m, std::size_t index) {
  return eig_general_small(m.transpose())[index];
}

}  // namespace

TEST_CASE("LaxParameters validation") {
  LaxParameters p;
  CHECK_NOTHROW(p.validate());
  p.mu = 0.0;
  CHECK_THROWS_AS(p.validate(), ParameterError);
  p.mu = p.lambda;
  CHECK_THROWS_AS(p.validate(), ParameterError);
  p = LaxParameters{};
  p.nu = 0.0;
  CHECK_THROWS_AS(p.validate(), ParameterError);
}

TEST_CASE("lax residuals") {
  const double omega = 1.0;
  const auto rho = three_level_rho0();
  const auto h = three_level_hamiltonian(omega);
  const Complex mu = three_level_mu(omega);
  const auto phi = three_level_phi0();
  const Matrix zero(3);
  const auto r = lax_residuals_ket(phi, rho, h, mu, Complex(1.75, -kS3 / 4), zero, StateVector(3));
  CHECK(r.spectral <= 1e-10);

  // bra eigenvector at some lambda
  LaxParameters params;
  params.lambda = Complex(0.3, 0.2);
  const Matrix pencil = rho.matrix() - params.lambda * h.matrix();
  const auto e = left_eigen(pencil, 1);
  params.z_lambda = e.value;
  CHECK(lax_residuals(e.vector, rho, h, params, zero, StateVector(3)).spectral <= 1e-12);

  std::mt19937_64 rng(2);
  const auto m = testing::random_matrix(3, rng);
  StateVector random{m(0, 0), m(0, 1), m(0, 2)};
  CHECK(lax_residuals(random, rho, h, params, zero, StateVector(3)).spectral > 1e-3);
  CHECK_THROWS_AS(lax_residuals(StateVector(2), rho, h, params, zero, StateVector(2)), DimensionMismatch);
}

TEST_CASE("make_projector") {
  const auto e1 = unit(3, 0);
  const auto p = make_projector(e1, e1);
  const double d[] = {1, 0, 0};
  CHECK(distance(p.matrix(), Matrix::diagonal(d)) == 0.0);

  const auto phi = three_level_phi0();
  const auto q = make_projector(phi, phi);
  CHECK(distance(q.matrix(), q.matrix().adjoint()) < 1e-15);
  CHECK(std::abs(q.matrix().trace() - 1.0) < 1e-14);
  CHECK(q.idempotency_defect() < 1e-14);
  CHECK((q.matrix() * phi - phi).norm() < 1e-14);

  CHECK_THROWS_AS(make_projector(e1, unit(3, 1)), DegenerateProjector);

  // general pair
  std::mt19937_64 rng(5);
  const auto m = testing::random_matrix(4, rng);
  StateVector a{m(0, 0), m(0, 1), m(0, 2), m(0, 3)};
  StateVector b{m(1, 0), m(1, 1), m(1, 2), m(1, 3)};
  const auto g = make_projector(a, b);
  CHECK(g.idempotency_defect() < 1e-12);
  CHECK((g.matrix() * a - a).norm() < 1e-12 * a.norm());
  CHECK((row_times(b.conj(), g.matrix()) - b.conj()).norm() < 1e-12 * b.norm());
}

TEST_CASE("dress_rho on the three-level bundle") {
  const double omega = 0.5;
  const auto rho = three_level_rho0();
  const auto h = three_level_hamiltonian(omega);
  const Complex mu = three_level_mu(omega);
  const auto phi = three_level_phi0();
  const auto bundle = make_hermitian_bundle(rho, h, mu, phi, Complex(1.75, -kS3 / 4));
  CHECK(bundle.params.nu == std::conj(mu));
  CHECK(bundle.params.z_nu == std::conj(bundle.params.z_mu));

  const Matrix rho1 = dress_rho(rho, h, bundle.projector, mu, std::conj(mu));
  const auto forms = dressing_forms(rho, h, bundle.projector, mu, std::conj(mu));
  CHECK(forms.mismatch < 1e-12);
  const Complex xi0 = Complex(kS3, -3.0) / (8.0 * std::numbers::sqrt2);
  const Complex zeta0 = Complex(-1.0, -kS3) / 8.0;
  CHECK(std::abs(rho1(0, 1) + xi0) < 1e-12);
  CHECK(std::abs(rho1(0, 2) - zeta0) < 1e-12);
  CHECK(distance(rho1, rho1_explicit(2.0, omega, 0.0)) < 1e-12);

  // Hermitian, isospectral, trace preserving
  CHECK(distance(rho1, rho1.adjoint()) < 1e-12);
  const auto s0 = spectral_decompose(rho).eigenvalues;
  const auto s1 = spectral_decompose(HermitianOperator::symmetrized(rho1)).eigenvalues;
  for (int i = 0; i < 3; ++i) CHECK(std::abs(s0[i] - s1[i]) < 1e-9);
  CHECK(std::abs(rho1.trace() - rho.matrix().trace()) < 1e-10);

  // mu == nu is the identity map
  CHECK(distance(dress_rho(rho, h, bundle.projector, mu, mu), rho) == 0.0);
}

TEST_CASE("dress_rho trivial commuting projector") {
  const double hd[] = {0, 1, 2};
  const Matrix h = Matrix::diagonal(hd);
  const double rd[] = {1, 2, 3};
  const Matrix rho = Matrix::diagonal(rd);
  const auto e = unit(3, 1);
  const auto p = make_projector(e, e);
  CHECK(distance(dress_rho(rho, h, p, Complex(0, 1), Complex(0, -1)), rho) < 1e-15);
}

TEST_CASE("dress_rho rejects a projector that is not from Lax solutions") {
  const auto rho = three_level_rho0();
  const auto h = three_level_hamiltonian(1.0);
  const StateVector v{1.0, Complex(0.3, 0.1), -0.2};
  const auto p = make_projector(v, v);
  CHECK_THROWS_AS(dress_rho(rho, h, p, Complex(0, 1), Complex(0, -1)), InconsistencyError);
}

TEST_CASE("dress_A and the Lemma") {
  const double omega = 1.0;
  const auto rho = three_level_rho0();
  const auto h = three_level_hamiltonian(omega);
  const Complex mu = three_level_mu(omega);
  const auto bundle = make_hermitian_bundle(rho, h, mu, three_level_phi0(), Complex(1.75, -kS3 / 4));
  const Matrix rho1 = dress_rho(rho, h, bundle.projector, mu, std::conj(mu));
  for (double q : {0.5, 2.0, 3.0}) {
    const auto f = NonlinearityQ::shifted_power(q);
    const Matrix a1 = dress_f(rho, f, bundle.projector, mu, std::conj(mu), rho1);
    CHECK(distance(a1, f.apply(HermitianOperator::symmetrized(rho1))) < 1e-8);
  }
  // wrong rho1 trips the Lemma check
  CHECK_THROWS_AS(dress_f(rho, NonlinearityQ::shifted_power(2.0), bundle.projector, mu,
                          std::conj(mu), rho.matrix()),
                  InconsistencyError);

  // A = 1 against the direct product
  const Complex m2(0, 1), n2(0, -1);
  const Matrix id = Matrix::identity(3);
  const Matrix& pm = bundle.projector.matrix();
  const Matrix expect = (id + ((m2 - n2) / n2) * pm) * (id + ((n2 - m2) / m2) * pm);
  CHECK(distance(dress_A(id, bundle.projector, m2, n2), expect) < 1e-14);

  // [P, A] = 0: A1 = A + scalar * P A
  const auto e = unit(3, 0);
  const auto pe = make_projector(e, e);
  const double ad[] = {2, 3, 5};
  const Matrix a = Matrix::diagonal(ad);
  const Complex c = (m2 - n2) / n2 + (n2 - m2) / m2 + (m2 - n2) * (n2 - m2) / (m2 * n2);
  CHECK(distance(dress_A(a, pe, m2, n2), a + c * (pe.matrix() * a)) < 1e-14);
}

TEST_CASE("dress_bra") {
  const double omega = 1.0;
  const auto rho = three_level_rho0();
  const auto h = three_level_hamiltonian(omega);
  const Complex mu = three_level_mu(omega);
  const Complex nu = std::conj(mu);
  const auto bundle = make_hermitian_bundle(rho, h, mu, three_level_phi0(), Complex(1.75, -kS3 / 4));
  const Matrix rho1 = dress_rho(rho, h, bundle.projector, mu, nu);

  const Complex lambda(0.4, 0.25);
  LaxParameters params;
  params.lambda = lambda;
  for (std::size_t k = 0; k < 3; ++k) {
    const auto e = left_eigen(rho.matrix() - lambda * h.matrix(), k);
    params.z_lambda = e.value;
    const auto psi1 = dress_bra(e.vector, bundle.projector, lambda, mu, nu);
    const Matrix zero(3);
    const double r = lax_residuals(psi1, rho1, h, params, zero, StateVector(3)).spectral;
    CHECK(r <= 1e-8);
  }
  const StateVector psi{1.0, 2.0, 3.0};
  CHECK((dress_bra(psi, bundle.projector, lambda, mu, mu) - psi).norm() == 0.0);
  // <psi|P = 0
  const auto e0 = unit(3, 0);
  const auto p0 = make_projector(e0, e0);
  const StateVector orth{0.0, 1.0, 2.0};
  CHECK((dress_bra(orth, p0, lambda, mu, nu) - orth).norm() == 0.0);
  CHECK_THROWS_AS(dress_bra(psi, p0, mu, mu, nu), ParameterError);
}

TEST_CASE("dressed bra temporal covariance") {
  const double omega = 1.0, q = 2.0;
  const auto seed = build_three_level_seed(q, omega);
  const SelfScatteringSolution sol(seed);
  const Complex mu = seed.mu, nu = std::conj(mu), lambda(0.4, 0.25);
  const auto a_of_t = [&](double t) { return seed.f.apply(seed_evolution(seed, t)).matrix(); };
  const auto at_of_t = [&](double t) { return a_of_t(t).transpose(); };
  const auto e = left_eigen(seed.rho0.matrix() - lambda * seed.h.matrix(), 0);
  // row psi' = (i/lambda) psi A  <=>  i psi^T' = (1/(-lambda)) A^T psi^T
  const double t = 0.3, step = 1e-4;
  const auto psi_at = [&](double s) { return evolve_ket_rk4(e.vector, at_of_t, -lambda, 0.0, s, 1e-4); };
  const auto dressed = [&](double s) {
    return dress_bra(psi_at(s), sol.projector(s), lambda, mu, nu);
  };
  const StateVector psi1 = dressed(t);
  const StateVector dot = Complex(1.0 / (2 * step)) * (dressed(t + step) - dressed(t - step));
  LaxParameters params;
  params.lambda = lambda;
  params.z_lambda = e.value;
  const auto r = lax_residuals(psi1, sol.rho1(t), seed.h, params, sol.a1(t), dot);
  CHECK(r.spectral < 1e-8);
  CHECK(r.temporal < 1e-6);
}

TEST_CASE("projector evolution residual") {
  // static commuting case
  const auto e = unit(3, 0);
  const auto p = make_projector(e, e);
  const double ad[] = {1, 2, 3};
  const Matrix a = Matrix::diagonal(ad);
  std::vector<Matrix> ps(5, p.matrix()), as(5, a);
  CHECK(projector_evolution_residual(ps, as, Complex(0, 1), Complex(0, 1), 0.1) <= 1e-10);
  CHECK_THROWS_AS(projector_evolution_residual(std::span(ps).first(2), std::span(as).first(2),
                                               Complex(0, 1), Complex(0, 1), 0.1),
                  ParameterError);

  const auto seed = build_three_level_seed(2.0, 1.0);
  const SelfScatteringSolution sol(seed);
  const auto residual_at = [&](double step) {
    std::vector<Matrix> pt, at;
    for (int k = -1; k <= 1; ++k) {
      const double t = 0.7 + k * step;
      pt.push_back(sol.projector(t).matrix());
      at.push_back(seed.f.apply(seed_evolution(seed, t)).matrix());
    }
    return projector_evolution_residual(pt, at, seed.mu, std::conj(seed.mu), step);
  };
  const double r1 = residual_at(1e-3);
  const double r2 = residual_at(5e-4);
  CHECK(r1 <= 1e-4);
  CHECK(r1 / r2 > 3.5);
}

TEST_CASE("compatibility residuals") {
  // stationary commuting seed
  const double d[] = {1, 2};
  const Matrix rho = Matrix::diagonal(d);
  std::vector<Matrix> rs(4, rho), as(4, rho);
  const auto c = compatibility_residuals(rs, as, rho, 0.1);
  CHECK(c.evolution <= 1e-10);
  CHECK(c.commute <= 1e-10);

  const auto seed = build_three_level_seed(2.0, 1.0);
  const SelfScatteringSolution sol(seed);
  for (double h : {1e-3}) {
    std::vector<Matrix> seed_traj, seed_a, dressed, dressed_a;
    for (int k = 0; k < 5; ++k) {
      const double t = -0.5 + k * h;
      const auto s = seed_evolution(seed, t);
      seed_traj.push_back(s.matrix());
      seed_a.push_back(seed.f.apply(s).matrix());
      dressed.push_back(sol.rho1(t).matrix());
      dressed_a.push_back(sol.a1(t).matrix());
    }
    const auto rs_seed = compatibility_residuals(seed_traj, seed_a, seed.h, h);
    CHECK(rs_seed.evolution <= 100 * h * h * 4);
    CHECK(rs_seed.commute <= 1e-10);
    const auto rs_dressed = compatibility_residuals(dressed, dressed_a, seed.h, h);
    CHECK(rs_dressed.evolution <= 100 * h * h * 4);
    CHECK(rs_dressed.commute <= 1e-9);
  }
}

TEST_CASE("iterate_dressing") {
  const double omega = 1.0;
  const auto seed = build_three_level_seed(2.0, omega);
  const auto chain0 = iterate_dressing({}, seed.rho0, seed.h);
  REQUIRE(chain0.size() == 1);
  CHECK(distance(chain0[0], seed.rho0) == 0.0);

  const DressingStage s1{seed.phi0, seed.phi0, seed.mu, std::conj(seed.mu)};
  const auto one = iterate_dressing(std::span(&s1, 1), seed.rho0, seed.h);
  REQUIRE(one.size() == 2);
  CHECK(distance(one[1], dress_rho(seed.rho0, seed.h, make_projector(seed.phi0, seed.phi0),
                                   seed.mu, std::conj(seed.mu))) == 0.0);
}

TEST_CASE("two-stage dressing solves the nonlinear equation") {
  const double omega = 1.0;
  const auto seed = build_three_level_seed(2.0, omega);
  const SelfScatteringSolution sol(seed);
  const Complex mu2(0.35, 0.6);
  const auto pairs = eig_general_small(sol.rho1(0.0).matrix() - mu2 * seed.h.matrix());
  const StateVector phi2_0 = pairs[0].vector;
  const auto a1 = [&](double t) { return sol.a1(t).matrix(); };

  const double step = 1e-3;
  std::vector<Matrix> rho2, a2;
  for (int k = 0; k < 5; ++k) {
    const double t = 0.2 + k * step;
    const StateVector phi2 = evolve_ket_rk4(phi2_0, a1, mu2, 0.0, t, 1e-4);
    // stage 1 from the seed at t, stage 2 on top
    const DressingStage stages[] = {
        {sol.projector(t).phi(), sol.projector(t).phi(), seed.mu, std::conj(seed.mu)},
        {phi2, phi2, mu2, std::conj(mu2)}};
    const auto chain = iterate_dressing(stages, seed_evolution(seed, t), seed.h);
    REQUIRE(chain.size() == 3);
    CHECK(distance(chain[1], sol.rho1(t)) < 1e-9);
    const auto r2 = HermitianOperator::symmetrized(chain[2]);
    rho2.push_back(r2.matrix());
    a2.push_back(seed.f.apply(r2).matrix());
  }
  const auto res = compatibility_residuals(rho2, a2, seed.h, step);
  CHECK(res.evolution <= 1e-4);
  CHECK(res.commute <= 1e-8);
  // genuinely different from stage one and isospectral
  CHECK(distance(rho2[2], sol.rho1(0.202).matrix()) > 1e-3);
  const auto s = spectral_decompose(HermitianOperator::symmetrized(rho2[2])).eigenvalues;
  CHECK(std::abs(s[0] - 1.0) < 1e-9);
  CHECK(std::abs(s[1] - 1.75) < 1e-9);
  CHECK(std::abs(s[2] - 2.0) < 1e-9);
}

TEST_CASE("evolution helpers agree") {
  std::mt19937_64 rng(9);
  const auto a = testing::random_hermitian(3, rng);
  const auto d = spectral_decompose(a);
  const StateVector phi{1.0, Complex(0, 1), 0.5};
  const Complex mu(0.3, 0.8);
  const auto closed = evolve_ket_constant(phi, d, mu, 0.5);
  const auto numeric = evolve_ket_rk4(phi, [&](double) { return a.matrix(); }, mu, 0.0, 0.5, 1e-3);
  CHECK((closed - numeric).norm() < 1e-9);
  const auto bra = evolve_bra_constant(phi, d, mu, 0.5);
  const auto bra_numeric =
      evolve_ket_rk4(phi, [&](double) { return a.matrix().transpose(); }, -mu, 0.0, 0.5, 1e-3);
  CHECK((bra - bra_numeric).norm() < 1e-9);
}
