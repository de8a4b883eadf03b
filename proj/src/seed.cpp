#include "darboux/seed.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "darboux/errors.hpp"

namespace darboux {

HermitianOperator delta_a(const HermitianOperator& rho, const NonlinearityQ& f, double a) {
  return HermitianOperator::symmetrized(f.apply(rho).matrix() - a * rho.matrix());
}

SeedReport validate_seed(const HermitianOperator& rho, const HermitianOperator& h,
                         const NonlinearityQ& f, double a, const SeedTolerances& tol) {
  if (rho.dim() != h.dim()) throw DimensionMismatch("seed rho and H differ in dimension");
  const HermitianOperator d = delta_a(rho, f, a);
  SeedReport r;
  r.delta_commutator_norm = commutator(d, h).frobenius_norm();
  const double scale = std::max(1.0, d.matrix().frobenius_norm() * h.matrix().frobenius_norm());
  r.commutes = r.delta_commutator_norm <= tol.commutator * scale;
  const auto spec = spectral_decompose(d);
  r.delta_spread = spec.eigenvalues.back() - spec.eigenvalues.front();
  r.nontrivial_delta = r.delta_spread > tol.spread;
  r.rho_commutator_norm = commutator(rho, h).frobenius_norm();
  r.noncommuting_rho = r.rho_commutator_norm > tol.noncommuting;
  return r;
}

SeedBundle make_seed_bundle(const HermitianOperator& rho0, const HermitianOperator& h,
                            const NonlinearityQ& f, double a, Complex mu, const StateVector& phi0,
                            double omega, const SeedTolerances& tol) {
  if (phi0.dim() != rho0.dim()) throw DimensionMismatch("phi0 and rho0 differ in dimension");
  if (mu == Complex{}) throw ParameterError("mu must be nonzero");
  const SeedReport report = validate_seed(rho0, h, f, a, tol);
  if (!report.all()) {
    std::ostringstream os;
    os << "invalid seed:";
    if (!report.commutes)
      os << " [Delta_a, H] != 0 (norm " << report.delta_commutator_norm << ");";
    if (!report.nontrivial_delta)
      os << " Delta_a is a multiple of the identity (spread " << report.delta_spread
         << "), the evolution is linear;";
    if (!report.noncommuting_rho)
      os << " [rho, H] = 0 (norm " << report.rho_commutator_norm << "), the seed is stationary;";
    throw ParameterError(os.str());
  }
  SeedBundle b;
  b.rho0 = rho0;
  b.h = h;
  b.f = f;
  b.a = a;
  b.delta_a = delta_a(rho0, f, a);
  b.mu = mu;
  b.omega = omega;
  b.phi0 = phi0.normalized();
  const Matrix pencil = rho0.matrix() - mu * h.matrix();
  b.z_mu = inner(b.phi0, pencil * b.phi0);
  const double res = (pencil * b.phi0 - b.z_mu * b.phi0).norm();
  if (res > tol.eigenvector * std::max(1.0, pencil.frobenius_norm())) {
    std::ostringstream os;
    os << "phi0 is not an eigenvector of rho0 - mu H (residual " << res << ")";
    throw ParameterError(os.str());
  }
  return b;
}

HermitianOperator three_level_rho0() {
  return HermitianOperator(Matrix{{1.5, 0.0, -0.5}, {0.0, 1.75, 0.0}, {-0.5, 0.0, 1.5}});
}

HermitianOperator three_level_hamiltonian(double omega, int level_offset) {
  const double k = level_offset;
  const double diag[] = {omega * k, omega * (k + 1.0), omega * (k + 2.0)};
  return HermitianOperator(Matrix::diagonal(std::span<const double>(diag)));
}

Complex three_level_mu(double omega) {
  return {0.0, std::numbers::sqrt3 / (4.0 * omega)};
}

StateVector three_level_phi0() {
  const double s3 = std::numbers::sqrt3;
  return StateVector{Complex(s3, 1.0) / 4.0, Complex(1.0 / std::numbers::sqrt2, 0.0),
                     Complex(-s3, 1.0) / 4.0};
}

std::pair<StateVector, StateVector> three_level_eigenspace() {
  // Eigenvalue 7/4 - i sqrt(3)/4 of rho0 - mu H: |1> and (|0> + e^{2 pi i/3}|2>)/sqrt 2.
  const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  const double r = 1.0 / std::numbers::sqrt2;
  return {StateVector{0.0, 1.0, 0.0}, StateVector{r, 0.0, r * w}};
}

SeedBundle build_three_level_seed(double q, double omega, const std::optional<StateVector>& phi0,
                                  int level_offset, const SeedTolerances& tol) {
  if (!(omega > 0.0)) throw ParameterError("omega must be positive");
  if (q == 1.0) {
    throw ParameterError("q = 1 is the linear case: Delta_1 = -2 * identity, no self-scattering");
  }
  StateVector phi = phi0.value_or(three_level_phi0());
  if (phi0) {
    const auto [e1, e2] = three_level_eigenspace();
    const StateVector in_space = inner(e1, phi) * e1 + inner(e2, phi) * e2;
    if ((phi - in_space).norm() > 1e-10 * phi.norm()) {
      throw ParameterError("phi0 must lie in the degenerate eigenspace of rho0 - mu H");
    }
  }
  return make_seed_bundle(three_level_rho0(), three_level_hamiltonian(omega, level_offset),
                          NonlinearityQ::shifted_power(q), 1.0, three_level_mu(omega), phi, omega,
                          tol);
}

HermitianOperator seed_evolution(const SeedBundle& bundle, double t) {
  const auto hd = spectral_decompose(bundle.h);
  const Matrix u = propagator(hd, bundle.a * t);
  return HermitianOperator::symmetrized(conjugate_by(u, bundle.rho0));
}

HermitianOperator normalized_view(const HermitianOperator& rho) {
  const double tr = rho.trace();
  if (tr == 0.0) throw ParameterError("cannot normalize a traceless operator");
  return HermitianOperator::symmetrized((1.0 / tr) * rho.matrix());
}

}  // namespace darboux
