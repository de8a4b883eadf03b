#include "darboux/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "darboux/errors.hpp"

namespace darboux {

namespace {

constexpr double kOverflowGuard = 300.0;
const double kSqrt3 = std::numbers::sqrt3;

const Complex kZetaPlusLimit{-0.5, 0.0};                // q > 1, t -> +inf
const Complex kZetaMinusLimit{0.25, -std::numbers::sqrt3 / 4.0};  // q > 1, t -> -inf

}  // namespace

double omega_q(double q, double omega) {
  return (std::pow(4.0 / 7.0, 1.0 - q) - 1.0) * omega / kSqrt3;
}

Complex ScatteringProfile::xi(double t) const {
  const double x = omega_q * t;
  if (std::abs(x) > kOverflowGuard) return 0.0;
  // e^x / (1 + e^{2x}) = 1 / (e^{-x} + e^{x}) = e^{-|x|} / (1 + e^{-2|x|})
  const double e = std::exp(-std::abs(x));
  return Complex(kSqrt3, -3.0) / (4.0 * std::numbers::sqrt2) * (e / (1.0 + e * e));
}

Complex ScatteringProfile::zeta(double t) const {
  const double x = omega_q * t;
  if (x > kOverflowGuard) return kZetaPlusLimit;
  if (x < -kOverflowGuard) return kZetaMinusLimit;
  const Complex c(1.0, -kSqrt3);
  if (x >= 0.0) {
    const double e = std::exp(-2.0 * x);
    return (c * e - 2.0) / (4.0 * (e + 1.0));
  }
  const double e = std::exp(2.0 * x);
  return (c - 2.0 * e) / (4.0 * (1.0 + e));
}

HermitianOperator rho_int_explicit(double q, double omega, double t) {
  const auto prof = ScatteringProfile::make(q, omega);
  const Complex xi = prof.xi(t);
  const Complex zeta = prof.zeta(t);
  return HermitianOperator::symmetrized(Matrix{{1.5, -xi, zeta},
                                               {-std::conj(xi), 1.75, xi},
                                               {std::conj(zeta), std::conj(xi), 1.5}});
}

namespace {

Matrix diagonal_phase(double omega, double t) {
  const Complex d[] = {1.0, std::polar(1.0, -omega * t), std::polar(1.0, -2.0 * omega * t)};
  return Matrix::diagonal(std::span<const Complex>(d));
}

}  // namespace

HermitianOperator rho1_explicit(double q, double omega, double t) {
  const Matrix u = diagonal_phase(omega, t);
  return HermitianOperator::symmetrized(conjugate_by(u, rho_int_explicit(q, omega, t)));
}

HermitianOperator seed_explicit(double omega, double t) {
  const Matrix u = diagonal_phase(omega, t);
  return HermitianOperator::symmetrized(conjugate_by(u, three_level_rho0()));
}

SelfScatteringSolution::SelfScatteringSolution(SeedBundle bundle)
    : bundle_(std::move(bundle)),
      h_spec_(spectral_decompose(bundle_.h)),
      delta_spec_(spectral_decompose(bundle_.delta_a)) {
  const std::size_t n = bundle_.phi0.dim();
  phi_coeffs_ = StateVector(n);
  for (std::size_t j = 0; j < n; ++j) {
    Complex s = 0.0;
    for (std::size_t r = 0; r < n; ++r) s += std::conj(delta_spec_.eigenvectors(r, j)) * bundle_.phi0[r];
    phi_coeffs_[j] = s;
  }
}

StateVector SelfScatteringSolution::dressed_ket(double t) const {
  const std::size_t n = phi_coeffs_.dim();
  const Complex c = Complex(0.0, -t) / bundle_.mu;
  // Rescale by the largest modulus among components phi0 actually populates.
  double shift = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j)
    if (std::abs(phi_coeffs_[j]) > 1e-14) shift = std::max(shift, (c * delta_spec_.eigenvalues[j]).real());
  StateVector v(n);
  for (std::size_t r = 0; r < n; ++r) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(phi_coeffs_[j]) <= 1e-14) continue;
      s += delta_spec_.eigenvectors(r, j) * std::exp(c * delta_spec_.eigenvalues[j] - shift) *
           phi_coeffs_[j];
    }
    v[r] = s;
  }
  return v;
}

Projector SelfScatteringSolution::projector(double t) const {
  const StateVector v = dressed_ket(t);
  const double f = v.norm();
  if (!(f > 1e-150)) {
    std::ostringstream os;
    os << "F_a(t) vanishes at t = " << t;
    throw PoleError(os.str());
  }
  const Matrix u = propagator(h_spec_, bundle_.a * t);
  const StateVector phi_t = u * v;
  return make_projector(phi_t, phi_t);
}

Rho1Evaluation SelfScatteringSolution::evaluate(double t) const {
  const StateVector v = dressed_ket(t);
  const double f = inner(v, v).real();
  if (!(f > 1e-300)) {
    std::ostringstream os;
    os << "F_a(t) vanishes at t = " << t;
    throw PoleError(os.str());
  }
  const Complex mu = bundle_.mu;
  const Matrix& h = bundle_.h.matrix();
  const Matrix term = ((mu - std::conj(mu)) / f) * commutator(Matrix::outer(v, v), h);
  const Matrix u = propagator(h_spec_, bundle_.a * t);
  const Matrix assembled = conjugate_by(u, bundle_.rho0.matrix() + term);
  Rho1Evaluation out;
  out.rho1 = HermitianOperator::symmetrized(assembled, &out.hermiticity_defect);
  return out;
}

HermitianOperator SelfScatteringSolution::seed(double t) const {
  return seed_evolution(bundle_, t);
}

Complex SelfScatteringSolution::scattering_amplitude(double t) const {
  const Complex mu = bundle_.mu;
  const Complex c = Complex(0.0, t) * (mu - std::conj(mu)) / std::norm(mu);
  Complex s = 0.0;
  for (std::size_t j = 0; j < phi_coeffs_.dim(); ++j)
    s += std::norm(phi_coeffs_[j]) * std::exp(c * delta_spec_.eigenvalues[j]);
  return s;
}

HermitianOperator SelfScatteringSolution::a1(double t) const {
  return bundle_.f.apply(rho1(t));
}

AsymptoticReport asymptotic_check(double q, double omega, double t) {
  if (!(t > 0.0)) throw ParameterError("asymptotic_check: T must be positive");
  if (q == 1.0) throw ParameterError("asymptotic_check: q = 1 has no self-scattering");
  const auto prof = ScatteringProfile::make(q, omega);
  const bool above = q > 1.0;
  const Complex lim_plus = above ? kZetaPlusLimit : kZetaMinusLimit;
  const Complex lim_minus = above ? kZetaMinusLimit : kZetaPlusLimit;
  AsymptoticReport r;
  r.xi_decay = std::max(std::abs(prof.xi(t)), std::abs(prof.xi(-t)));
  r.zeta_error_plus = std::abs(prof.zeta(t) - lim_plus);
  r.zeta_error_minus = std::abs(prof.zeta(-t) - lim_minus);
  const double ts = above ? t : -t;
  r.seed_return = distance(rho1_explicit(q, omega, ts), seed_explicit(omega, ts));
  return r;
}

}  // namespace darboux
