#pragma once

#include <optional>
#include <string>

#include "darboux/hermitian.hpp"
#include "darboux/nonlinearity.hpp"

namespace darboux {

/// Thresholds behind the seed checks.
struct SeedTolerances {
  double commutator = 1e-10;  // ||[Delta_a, H]||_F, relative to max(1, ||Delta_a|| ||H||)
  double spread = 1e-8;       // minimum eigenvalue spread of Delta_a
  double noncommuting = 1e-8; // minimum ||[rho, H]||_F
  double eigenvector = 1e-10; // phi0 residual against rho0 - mu H
};

/// Seed data for dressing: f(rho) - a rho = Delta_a with [Delta_a, H] = 0.
struct SeedBundle {
  HermitianOperator rho0;
  HermitianOperator h;
  NonlinearityQ f = NonlinearityQ::power(1.0);
  double a = 1.0;
  HermitianOperator delta_a;
  Complex mu;
  StateVector phi0;  // unit norm
  Complex z_mu;      // (rho0 - mu H) phi0 = z_mu phi0
  double omega = 1.0;
};

/// f(rho) - a rho.
HermitianOperator delta_a(const HermitianOperator& rho, const NonlinearityQ& f, double a);

struct SeedReport {
  bool commutes = false;          // [Delta_a, H] = 0
  bool nontrivial_delta = false;  // Delta_a not a multiple of the identity
  bool noncommuting_rho = false;  // [rho, H] != 0
  double delta_commutator_norm = 0.0;
  double delta_spread = 0.0;
  double rho_commutator_norm = 0.0;
  bool all() const { return commutes && nontrivial_delta && noncommuting_rho; }
};

SeedReport validate_seed(const HermitianOperator& rho, const HermitianOperator& h,
                         const NonlinearityQ& f, double a, const SeedTolerances& tol = {});

/// Assembles and validates a bundle. Throws ParameterError listing every failed
/// check; phi0 is normalized and z_mu is its Rayleigh quotient.
SeedBundle make_seed_bundle(const HermitianOperator& rho0, const HermitianOperator& h,
                            const NonlinearityQ& f, double a, Complex mu, const StateVector& phi0,
                            double omega, const SeedTolerances& tol = {});

/// rho(0) with eigenvalues {1, 7/4, 2} on the three lowest oscillator levels.
HermitianOperator three_level_rho0();
/// omega * diag(k, k+1, k+2) for level offset k.
HermitianOperator three_level_hamiltonian(double omega, int level_offset = 0);
/// i sqrt(3) / (4 omega)
Complex three_level_mu(double omega);
/// ((i + sqrt 3)/4, 1/sqrt 2, (i - sqrt 3)/4)
StateVector three_level_phi0();
/// Orthonormal basis of the doubly degenerate eigenspace of rho0 - mu H.
std::pair<StateVector, StateVector> three_level_eigenspace();

/// The worked example: shifted_power f at exponent q, a = 1. q == 1 is rejected
/// (linear case). A custom phi0 must lie in the degenerate eigenspace.
SeedBundle build_three_level_seed(double q, double omega,
                                  const std::optional<StateVector>& phi0 = std::nullopt,
                                  int level_offset = 0, const SeedTolerances& tol = {});

/// e^{-i a H t} rho0 e^{i a H t}
HermitianOperator seed_evolution(const SeedBundle& bundle, double t);

/// rho / Tr rho (the library never normalizes implicitly).
HermitianOperator normalized_view(const HermitianOperator& rho);

}  // namespace darboux
