#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "darboux/errors.hpp"
#include "darboux/hermitian.hpp"
#include "darboux/nonlinearity.hpp"

namespace darboux {

/// Uniform-step samples of a flow; states are Hermitian.
struct Trajectory {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<double> times;
  std::vector<HermitianOperator> states;

  std::size_t size() const noexcept { return states.size(); }
  const HermitianOperator& back() const { return states.back(); }
};

/// Raised when f leaves its domain mid-flow; carries everything integrated so far.
class FlowDomainError : public DomainError {
 public:
  FlowDomainError(const std::string& what, Trajectory partial)
      : DomainError(what), partial_(std::move(partial)) {}
  const Trajectory& partial() const noexcept { return partial_; }

 private:
  Trajectory partial_;
};

/// -i [H, f(rho)]
Matrix von_neumann_rhs(const Matrix& rho, const HermitianOperator& h, const NonlinearityQ& f);

struct IntegrateOptions {
  double t0 = 0.0;
  /// Keep every `stride`-th state (the final state is always kept).
  std::size_t stride = 1;
};

/// Classical RK4 on rho' = -i[H, f(rho)], every stage re-symmetrized.
/// The number of steps is round((t_end - t0)/dt); |t_end - t0| must be a
/// multiple of dt to 1e-9 relative. Negative t_end - t0 integrates backward.
Trajectory integrate_rk4(const HermitianOperator& rho0, const HermitianOperator& h,
                         const NonlinearityQ& f, double t_end, double dt,
                         const IntegrateOptions& opts = {});

/// Final state only.
HermitianOperator integrate_to(const HermitianOperator& rho0, const HermitianOperator& h,
                               const NonlinearityQ& f, double t0, double t_end, double dt);

using RhoOfT = std::function<Matrix(double)>;

/// || i (rho(t+h) - rho(t-h)) / 2h - [H, f(rho(t))] ||_F
double residual_meter(const RhoOfT& rho_of_t, const HermitianOperator& h, const NonlinearityQ& f,
                      double t, double step);

struct ConservationReport {
  double max_trace_drift = 0.0;
  double max_spectrum_drift = 0.0;     // max over samples of max |lambda_i(t) - lambda_i(0)|
  double max_hermiticity_defect = 0.0; // of the stored matrices, before symmetrization
  std::vector<double> moment_drifts;   // |Tr rho^k(t) - Tr rho^k(0)|, k = 1..4
  std::optional<double> energy_drift;  // Tr(H f(rho)) when H and f are supplied
};

/// Monitors on raw matrices (so corrupted or non-symmetrized data is visible).
ConservationReport conservation_report(const std::vector<Matrix>& states,
                                       const HermitianOperator* h = nullptr,
                                       const NonlinearityQ* f = nullptr);
ConservationReport conservation_report(const Trajectory& traj,
                                       const HermitianOperator* h = nullptr,
                                       const NonlinearityQ* f = nullptr);

/// Header `dt=<dt> t0=<t0> n=<samples> dim=<d>`, then per sample a `t` line and a matrix block.
void write_trajectory(std::ostream& os, const Trajectory& traj);
Trajectory read_trajectory(std::istream& is);

}  // namespace darboux
