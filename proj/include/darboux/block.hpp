#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "darboux/hermitian.hpp"
#include "darboux/lax.hpp"
#include "darboux/nonlinearity.hpp"

namespace darboux {

inline constexpr std::size_t kMaxBlocks = 64;

/// Truncated block-diagonal model: block k of rho is a_k diag(1, -1), block k of
/// H is a_k [[alpha, beta], [beta, -alpha]] (c_k = beta a_k taken real).
class BlockModel {
 public:
  /// Throws ParameterError for beta <= 0, any a_k or u_k zero, mismatched
  /// lengths, K outside [1, kMaxBlocks], or f not even on +/- a_k.
  /// u is normalized to unit norm.
  BlockModel(double alpha, double beta, std::vector<double> a, std::vector<Complex> u,
             NonlinearityQ f);

  /// a_k = 1/k^2, u_k proportional to 2^{-k/2}, k = 1..K.
  static BlockModel with_defaults(std::size_t k, double alpha, double beta, NonlinearityQ f);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  std::size_t blocks() const noexcept { return a_.size(); }
  std::size_t dim() const noexcept { return 2 * a_.size(); }
  const std::vector<double>& a() const noexcept { return a_; }
  const std::vector<Complex>& u() const noexcept { return u_; }
  const NonlinearityQ& f() const noexcept { return f_; }

  /// |sum_k f(a_k) - 1/2|; reported, never enforced.
  double normalization_defect() const;

 private:
  double alpha_;
  double beta_;
  std::vector<double> a_;
  std::vector<Complex> u_;
  NonlinearityQ f_;
};

struct BlockOperators {
  HermitianOperator rho;
  HermitianOperator h;
};
BlockOperators build_block_operators(const BlockModel& model);

/// Roots (alpha +/- i beta)/(alpha^2 + beta^2) of (alpha^2+beta^2) nu^2 - 2 alpha nu + 1 = 0.
/// beta == 0 is rejected (real double root, the dressing term vanishes).
std::pair<Complex, Complex> nu_roots(double alpha, double beta);

/// Ket |chi> whose bra <chi| = (conj(u_k) w^T)_k, w = (1, -i)/sqrt 2, solves
/// <chi|(rho - nu H) = 0. Only nu_+ satisfies this; any other nu throws
/// InconsistencyError (wrong branch).
StateVector chi_vector(const BlockModel& model, Complex nu, double tol = 1e-10);

/// Dressed block solution rho[1](t) = rho + (conj(nu) - nu)[P(t), H].
class BlockSolution {
 public:
  /// nu defaults to nu_+.
  explicit BlockSolution(BlockModel model);
  BlockSolution(BlockModel model, Complex nu);

  const BlockModel& model() const noexcept { return model_; }
  Complex nu() const noexcept { return nu_; }
  const BlockOperators& operators() const noexcept { return ops_; }

  /// Closed form: block (k, l) equals
  ///   a_k delta_kl diag(1, -1) + beta F_kl / G [ a_k/(alpha - i beta) [[i, 1], [1, -i]]
  ///                                            + a_l/(alpha + i beta) [[-i, 1], [1, i]] ]
  ///   G = sum_n |u_n|^2 e^{2 beta f(a_n) t},
  ///   F_kl = u_k conj(u_l) e^{-i alpha (f(a_k) - f(a_l)) t + beta (f(a_k) + f(a_l)) t},
  /// with all exponentials taken relative to the largest one.
  HermitianOperator rho1_closed_form(double t) const;

  /// Same solution built generically: <chi(t)| = <chi(0)| e^{i A t / nu} with
  /// A = f(rho), then the additive dressing formula.
  Matrix rho1_darboux(double t) const;
  Projector projector(double t) const;

  /// ||block (k, l)||_F of a 2K x 2K matrix.
  static double block_norm(const Matrix& m, std::size_t k, std::size_t l);

  /// Time after which every off-diagonal block is below e^{-margin}
  /// relative to its initial size, approached in direction `sign` (+1 or -1).
  double asymptotic_time(double margin, int sign) const;

 private:
  BlockModel model_;
  Complex nu_;
  BlockOperators ops_;
  StateVector chi0_;  // ket; bra components are conj(chi0_)
  SpectralDecomposition a_spec_;
  std::vector<double> fa_;
};

struct IrreducibilityReport {
  std::vector<double> times;
  std::vector<double> min_off_block;  // per time: min over k != l of ||rho[1]_kl||_F
  std::vector<double> max_off_block;  // per time: max over k != l
  double min_overall = 0.0;
};

IrreducibilityReport irreducibility_report(const BlockSolution& solution,
                                           std::span<const double> t_samples);

}  // namespace darboux
