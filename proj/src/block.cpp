#include "darboux/block.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "darboux/errors.hpp"

namespace darboux {

BlockModel::BlockModel(double alpha, double beta, std::vector<double> a, std::vector<Complex> u,
                       NonlinearityQ f)
    : alpha_(alpha), beta_(beta), a_(std::move(a)), u_(std::move(u)), f_(std::move(f)) {
  if (!(beta_ > 0.0)) throw ParameterError("beta must be positive");
  if (a_.empty() || a_.size() > kMaxBlocks) {
    throw ParameterError("block count must lie in [1, " + std::to_string(kMaxBlocks) + "]");
  }
  if (u_.size() != a_.size()) throw ParameterError("a and u must have the same length");
  double norm2 = 0.0;
  for (std::size_t k = 0; k < a_.size(); ++k) {
    if (a_[k] == 0.0) throw ParameterError("a_k must be nonzero (k = " + std::to_string(k + 1) + ")");
    if (u_[k] == Complex{}) {
      throw ParameterError("u_k must be nonzero (k = " + std::to_string(k + 1) + ")");
    }
    norm2 += std::norm(u_[k]);
  }
  const double norm = std::sqrt(norm2);
  for (auto& x : u_) x /= norm;
  for (double ak : a_) {
    const double fp = f_(ak);
    const double fm = f_(-ak);
    if (std::abs(fp - fm) > 1e-12 * std::max(1.0, std::abs(fp))) {
      throw ParameterError("f must be even: f(" + std::to_string(ak) + ") != f(-" +
                           std::to_string(ak) + ")");
    }
  }
}

BlockModel BlockModel::with_defaults(std::size_t k, double alpha, double beta, NonlinearityQ f) {
  std::vector<double> a(k);
  std::vector<Complex> u(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double n = static_cast<double>(i + 1);
    a[i] = 1.0 / (n * n);
    u[i] = std::pow(2.0, -n / 2.0);
  }
  return BlockModel(alpha, beta, std::move(a), std::move(u), std::move(f));
}

double BlockModel::normalization_defect() const {
  double s = 0.0;
  for (double ak : a_) s += f_(ak);
  return std::abs(s - 0.5);
}

BlockOperators build_block_operators(const BlockModel& model) {
  const std::size_t n = model.dim();
  Matrix rho(n), h(n);
  for (std::size_t k = 0; k < model.blocks(); ++k) {
    const double ak = model.a()[k];
    const std::size_t i = 2 * k;
    rho(i, i) = ak;
    rho(i + 1, i + 1) = -ak;
    h(i, i) = model.alpha() * ak;
    h(i + 1, i + 1) = -model.alpha() * ak;
    h(i, i + 1) = model.beta() * ak;
    h(i + 1, i) = model.beta() * ak;
  }
  return {HermitianOperator(rho), HermitianOperator(h)};
}

std::pair<Complex, Complex> nu_roots(double alpha, double beta) {
  const double s = alpha * alpha + beta * beta;
  if (!(s > 0.0)) throw ParameterError("alpha^2 + beta^2 must be positive");
  if (beta == 0.0) {
    throw ParameterError("beta = 0 gives a real double root nu = 1/alpha; conj(nu) - nu vanishes");
  }
  return {Complex(alpha, beta) / s, Complex(alpha, -beta) / s};
}

StateVector chi_vector(const BlockModel& model, Complex nu, double tol) {
  const auto ops = build_block_operators(model);
  const double r = 1.0 / std::numbers::sqrt2;
  StateVector bra(model.dim());
  for (std::size_t k = 0; k < model.blocks(); ++k) {
    const Complex uk = std::conj(model.u()[k]);
    bra[2 * k] = uk * r;
    bra[2 * k + 1] = uk * Complex(0.0, -r);
  }
  const Matrix pencil = ops.rho.matrix() - nu * ops.h.matrix();
  const double res = row_times(bra, pencil).norm();
  if (res > tol * std::max(1.0, pencil.frobenius_norm())) {
    std::ostringstream os;
    os << "chi_vector: <chi|(rho - nu H) has residual " << res << " at nu = " << nu
       << "; expected the root (alpha + i beta)/(alpha^2 + beta^2)";
    throw InconsistencyError(os.str(), res);
  }
  return bra.conj();
}

BlockSolution::BlockSolution(BlockModel model)
    : BlockSolution(model, nu_roots(model.alpha(), model.beta()).first) {}

BlockSolution::BlockSolution(BlockModel model, Complex nu)
    : model_(std::move(model)),
      nu_(nu),
      ops_(build_block_operators(model_)),
      chi0_(chi_vector(model_, nu)),
      a_spec_(spectral_decompose(model_.f().apply(ops_.rho))) {
  for (double ak : model_.a()) fa_.push_back(model_.f()(ak));
}

HermitianOperator BlockSolution::rho1_closed_form(double t) const {
  const std::size_t kk = model_.blocks();
  const double alpha = model_.alpha();
  const double beta = model_.beta();
  const auto& a = model_.a();
  const auto& u = model_.u();

  double shift = -std::numeric_limits<double>::infinity();
  for (double f : fa_) shift = std::max(shift, 2.0 * beta * f * t);
  double g = 0.0;
  for (std::size_t n = 0; n < kk; ++n) g += std::norm(u[n]) * std::exp(2.0 * beta * fa_[n] * t - shift);

  const Complex left = 1.0 / Complex(alpha, -beta);
  const Complex right = 1.0 / Complex(alpha, beta);
  const Complex i(0.0, 1.0);
  Matrix out(model_.dim());
  for (std::size_t k = 0; k < kk; ++k) {
    for (std::size_t l = 0; l < kk; ++l) {
      const Complex f_kl =
          u[k] * std::conj(u[l]) *
          std::exp(Complex(beta * (fa_[k] + fa_[l]) * t - shift, -alpha * (fa_[k] - fa_[l]) * t));
      const Complex s = beta * f_kl / g;
      const Complex cl = s * a[k] * left;
      const Complex cr = s * a[l] * right;
      const std::size_t r0 = 2 * k;
      const std::size_t c0 = 2 * l;
      out(r0, c0) = i * cl - i * cr;
      out(r0, c0 + 1) = cl + cr;
      out(r0 + 1, c0) = cl + cr;
      out(r0 + 1, c0 + 1) = -i * cl + i * cr;
      if (k == l) {
        out(r0, c0) += a[k];
        out(r0 + 1, c0 + 1) -= a[k];
      }
    }
  }
  return HermitianOperator::symmetrized(out);
}

Projector BlockSolution::projector(double t) const {
  const StateVector bra0 = chi0_.conj();
  StateVector bra = evolve_bra_constant(bra0, a_spec_, nu_, t);
  // Rescale before forming the projector; the scale cancels.
  double m = 0.0;
  for (std::size_t i = 0; i < bra.dim(); ++i) m = std::max(m, std::abs(bra[i]));
  if (m > 0.0) bra *= 1.0 / m;
  const StateVector ket = bra.conj();
  return make_projector(ket, ket);
}

Matrix BlockSolution::rho1_darboux(double t) const {
  const Projector p = projector(t);
  return ops_.rho.matrix() + (std::conj(nu_) - nu_) * commutator(p.matrix(), ops_.h.matrix());
}

double BlockSolution::block_norm(const Matrix& m, std::size_t k, std::size_t l) {
  double s = 0.0;
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) s += std::norm(m(2 * k + r, 2 * l + c));
  return std::sqrt(s);
}

double BlockSolution::asymptotic_time(double margin, int sign) const {
  // Off-diagonal blocks decay like e^{-beta |t| gap}, gap between the two
  // extreme f(a_n) values in the direction of travel.
  std::vector<double> f = fa_;
  std::sort(f.begin(), f.end());
  if (f.size() < 2) throw ParameterError("asymptotic_time: needs at least two blocks");
  const double gap = sign > 0 ? f[f.size() - 1] - f[f.size() - 2] : f[1] - f[0];
  if (!(gap > 0.0)) throw ParameterError("asymptotic_time: extreme f(a_k) values coincide");
  return sign * margin / (model_.beta() * gap);
}

IrreducibilityReport irreducibility_report(const BlockSolution& solution,
                                           std::span<const double> t_samples) {
  IrreducibilityReport r;
  r.min_overall = std::numeric_limits<double>::infinity();
  const std::size_t kk = solution.model().blocks();
  for (double t : t_samples) {
    const HermitianOperator rho1 = solution.rho1_closed_form(t);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t k = 0; k < kk; ++k)
      for (std::size_t l = 0; l < kk; ++l) {
        if (k == l) continue;
        const double b = BlockSolution::block_norm(rho1.matrix(), k, l);
        lo = std::min(lo, b);
        hi = std::max(hi, b);
      }
    if (kk < 2) lo = 0.0;
    r.times.push_back(t);
    r.min_off_block.push_back(lo);
    r.max_off_block.push_back(hi);
    r.min_overall = std::min(r.min_overall, lo);
  }
  return r;
}

}  // namespace darboux
