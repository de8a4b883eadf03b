#pragma once

#include <functional>
#include <string>

#include "darboux/hermitian.hpp"

namespace darboux {

/// Scalar nonlinearity f entering i d(rho)/dt = [H, f(rho)].
///
/// Real exponents are only defined on x > 0 unless q is an integer. With
/// `even_extension` the function is evaluated as f(|x|), which is what the
/// block-diagonal construction needs for rho with eigenvalues +/- a_k.
class NonlinearityQ {
 public:
  enum class Form { Power, ShiftedPower, Custom };

  /// f(x) = x^q
  static NonlinearityQ power(double q, bool even_extension = false);
  /// f(x) = x^q - 2 x^(q-1); reduces to x - 2 at q = 1.
  static NonlinearityQ shifted_power(double q);
  static NonlinearityQ custom(std::function<double(double)> f, std::string name,
                              bool even_extension = false);

  double operator()(double x) const;
  Form form() const noexcept { return form_; }
  double q() const noexcept { return q_; }
  bool even_extension() const noexcept { return even_; }
  std::string describe() const;

  ScalarFunction as_function() const {
    return [self = *this](double x) { return self(x); };
  }

  HermitianOperator apply(const HermitianOperator& m, const SpectralOptions& opts = {}) const {
    return matrix_function(m, as_function(), opts);
  }

 private:
  NonlinearityQ(Form form, double q, bool even) : form_(form), q_(q), even_(even) {}
  double raw(double x) const;

  Form form_;
  double q_ = 1.0;
  bool even_ = false;
  std::function<double(double)> custom_;
  std::string name_;
};

/// x^p for real p; throws DomainError for x <= 0 unless p is an integer (x = 0
/// with p < 0 is rejected too).
double real_power(double x, double p);

}  // namespace darboux
