#include "darboux/nonlinearity.hpp"

#include <cmath>
#include <sstream>

#include "darboux/errors.hpp"
#include "darboux/matrix_io.hpp"

namespace darboux {

double real_power(double x, double p) {
  const bool integer = std::nearbyint(p) == p;
  if (x < 0.0 && !integer) {
    std::ostringstream os;
    os << "x^" << p << " undefined for negative x = " << x
       << " (enable the even extension to use f(|x|))";
    throw DomainError(os.str());
  }
  if (x == 0.0 && p < 0.0) throw DomainError("x^q with q < 0 undefined at x = 0");
  return std::pow(x, p);
}

NonlinearityQ NonlinearityQ::power(double q, bool even_extension) {
  return NonlinearityQ(Form::Power, q, even_extension);
}

NonlinearityQ NonlinearityQ::shifted_power(double q) {
  return NonlinearityQ(Form::ShiftedPower, q, false);
}

NonlinearityQ NonlinearityQ::custom(std::function<double(double)> f, std::string name,
                                    bool even_extension) {
  NonlinearityQ n(Form::Custom, 0.0, even_extension);
  n.custom_ = std::move(f);
  n.name_ = std::move(name);
  return n;
}

double NonlinearityQ::raw(double x) const {
  switch (form_) {
    case Form::Power:
      return real_power(x, q_);
    case Form::ShiftedPower:
      if (q_ == 1.0) return x - 2.0;
      return real_power(x, q_) - 2.0 * real_power(x, q_ - 1.0);
    case Form::Custom:
      return custom_(x);
  }
  return 0.0;
}

double NonlinearityQ::operator()(double x) const {
  const double y = raw(even_ ? std::abs(x) : x);
  if (!std::isfinite(y)) {
    std::ostringstream os;
    os << describe() << " is not finite at x = " << x;
    throw DomainError(os.str());
  }
  return y;
}

std::string NonlinearityQ::describe() const {
  std::string s;
  switch (form_) {
    case Form::Power:
      s = "x^" + format_real(q_);
      break;
    case Form::ShiftedPower:
      s = "x^" + format_real(q_) + " - 2 x^(" + format_real(q_) + " - 1)";
      break;
    case Form::Custom:
      s = name_;
      break;
  }
  if (even_) s = "even(" + s + ")";
  return s;
}

}  // namespace darboux
