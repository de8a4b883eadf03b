#include "darboux/matrix_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "darboux/errors.hpp"

namespace darboux {

namespace {

double parse_double(std::string_view s, std::string_view whole) {
  double x = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(x)) {
    throw ParameterError("malformed complex number '" + std::string(whole) + "'");
  }
  return x;
}

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

std::string format_real(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_complex(Complex z) {
  double im = z.imag();
  if (im == 0.0) im = 0.0;
  std::string out = format_real(z.real());
  if (std::signbit(im)) {
    out += '-';
    out += format_real(-im);
  } else {
    out += '+';
    out += format_real(im);
  }
  out += 'i';
  return out;
}

Complex parse_complex(std::string_view text) {
  std::string_view s = text;
  if (s.empty()) throw ParameterError("empty complex number");
  if (s.back() != 'i') return {parse_double(s, text), 0.0};  // bare real
  s.remove_suffix(1);
  // The separating sign is the last +/- that is neither leading nor part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) {
    throw ParameterError("malformed complex number '" + std::string(text) + "'");
  }
  const double re = parse_double(s.substr(0, split), text);
  const double im = parse_double(s.substr(split), text);
  return {re, im};
}

void write_matrix(std::ostream& os, const Matrix& m) {
  os << m.dim() << '\n';
  for (std::size_t r = 0; r < m.dim(); ++r) {
    for (std::size_t c = 0; c < m.dim(); ++c) {
      if (c > 0) os << ' ';
      os << format_complex(m(r, c));
    }
    os << '\n';
  }
}

Matrix read_matrix(std::istream& is) {
  std::string line;
  while (std::getline(is, line) && split_ws(line).empty()) {
  }
  const auto head = split_ws(line);
  if (head.size() != 1) throw ParameterError("matrix block: expected dimension line");
  std::size_t n = 0;
  const auto [ptr, ec] = std::from_chars(head[0].data(), head[0].data() + head[0].size(), n);
  if (ec != std::errc() || ptr != head[0].data() + head[0].size() || n == 0) {
    throw ParameterError("matrix block: invalid dimension '" + head[0] + "'");
  }
  std::vector<Complex> data;
  data.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!std::getline(is, line)) throw ParameterError("matrix block: truncated");
    const auto fields = split_ws(line);
    if (fields.size() != n) {
      throw ParameterError("matrix block: row " + std::to_string(r) + " has " +
                           std::to_string(fields.size()) + " entries, expected " +
                           std::to_string(n));
    }
    for (const auto& f : fields) data.push_back(parse_complex(f));
  }
  return Matrix(n, std::move(data));
}

Matrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open matrix file '" + path + "'");
  return read_matrix(in);
}

void save_matrix(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot write matrix file '" + path + "'");
  write_matrix(out, m);
}

std::string format_vector(const StateVector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (i > 0) out += ' ';
    out += format_complex(v[i]);
  }
  return out;
}

StateVector parse_vector(std::string_view text) {
  std::vector<Complex> entries;
  for (const auto& f : split_ws(text)) entries.push_back(parse_complex(f));
  if (entries.empty()) throw ParameterError("empty vector");
  return StateVector(std::move(entries));
}

}  // namespace darboux
