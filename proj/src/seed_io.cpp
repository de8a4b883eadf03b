#include "darboux/seed_io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "darboux/errors.hpp"
#include "darboux/matrix_io.hpp"

namespace darboux {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ParameterError("expected a boolean, got '" + v + "'");
}

}  // namespace

const std::string& KeyValueDoc::get(const std::string& key) const {
  const auto it = scalars.find(key);
  if (it == scalars.end()) throw ParameterError("missing key '" + key + "'");
  return it->second;
}

double KeyValueDoc::get_real(const std::string& key) const {
  const Complex z = get_complex(key);
  if (z.imag() != 0.0) throw ParameterError("key '" + key + "' must be real");
  return z.real();
}

double KeyValueDoc::get_real(const std::string& key, double fallback) const {
  return has(key) ? get_real(key) : fallback;
}

Complex KeyValueDoc::get_complex(const std::string& key) const {
  try {
    return parse_complex(get(key));
  } catch (const ParameterError& e) {
    throw ParameterError("key '" + key + "': " + e.what());
  }
}

const Matrix& KeyValueDoc::get_matrix(const std::string& key) const {
  const auto it = matrices.find(key);
  if (it == matrices.end()) throw ParameterError("missing matrix block '" + key + "'");
  return it->second;
}

KeyValueDoc parse_key_values(std::istream& is) {
  KeyValueDoc doc;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParameterError("line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParameterError("line " + std::to_string(lineno) + ": empty key");
    if (doc.scalars.count(key) || doc.matrices.count(key)) {
      throw ParameterError("duplicate key '" + key + "'");
    }
    if (value.empty()) {
      try {
        doc.matrices.emplace(key, read_matrix(is));
      } catch (const ParameterError& e) {
        throw ParameterError("matrix block '" + key + "': " + e.what());
      }
    } else {
      doc.scalars.emplace(key, value);
    }
  }
  return doc;
}

KeyValueDoc load_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open '" + path + "'");
  return parse_key_values(in);
}

void write_nonlinearity(std::ostream& os, const NonlinearityQ& f) {
  switch (f.form()) {
    case NonlinearityQ::Form::Power:
      os << "f = power\n";
      break;
    case NonlinearityQ::Form::ShiftedPower:
      os << "f = shifted_power\n";
      break;
    case NonlinearityQ::Form::Custom:
      throw ParameterError("custom nonlinearities cannot be serialized");
  }
  os << "q = " << format_real(f.q()) << '\n';
  os << "even = " << (f.even_extension() ? "true" : "false") << '\n';
}

NonlinearityQ read_nonlinearity(const KeyValueDoc& doc) {
  const std::string form = doc.has("f") ? doc.get("f") : "shifted_power";
  const double q = doc.get_real("q");
  const bool even = doc.has("even") && parse_bool(doc.get("even"));
  if (form == "power") return NonlinearityQ::power(q, even);
  if (form == "shifted_power") {
    if (even) throw ParameterError("shifted_power has no even extension");
    return NonlinearityQ::shifted_power(q);
  }
  throw ParameterError("unknown nonlinearity '" + form + "'");
}

void write_seed(std::ostream& os, const SeedBundle& b) {
  write_nonlinearity(os, b.f);
  os << "omega = " << format_real(b.omega) << '\n';
  os << "a = " << format_real(b.a) << '\n';
  os << "mu = " << format_complex(b.mu) << '\n';
  os << "phi0 = " << format_vector(b.phi0) << '\n';
  os << "rho0 =\n";
  write_matrix(os, b.rho0.matrix());
  os << "H =\n";
  write_matrix(os, b.h.matrix());
}

SeedBundle read_seed(const KeyValueDoc& doc, const SeedTolerances& tol) {
  const NonlinearityQ f = read_nonlinearity(doc);
  const HermitianOperator rho0(doc.get_matrix("rho0"));
  const HermitianOperator h(doc.get_matrix("H"));
  if (rho0.dim() != h.dim()) throw DimensionMismatch("rho0 and H differ in dimension");
  return make_seed_bundle(rho0, h, f, doc.get_real("a", 1.0), doc.get_complex("mu"),
                          parse_vector(doc.get("phi0")), doc.get_real("omega", 1.0), tol);
}

void write_block_model(std::ostream& os, const BlockModel& m) {
  write_nonlinearity(os, m.f());
  os << "alpha = " << format_real(m.alpha()) << '\n';
  os << "beta = " << format_real(m.beta()) << '\n';
  os << "a =";
  for (double x : m.a()) os << ' ' << format_real(x);
  os << '\n';
  os << "u = " << format_vector(StateVector(m.u())) << '\n';
}

BlockModel read_block_model(const KeyValueDoc& doc) {
  const double alpha = doc.get_real("alpha", 1.0);
  const double beta = doc.get_real("beta", 1.0);
  const NonlinearityQ f = doc.has("q") ? read_nonlinearity(doc) : NonlinearityQ::power(2.0 / 3.0, true);
  if (!doc.has("a") && !doc.has("u")) {
    const double k = doc.get_real("K", 8.0);
    if (!(k >= 1.0) || k != std::floor(k)) throw ParameterError("K must be a positive integer");
    return BlockModel::with_defaults(static_cast<std::size_t>(k), alpha, beta, f);
  }
  const StateVector a = parse_vector(doc.get("a"));
  std::vector<double> ar;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a[i].imag() != 0.0) throw ParameterError("block amplitudes a_k must be real");
    ar.push_back(a[i].real());
  }
  const StateVector u = parse_vector(doc.get("u"));
  if (doc.has("K") && doc.get_real("K") != static_cast<double>(ar.size())) {
    throw ParameterError("K disagrees with the length of a");
  }
  return BlockModel(alpha, beta, std::move(ar),
                    std::vector<Complex>(u.entries().begin(), u.entries().end()), f);
}

}  // namespace darboux
