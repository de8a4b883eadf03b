#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "darboux/block.hpp"
#include "darboux/seed.hpp"

namespace darboux {

/// Flat `key = value` text. A key with an empty value is followed by a matrix
/// block. `#` starts a comment.
struct KeyValueDoc {
  std::map<std::string, std::string> scalars;
  std::map<std::string, Matrix> matrices;

  bool has(const std::string& key) const { return scalars.count(key) != 0; }
  const std::string& get(const std::string& key) const;
  double get_real(const std::string& key) const;
  double get_real(const std::string& key, double fallback) const;
  Complex get_complex(const std::string& key) const;
  const Matrix& get_matrix(const std::string& key) const;
};

KeyValueDoc parse_key_values(std::istream& is);
KeyValueDoc load_key_values(const std::string& path);

/// Nonlinearity keys: f = power | shifted_power, q, even = true | false.
/// Custom functions cannot be written (ParameterError).
void write_nonlinearity(std::ostream& os, const NonlinearityQ& f);
NonlinearityQ read_nonlinearity(const KeyValueDoc& doc);

/// Keys: f, q, omega, a, mu, phi0, rho0 (block), H (block). The result goes
/// through make_seed_bundle, so an invalid seed raises ParameterError.
void write_seed(std::ostream& os, const SeedBundle& bundle);
SeedBundle read_seed(const KeyValueDoc& doc, const SeedTolerances& tol = {});

/// Keys: alpha, beta, a (real list), u (complex list), f, q, even. Without
/// a and u the default rule at K blocks is used (K defaults to 8); without q,
/// f(x) = |x|^(2/3).
void write_block_model(std::ostream& os, const BlockModel& model);
BlockModel read_block_model(const KeyValueDoc& doc);

}  // namespace darboux
