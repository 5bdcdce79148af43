#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "llbar/config.hpp"
#include "llbar/models.hpp"
#include "llbar/spinalg.hpp"

namespace llbar {

struct CheckResult {
  std::string name;
  bool passed = false;
  double max_dev = 0.0;
  double tol = 0.0;
  std::string note;
};

struct VerifyOptions {
  AsymmetryParam a{};
  std::size_t quad_depth = 256;
  Fault fault = Fault::kNone;
  ParticleMasses masses = kPdgMasses;
};

/// Reference joint multipole table for J/psi spin projection +1, entry
/// by entry (Lambda index first).
[[nodiscard]] MultipoleSet tabulated_multipoles();

/// Grid alpha_k = pi k / (n - 1), k = 0..n-1.
[[nodiscard]] std::vector<double> alpha_grid(std::size_t n = 101);

/// Runs every derivation check. Entries of the multipole table that the
/// D-wave density cannot produce are reported as a note, not a check.
[[nodiscard]] std::vector<CheckResult> run_verification(const VerifyOptions& opts);

void print_checks(std::ostream& out, const std::vector<CheckResult>& checks);

}  // namespace llbar
