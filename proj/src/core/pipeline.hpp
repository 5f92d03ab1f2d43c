#pragma once

#include <string>

#include "core/cavity.hpp"
#include "core/config.hpp"
#include "core/coupling.hpp"
#include "core/homodyne.hpp"
#include "core/squeezing.hpp"

namespace siopo {

// Everything derived from a validated configuration: cavity numbers, the
// coupling matrix and its squeezed eigenmode basis, dynamics and the
// detection efficiency chain.
struct Session {
  ExperimentConfig config;
  CavityGeometry geometry;
  CavityReport cavity;
  double coherence_len = 0.0;
  double basis_waist = 0.0;
  CouplingMatrix coupling;
  ModeDecomposition decomposition;
  OpoDynamics dynamics;
  EfficiencyChain efficiency;
};

Session build_session(const ExperimentConfig& cfg);

// Cavity-only prefix of the session (no decomposition; cheap).
CavityGeometry geometry_from_config(const ExperimentConfig& cfg);

struct RunResult {
  std::string summary;
  bool reproduction_passed = true;  // meaningful for the reproduction run
};

// Subcommands write their CSV artifacts plus the resolved configuration
// under `out_dir` and return a printable summary.  Identical configuration
// and seed produce byte-identical files.
RunResult run_design(const ExperimentConfig& cfg, const std::string& out_dir);
RunResult run_spectrum(const ExperimentConfig& cfg, const std::string& out_dir);
RunResult run_modes(const ExperimentConfig& cfg, const std::string& out_dir);
RunResult run_homodyne(const ExperimentConfig& cfg, const std::string& out_dir);
RunResult run_reproduction(const ExperimentConfig& cfg,
                           const std::string& out_dir);

// name in {design, spectrum, modes, homodyne, reproduce-paper}
RunResult run_subcommand(const std::string& name, const ExperimentConfig& cfg,
                         const std::string& out_dir);

struct ReportRow {
  std::string quantity;
  std::string reference;
  std::string computed;
  std::string tolerance;
  bool pass = false;
};

// The quantitative reproduction table behind `reproduce-paper`.
// `artifact_bytes`, when non-null, collects every emitted file body for the
// determinism self-check.
std::vector<ReportRow> reproduction_rows(const Session& session,
                                         std::string* artifact_bytes);

}  // namespace siopo
