#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isodrum/drums.hpp"
#include "isodrum/spectral.hpp"
#include "isodrum/transplant.hpp"

namespace isodrum {

struct GwwOptions {
  Rational h{1, 64};
  std::string tile = "half-square";
  std::size_t k = 10;
  /// Relative gap allowed between the spectra; 0 picks 1% for h <= 1/64
  /// and 2% for coarser grids.
  double tolerance = 0;
  /// When nonempty, SVG, JSON and system files are written here.
  std::string out_dir;
  std::uint64_t seed = 0;
  Bounds bounds;
};

struct GwwStage {
  std::string name;
  bool ok = false;
  std::string detail;
};

/**
 * The seven-tile pair end to end: the PSL(3,2) triple and its involution
 * witness, the drum pair from the scan, its transplantation matrix, the two
 * unfolded drums and their spectra. Stages run in order and the first
 * failing stage stops the run.
 */
struct GwwReport {
  std::vector<GwwStage> stages;
  bool pass = false;
  std::optional<InvolutionSystem> witness_a, witness_b;
  std::optional<InvolutionSystem> a, b;
  std::size_t witness_fixed_sum = 0;
  std::size_t fixed_sum = 0;
  std::optional<TransplantationSolution> solution;
  std::optional<TiledDomain> domain_a, domain_b;
  std::optional<SpectrumResult> spectrum_a, spectrum_b;
  std::optional<SpectrumComparison> comparison;
  double tolerance = 0;
  std::vector<std::string> files;

  /// Name of the first failing stage, empty when all passed.
  std::string failed_stage() const;
  std::string to_text() const;
  std::string to_json() const;
};

GwwReport run_gww_pipeline(const GwwOptions& options = {});

struct DrumPair {
  InvolutionSystem a, b;
  std::size_t scan_index = 0;           // position in okada_shudo_scan(psl(3,2), 7, 3)
  std::vector<std::size_t> side_order;  // recoloring applied to the scan pair
};

/// The first scan pair of psl_triple(3, 2), and the first side order in
/// lexicographic order, whose half-square unfoldings are simple polygons
/// that are not congruent. Throws std::logic_error if none exists.
DrumPair gww_systems(const Bounds& bounds = {});

}  // namespace isodrum
