#pragma once

#include <cstdint>
#include <string>

#include "trivote/plane_search.hpp"

namespace trivote {

enum class SearchMode { Full, Collinear };

SearchMode parse_search_mode(const std::string& name);  // "full" | "collinear"
std::string search_mode_name(SearchMode mode);

struct SearchOptions {
  std::uint64_t delta_inverse = 10;  // delta = 1/delta_inverse
  SearchMode mode = SearchMode::Full;
  unsigned threads = 1;
  /// Refuse searches whose closed-form configuration count exceeds this,
  /// unless `unlimited` is set. The refusal carries the estimate.
  std::uint64_t budget = 50'000'000;
  bool unlimited = false;
  /// When nonempty, per-block results are persisted here and a matching file
  /// is resumed from instead of recomputed.
  std::string checkpoint_path;
  /// Testing/operations hook: stop after this many leading blocks (0 = all).
  /// The resulting report is marked incomplete.
  std::uint64_t max_blocks = 0;
};

struct SearchReport {
  std::uint64_t delta_inverse = 0;
  double delta = 0.0;
  SearchMode mode = SearchMode::Full;

  double max_plain_pd = 0.0;
  PlanarConfig argmax_plain{};
  double max_certified_pd = 0.0;
  PlanarConfig argmax_certified{};

  std::uint64_t configs_evaluated = 0;
  std::uint64_t configs_skipped = 0;  // pruned as non-minimal under symmetry
  std::uint64_t configs_total = 0;    // closed-form enumeration count

  double threshold = 0.0;  // certification_threshold(delta)
  bool certified = false;  // max_certified_pd < threshold
  bool complete = false;

  double wall_seconds = 0.0;
  unsigned threads = 1;
};

/// Closed-form enumeration count for the options' grid: one anchor column per
/// alpha times the number of 3-multisets of free grid points.
std::uint64_t estimate_config_count(const SearchOptions& options);

/// The two scores the search tracks for one on-grid configuration.
///
/// `plain` is the pessimistic-distortion ratio with exactly tied referees
/// accounted worst-case (the tie rule must be invariant under the symmetry
/// quotient; a lexicographic tie-break is not, since reflections reorder
/// coordinates). It coincides with pessimistic_distortion wherever no referee
/// is exactly indifferent - in particular on every reported argmax below.
/// `certified` is certified_pd.
struct SearchScores {
  double plain = 0.0;
  double certified = 0.0;
};

SearchScores search_scores(const PlanarConfig& cfg, const GridSpec& grid);

/// Exhaustive search over canonical grid configurations: the extreme pair is
/// pinned to (alpha*delta, 0)-(alpha*delta, 1) and the three free points range
/// over the grid on [0, 1+delta]^2 (full mode) or over the anchor column
/// (collinear mode), as unordered multisets. Reflection across the anchor
/// column, reflection across y = 1/2 and their composition are quotiented
/// away whenever the image stays on the grid. Work is partitioned into
/// (alpha, first free point) blocks; the reduction folds blocks in index
/// order taking the max by value with lexicographic argmax tie-breaks, so the
/// report is independent of the thread count. Throws BudgetError when the
/// estimated count exceeds the budget.
SearchReport grid_search(const SearchOptions& options);

/// Canonical machine-readable summary (key=value lines, LF endings). Contains
/// no timing or thread information: equal runs produce byte-identical text.
std::string render_summary(const SearchReport& report);

struct CertificationResult {
  bool certified = false;
  SearchReport report;
};

/// Runs the full search at the given fineness and checks the grid maximum
/// against the certification threshold. At coarse delta the threshold drops
/// below the attainable maxima, so certification legitimately fails there;
/// the report states the threshold and the maximum found either way.
CertificationResult certify_plane_bound(std::uint64_t delta_inverse,
                                     SearchOptions options = SearchOptions{});

}  // namespace trivote
