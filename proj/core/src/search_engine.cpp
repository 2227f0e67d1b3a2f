#include "trivote/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

namespace trivote {

namespace {

std::string format_double(double v, const char* fmt = "%.17g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

std::string format_hex(double v) { return format_double(v, "%a"); }

struct BlockResult {
  std::uint64_t evaluated = 0;
  std::uint64_t skipped = 0;
  bool has_any = false;
  double max_plain = 0.0;
  PlanarConfig arg_plain{};
  double max_cert = 0.0;
  PlanarConfig arg_cert{};
};

// Plain and pessimized ratios off one distance table and one median call.
// Exact referee ties contribute their worse side to both scores, which keeps
// both invariant under the symmetry quotient (a positional tie-break is not).
SearchScores evaluate_config(const PlanarConfig& cfg, double margin) {
  double d[5][5];
  for (int i = 0; i < 5; ++i) {
    d[i][i] = 0.0;
    for (int j = i + 1; j < 5; ++j) d[i][j] = d[j][i] = distance(cfg.points[i], cfg.points[j]);
  }
  double col_sum[5];
  for (int q = 0; q < 5; ++q) {
    double s = 0.0;
    for (int l = 0; l < 5; ++l) s += d[l][q];
    col_sum[q] = s;
  }
  double plain_total = 0.0;
  double cert_total = 0.0;
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) {
      for (int k = 0; k < 5; ++k) {
        if (k == i || k == j) continue;
        const double si = col_sum[i] - d[i][i] - d[j][i] - d[k][i];
        const double sj = col_sum[j] - d[i][j] - d[j][j] - d[k][j];
        const double gap = std::abs(d[k][i] - d[k][j]);
        // kTieBand absorbs roundoff so symmetric configurations evaluate
        // identically; it is far below the smallest nonzero distance gap
        // between grid points. Boundary cases fall into the pessimistic
        // branch, which can only raise the score.
        constexpr double kTieBand = 1e-12;
        if (gap <= kTieBand)
          plain_total += std::max(si, sj);
        else
          plain_total += d[k][i] < d[k][j] ? si : sj;
        if (gap <= margin + kTieBand)
          cert_total += std::max(si, sj);
        else
          cert_total += d[k][i] < d[k][j] ? si : sj;
      }
    }
  }
  const MedianResult opt = geometric_median(std::span<const Point>(cfg.points));
  const double denom = 60.0 * opt.average_cost;
  return {plain_total / denom, cert_total / denom};
}

struct Enumeration {
  std::uint64_t delta_inverse = 0;
  SearchMode mode = SearchMode::Full;
  double delta = 0.0;
  std::uint64_t axis = 0;         // grid values per axis: delta_inverse + 2
  std::uint64_t alpha_count = 0;  // anchor columns: delta_inverse + 1
  std::uint64_t free_count = 0;   // free-point candidates per column
  std::uint64_t blocks = 0;       // alpha_count * free_count

  explicit Enumeration(const SearchOptions& options) {
    delta_inverse = options.delta_inverse;
    mode = options.mode;
    delta = 1.0 / static_cast<double>(delta_inverse);
    axis = delta_inverse + 2;
    alpha_count = delta_inverse + 1;
    free_count = options.mode == SearchMode::Full ? axis * axis : axis;
    blocks = alpha_count * free_count;
  }

  double coord(std::uint64_t index) const { return static_cast<double>(index) * delta; }

  Point candidate(std::uint64_t alpha, std::uint64_t c) const {
    if (mode == SearchMode::Full) return {coord(c / axis), coord(c % axis)};
    return {coord(alpha), coord(c)};
  }

  std::uint64_t multiset_count() const {
    const unsigned __int128 f = free_count;
    const unsigned __int128 m = f * (f + 1) * (f + 2) / 6;
    if (m > static_cast<unsigned __int128>(UINT64_MAX) / alpha_count)
      throw std::overflow_error("enumeration count overflows");
    return static_cast<std::uint64_t>(m);
  }

  std::uint64_t total_configs() const { return alpha_count * multiset_count(); }
};

// Symmetry images in integer index space. Returns false when the image falls
// off the grid (in which case it is not part of the enumeration and cannot be
// used for pruning).
bool apply_symmetry(const Enumeration& e, std::uint64_t alpha, int sym, const std::uint64_t* in,
                    std::uint64_t* out) {
  const std::int64_t k = static_cast<std::int64_t>(e.delta_inverse);
  const std::int64_t top = k + 1;
  for (int t = 0; t < 3; ++t) {
    std::int64_t ix, iy;
    if (e.mode == SearchMode::Full) {
      ix = static_cast<std::int64_t>(in[t] / e.axis);
      iy = static_cast<std::int64_t>(in[t] % e.axis);
    } else {
      ix = static_cast<std::int64_t>(alpha);
      iy = static_cast<std::int64_t>(in[t]);
    }
    if (sym & 1) ix = 2 * static_cast<std::int64_t>(alpha) - ix;  // reflect across the column
    if (sym & 2) iy = k - iy;                                     // reflect across y = 1/2
    if (ix < 0 || ix > top || iy < 0 || iy > top) return false;
    out[t] = e.mode == SearchMode::Full
                 ? static_cast<std::uint64_t>(ix) * e.axis + static_cast<std::uint64_t>(iy)
                 : static_cast<std::uint64_t>(iy);
  }
  std::sort(out, out + 3);
  return true;
}

BlockResult compute_block(const Enumeration& e, std::uint64_t block_id,
                          const std::vector<Point>& full_candidates) {
  const std::uint64_t alpha = block_id / e.free_count;
  const std::uint64_t c3 = block_id % e.free_count;
  const Point anchor_lo{e.coord(alpha), 0.0};
  const Point anchor_hi{e.coord(alpha), 1.0};
  const double margin = indifference_margin(e.delta);
  const bool full = e.mode == SearchMode::Full;
  // In collinear mode the column reflection fixes every candidate, so only
  // the y reflection (sym bit 2) can prune.
  const int first_sym = full ? 1 : 2;

  auto point_of = [&](std::uint64_t c) {
    return full ? full_candidates[c] : e.candidate(alpha, c);
  };

  BlockResult result;
  std::uint64_t triple[3];
  std::uint64_t image[3];
  PlanarConfig cfg;
  cfg.points[0] = anchor_lo;
  cfg.points[1] = anchor_hi;
  cfg.points[2] = point_of(c3);
  triple[0] = c3;

  for (std::uint64_t c4 = c3; c4 < e.free_count; ++c4) {
    cfg.points[3] = point_of(c4);
    triple[1] = c4;
    for (std::uint64_t c5 = c4; c5 < e.free_count; ++c5) {
      triple[2] = c5;
      bool skip = false;
      for (int sym = first_sym; sym <= 3 && !skip; ++sym) {
        if (!apply_symmetry(e, alpha, sym, triple, image)) continue;
        if (std::lexicographical_compare(image, image + 3, triple, triple + 3)) skip = true;
      }
      if (skip) {
        ++result.skipped;
        continue;
      }
      cfg.points[4] = point_of(c5);
      const SearchScores scores = evaluate_config(cfg, margin);
      ++result.evaluated;
      if (!result.has_any) {
        result.has_any = true;
        result.max_plain = scores.plain;
        result.arg_plain = cfg;
        result.max_cert = scores.certified;
        result.arg_cert = cfg;
        continue;
      }
      if (scores.plain > result.max_plain ||
          (scores.plain == result.max_plain && config_lex_less(cfg, result.arg_plain))) {
        result.max_plain = scores.plain;
        result.arg_plain = cfg;
      }
      if (scores.certified > result.max_cert ||
          (scores.certified == result.max_cert && config_lex_less(cfg, result.arg_cert))) {
        result.max_cert = scores.certified;
        result.arg_cert = cfg;
      }
    }
  }
  return result;
}

std::string config_tokens(const PlanarConfig& cfg) {
  std::string out;
  for (const Point& p : cfg.points) {
    out += ' ';
    out += format_hex(p.x);
    out += ' ';
    out += format_hex(p.y);
  }
  return out;
}

class CheckpointFile {
 public:
  CheckpointFile(const std::string& path, const Enumeration& e) : path_(path) {
    if (path_.empty()) return;
    std::ifstream in(path_);
    if (in) {
      load(in, e);
      out_.open(path_, std::ios::app);
    } else {
      out_.open(path_, std::ios::trunc);
      if (!out_) throw std::runtime_error("cannot write checkpoint '" + path_ + "'");
      out_ << "trivote-search-checkpoint v1\n";
      out_ << "meta delta_inv=" << e.delta_inverse << " mode=" << search_mode_name(e.mode)
           << " blocks=" << e.blocks << "\n";
      out_.flush();
    }
  }

  bool enabled() const { return !path_.empty(); }
  const std::vector<std::pair<bool, BlockResult>>& loaded() const { return loaded_; }

  void append(std::uint64_t id, const BlockResult& r) {
    if (!enabled()) return;
    std::scoped_lock lock(mutex_);
    out_ << "block " << id << ' ' << r.evaluated << ' ' << r.skipped << ' '
         << (r.has_any ? 1 : 0);
    if (r.has_any)
      out_ << ' ' << format_hex(r.max_plain) << config_tokens(r.arg_plain) << ' '
           << format_hex(r.max_cert) << config_tokens(r.arg_cert);
    out_ << "\n";
    out_.flush();
  }

 private:
  void load(std::ifstream& in, const Enumeration& e) {
    loaded_.assign(e.blocks, {false, BlockResult{}});
    std::string line;
    if (!std::getline(in, line) || line != "trivote-search-checkpoint v1")
      throw std::runtime_error("checkpoint '" + path_ + "' has an unknown header");
    const std::string expected_meta = "meta delta_inv=" + std::to_string(e.delta_inverse) +
                                      " mode=" + search_mode_name(e.mode) +
                                      " blocks=" + std::to_string(e.blocks);
    if (!std::getline(in, line) || line != expected_meta)
      throw std::runtime_error("checkpoint '" + path_ + "' does not match this search");
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream fields(line);
      std::string tag;
      std::uint64_t id = 0;
      int has_any = 0;
      BlockResult r;
      fields >> tag >> id >> r.evaluated >> r.skipped >> has_any;
      if (!fields || tag != "block" || id >= e.blocks) continue;  // tolerate a torn tail line
      r.has_any = has_any != 0;
      if (r.has_any) {
        auto read_double = [&fields](double& v) {
          std::string tok;
          fields >> tok;
          if (!fields) return false;
          char* end = nullptr;
          v = std::strtod(tok.c_str(), &end);
          return end == tok.c_str() + tok.size();
        };
        auto read_config = [&](PlanarConfig& cfg) {
          for (Point& p : cfg.points)
            if (!read_double(p.x) || !read_double(p.y)) return false;
          return true;
        };
        if (!read_double(r.max_plain) || !read_config(r.arg_plain) || !read_double(r.max_cert) ||
            !read_config(r.arg_cert))
          continue;
      }
      loaded_[id] = {true, r};
    }
  }

  std::string path_;
  std::ofstream out_;
  std::mutex mutex_;
  std::vector<std::pair<bool, BlockResult>> loaded_;
};

}  // namespace

SearchMode parse_search_mode(const std::string& name) {
  if (name == "full") return SearchMode::Full;
  if (name == "collinear") return SearchMode::Collinear;
  throw std::invalid_argument("unknown search mode '" + name + "'");
}

std::string search_mode_name(SearchMode mode) {
  return mode == SearchMode::Full ? "full" : "collinear";
}

SearchScores search_scores(const PlanarConfig& cfg, const GridSpec& grid) {
  for (const Point& p : cfg.points)
    if (!grid.on_grid(p)) throw std::domain_error("search_scores requires all points on the grid");
  if (all_coincident(cfg)) return {1.0, 1.0};
  return evaluate_config(cfg, indifference_margin(grid.delta()));
}

std::uint64_t estimate_config_count(const SearchOptions& options) {
  if (options.delta_inverse == 0) throw std::invalid_argument("delta_inverse must be positive");
  return Enumeration(options).total_configs();
}

SearchReport grid_search(const SearchOptions& options) {
  if (options.delta_inverse == 0) throw std::invalid_argument("delta_inverse must be positive");
  if (options.threads == 0) throw std::invalid_argument("need at least one thread");
  const Enumeration e(options);
  const std::uint64_t total = e.total_configs();
  if (!options.unlimited && total > options.budget) throw BudgetError(total, options.budget);

  const auto start = std::chrono::steady_clock::now();

  std::vector<Point> full_candidates;
  if (e.mode == SearchMode::Full) {
    full_candidates.resize(e.free_count);
    for (std::uint64_t c = 0; c < e.free_count; ++c) full_candidates[c] = e.candidate(0, c);
  }

  CheckpointFile checkpoint(options.checkpoint_path, e);

  std::vector<BlockResult> results(e.blocks);
  std::vector<char> done(e.blocks, 0);
  if (checkpoint.enabled() && !checkpoint.loaded().empty()) {
    for (std::uint64_t b = 0; b < e.blocks; ++b) {
      if (checkpoint.loaded()[b].first) {
        results[b] = checkpoint.loaded()[b].second;
        done[b] = 1;
      }
    }
  }

  const std::uint64_t limit =
      options.max_blocks == 0 ? e.blocks : std::min<std::uint64_t>(options.max_blocks, e.blocks);
  std::atomic<std::uint64_t> cursor{0};
  auto worker = [&] {
    while (true) {
      const std::uint64_t b = cursor.fetch_add(1, std::memory_order_relaxed);
      if (b >= limit) return;
      if (done[b]) continue;
      results[b] = compute_block(e, b, full_candidates);
      done[b] = 1;
      checkpoint.append(b, results[b]);
    }
  };
  if (options.threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(options.threads);
    for (unsigned t = 0; t < options.threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SearchReport report;
  report.delta_inverse = e.delta_inverse;
  report.delta = e.delta;
  report.mode = e.mode;
  report.threads = options.threads;

  bool any = false;
  std::uint64_t done_blocks = 0;
  for (std::uint64_t b = 0; b < e.blocks; ++b) {
    if (!done[b]) continue;
    ++done_blocks;
    const BlockResult& r = results[b];
    report.configs_evaluated += r.evaluated;
    report.configs_skipped += r.skipped;
    if (!r.has_any) continue;
    if (!any) {
      any = true;
      report.max_plain_pd = r.max_plain;
      report.argmax_plain = r.arg_plain;
      report.max_certified_pd = r.max_cert;
      report.argmax_certified = r.arg_cert;
      continue;
    }
    if (r.max_plain > report.max_plain_pd ||
        (r.max_plain == report.max_plain_pd && config_lex_less(r.arg_plain, report.argmax_plain))) {
      report.max_plain_pd = r.max_plain;
      report.argmax_plain = r.arg_plain;
    }
    if (r.max_cert > report.max_certified_pd ||
        (r.max_cert == report.max_certified_pd &&
         config_lex_less(r.arg_cert, report.argmax_certified))) {
      report.max_certified_pd = r.max_cert;
      report.argmax_certified = r.arg_cert;
    }
  }

  report.configs_total = total;
  report.complete = done_blocks == e.blocks;
  if (report.complete && report.configs_evaluated + report.configs_skipped != total)
    throw std::logic_error("enumeration count mismatch: evaluated " +
                           std::to_string(report.configs_evaluated) + " + skipped " +
                           std::to_string(report.configs_skipped) + " != " + std::to_string(total));
  report.threshold = certification_threshold(e.delta);
  report.certified = report.complete && report.max_certified_pd < report.threshold;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string render_summary(const SearchReport& report) {
  std::ostringstream out;
  auto config_line = [](const PlanarConfig& cfg) {
    std::string line;
    for (const Point& p : cfg.points) {
      if (!line.empty()) line += ' ';
      line += format_double(p.x);
      line += ' ';
      line += format_double(p.y);
    }
    return line;
  };
  out << "delta_inv=" << report.delta_inverse << "\n";
  out << "delta=" << format_double(report.delta) << "\n";
  out << "mode=" << search_mode_name(report.mode) << "\n";
  out << "complete=" << (report.complete ? "true" : "false") << "\n";
  out << "configs_total=" << report.configs_total << "\n";
  out << "configs_evaluated=" << report.configs_evaluated << "\n";
  out << "configs_skipped=" << report.configs_skipped << "\n";
  out << "max_plain_pd=" << format_double(report.max_plain_pd) << "\n";
  out << "argmax_plain=" << config_line(report.argmax_plain) << "\n";
  out << "max_certified_pd=" << format_double(report.max_certified_pd) << "\n";
  out << "argmax_certified=" << config_line(report.argmax_certified) << "\n";
  out << "threshold=" << format_double(report.threshold) << "\n";
  out << "certified=" << (report.certified ? "true" : "false") << "\n";
  return out.str();
}

CertificationResult certify_plane_bound(std::uint64_t delta_inverse, SearchOptions options) {
  options.delta_inverse = delta_inverse;
  options.mode = SearchMode::Full;
  SearchReport report = grid_search(options);
  return {report.certified, std::move(report)};
}

}  // namespace trivote
