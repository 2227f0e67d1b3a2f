#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <vector>

#include "trivote/plane_search.hpp"
#include "trivote/rng.hpp"
#include "trivote/search.hpp"

using namespace trivote;

namespace {

PlanarConfig make(std::initializer_list<Point> pts) {
  PlanarConfig cfg;
  std::size_t i = 0;
  for (const Point& p : pts) cfg.points[i++] = p;
  REQUIRE(i == 5);
  return cfg;
}

PlanarConfig random_config(Rng& rng, double span = 1.0) {
  PlanarConfig cfg;
  for (Point& p : cfg.points) p = {span * rng.uniform_double(), span * rng.uniform_double()};
  return cfg;
}

// Literal role enumeration, written independently of the library loop.
double oracle_rr_average_cost(const PlanarConfig& cfg) {
  double total = 0.0;
  int terms = 0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      if (j <= i) continue;
      for (int k = 0; k < 5; ++k) {
        if (k == i || k == j) continue;
        const double di = distance(cfg.points[k], cfg.points[i]);
        const double dj = distance(cfg.points[k], cfg.points[j]);
        Point chosen;
        if (di < dj)
          chosen = cfg.points[i];
        else if (dj < di)
          chosen = cfg.points[j];
        else
          chosen = lex_less(cfg.points[i], cfg.points[j]) ? cfg.points[i] : cfg.points[j];
        for (int l = 0; l < 5; ++l) {
          if (l == i || l == j || l == k) continue;
          total += distance(cfg.points[l], chosen);
          ++terms;
        }
      }
    }
  REQUIRE(terms == 60);
  return total / 60.0;
}

PlanarConfig transformed(const PlanarConfig& cfg, double angle, double scale, Point shift) {
  PlanarConfig out;
  const double c = std::cos(angle), s = std::sin(angle);
  for (int i = 0; i < 5; ++i) {
    const Point& p = cfg.points[i];
    out.points[i] = {scale * (c * p.x - s * p.y) + shift.x, scale * (s * p.x + c * p.y) + shift.y};
  }
  return out;
}

}  // namespace

TEST_CASE("rr average cost basics") {
  const PlanarConfig same = make({{2, 3}, {2, 3}, {2, 3}, {2, 3}, {2, 3}});
  CHECK(rr_average_cost(same) == 0.0);

  // Four coincident points and one at distance 1: the cluster always wins the
  // referee choice, so only the 12 terms with the singleton as bystander pay.
  const PlanarConfig fourone = make({{0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 1}});
  CHECK(rr_average_cost(fourone) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(oracle_rr_average_cost(fourone) == doctest::Approx(0.2).epsilon(1e-15));

  Rng rng(103);
  for (int trial = 0; trial < 100; ++trial) {
    const PlanarConfig cfg = random_config(rng);
    CHECK(rr_average_cost(cfg) == doctest::Approx(oracle_rr_average_cost(cfg)).epsilon(1e-13));
  }
}

TEST_CASE("rr average cost is permutation invariant") {
  Rng rng(107);
  for (int trial = 0; trial < 100; ++trial) {
    PlanarConfig cfg = random_config(rng);
    const double base = rr_average_cost(cfg);
    for (int shuffle = 0; shuffle < 4; ++shuffle) {
      for (std::size_t i = 5; i > 1; --i)
        std::swap(cfg.points[i - 1], cfg.points[rng.uniform_index(i)]);
      CHECK(std::abs(rr_average_cost(cfg) - base) <= 1e-12);
    }
  }
}

TEST_CASE("geometric median basics") {
  const Point p{1.5, -2.0};
  const MedianResult same = geometric_median(std::vector<Point>(5, p));
  CHECK(same.point == p);
  CHECK(same.average_cost == 0.0);

  const std::vector<Point> line = {{0, 0}, {0, 0.25}, {0, 0.5}, {0, 0.75}, {0, 1}};
  const MedianResult mid = geometric_median(line);
  CHECK(mid.point == Point{0, 0.5});
  CHECK(mid.average_cost == doctest::Approx(0.3).epsilon(1e-15));

  CHECK_THROWS_AS(geometric_median(std::vector<Point>{{0, 0}, {std::nan(""), 0}}),
                  std::invalid_argument);
}

TEST_CASE("geometric median matches a dense-grid oracle") {
  Rng rng(109);
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<Point> pts(5);
    for (Point& p : pts) p = {rng.uniform_double(), rng.uniform_double()};
    const MedianResult med = geometric_median(pts);

    double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
    for (const Point& p : pts) {
      lo_x = std::min(lo_x, p.x);
      hi_x = std::max(hi_x, p.x);
      lo_y = std::min(lo_y, p.y);
      hi_y = std::max(hi_y, p.y);
    }
    double best = 1e300;
    constexpr int kGrid = 400;
    for (int ix = 0; ix <= kGrid; ++ix)
      for (int iy = 0; iy <= kGrid; ++iy) {
        const Point y{lo_x + (hi_x - lo_x) * ix / kGrid, lo_y + (hi_y - lo_y) * iy / kGrid};
        double total = 0.0;
        for (const Point& p : pts) total += distance(p, y);
        best = std::min(best, total / 5.0);
      }
    CHECK(med.average_cost <= best + 1e-12);
    CHECK(best - med.average_cost <= 1e-3);
  }
}

TEST_CASE("geometric median satisfies subgradient or anchor optimality") {
  Rng rng(113);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Point> pts(5);
    for (Point& p : pts) p = {rng.uniform_double(), rng.uniform_double()};
    if (trial % 3 == 0) pts[4] = pts[0];  // force repeated points sometimes
    const MedianResult med = geometric_median(pts);

    double rx = 0.0, ry = 0.0, multiplicity = 0.0;
    for (const Point& p : pts) {
      const double d = distance(p, med.point);
      if (d <= 1e-12) {
        multiplicity += 1.0;
        continue;
      }
      rx += (p.x - med.point.x) / d;
      ry += (p.y - med.point.y) / d;
    }
    const double residual = std::sqrt(rx * rx + ry * ry);
    if (multiplicity > 0.0)
      CHECK(residual <= multiplicity + 1e-8);
    else
      CHECK(residual <= 1e-8);
  }
}

TEST_CASE("pessimistic distortion basics") {
  CHECK(pessimistic_distortion(make({{1, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 1}})) == 1.0);

  // Three points at one end, two at the other end of a unit segment.
  const PlanarConfig split = make({{0, 0}, {0, 0}, {0, 0}, {0, 1}, {0, 1}});
  CHECK(pessimistic_distortion(split) == doctest::Approx(1.75).epsilon(1e-12));

  // The collinear grid maximizer at delta = 1/75 evaluates to 155/88.
  const PlanarConfig witness = make({{0, 0}, {0, 0}, {0, 38.0 / 75}, {0, 57.0 / 75}, {0, 1}});
  CHECK(pessimistic_distortion(witness) == doctest::Approx(155.0 / 88).epsilon(1e-12));
}

TEST_CASE("pessimistic distortion is similarity invariant") {
  Rng rng(127);
  for (int trial = 0; trial < 1000; ++trial) {
    const PlanarConfig cfg = random_config(rng);
    const double base = pessimistic_distortion(cfg);
    const double angle = 2.0 * std::numbers::pi * rng.uniform_double();
    const double scale = 0.1 + 5.0 * rng.uniform_double();
    const Point shift{4.0 * rng.uniform_double() - 2.0, 4.0 * rng.uniform_double() - 2.0};
    const double moved = pessimistic_distortion(transformed(cfg, angle, scale, shift));
    CHECK(std::abs(moved - base) <= 1e-9);
  }
}

TEST_CASE("grid snapping ties go toward lower coordinates") {
  const GridSpec grid{10};
  CHECK(grid.snap({0.031, 0.07}) == Point{0.0, 0.1});
  CHECK(grid.snap({0.05, 0.15}) == Point{0.0, 0.1});  // exact half-steps snap down
  CHECK(grid.snap({-0.3, 5.0}) == Point{0.0, 1.1});   // clamped to the extent
  CHECK(grid.on_grid({0.2, 1.1}));
  CHECK(grid.on_grid({0.2 + 5e-13, 1.1}));
  CHECK_FALSE(grid.on_grid({0.25, 0.0}));
}

TEST_CASE("certified pd basics") {
  const GridSpec grid{10};
  const double d = grid.delta();

  PlanarConfig same;
  for (Point& p : same.points) p = {3 * d, 7 * d};
  CHECK(certified_pd(same, grid) == 1.0);

  // {0,0,0,1,1}: every referee decision is forced by a full unit gap, so the
  // pessimized value equals the plain one.
  const PlanarConfig split = make({{0, 0}, {0, 0}, {0, 0}, {0, 1}, {0, 1}});
  CHECK(certified_pd(split, grid) == doctest::Approx(pessimistic_distortion(split)).epsilon(1e-15));

  PlanarConfig off = split;
  off.points[2] = {0.5 * d, 0.0};
  CHECK_THROWS_AS(certified_pd(off, grid), std::domain_error);
}

TEST_CASE("certified pd dominates plain pd across a coarse grid") {
  const GridSpec grid{4};
  const double d = grid.delta();
  const int axis = static_cast<int>(grid.axis_points());
  std::vector<Point> nodes;
  for (int ix = 0; ix < axis; ++ix)
    for (int iy = 0; iy < axis; ++iy) nodes.push_back({ix * d, iy * d});

  Rng rng(131);
  bool saw_strict = false;
  for (int trial = 0; trial < 4000; ++trial) {
    PlanarConfig cfg;
    cfg.points[0] = {d * static_cast<double>(rng.uniform_index(grid.alpha_count())), 0.0};
    cfg.points[1] = {cfg.points[0].x, 1.0};
    for (int i = 2; i < 5; ++i) cfg.points[i] = nodes[rng.uniform_index(nodes.size())];
    const double plain = pessimistic_distortion(cfg);
    const double certified = certified_pd(cfg, grid);
    CHECK(certified >= plain - 1e-12);
    saw_strict = saw_strict || certified > plain + 1e-9;
    // Canonical configurations keep the optimum average cost above 1/5.
    CHECK(geometric_median(std::span<const Point>(cfg.points)).average_cost >= 0.2 - 1e-9);
  }
  CHECK(saw_strict);  // the indifference band really fires on a coarse grid
}

TEST_CASE("canonicalize returns canonical configurations unchanged") {
  const GridSpec grid{10};
  const double d = grid.delta();
  const PlanarConfig canonical =
      make({{3 * d, 0.0}, {3 * d, 1.0}, {5 * d, 2 * d}, {1 * d, 9 * d}, {3 * d, 4 * d}});
  const PlanarConfig out = canonicalize(canonical, grid);
  CHECK(out == canonical);
}

TEST_CASE("canonicalize rebuilds the canonical frame") {
  const GridSpec grid{10};
  Rng rng(137);
  for (int trial = 0; trial < 400; ++trial) {
    PlanarConfig cfg = random_config(rng, 2.0);
    if (all_coincident(cfg)) continue;
    const double base = pessimistic_distortion(cfg);
    const PlanarConfig canon = canonicalize(cfg, grid);

    // Canonical structure: inside the extent, unit diameter, vertical
    // extreme pair anchored on an integral grid column.
    double max_dist = 0.0;
    for (int i = 0; i < 5; ++i) {
      CHECK(canon.points[i].x >= -1e-9);
      CHECK(canon.points[i].x <= 1.0 + grid.delta() + 1e-9);
      CHECK(canon.points[i].y >= -1e-9);
      CHECK(canon.points[i].y <= 1.0 + grid.delta() + 1e-9);
      for (int j = i + 1; j < 5; ++j)
        max_dist = std::max(max_dist, distance(canon.points[i], canon.points[j]));
    }
    CHECK(max_dist == doctest::Approx(1.0).epsilon(1e-9));
    bool found_pair = false;
    for (int i = 0; i < 5 && !found_pair; ++i)
      for (int j = 0; j < 5 && !found_pair; ++j) {
        if (i == j) continue;
        const Point& lo = canon.points[i];
        const Point& hi = canon.points[j];
        if (std::abs(lo.y) > 1e-9 || std::abs(hi.y - 1.0) > 1e-9) continue;
        if (std::abs(lo.x - hi.x) > 1e-9) continue;
        const double alpha = lo.x / grid.delta();
        if (std::abs(alpha - std::round(alpha)) > 1e-6) continue;
        if (std::round(alpha) < 0 || std::round(alpha) > static_cast<double>(grid.delta_inverse))
          continue;
        found_pair = true;
      }
    CHECK(found_pair);
    CHECK(std::abs(pessimistic_distortion(canon) - base) <= 1e-9);
  }
}

TEST_CASE("canonicalize handles explicit transforms and degenerate input") {
  const GridSpec grid{10};
  const PlanarConfig base =
      make({{0.0, 0.0}, {0.0, 1.0}, {0.3, 0.4}, {0.5, 0.2}, {0.1, 0.9}});
  const PlanarConfig turned = transformed(base, 37.0 * std::numbers::pi / 180.0, 5.0, {2.5, -1.0});
  const PlanarConfig canon = canonicalize(turned, grid);
  CHECK(std::abs(pessimistic_distortion(canon) - pessimistic_distortion(base)) <= 1e-9);

  PlanarConfig degenerate;
  for (Point& p : degenerate.points) p = {1, 1};
  CHECK_THROWS_AS(canonicalize(degenerate, grid), std::invalid_argument);
}

TEST_CASE("threshold and margin formulas") {
  CHECK(indifference_margin(0.1) == doctest::Approx(0.21213203435596426).epsilon(1e-15));
  CHECK(std::abs(certification_threshold(1.0 / 75.0) - 1.781) <= 5e-4);
  CHECK(std::abs(certification_threshold(0.1) - 1.038) <= 1e-3);
  // Coarse enough grids push the threshold below 1, where certification is
  // impossible (values arbitrarily close to 1 exist).
  CHECK(certification_threshold(1.0 / 8.0) < 1.0);
}

TEST_CASE("search symmetries preserve both scores") {
  const GridSpec grid{6};
  const double d = grid.delta();
  Rng rng(139);
  for (int trial = 0; trial < 300; ++trial) {
    const std::uint64_t alpha = rng.uniform_index(grid.alpha_count());
    const int axis = static_cast<int>(grid.axis_points());
    PlanarConfig cfg;
    cfg.points[0] = {d * static_cast<double>(alpha), 0.0};
    cfg.points[1] = {cfg.points[0].x, 1.0};
    std::array<std::pair<int, int>, 3> idx;
    for (int i = 0; i < 3; ++i) {
      idx[i] = {static_cast<int>(rng.uniform_index(axis)), static_cast<int>(rng.uniform_index(axis))};
      cfg.points[2 + i] = {d * idx[i].first, d * idx[i].second};
    }
    const SearchScores base = search_scores(cfg, grid);
    CHECK(base.certified == doctest::Approx(certified_pd(cfg, grid)).epsilon(1e-15));
    // The search's tie rule only ever raises the score above the plain PD.
    CHECK(base.plain >= pessimistic_distortion(cfg) - 1e-12);

    for (int sym = 1; sym <= 3; ++sym) {
      PlanarConfig image = cfg;
      bool valid = true;
      for (int i = 0; i < 3; ++i) {
        int ix = idx[i].first, iy = idx[i].second;
        if (sym & 1) ix = 2 * static_cast<int>(alpha) - ix;
        if (sym & 2) iy = static_cast<int>(grid.delta_inverse) - iy;
        if (ix < 0 || ix >= axis || iy < 0 || iy >= axis) {
          valid = false;
          break;
        }
        image.points[2 + i] = {d * ix, d * iy};
      }
      if (!valid) continue;
      const SearchScores mirrored = search_scores(image, grid);
      CHECK(std::abs(mirrored.plain - base.plain) <= 1e-9);
      CHECK(std::abs(mirrored.certified - base.certified) <= 1e-9);
    }
  }
}

TEST_CASE("enumeration count closed form") {
  SearchOptions tiny;
  tiny.delta_inverse = 2;
  tiny.mode = SearchMode::Full;
  // axis 4, free 16 nodes, multisets C(18,3) = 816, alpha 3.
  CHECK(estimate_config_count(tiny) == 3u * 816u);
  tiny.mode = SearchMode::Collinear;
  // free 4, multisets C(6,3) = 20.
  CHECK(estimate_config_count(tiny) == 3u * 20u);
}

TEST_CASE("grid search regression at delta = 1/8") {
  SearchOptions options;
  options.delta_inverse = 8;
  options.threads = 2;
  const SearchReport report = grid_search(options);
  CHECK(report.complete);
  CHECK(report.configs_total == 1545300);
  CHECK(report.configs_evaluated + report.configs_skipped == report.configs_total);
  CHECK(report.max_plain_pd == doctest::Approx(1.7830507258416497).epsilon(1e-12));
  CHECK(report.max_certified_pd == doctest::Approx(1.9444444444444444).epsilon(1e-12));
  CHECK_FALSE(report.certified);  // threshold(1/8) < 1
}

TEST_CASE("grid search is deterministic across thread counts") {
  SearchOptions options;
  options.delta_inverse = 6;
  std::string reference;
  for (unsigned threads : {1u, 2u, 3u}) {
    options.threads = threads;
    const std::string summary = render_summary(grid_search(options));
    if (reference.empty())
      reference = summary;
    else
      CHECK(summary == reference);
  }
}

TEST_CASE("checkpointed searches resume to the identical report") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "trivote_test_checkpoint.txt";
  fs::remove(path);

  SearchOptions options;
  options.delta_inverse = 6;
  options.threads = 2;
  const std::string direct = render_summary(grid_search(options));

  options.checkpoint_path = path.string();
  options.max_blocks = 80;  // stop partway through
  const SearchReport partial = grid_search(options);
  CHECK_FALSE(partial.complete);

  options.max_blocks = 0;
  const SearchReport resumed = grid_search(options);
  CHECK(resumed.complete);
  CHECK(render_summary(resumed) == direct);

  // A mismatched grid refuses the checkpoint instead of silently reusing it.
  options.delta_inverse = 5;
  CHECK_THROWS(grid_search(options));
  fs::remove(path);
}

TEST_CASE("budget refusal carries the closed-form estimate") {
  SearchOptions options;
  options.delta_inverse = 75;
  options.mode = SearchMode::Full;
  try {
    grid_search(options);
    FAIL("expected BudgetError");
  } catch (const BudgetError& e) {
    CHECK(e.estimated_configs() == estimate_config_count(options));
    CHECK(e.budget() == options.budget);
  }
}

TEST_CASE("collinear search at a coarse grid finds the 3/2 split family") {
  SearchOptions options;
  options.delta_inverse = 20;
  options.mode = SearchMode::Collinear;
  options.threads = 2;
  const SearchReport report = grid_search(options);
  CHECK(report.complete);
  CHECK(report.max_plain_pd >= 1.75 - 1e-12);
  // Every column configuration is collinear by construction.
  for (const Point& p : report.argmax_plain.points)
    CHECK(p.x == report.argmax_plain.points[0].x);
}

TEST_CASE("certify_plane_bound at delta = 1/10 fails certification but stays under 1.97") {
  SearchOptions options;
  options.threads = 2;
  const CertificationResult result = certify_plane_bound(10, options);
  CHECK_FALSE(result.certified);
  CHECK(result.report.threshold == doctest::Approx(1.038).epsilon(1e-3));
  CHECK(result.report.max_certified_pd < 1.97);
  CHECK(result.report.max_certified_pd > result.report.threshold);
  // Frozen regression values for the delta = 1/10 exhaustive run.
  CHECK(result.report.configs_total == 5588880);
  CHECK(result.report.max_plain_pd == doctest::Approx(1.7903026717188144).epsilon(1e-12));
  CHECK(result.report.max_certified_pd == doctest::Approx(1.8958333333333333).epsilon(1e-12));
}
