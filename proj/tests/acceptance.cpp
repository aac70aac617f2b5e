// Acceptance run: one verdict line per criterion, details indented above it.
// Every tolerance, seed and horizon used here is fixed in this file.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "aoisim/analytic.hpp"
#include "aoisim/cli/csv.hpp"
#include "aoisim/engine.hpp"
#include "oracles.hpp"

using namespace aoisim;
namespace an = aoisim::analytic;

namespace {

// ---- pinned tolerances ----
constexpr double kAnchorRel = 1e-9;
constexpr double kReciprocalAbs = 1e-12;
constexpr double kOptimalRateAbs = 1e-6;  // golden-section oracle resolution
constexpr double kGridRel = 1e-9;
constexpr double kUnitServiceRel = 1e-12;
constexpr double kGridSeconds = 1.0;
constexpr double kFifoAoiRel = 0.01;
constexpr double kSystemTimeRel = 0.01;
constexpr double kOccupancyAbs = 0.005;
constexpr double kReplacementAoiRel = 0.02;
constexpr double kMomentsRel = 0.02;
constexpr double kLowerBoundRel = 0.001;
constexpr double kEstimatorRel = 0.005;
constexpr double kDivergenceFactor = 5.0;
constexpr double kCoincideRel = 0.001;
constexpr double kFigureSeconds = 300.0;

constexpr Slot kDedicatedHorizon = 1'000'000;
constexpr Slot kFigureHorizon = 200'000;
constexpr Slot kObsoleteHorizon = 100'000;
constexpr std::uint64_t kSeed = 20240601;
const std::vector<std::uint64_t> kFigureSeeds = {101, 202, 303};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

class Criterion {
 public:
  Criterion(int id, std::string title) : id_(id), title_(std::move(title)) {}

  void note(const std::string& s) { std::printf("    %s\n", s.c_str()); }

  bool rel(const std::string& what, double got, double want, double tol) {
    const double err = want != 0.0 ? std::abs(got - want) / std::abs(want) : std::abs(got - want);
    return record(what, got, want, err, tol, "rel");
  }

  bool abs(const std::string& what, double got, double want, double tol) {
    return record(what, got, want, std::abs(got - want), tol, "abs");
  }

  bool truth(const std::string& what, bool ok) {
    if (!ok) {
      ++failed_;
      std::printf("    FAIL %s\n", what.c_str());
    } else {
      ++passed_;
      if (verbose_) std::printf("    ok   %s\n", what.c_str());
    }
    return ok;
  }

  void quiet() { verbose_ = false; }

  bool finish() {
    const bool ok = failed_ == 0 && passed_ > 0;
    std::printf("[%s] criterion %d: %s (%d checks, %d failed)\n", ok ? "PASS" : "FAIL", id_, title_.c_str(),
                passed_ + failed_, failed_);
    std::fflush(stdout);
    return ok;
  }

 private:
  bool record(const std::string& what, double got, double want, double err, double tol, const char* unit) {
    const bool ok = err <= tol;
    if (!ok || verbose_) {
      std::printf("    %s %-44s got %-14.10g want %-14.10g err %.3g (%s tol %.3g)\n", ok ? "ok  " : "FAIL",
                  what.c_str(), got, want, err, unit, tol);
    }
    ok ? ++passed_ : ++failed_;
    return ok;
  }

  int id_;
  std::string title_;
  int passed_ = 0;
  int failed_ = 0;
  bool verbose_ = true;
};

std::string csv_of(const MetricsReport& r) {
  std::ostringstream os;
  cli::write_simulate_csv(os, r);
  return os.str();
}

// Runs kept for the estimator and determinism criteria.
struct Recorded {
  std::string label;
  SimConfig config;
  MetricsReport report;
};
std::vector<Recorded> g_runs;

MetricsReport record_run(const std::string& label, const SimConfig& c) {
  MetricsReport r = run(c);
  g_runs.push_back({label, c, r});
  return r;
}

SimConfig symmetric(std::size_t n, double lambda, PolicyKind policy, Discipline d, Slot horizon, std::uint64_t seed) {
  SimConfig c;
  c.n_sources = n;
  c.lambdas.assign(n, lambda);
  c.policy.kind = policy;
  c.discipline = d;
  c.horizon = horizon;
  c.seed = seed;
  return c;
}

// Per-source AoI averaged over sources and seeds.
double mean_aoi(const std::string& label, SimConfig c) {
  double sum = 0.0;
  std::size_t k = 0;
  for (std::uint64_t s : kFigureSeeds) {
    c.seed = s;
    for (const auto& m : record_run(label, c).sources) {
      sum += m.avg_aoi;
      ++k;
    }
  }
  return sum / static_cast<double>(k);
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

// Golden-section search on the FIFO age curve, independent of the
// derivative-based solver.
double golden_min(const std::function<double(double)>& f, double lo, double hi) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  for (int i = 0; i < 200 && b - a > 1e-12; ++i) {
    if (f(c) < f(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - g * (b - a);
    d = a + g * (b - a);
  }
  return 0.5 * (a + b);
}

// ---------------------------------------------------------------------------

bool criterion1() {
  Criterion cr(1, "closed-form anchors");
  cr.quiet();
  const QueueParams a{0.2, 0.5}, b{0.5, 1.0}, c{0.1, 0.2};

  auto s = an::stationary_geo(a);
  cr.rel("geo rho(0.2,0.5)", s.rho, 0.25, kAnchorRel);
  cr.rel("geo pi0(0.2,0.5)", s.pi0, 0.6, kAnchorRel);
  cr.rel("geo pi1(0.2,0.5)", s.pi1, 0.3, kAnchorRel);
  s = an::stationary_geo(b);
  cr.abs("geo rho(0.5,1)", s.rho, 0.0, 0.0);
  cr.rel("geo pi0(0.5,1)", s.pi0, 0.5, kAnchorRel);
  cr.rel("geo pi1(0.5,1)", s.pi1, 0.5, kAnchorRel);
  s = an::stationary_geo(c);
  cr.rel("geo rho(0.1,0.2)", s.rho, 4.0 / 9.0, kAnchorRel);
  cr.rel("geo pi0(0.1,0.2)", s.pi0, 0.5, kAnchorRel);
  cr.rel("geo pi1(0.1,0.2)", s.pi1, 5.0 / 18.0, kAnchorRel);

  cr.rel("geo Delta(0.2,0.5) = 109/15", an::aoi_geo_geo_1(a), 109.0 / 15.0, kAnchorRel);
  cr.rel("geo Delta(0.5,1) = 3", an::aoi_geo_geo_1(b), 3.0, kAnchorRel);
  cr.rel("geo Delta(0.2,0.5) by double sums", an::aoi_geo_geo_1(a), oracle::fifo_age_by_sums(0.2, 0.5), kAnchorRel);
  cr.rel("E[WY](0.2,0.5) = 4/3", an::geo_wait_cross_moment(a), 4.0 / 3.0, kAnchorRel);
  cr.abs("E[WY](0.5,1) = 0", an::geo_wait_cross_moment(b), 0.0, 0.0);
  cr.rel("E[WY](0.1,0.2) = 20", an::geo_wait_cross_moment(c), 20.0, kAnchorRel);
  cr.rel("f_T(1)(0.2,0.5)", an::system_time_pmf_geo(a, 1), 0.375, kAnchorRel);
  cr.rel("f_T(2)(0.2,0.5)", an::system_time_pmf_geo(a, 2), 0.234375, kAnchorRel);
  cr.rel("f_T(1)(0.5,1)", an::system_time_pmf_geo(b, 1), 1.0, kAnchorRel);

  const double star = an::optimal_arrival_rate(0.5);
  const double grid_star = golden_min([](double l) { return an::aoi_geo_geo_1({l, 0.5}); }, 1e-6, 0.5 - 1e-6);
  cr.abs("lambda*(0.5) vs golden-section oracle", star, grid_star, kOptimalRateAbs);
  cr.rel("Delta(lambda*(0.5)) vs oracle minimum", an::aoi_geo_geo_1({star, 0.5}),
         an::aoi_geo_geo_1({grid_star, 0.5}), kAnchorRel);
  cr.abs("quartic residual at lambda*(0.5)", an::optimal_rate_quartic(star, 0.5), 0.0, 1e-9);
  cr.abs("lambda*(1) at the boundary", an::optimal_arrival_rate(1.0), 1.0, kOptimalRateAbs);
  cr.abs("quartic at mu=1 is -(lambda-1)^2", an::optimal_rate_quartic(0.3, 1.0), -0.49, 1e-15);

  const auto st = an::stationary_replacement(a);
  cr.rel("replacement pi0 = 8/13", st.pi0, 8.0 / 13.0, kAnchorRel);
  cr.rel("replacement pi1 = 4/13", st.pi1, 4.0 / 13.0, kAnchorRel);
  cr.rel("replacement pi2 = 1/13", st.pi2, 1.0 / 13.0, kAnchorRel);
  const auto chain = oracle::stationary(oracle::replacement_chain(0.2, 0.5));
  cr.rel("replacement pi0 vs chain solve", st.pi0, chain[0], kAnchorRel);
  cr.rel("replacement pi2 vs chain solve", st.pi2, chain[2], kAnchorRel);
  const auto stb = an::stationary_replacement(b);
  cr.rel("replacement pi0(0.5,1)", stb.pi0, 0.5, kAnchorRel);
  cr.rel("replacement pi1(0.5,1)", stb.pi1, 0.5, kAnchorRel);
  cr.abs("replacement pi2(0.5,1)", stb.pi2, 0.0, 0.0);

  const auto r = an::replacement_moments(a);
  const std::vector<std::tuple<const char*, double, double>> moments = {
      {"P(psi) = 2/3", r.p_psi, 2.0 / 3.0},     {"P(psi_bar) = 1/3", r.p_psi_bar, 1.0 / 3.0},
      {"E[Z|psi] = 7", r.ez_psi, 7.0},           {"E[Z|psi_bar] = 2", r.ez_bar, 2.0},
      {"E[Z] = 16/3", r.ez, 16.0 / 3.0},         {"E[Z^2|psi] = 71", r.ez2_psi, 71.0},
      {"E[Z^2|psi_bar] = 6", r.ez2_bar, 6.0},    {"E[Z^2] = 148/3", r.ez2, 148.0 / 3.0},
      {"E[S|psi] = 5/3", r.es_psi, 5.0 / 3.0},   {"E[S|psi_bar] = 8/3", r.es_bar, 8.0 / 3.0},
      {"P(tx|busy) = 2/3", r.p_tx_busy, 2.0 / 3.0}, {"E[W|tx] = 10/39", r.ew_tx, 10.0 / 39.0},
      {"E[T|psi] = 25/13", r.et_psi, 25.0 / 13.0}, {"E[T|psi_bar] = 38/13", r.et_bar, 38.0 / 13.0},
      {"E[TZ] = 142/13", r.etz, 142.0 / 13.0},   {"p_D = 1/16", r.p_drop, 1.0 / 16.0},
      {"lambda_e = 3/16", r.lambda_e, 3.0 / 16.0}};
  for (const auto& [what, got, want] : moments) cr.rel(what, got, want, kAnchorRel);
  cr.abs("lambda_e * E[Z] = 1", r.lambda_e * r.ez, 1.0, kReciprocalAbs);

  // conditional pmfs against geometric heads and a direct convolution
  cr.rel("pmf Z|psi_bar(1) = 0.5", an::conditional_pmf(a, an::PmfKind::ZGivenPsiBar, 1), 0.5, kAnchorRel);
  cr.rel("pmf W|tx(1) = 0.6", an::conditional_pmf(a, an::PmfKind::WGivenTx, 1), 0.6, kAnchorRel);
  cr.rel("pmf Z|psi(2) vs convolution", an::conditional_pmf(a, an::PmfKind::ZGivenPsi, 2),
         oracle::geo_sum_pmf(0.2, 0.5, 2), kAnchorRel);

  cr.rel("replacement Delta(0.2,0.5) = 373/52", an::aoi_replacement(a), 373.0 / 52.0, kAnchorRel);
  cr.rel("replacement Delta via 0.1875(E[TZ]+E[Z^2]/2+E[Z]/2)", an::aoi_replacement(a),
         0.1875 * (142.0 / 13.0 + 148.0 / 6.0 + 16.0 / 6.0), kAnchorRel);
  cr.rel("replacement Delta(0.5,1) = 3", an::aoi_replacement(b), 3.0, kAnchorRel);
  return cr.finish();
}

bool criterion2() {
  Criterion cr(2, "equation-form equivalence on a 20x20 grid");
  cr.quiet();
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (int i = 1; i <= 20; ++i) {
    for (int j = 1; j <= 20; ++j) {
      const QueueParams p{(i - 0.5) / 20.0, j / 20.0};
      const double closed = an::aoi_replacement_closed_form(p);
      const double assembled = an::aoi_replacement_assembled(p);
      worst = std::max(worst, std::abs(closed - assembled) / std::abs(assembled));
      cr.rel(fmt("closed vs assembled at (%.3f, %.2f)", p.lambda, p.mu), closed, assembled, kGridRel);
    }
    const double l = (i - 0.5) / 20.0;
    cr.rel(fmt("FIFO mu=1 column at lambda=%.3f", l), an::aoi_geo_geo_1({l, 1.0}), 1.0 + 1.0 / l, kUnitServiceRel);
    cr.rel(fmt("replacement mu=1 column at lambda=%.3f", l), an::aoi_replacement({l, 1.0}), 1.0 + 1.0 / l,
           kUnitServiceRel);
  }
  const double secs = seconds_since(t0);
  cr.note(fmt("worst relative disagreement %.3g, runtime %.4f s", worst, secs));
  cr.truth(fmt("runtime %.4f s below %.1f s", secs, kGridSeconds), secs < kGridSeconds);
  return cr.finish();
}

bool criterion3() {
  Criterion cr(3, "simulation vs theory, FIFO, dedicated channel");
  const QueueParams p{0.2, 0.5};
  const auto t0 = Clock::now();
  const auto rep = record_run("dedicated fifo", dedicated_channel_config(p, Discipline::Fifo, kDedicatedHorizon, kSeed));
  const auto& m = rep.sources[0];
  cr.rel("average AoI", m.avg_aoi, an::aoi_geo_geo_1(p), kFifoAoiRel);
  const double rho = an::utilization(p);
  cr.rel("mean system time vs 1/(mu(1-rho))", m.ap.mean_system_time, 1.0 / (p.mu * (1.0 - rho)), kSystemTimeRel);
  const auto st = an::stationary_geo(p);
  for (std::size_t k = 0; k < 5; ++k) {
    const double sim = k < m.occupancy_hist.size() ? m.occupancy_hist[k] : 0.0;
    cr.abs("occupancy pi" + std::to_string(k), sim, st.pi(k), kOccupancyAbs);
  }
  cr.note(fmt("runtime %.2f s", seconds_since(t0)));
  return cr.finish();
}

bool criterion4() {
  Criterion cr(4, "simulation vs theory, replacement, dedicated channel");
  const QueueParams p{0.2, 0.5};
  const auto t0 = Clock::now();
  const auto rep =
      record_run("dedicated replacement", dedicated_channel_config(p, Discipline::Replacement, kDedicatedHorizon, kSeed));
  const auto& m = rep.sources[0];
  const auto r = an::replacement_moments(p);
  cr.rel("average AoI", m.avg_aoi, an::aoi_replacement(p), kReplacementAoiRel);
  const auto st = an::stationary_replacement(p);
  const double pis[3] = {st.pi0, st.pi1, st.pi2};
  for (std::size_t k = 0; k < 3; ++k) {
    const double sim = k < m.occupancy_hist.size() ? m.occupancy_hist[k] : 0.0;
    cr.abs("occupancy pi" + std::to_string(k), sim, pis[k], kOccupancyAbs);
  }
  cr.rel("E[Z|psi] = 7", m.ap.ez_psi, 7.0, kMomentsRel);
  cr.rel("E[Z|psi_bar] = 2", m.ap.ez_bar, 2.0, kMomentsRel);
  cr.rel("E[Z^2|psi] = 71", m.ap.ez2_psi, 71.0, kMomentsRel);
  cr.rel("E[Z^2|psi_bar] = 6", m.ap.ez2_bar, 6.0, kMomentsRel);
  cr.note(fmt("info: empirical drop fraction %.5f beside closed form %.5f", m.empirical_drop_prob, r.p_drop));
  cr.note(fmt("info: empirical reception rate %.5f beside lambda_e %.5f", m.empirical_effective_rate, r.lambda_e));
  cr.note(fmt("runtime %.2f s", seconds_since(t0)));
  return cr.finish();
}

bool criterion5() {
  Criterion cr(5, "lower bound (N+3)/2, replacement, perfect channel");
  for (PolicyKind pk : {PolicyKind::RoundRobin, PolicyKind::WorkConserving}) {
    const char* pname = pk == PolicyKind::RoundRobin ? "round robin" : "work conserving";
    for (std::size_t n : {1u, 2u, 5u, 10u}) {
      const double bound = (n + 3) / 2.0;
      const auto rep = record_run(std::string("bound ") + pname,
                                  symmetric(n, 1.0, pk, Discipline::Replacement, kFigureHorizon, kSeed));
      for (const auto& m : rep.sources) {
        cr.rel(fmt("N=%.0f lambda=1 source ", static_cast<double>(n)) + std::to_string(m.source_id) + " " + pname,
               m.avg_aoi, bound, kLowerBoundRel);
      }
      for (double l : {0.3, 0.6, 0.9}) {
        const auto r2 = record_run(std::string("bound ") + pname,
                                   symmetric(n, l, pk, Discipline::Replacement, kFigureHorizon, kSeed));
        double lowest = std::numeric_limits<double>::infinity();
        for (const auto& m : r2.sources) lowest = std::min(lowest, m.avg_aoi);
        cr.truth(std::string(pname) + fmt(" N=%.0f lambda=%.1f: min AoI ", static_cast<double>(n), l) +
                     fmt("%.4f >= %.1f", lowest, bound),
                 lowest >= bound);
      }
    }
  }
  return cr.finish();
}

bool criterion7(double& secs) {
  Criterion cr(7, "qualitative figure shapes (3 seeds each)");
  const auto t0 = Clock::now();

  // Fig. 4: round robin, FIFO, N = 2
  {
    const double below = mean_aoi("fig4", symmetric(2, 0.5 - 0.02, PolicyKind::RoundRobin, Discipline::Fifo,
                                                   kFigureHorizon, 0));
    const double above = mean_aoi("fig4", symmetric(2, 0.5 + 0.02, PolicyKind::RoundRobin, Discipline::Fifo,
                                                   kFigureHorizon, 0));
    cr.note(fmt("fig4: AoI %.3f at 1/N-0.02, %.3f at 1/N+0.02", below, above));
    cr.truth("fig4: divergence past lambda = 1/N", above > kDivergenceFactor * below);
  }

  // Fig. 6: work conserving vs round robin, replacement, N = 5
  {
    bool dominated = true;
    for (double l : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const double rr = mean_aoi("fig6", symmetric(5, l, PolicyKind::RoundRobin, Discipline::Replacement,
                                                   kFigureHorizon, 0));
      const double wc = mean_aoi("fig6", symmetric(5, l, PolicyKind::WorkConserving, Discipline::Replacement,
                                                   kFigureHorizon, 0));
      cr.note(fmt("fig6: lambda=%.1f round robin %.4f", l, rr) + fmt(", work conserving %.4f", wc));
      dominated = dominated && wc <= rr;
    }
    cr.truth("fig6: work conserving <= round robin for lambda < 1", dominated);
    const double rr1 =
        mean_aoi("fig6", symmetric(5, 1.0, PolicyKind::RoundRobin, Discipline::Replacement, kFigureHorizon, 0));
    const double wc1 =
        mean_aoi("fig6", symmetric(5, 1.0, PolicyKind::WorkConserving, Discipline::Replacement, kFigureHorizon, 0));
    cr.rel("fig6: coincidence at lambda=1 (work conserving vs round robin)", wc1, rr1, kCoincideRel);
  }

  // Fig. 7: random access, FIFO, N = 2, q = 0.5; capacity q/N = q(1-q) = 0.25
  {
    auto cfg = [](double l) {
      auto c = symmetric(2, l, PolicyKind::RandomAccess, Discipline::Fifo, kFigureHorizon, 0);
      c.policy.access_probs = {0.5, 0.5};
      c.channel.kind = ChannelKind::Collision;
      return c;
    };
    const double below = mean_aoi("fig7", cfg(0.25 - 0.02));
    const double above = mean_aoi("fig7", cfg(0.25 + 0.02));
    cr.note(fmt("fig7: AoI %.3f at q/N-0.02, %.3f at q/N+0.02", below, above));
    cr.truth("fig7: divergence past lambda = q/N", above > kDivergenceFactor * below);
  }

  // Fig. 8: random access, replacement, N = 2, sweep q
  {
    std::vector<double> qs, aoi;
    for (int i = 1; i <= 9; ++i) {
      const double q = i / 10.0;
      auto c = symmetric(2, 0.5, PolicyKind::RandomAccess, Discipline::Replacement, kFigureHorizon, 0);
      c.policy.access_probs = {q, q};
      c.channel.kind = ChannelKind::Collision;
      qs.push_back(q);
      aoi.push_back(mean_aoi("fig8", c));
    }
    std::size_t best = 0;
    std::string line = "fig8: AoI over q = 0.1..0.9:";
    for (std::size_t i = 0; i < aoi.size(); ++i) {
      if (aoi[i] < aoi[best]) best = i;
      line += fmt(" %.3f", aoi[i]);
    }
    cr.note(line);
    cr.truth(fmt("fig8: interior minimum (argmin q = %.1f)", qs[best]), best > 0 && best + 1 < aoi.size());
  }

  // Fig. 9: round robin, replacement, erasure channel; N = 3 minus N = 2
  {
    std::vector<double> gaps;
    for (double p : {1.0, 0.8, 0.6}) {
      auto cfg = [p](std::size_t n) {
        auto c = symmetric(n, 0.5, PolicyKind::RoundRobin, Discipline::Replacement, kFigureHorizon, 0);
        c.channel.kind = ChannelKind::Erasure;
        c.channel.success_probs.assign(n, p);
        return c;
      };
      const double gap = mean_aoi("fig9", cfg(3)) - mean_aoi("fig9", cfg(2));
      cr.note(fmt("fig9: p=%.1f gap N3-N2 = %.4f", p, gap));
      gaps.push_back(gap);
    }
    cr.truth("fig9: gap grows as p decreases", gaps[0] < gaps[1] && gaps[1] < gaps[2]);
  }

  // Fig. 10/11: obsolete count vs lambda at fixed k, round robin, replacement, N = 2
  for (double k : {0.2, 0.5}) {
    std::uint64_t prev = 0;
    bool monotone = true;
    std::string line = fmt("fig11: k=%.1f obsolete counts:", k);
    for (double l : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      auto c = symmetric(2, l, PolicyKind::RoundRobin, Discipline::Replacement, kObsoleteHorizon, 0);
      c.network_k = k;
      c.measure_at = MeasurePoint::Destination;
      std::uint64_t total = 0;
      for (std::uint64_t s : kFigureSeeds) {
        c.seed = s;
        for (const auto& m : record_run("fig11", c).sources) total += m.obsolete;
      }
      line += " " + std::to_string(total);
      monotone = monotone && total >= prev;
      prev = total;
    }
    cr.note(line);
    cr.truth(fmt("fig11: k=%.1f obsolete count non-decreasing in lambda", k), monotone);
  }

  secs = seconds_since(t0);
  cr.truth(fmt("runtime %.1f s below %.0f s", secs, kFigureSeconds), secs < kFigureSeconds);
  return cr.finish();
}

// Stable runs recorded by criteria 3, 4, 5 and 7.
bool criterion6() {
  Criterion cr(6, "estimator consistency on stable acceptance runs");
  cr.quiet();
  std::size_t checked = 0;
  for (const auto& r : g_runs) {
    for (const auto& m : r.report.sources) {
      if (m.stability_warning || std::isnan(m.estimator_yt)) continue;
      ++checked;
      const std::string tag = r.label + " N=" + std::to_string(r.config.n_sources) + " lambda=" +
                              cli::fmt(r.config.lambdas[m.source_id]) + " seed=" + std::to_string(r.config.seed) +
                              " src " + std::to_string(m.source_id);
      cr.rel("Y/T " + tag, m.estimator_yt, m.avg_aoi, kEstimatorRel);
      cr.rel("Z/T " + tag, m.estimator_zt, m.avg_aoi, kEstimatorRel);
    }
  }
  cr.note("per-source runs checked: " + std::to_string(checked));
  return cr.finish();
}

bool criterion8() {
  Criterion cr(8, "determinism: same seed, byte-identical CSV");
  cr.quiet();
  // first run of each label
  std::vector<std::string> seen;
  for (const auto& r : g_runs) {
    bool dup = false;
    for (const auto& s : seen) dup = dup || s == r.label;
    if (dup) continue;
    seen.push_back(r.label);
    cr.truth("rerun " + r.label, csv_of(run(r.config)) == csv_of(r.report));
  }
  cr.note("configurations rerun: " + std::to_string(seen.size()));
  return cr.finish();
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  std::vector<bool> ok;
  ok.push_back(criterion1());
  ok.push_back(criterion2());
  ok.push_back(criterion3());
  ok.push_back(criterion4());
  ok.push_back(criterion5());
  double fig_secs = 0.0;
  const bool c7 = criterion7(fig_secs);
  ok.push_back(criterion6());
  ok.push_back(c7);
  ok.push_back(criterion8());

  int failed = 0;
  for (bool b : ok) failed += !b;
  std::printf("acceptance: %zu criteria, %d failed, %.1f s\n", ok.size(), failed, seconds_since(t0));
  return failed ? 1 : 0;
}
