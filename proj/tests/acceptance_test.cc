// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "ssgraph/catalog.h"
#include "ssgraph/certify.h"
#include "ssgraph/geometry.h"
#include "ssgraph/io.h"
#include "ssgraph/loop.h"
#include "ssgraph/spectral.h"
#include "ssgraph/ssg.h"
#include "ssgraph/systems.h"

namespace {

namespace fs = std::filesystem;
using namespace ssgraph;
using std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;  // 0: no runtime bound
  std::function<Outcome()> run;
};

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

int RunTool(const std::string& args) {
  const std::string cmd = std::string("\"") + SSGRAPH_TOOL + "\" " + args + " > /dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string Slurp(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path ScratchDir(const std::string& tag) {
  const fs::path dir =
      fs::temp_directory_path() / ("ssgraph_acceptance_" + std::to_string(::getpid()) + "_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// 1 ---------------------------------------------------------------------------
Outcome HilbertPair() {
  const fs::path dir = ScratchDir("hilbert");
  const double dt = 0.01;
  const std::size_t n = 6000;  // T = 60
  const auto window = RaisedCosineWindow(n, n, 0.1);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = window[i] * std::cos(static_cast<double>(i) * dt);
  {
    std::ofstream out(dir / "cos.csv");
    WriteSignalCsv(out, SampledSignal(v, dt));
  }
  const int code = RunTool("hilbert --in \"" + (dir / "cos.csv").string() + "\" --out \"" +
                           dir.string() + "\"");
  if (code != 0) return {false, "cli exit code " + std::to_string(code)};
  std::ifstream in(dir / "cos_hilbert.csv");
  const SampledSignal h = ReadSignalCsv(in);
  double err = 0.0, ref = 0.0;
  // The transform lives on the padded two-sided grid; align by time.
  const auto offset = static_cast<std::size_t>(std::llround(-h.start() / dt));
  for (std::size_t i = n / 10; i < n - n / 10; ++i) {
    const double s = std::sin(static_cast<double>(i) * dt);
    const double hi = h[offset + i];
    err += (hi - s) * (hi - s);
    ref += s * s;
  }
  fs::remove_all(dir);
  const double rel = std::sqrt(err / ref);
  return {rel < 0.01, "relative L2 error " + Num(rel) + " on the interior 80%"};
}

// 2 ---------------------------------------------------------------------------
Outcome PairingAntisymmetry() {
  const InputKind kinds[] = {InputKind::kMultisine, InputKind::kFilteredNoise, InputKind::kChirp,
                             InputKind::kWindowedPulse};
  double worst = 0.0;
  int pairs = 0;
  for (int i = 0; i < 200; ++i) {
    InputFamily a, b;
    a.kind = kinds[i % 4];
    b.kind = kinds[(i / 4) % 4];
    a.seed = 1000 + static_cast<std::uint64_t>(i);
    b.seed = 5000 + static_cast<std::uint64_t>(i);
    a.horizon = b.horizon = 20.0;
    a.omega_max = b.omega_max = 30.0;
    const SampledSignal u = GenerateInput(a, 0), y = GenerateInput(b, 0);
    const double scale = Norm(u) * Norm(y);
    worst = std::max(worst, std::abs(HilbertPairing(u, y) + HilbertPairing(y, u)) / scale);
    ++pairs;
  }
  return {worst <= 1e-6, std::to_string(pairs) + " pairs, max |Pi(u,y)+Pi(y,u)|/(|u||y|) = " +
                             Num(worst)};
}

// 3 ---------------------------------------------------------------------------
Outcome LtiCalibration() {
  Outcome o;
  double worst_gain = 0.0, worst_phase = 0.0;
  for (const bool lead : {false, true}) {
    const OperatorModel model = lead ? LeadFilter() : LagFilter();
    for (const double omega : {0.2, 1.0, 5.0}) {
      InputFamily f;
      f.omega_min = f.omega_max = omega;
      f.max_tones = 1;
      f.horizon = 300.0;
      f.dt = 0.005;
      f.seed = 17;
      const std::vector<SampledSignal> inputs = GenerateInputs(f);
      const SsgPoint p = EstimateSsg(model, inputs).points.at(0);
      const std::complex<double> jw(0.0, omega);
      const std::complex<double> h = lead ? jw / (jw + 1.0) : 1.0 / (jw + 1.0);
      const double eg = std::abs(p.gain - std::abs(h)) / std::abs(h);
      const double ep = std::abs(p.phase - std::arg(h)) / std::abs(std::arg(h));
      worst_gain = std::max(worst_gain, eg);
      worst_phase = std::max(worst_phase, ep);
      if (eg > 0.02 || ep > 0.02 || p.indeterminate) {
        o.pass = false;
        o.detail += std::string(lead ? "lead" : "lag") + " w=" + Num(omega) + " got (" +
                    Num(p.gain) + ", " + Num(p.phase) + "); ";
      }
      if (omega == 1.0) {
        const double target = lead ? pi / 4 : -pi / 4;
        if (std::abs(p.gain - 1 / std::sqrt(2.0)) > 0.02 / std::sqrt(2.0) ||
            std::abs(p.phase - target) > 0.02 * pi / 4) {
          o.pass = false;
          o.detail += "w=1 anchor missed; ";
        }
      }
    }
  }
  o.detail += "max relative error gain " + Num(worst_gain) + ", phase " + Num(worst_phase);
  return o;
}

// 4 ---------------------------------------------------------------------------
Outcome RegionContainment() {
  InputFamily f;
  f.count = 500;
  f.seed = 4;
  const auto inputs = GenerateInputs(f);
  Outcome o;
  for (const bool lead : {true, false}) {
    const PointCloud cloud = EstimateSsg(lead ? LeadFilter() : LagFilter(), inputs);
    double radius = 0.0, wrong_side = -kInfinity;
    for (Complex z : ExpandedPoints(cloud)) {
      radius = std::max(radius, std::abs(z - 0.5));
      wrong_side = std::max(wrong_side, lead ? -z.imag() : z.imag());
    }
    const bool ok = radius <= 0.52 && wrong_side <= 0.02 && cloud.points.size() == 500;
    o.pass = o.pass && ok;
    o.detail += std::string(lead ? "lead" : "lag") + ": max|z-0.5| " + Num(radius) +
                (lead ? ", min Im " + Num(-wrong_side) : ", max Im " + Num(wrong_side)) + "; ";
  }
  return o;
}

// 5 ---------------------------------------------------------------------------
StabilityVerdict AnalyticCheck(double k, CatalogEntry inverse, GraphKind kind) {
  const Region plant = AnalyticRegion(CatalogEntry::kSecondOrderPerimeter, k, kind);
  const Region filter = AnalyticRegion(inverse, 1.0, kind);
  const SeparationMode mode =
      kind == GraphKind::kSigned ? SeparationMode::kSigned : SeparationMode::kUnsigned;
  return SeparationCheck(
      plant, [&](double tau) { return filter.Scaled(-1.0 / tau); }, 1e-3, TauGrid::Default(),
      mode);
}

Outcome KEightBoundary() {
  Outcome o;
  double previous = kInfinity, worst_oracle = 0.0;
  bool monotone = true;
  for (int i = 0; i <= 20; ++i) {
    const double k = 7.0 + 0.1 * i;
    const StabilityVerdict v =
        AnalyticCheck(k, CatalogEntry::kLagInverseHalfline, GraphKind::kSigned);
    // min Re p(phi) = -k/8, reached at phi = 2 pi / 3.
    const double oracle = std::max(0.0, 1.0 - k / 8.0);
    worst_oracle = std::max(worst_oracle, std::abs(v.margin - oracle));
    monotone = monotone && v.margin <= previous;
    previous = v.margin;
    if (std::abs(k - 7.9) < 1e-9 && !v.separated) {
      o.pass = false;
      o.detail += "k=7.9 not separated; ";
    }
    if (std::abs(k - 8.1) < 1e-9 && v.separated) {
      o.pass = false;
      o.detail += "k=8.1 separated; ";
    }
    if (k > 8.0 + 1e-9 && v.margin != 0.0) monotone = false;
  }
  o.pass = o.pass && monotone && worst_oracle <= 1e-3;
  o.detail += std::string(monotone ? "margin non-increasing to 0 past k=8" : "margin not monotone") +
              ", max |margin - (1 - k/8)+| = " + Num(worst_oracle);
  return o;
}

// 6 ---------------------------------------------------------------------------
Outcome Conservatism() {
  Outcome o;
  const StabilityVerdict s100 =
      AnalyticCheck(100.0, CatalogEntry::kLeadInverseHalfline, GraphKind::kSigned);
  const StabilityVerdict u100 =
      AnalyticCheck(100.0, CatalogEntry::kLeadInverseHalfline, GraphKind::kUnsigned);
  o.pass = s100.separated && !u100.separated;
  o.detail = "k=100 lead: signed margin " + Num(s100.margin) + ", unsigned margin " +
             Num(u100.margin) + "; ";

  int configurations = 0, unsigned_passes = 0;
  auto compare = [&](const StabilityVerdict& s, const StabilityVerdict& u, const std::string& what) {
    ++configurations;
    if (!u.separated) return;
    ++unsigned_passes;
    if (!s.separated || s.margin < u.margin) {
      o.pass = false;
      o.detail += what + " violates dominance; ";
    }
  };
  for (double k : {0.5, 1.0, 2.0, 4.0, 7.0, 7.9, 8.1, 9.0, 20.0, 100.0}) {
    for (CatalogEntry e : {CatalogEntry::kLagInverseHalfline, CatalogEntry::kLeadInverseHalfline}) {
      compare(AnalyticCheck(k, e, GraphKind::kSigned), AnalyticCheck(k, e, GraphKind::kUnsigned),
              "analytic k=" + Num(k) + " " + ToString(e));
    }
  }
  InputFamily f;
  f.count = 60;
  f.seed = 6;
  f.horizon = 40.0;
  f.omega_max = 20.0;
  const auto inputs = GenerateInputs(f);
  for (double k : {2.0, 7.0, 100.0}) {
    for (const bool lead : {false, true}) {
      const OperatorModel plant = SecondOrderPlant(k);
      const OperatorModel filter = lead ? LeadFilter() : LagFilter();
      const Region a_s = CloudRegion(EstimateSsg(plant, inputs));
      const Region a_u = CloudRegion(EstimateSg(plant, inputs));
      const Region b_s = CloudRegion(InvertCloud(EstimateSsg(filter, inputs)));
      const Region b_u = CloudRegion(InvertCloud(EstimateSg(filter, inputs)));
      auto check = [&](const Region& a, const Region& b, SeparationMode m) {
        return SeparationCheck(
            a, [&](double tau) { return b.Scaled(-1.0 / tau); }, 1e-3, TauGrid::Default(), m);
      };
      compare(check(a_s, b_s, SeparationMode::kSigned), check(a_u, b_u, SeparationMode::kUnsigned),
              "sampled k=" + Num(k) + (lead ? " lead" : " lag"));
    }
  }
  o.detail += std::to_string(configurations) + " configurations, " +
              std::to_string(unsigned_passes) + " unsigned passes all dominated";
  return o;
}

// 7 ---------------------------------------------------------------------------
// Largest real part of the roots of s^3 + a s^2 + b s + c via the depressed
// cubic, independent of the library's polynomial solver.
double CubicMaxRealRoot(double a, double b, double c) {
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const std::complex<double> disc = std::sqrt(std::complex<double>(q * q / 4.0 + p * p * p / 27.0));
  std::complex<double> u = std::pow(-q / 2.0 + disc, 1.0 / 3.0);
  if (std::abs(u) < 1e-14) u = std::pow(-q / 2.0 - disc, 1.0 / 3.0);
  const std::complex<double> omega(-0.5, std::sqrt(3.0) / 2.0);
  double best = -kInfinity;
  for (int m = 0; m < 3; ++m) {
    const std::complex<double> um = u * std::pow(omega, m);
    const std::complex<double> t = std::abs(um) < 1e-14 ? 0.0 : um - p / (3.0 * um);
    best = std::max(best, (t - a / 3.0).real());
  }
  return best;
}

Outcome LoopCrossValidation() {
  InputFamily f;
  f.count = 10;
  f.seed = 7;
  f.omega_max = 20.0;
  GainOptions options;
  Outcome o;
  auto gain = [&](double k, bool lead) {
    return EmpiricalGain(SecondOrderPlant(k), lead ? LeadFilter() : LagFilter(), f,
                         TauGrid::Default(), -1, options);
  };
  const GainEstimate g7 = gain(7.0, false), g100 = gain(100.0, true), g9 = gain(9.0, false);
  // Loop characteristic polynomials: (s+1)^3 + k and (s+1)^3 + 100 s.
  const double r7 = CubicMaxRealRoot(3.0, 3.0, 8.0), r9 = CubicMaxRealRoot(3.0, 3.0, 10.0);
  const double r100 = CubicMaxRealRoot(3.0, 103.0, 1.0);
  auto stable = [](const GainEstimate& g) {
    return std::isfinite(g.gamma) && !g.unstable && std::abs(g.growth_ratio - 1.0) < 0.1;
  };
  o.pass = stable(g7) && stable(g100) && g9.unstable && r7 < 0.0 && r100 < 0.0 && r9 > 0.0;
  o.detail = "k=7 lag gamma " + Num(g7.gamma) + " ratio " + Num(g7.growth_ratio) +
             "; k=100 lead gamma " + Num(g100.gamma) + " ratio " + Num(g100.growth_ratio) +
             "; k=9 lag ratio " + Num(g9.growth_ratio) + (g9.unstable ? " flagged" : " not flagged") +
             "; pole oracle max Re " + Num(r7) + " / " + Num(r100) + " / " + Num(r9);
  return o;
}

// 8 ---------------------------------------------------------------------------
Outcome CertificationSuite() {
  InputFamily f;
  f.count = 50;
  f.seed = 8;
  f.omega_max = 10.0;
  InputFamily pulses;
  pulses.kind = InputKind::kWindowedPulse;
  pulses.horizon = 600.0;
  pulses.dt = 0.05;
  pulses.omega_max = 10.0;
  pulses.pulse_min_width = 0.5;
  pulses.pulse_max_width = 0.9;
  pulses.count = 10;
  pulses.seed = 9;
  auto first_order = [](double k) { return OperatorModel::Tf({k}, {1.0, 1.0}); };
  Outcome o;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) {
      o.pass = false;
      o.detail += what + " wrong; ";
    }
  };
  expect(CheckPassive(OperatorModel::Saturation(1.0), f, 0.0).pass, "saturation passive");
  expect(CheckPassive(LagFilter(), f, 0.0).pass, "lag passive");
  expect(!CheckPassive(OperatorModel::Gain(-1.0), f, 0.0).pass, "gain -1 passive");
  expect(CheckSsgNi(LagFilter(), f, 0.0).pass, "lag ssg-ni");
  expect(!CheckSsgNi(LeadFilter(), f, 0.0).pass, "lead ssg-ni");
  const NiVerdict half = NiTheoremVerdict(first_order(0.5), first_order(1.0), pulses, 0.0);
  const NiVerdict unit = NiTheoremVerdict(first_order(1.0), first_order(1.0), pulses, 0.0);
  expect(half.pass, "(0.5, 1) ni theorem");
  expect(!unit.pass, "(1, 1) ni theorem");
  o.detail += "worst products " + Num(half.worst_product) + " (pass) and " +
              Num(unit.worst_product) + " (fail)";
  return o;
}

// 9 ---------------------------------------------------------------------------
Outcome SetIdentities() {
  const OperatorModel models[] = {LeadFilter(),
                                  LagFilter(),
                                  SecondOrderPlant(7.0),
                                  OperatorModel::Saturation(0.3),
                                  OperatorModel::Static(NonlinearityKind::kDeadzone, 0.2),
                                  OperatorModel::Gain(-2.0),
                                  OperatorModel::MakeSeries(LeadFilter(), OperatorModel::Saturation(0.5))};
  const InputKind kinds[] = {InputKind::kMultisine, InputKind::kFilteredNoise, InputKind::kChirp,
                             InputKind::kWindowedPulse};
  Outcome o;
  int clouds = 0;
  std::size_t points = 0;
  for (InputKind kind : kinds) {
    InputFamily f;
    f.kind = kind;
    f.count = 40;
    f.seed = 90;
    f.horizon = 30.0;
    f.omega_max = 20.0;
    const auto inputs = GenerateInputs(f);
    for (const OperatorModel& m : models) {
      const PointCloud ssg = EstimateSsg(m, inputs);
      const std::vector<Complex> s = ExpandedPointSet(ssg);
      const std::vector<Complex> sg = ExpandedPointSet(EstimateSg(m, inputs));
      const std::vector<Complex> conj = ExpandedPointSet(ConjugateCloud(ssg));
      auto less = [](Complex a, Complex b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
      };
      std::vector<Complex> both;
      std::set_union(s.begin(), s.end(), conj.begin(), conj.end(), std::back_inserter(both), less);
      const bool subset = std::includes(sg.begin(), sg.end(), s.begin(), s.end(), less);
      if (!subset || both != sg || ExpandedPointSet(SgFromSsg(ssg)) != sg) {
        o.pass = false;
        o.detail += m.Describe() + " on " + ToString(kind) + "; ";
      }
      ++clouds;
      points += sg.size();
    }
  }
  o.detail += std::to_string(clouds) + " clouds, " + std::to_string(points) +
              " SG points, identities exact";
  return o;
}

// 10 --------------------------------------------------------------------------
Outcome Determinism() {
  const fs::path a = ScratchDir("det_a"), b = ScratchDir("det_b");
  const std::string config = std::string(SSGRAPH_CONFIG_DIR) + "/examples.json";
  const int ca = RunTool("run --config \"" + config + "\" --out \"" + a.string() + "\" --jobs 1");
  const int cb = RunTool("run --config \"" + config + "\" --out \"" + b.string() + "\" --jobs 3");
  if (ca != 0 || cb != 0) return {false, "cli exit codes " + std::to_string(ca) + "/" + std::to_string(cb)};
  Outcome o;
  int compared = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    const auto ext = entry.path().extension();
    if (ext != ".csv" && ext != ".json") continue;
    const fs::path other = b / entry.path().filename();
    if (!fs::exists(other) || Slurp(entry.path()) != Slurp(other)) {
      o.pass = false;
      o.detail += entry.path().filename().string() + " differs; ";
    }
    ++compared;
  }
  const auto count = [](const fs::path& d) {
    return std::distance(fs::directory_iterator(d), fs::directory_iterator{});
  };
  if (compared == 0 || count(a) != count(b)) o.pass = false;
  o.detail += std::to_string(compared) + " CSV/JSON files byte-identical across runs (jobs 1 vs 3)";
  fs::remove_all(a);
  fs::remove_all(b);
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Hilbert pair", 1.0, HilbertPair},
      {2, "pairing antisymmetry", 5.0, PairingAntisymmetry},
      {3, "LTI calibration", 0.0, LtiCalibration},
      {4, "lead/lag region containment", 60.0, RegionContainment},
      {5, "k = 8 boundary", 5.0, KEightBoundary},
      {6, "signed vs unsigned conservatism", 60.0, Conservatism},
      {7, "loop cross-validation", 120.0, LoopCrossValidation},
      {8, "certification suite", 60.0, CertificationSuite},
      {9, "SSG subset and union identities", 0.0, SetIdentities},
      {10, "determinism", 0.0, Determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string timing = Num(seconds) + " s";
    if (c.limit_seconds > 0.0) {
      timing += ", limit " + Num(c.limit_seconds) + " s";
      if (seconds >= c.limit_seconds) o.pass = false;
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << c.id << " " << c.title << ": " << o.detail
              << " (" << timing << ")" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
