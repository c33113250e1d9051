#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tfchan/channel.hpp"

namespace tfchan::mc {

using channel::CaseTag;
using tfcore::PhasePoint;
using tfcore::Polarization;

/// splitmix64 step; the stable seeding/streaming primitive for all
/// Monte-Carlo draws (platform-independent by construction).
uint64_t splitmix64(uint64_t& state);
uint64_t run_seed(uint64_t master_seed, long run_index);

/// Deterministic RNG: splitmix64 stream, uniforms in [0,1), Box-Muller
/// normals (no libstdc++ distribution objects, so byte-stable everywhere).
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}
  double uniform();  // [0, 1)
  double uniform(double a, double b);
  double normal();  // N(0,1)
  Complex circular_normal();  // E|z|^2 = 1

 private:
  uint64_t state_;
};

struct McConfig {
  long runs = 1000;
  int grid_order = 4;  // K
  double p = 2.0;
  double q = 2.0;
  CaseTag tag = CaseTag::c1();
  Polarization alpha{};
  double u_size_lo = 1e-3, u_size_hi = 1e-2;  // |U| law: uniform on this interval
  double mu_half_width = 5.0;                 // mu law: uniform on [-w, w]^2
  double delta = 1e-8;                        // target accuracy Delta
  uint64_t master_seed = 1;
  int threads = 0;  // 0 = hardware concurrency
};

struct McRecord {
  long run_id = 0;
  uint64_t seed = 0;
  double u_size = 0, u = 0;
  double mu1 = 0, mu2 = 0;
  double ratio = 0;        // E_p(mu) / ||Sigma||_q
  double certificate = 0;  // <= Delta
  double uniform_bound = 0;
  double gl_bound = 0;
  double kozek_bound = std::numeric_limits<double>::quiet_NaN();
  std::string notes;
  bool failed = false;
};

class McAborted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Per-integral tolerance delta and truncation half-width L that make the
/// end-to-end error on E_p/||Sigma||_q at most Delta:
///   delta = Delta ||Sigma||_q / (1 + 2 ||c||_1 ||g||_p),
///   pi L^2 >= max(log(2 u^2/delta), 1)   (implies pi L >= max(sqrt(log..), 1)).
/// ||g||_p = 2^{1/4} p^{-1/(2p)} is the exact Gaussian norm (the conservative
/// choice; see README).
struct AccuracyBudget {
  double delta = 0;
  double L = 0;
  double c_norm1 = 0;
  static AccuracyBudget make(double Delta, double p, double q,
                             std::span<const Complex> c, double u);
};

/// Draw one finite-model channel: u = sqrt(U_size)/K and K^2 iid circular
/// complex normal coefficients (unit total variance).
struct ChannelDraw {
  std::vector<Complex> c;
  double u = 0;
};
ChannelDraw sample_channel(int K, double u_size, Rng& rng);

/// Per-cell response F_k(x): the integral over cell k (the K x K tiling of
/// the centered square of side K u, unit-cell offset l = k + (1/2,1/2)
/// around the grid origin) of e^{-i 2 pi eta(nu, mu)} f(nu, x) dnu, within
/// absolute error delta. The (C2, alpha = 1/2) combination reduces to
/// closed factors (analytic fast path).
Complex cell_integral(int K, int k1, int k2, const PhasePoint& mu, double x, double u,
                      const Polarization& pol, const CaseTag& tag, double delta);

/// True when (tag, alpha) is served by the analytic fast path.
bool cell_integral_has_fast_path(const CaseTag& tag, const Polarization& pol);

struct EpCertified {
  double ratio = 0;
  double certificate = 0;
};

/// Certified ratio E_p(mu)/||Sigma||_q for the finite model with
/// standard-Gaussian signaling: |true - ratio| <= certificate <= Delta.
EpCertified ep_certified(std::span<const Complex> c, double u, const PhasePoint& mu,
                         double p, double q, const CaseTag& tag,
                         const Polarization& pol, double Delta);

/// The full seeded campaign. Records are a pure function of cfg: per-run
/// seeds derive from (master_seed, run_index), execution order and thread
/// count do not matter. Individual failures are recorded; more than 1%
/// failed runs aborts.
std::vector<McRecord> run_mc(const McConfig& cfg);

}  // namespace tfchan::mc
