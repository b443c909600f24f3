#include "dofalign/channel_sim.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include <Eigen/Cholesky>

#include "dofalign/coverage.hpp"

namespace dofalign {

namespace {

using Eigen::MatrixXcd;

// splitmix64 finalizer; good avalanche for combining seed components.
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// CN(0,1) sampler over an explicit mt19937_64 stream. Box-Muller in polar
// form from raw 64-bit draws keeps results identical across platforms.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

  std::complex<double> next_cn01() {
    const double u1 = 1.0 - uniform01();            // (0, 1]
    const double u2 = uniform01();                  // [0, 1)
    const double radius = std::sqrt(-std::log(u1));  // |z|^2 ~ Exp(1)
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
  }

 private:
  double uniform01() {
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  }

  std::mt19937_64 rng_;
};

void fill_cn01(MatrixXcd& m, GaussianStream& stream) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      m(r, c) = stream.next_cn01();
    }
  }
}

// log2 det(I + scale * X X^H) via Cholesky of the smaller Gram matrix.
double log2_det_capacity(const MatrixXcd& x, double scale) {
  if (x.cols() == 0 || x.rows() == 0) return 0.0;
  const bool tall = x.rows() >= x.cols();
  const Eigen::Index n = tall ? x.cols() : x.rows();
  MatrixXcd m = MatrixXcd::Identity(n, n);
  if (tall) {
    m += scale * (x.adjoint() * x);
  } else {
    m += scale * (x * x.adjoint());
  }
  m = 0.5 * (m + m.adjoint().eval());
  Eigen::LLT<MatrixXcd> llt(m);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("capacity matrix not positive definite");
  }
  double log2det = 0.0;
  const auto& l = llt.matrixLLT();
  for (Eigen::Index i = 0; i < n; ++i) {
    log2det += 2.0 * std::log2(l(i, i).real());
  }
  return log2det;
}

int resolve_threads(int threads) {
  if (threads <= 0) {
    if (const char* env = std::getenv("DOF_ALIGN_THREADS")) {
      threads = std::atoi(env);
    }
  }
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
  }
  return threads > 0 ? threads : 1;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ b);
}

ChannelBlock draw_block(const SystemConfig& config, int k, std::uint64_t seed,
                        Channel channel) {
  coverage::touch(coverage::Op::DrawBlock);
  if (k < config.m1) {
    throw std::invalid_argument("bank needs at least M1 modes");
  }
  GaussianStream stream(splitmix64(seed));
  ChannelBlock block;
  block.bank.resize(config.n1, k);
  block.h12.resize(config.n1, config.m2);
  block.h22.resize(config.n2, config.m2);
  fill_cn01(block.bank, stream);
  fill_cn01(block.h12, stream);
  fill_cn01(block.h22, stream);
  if (channel == Channel::Fic) {
    MatrixXcd h21(config.n2, config.m1);
    fill_cn01(h21, stream);
    block.h21 = std::move(h21);
  }
  block.coherence = config.n1;
  return block;
}

std::pair<double, double> block_rates(const ChannelBlock& block,
                                      const Scheme& scheme, double p_linear) {
  coverage::touch(coverage::Op::BlockRates);
  if (p_linear <= 0.0) {
    throw std::invalid_argument("transmit power must be positive");
  }
  const int t_slots = scheme.expansion;
  const auto [s1, s2] = scheme.streams;
  const int m1 = s1 / t_slots;
  if (block.bank.cols() < scheme.pattern.mode_count ||
      scheme.tilde_q.cols() != block.bank.rows() * t_slots ||
      scheme.tilde_p.rows() != block.h22.cols() * t_slots) {
    throw std::invalid_argument("block_rates: scheme/block shape mismatch");
  }

  // Sigma = Q~ Q~^H is a scalar multiple of I by construction; fold the
  // scalar into the power term so the noise stays white.
  const double sigma_scale =
      (scheme.tilde_q * scheme.tilde_q.adjoint()).real().trace() /
      static_cast<double>(s1);
  const MatrixXcd a =
      effective_direct_channel(block.bank, scheme.pattern, scheme.tilde_q);
  const double r1 =
      log2_det_capacity(a, p_linear / (m1 * sigma_scale)) / t_slots;

  double r2 = 0.0;
  if (s2 > 0) {
    const MatrixXcd g =
        kronecker(MatrixXcd::Identity(t_slots, t_slots), block.h22) *
        scheme.tilde_p;
    r2 = log2_det_capacity(g, p_linear / s2) / t_slots;
  }
  return {r1, r2};
}

namespace {

struct SweepCase {
  SystemConfig cfg;      // reduced, switching shape
  int bank_modes = 1;    // K drawn per block
  int scheme_modes = 1;  // min(K, N1) used by the construction
  bool swapped = false;  // user roles swapped (Tx2-side full interference)
};

// The sweep synthesizes the mode-switching constructions, so it covers the
// reconfigurable cases; the full interference channel rides on its
// interference-free equivalent, with Tx2-side shapes handled by swapping the
// user indices.
SweepCase resolve_sweep_case(const SystemConfig& config,
                             const Scenario& scenario) {
  const CaseLabel label = classify(config, scenario);
  switch (label.result) {
    case GoverningResult::Thm2C1:
    case GoverningResult::Thm3C1:
    case GoverningResult::Thm3C2:
    case GoverningResult::Thm4LimitedModes:
    case GoverningResult::IidNoSwitching:
      break;
    default:
      throw std::invalid_argument(
          "no synthesized scheme for case " + to_string(label.result) +
          "; the simulator covers the reconfigurable-antenna scenarios");
  }
  SweepCase out;
  out.swapped = label.side == ReconfigurableSide::Tx2;
  const SystemConfig oriented =
      out.swapped ? SystemConfig(config.m2, config.n2, config.m1, config.n1)
                  : config;
  out.cfg = reduce_min_antennas(oriented);
  out.bank_modes = scenario.modes.value_or(out.cfg.m1);
  out.scheme_modes = std::min(out.bank_modes, out.cfg.n1);
  return out;
}

}  // namespace

RateCurve snr_sweep(const SystemConfig& config, const Scenario& scenario,
                    const std::vector<double>& grid_db, int trials,
                    std::uint64_t seed, int threads) {
  coverage::touch(coverage::Op::SnrSweep);
  if (grid_db.empty() || trials < 1) {
    throw std::invalid_argument("snr_sweep needs a grid and trials >= 1");
  }
  for (std::size_t i = 1; i < grid_db.size(); ++i) {
    if (grid_db[i] <= grid_db[i - 1]) {
      throw std::invalid_argument("SNR grid must be strictly ascending");
    }
  }
  const SweepCase sweep = resolve_sweep_case(config, scenario);

  // The full-modes construction is channel blind: one scheme serves every
  // block. Otherwise each trial rebuilds from its own cross channel.
  std::optional<Scheme> blind;
  if (sweep.scheme_modes == sweep.cfg.n1) {
    blind = build_space_freq_scheme(
        sweep.cfg, sweep.scheme_modes,
        MatrixXcd::Zero(sweep.cfg.n1, sweep.cfg.m2));
  }

  const std::size_t points = grid_db.size();
  std::vector<double> r1(points * trials), r2(points * trials);
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t task = next.fetch_add(1);
      if (task >= points * trials) return;
      const std::size_t gi = task / trials;
      const std::size_t tj = task % trials;
      try {
        const ChannelBlock block = draw_block(
            sweep.cfg, sweep.bank_modes, mix_seed(seed, gi, tj));
        const Scheme& scheme =
            blind ? *blind
                  : build_space_freq_scheme(sweep.cfg, sweep.scheme_modes,
                                            block.h12);
        const double p = std::pow(10.0, grid_db[gi] / 10.0);
        const auto [a, b] = block_rates(block, scheme, p);
        r1[task] = a;
        r2[task] = b;
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  const int nthreads = std::min<int>(resolve_threads(threads),
                                     static_cast<int>(points * trials));
  std::vector<std::thread> pool;
  for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  RateCurve curve;
  curve.snr_db = grid_db;
  curve.trials = trials;
  curve.seed = seed;
  curve.r1.resize(points);
  curve.r2.resize(points);
  for (std::size_t gi = 0; gi < points; ++gi) {
    double sum1 = 0.0, sum2 = 0.0;
    for (int tj = 0; tj < trials; ++tj) {
      sum1 += r1[gi * trials + tj];
      sum2 += r2[gi * trials + tj];
    }
    curve.r1[gi] = sum1 / trials;
    curve.r2[gi] = sum2 / trials;
  }
  if (sweep.swapped) std::swap(curve.r1, curve.r2);
  return curve;
}

SlopeEstimate estimate_slopes(const RateCurve& curve, double min_snr_db) {
  coverage::touch(coverage::Op::EstimateSlopes);
  std::vector<std::size_t> window;
  for (std::size_t i = 0; i < curve.snr_db.size(); ++i) {
    if (curve.snr_db[i] >= min_snr_db - 1e-9) window.push_back(i);
  }
  if (window.size() < 2) {
    throw std::invalid_argument(
        "slope window needs at least two grid points at or above the cutoff");
  }

  // Ordinary least squares of r against x = log2(p) = snr_db * log2(10)/10.
  const double scale = std::log2(10.0) / 10.0;
  const auto fit = [&](const std::vector<double>& r, double& slope,
                       double& se) {
    const std::size_t n = window.size();
    double mx = 0.0, mr = 0.0;
    for (std::size_t i : window) {
      mx += curve.snr_db[i] * scale;
      mr += r[i];
    }
    mx /= n;
    mr /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i : window) {
      const double dx = curve.snr_db[i] * scale - mx;
      sxx += dx * dx;
      sxy += dx * (r[i] - mr);
    }
    slope = sxy / sxx;
    if (n > 2) {
      double ssr = 0.0;
      for (std::size_t i : window) {
        const double dx = curve.snr_db[i] * scale - mx;
        const double resid = (r[i] - mr) - slope * dx;
        ssr += resid * resid;
      }
      se = std::sqrt(ssr / static_cast<double>(n - 2) / sxx);
    } else {
      se = 0.0;
    }
  };

  SlopeEstimate est;
  est.window = static_cast<int>(window.size());
  fit(curve.r1, est.d1_hat, est.stderr1);
  fit(curve.r2, est.d2_hat, est.stderr2);
  return est;
}

std::string rate_curve_csv(const RateCurve& curve) {
  std::string out = "snr_db,r1_bits,r2_bits,trials,seed\n";
  char buf[160];
  for (std::size_t i = 0; i < curve.snr_db.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%d,%llu\n",
                  curve.snr_db[i], curve.r1[i], curve.r2[i], curve.trials,
                  static_cast<unsigned long long>(curve.seed));
    out += buf;
  }
  return out;
}

}  // namespace dofalign
