#include "dofalign/scheme_synthesis.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <Eigen/SVD>
#include <nlohmann/json.hpp>

#include "dofalign/coverage.hpp"

namespace dofalign {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using std::complex;

constexpr double kRankMarginThreshold = 1e-8;
constexpr double kNullingRelThreshold = 1e-10;

complex<double> unit_root(int n, long long power) {
  // w_n^power with w_n = exp(-j*2*pi/n).
  const double angle = -2.0 * std::numbers::pi *
                       static_cast<double>(power) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

// sigma_min / sigma_max, 0 for rank-deficient shapes by convention.
double rank_margin(const MatrixXcd& a) {
  if (a.rows() == 0 || a.cols() == 0) return 1.0;
  Eigen::JacobiSVD<MatrixXcd> svd(a);
  const auto& s = svd.singularValues();
  if (s(0) <= 0.0) return 0.0;
  return s(s.size() - 1) / s(0);
}

}  // namespace

void ModeSwitchPattern::validate() const {
  if (mode_count < 1) throw std::invalid_argument("mode_count must be >= 1");
  if (slots.empty()) throw std::invalid_argument("pattern has no slots");
  const std::size_t width = slots.front().size();
  for (const auto& slot : slots) {
    if (slot.size() != width || slot.empty()) {
      throw std::invalid_argument("pattern slots must share one width >= 1");
    }
    for (std::size_t i = 0; i < slot.size(); ++i) {
      if (slot[i] < 1 || slot[i] > mode_count) {
        throw std::invalid_argument("mode index " + std::to_string(slot[i]) +
                                    " outside [1, " +
                                    std::to_string(mode_count) + "]");
      }
      for (std::size_t j = i + 1; j < slot.size(); ++j) {
        if (slot[i] == slot[j]) {
          throw std::invalid_argument("repeated mode index within a slot");
        }
      }
    }
  }
}

DftNullingPair dft_nulling_pair(int n1, int m1) {
  coverage::touch(coverage::Op::DftNullingPair);
  if (m1 < 1 || m1 >= n1) {
    throw std::invalid_argument("dft_nulling_pair needs 1 <= m1 < n1");
  }
  DftNullingPair out;
  out.q.resize(m1, n1);
  for (int i = 0; i < m1; ++i) {
    for (int t = 0; t < n1; ++t) {
      out.q(i, t) = unit_root(n1, static_cast<long long>(i) * t);
    }
  }
  out.p.resize(n1, n1 - m1);
  for (int t = 0; t < n1; ++t) {
    for (int k = 0; k < n1 - m1; ++k) {
      out.p(t, k) = unit_root(n1, -static_cast<long long>(m1 + k) * t);
    }
  }
  return out;
}

std::pair<MatrixXcd, MatrixXcd> time_expand_pair(const MatrixXcd& q,
                                                 const MatrixXcd& p, int m2,
                                                 int n1) {
  coverage::touch(coverage::Op::TimeExpandPair);
  if (q.cols() != n1 || p.rows() != n1) {
    throw std::invalid_argument("time_expand_pair: q/p shapes must match n1");
  }
  if (m2 < 1) throw std::invalid_argument("time_expand_pair: m2 must be >= 1");
  return {kronecker(q, MatrixXcd::Identity(n1, n1)),
          kronecker(p, MatrixXcd::Identity(m2, m2))};
}

ModeSwitchPattern cyclic_pattern(int k, int m1, int t_slots) {
  coverage::touch(coverage::Op::CyclicPattern);
  if (m1 > k) throw std::invalid_argument("cyclic_pattern needs m1 <= k");
  if (m1 < 1 || t_slots < 1) {
    throw std::invalid_argument("cyclic_pattern needs m1, t_slots >= 1");
  }
  ModeSwitchPattern pattern;
  pattern.mode_count = k;
  pattern.slots.resize(t_slots);
  for (int t = 0; t < t_slots; ++t) {
    for (int j = 0; j < m1; ++j) {
      pattern.slots[t].push_back((t + j) % k + 1);
    }
  }
  return pattern;
}

MatrixXcd effective_direct_channel(const MatrixXcd& bank,
                                   const ModeSwitchPattern& pattern,
                                   const MatrixXcd& tilde_q) {
  coverage::touch(coverage::Op::EffectiveDirectChannel);
  pattern.validate();
  const int t_slots = pattern.expansion();
  const int n1 = static_cast<int>(bank.rows());
  const int m1 = static_cast<int>(pattern.slots.front().size());
  if (tilde_q.cols() != static_cast<Eigen::Index>(n1) * t_slots) {
    throw std::invalid_argument(
        "effective_direct_channel: tilde_q columns must equal N1 * T");
  }
  MatrixXcd expanded = MatrixXcd::Zero(static_cast<Eigen::Index>(n1) * t_slots,
                                       static_cast<Eigen::Index>(m1) * t_slots);
  for (int t = 0; t < t_slots; ++t) {
    for (int j = 0; j < m1; ++j) {
      const int mode = pattern.slots[t][j];
      if (mode > bank.cols()) {
        throw std::invalid_argument("mode index exceeds bank size");
      }
      expanded.col(static_cast<Eigen::Index>(t) * m1 + j)
          .segment(static_cast<Eigen::Index>(t) * n1, n1) = bank.col(mode - 1);
    }
  }
  return tilde_q * expanded;
}

bool r_matrix_check(int n1, int m1) {
  coverage::touch(coverage::Op::RMatrixCheck);
  if (m1 >= n1 || m1 < 1) {
    throw std::invalid_argument("r_matrix_check needs 1 <= m1 < n1");
  }
  // Block (i, m) is (w^-m G)^i, i.e. diag entries w^(r i - m i), r = 0..n1-1.
  const int blocks = m1 + 1;
  MatrixXcd r = MatrixXcd::Zero(static_cast<Eigen::Index>(blocks) * n1,
                                static_cast<Eigen::Index>(blocks) * n1);
  for (int i = 0; i < blocks; ++i) {
    for (int m = 0; m < blocks; ++m) {
      for (int d = 0; d < n1; ++d) {
        r(static_cast<Eigen::Index>(i) * n1 + d,
          static_cast<Eigen::Index>(m) * n1 + d) =
            unit_root(n1, static_cast<long long>(i) * (d - m));
      }
    }
  }
  Eigen::JacobiSVD<MatrixXcd> svd(r);
  const auto& s = svd.singularValues();
  return s(s.size() - 1) > 1e-9 * s(0);
}

MatrixXcd beta_nulling(int n1, int m1) {
  coverage::touch(coverage::Op::BetaNulling);
  if (m1 < 1 || n1 < 1 || n1 % m1 != 0) {
    throw std::invalid_argument("beta_nulling needs m1 | n1");
  }
  const int beta = n1 / m1;
  return kronecker(MatrixXcd::Identity(m1, m1), MatrixXcd::Ones(1, beta));
}

MatrixXcd successive_beamformer(int beta) {
  coverage::touch(coverage::Op::SuccessiveBeamformer);
  if (beta < 2) throw std::invalid_argument("successive_beamformer needs beta >= 2");
  MatrixXcd p = MatrixXcd::Zero(beta, beta - 1);
  p.topRows(beta - 1) = MatrixXcd::Identity(beta - 1, beta - 1);
  p.row(beta - 1).setConstant(-1.0);
  return p;
}

Scheme build_space_freq_scheme(const SystemConfig& config, int k,
                               const MatrixXcd& h12) {
  coverage::touch(coverage::Op::BuildSpaceFreqScheme);
  const SystemConfig cfg = reduce_min_antennas(config);
  const int m1 = cfg.m1, n1 = cfg.n1, m2 = cfg.m2;
  if (!(m1 < n1 && n1 < m2)) {
    throw std::invalid_argument(
        "scheme synthesis requires M1 < N1 < min(M2,N2), got " +
        config.to_string());
  }
  if (k < m1 || k > n1) {
    throw std::invalid_argument("mode count K=" + std::to_string(k) +
                                " outside [M1, N1] for " + config.to_string());
  }
  if (h12.rows() != n1 || h12.cols() != m2) {
    throw std::invalid_argument("h12 must be N1 x min(M2,N2)");
  }

  // Frequency factors: first m1 DFT rows against the conjugate remainder.
  // At k == m1 the remainder is empty and q_f is the full k-point DFT matrix.
  MatrixXcd q_f, p_a_f;
  if (k > m1) {
    auto pair = dft_nulling_pair(k, m1);
    q_f = std::move(pair.q);
    p_a_f = std::move(pair.p);
  } else {
    q_f.resize(m1, m1);
    for (int i = 0; i < m1; ++i) {
      for (int t = 0; t < m1; ++t) {
        q_f(i, t) = unit_root(m1, static_cast<long long>(i) * t);
      }
    }
    p_a_f = MatrixXcd::Zero(m1, 0);
  }
  const MatrixXcd p_b_f = q_f.adjoint();
  const MatrixXcd p_a_s = MatrixXcd::Identity(m2, m2);
  MatrixXcd p_b_s = MatrixXcd::Zero(m2, n1 - k);
  p_b_s.topRows(n1 - k) = MatrixXcd::Identity(n1 - k, n1 - k);

  MatrixXcd q_s;
  if (k == n1) {
    // Full frequency nulling: no spatial factor, channel-blind by design.
    q_s = MatrixXcd::Identity(n1, n1);
  } else {
    const MatrixXcd blocked = h12 * p_b_s;  // N1 x (N1-k)
    Eigen::JacobiSVD<MatrixXcd> svd(blocked, Eigen::ComputeFullU);
    const auto& s = svd.singularValues();
    if (s(0) <= 0.0 || s(n1 - k - 1) < 1e-12 * s(0)) {
      throw std::runtime_error(
          "degenerate cross channel: left null space dimension exceeds K");
    }
    q_s = svd.matrixU().rightCols(k).adjoint();
  }

  Scheme scheme;
  scheme.expansion = k;
  scheme.tilde_q = kronecker(q_f, q_s);
  const MatrixXcd tilde_p_a = kronecker(p_a_f, p_a_s);
  const MatrixXcd tilde_p_b = kronecker(p_b_f, p_b_s);
  scheme.tilde_p.resize(static_cast<Eigen::Index>(m2) * k,
                        tilde_p_a.cols() + tilde_p_b.cols());
  scheme.tilde_p << tilde_p_a, tilde_p_b;
  for (Eigen::Index c = 0; c < scheme.tilde_p.cols(); ++c) {
    scheme.tilde_p.col(c).normalize();
  }
  scheme.pattern = cyclic_pattern(k, m1, k);
  scheme.streams = {m1 * k, m2 * (k - m1) + m1 * (n1 - k)};
  if (k == n1) {
    scheme.factors = {{"Q", q_f}, {"P", p_a_f}};
  } else {
    scheme.factors = {{"QF", q_f},   {"QS", q_s},   {"PaF", p_a_f},
                      {"PaS", p_a_s}, {"PbF", p_b_f}, {"PbS", p_b_s}};
  }
  return scheme;
}

ConditionReport verify_conditions(const Scheme& scheme, const MatrixXcd& bank,
                                  const MatrixXcd& h12) {
  coverage::touch(coverage::Op::VerifyConditions);
  const int t_slots = scheme.expansion;
  const MatrixXcd cross =
      kronecker(MatrixXcd::Identity(t_slots, t_slots), h12);
  if (scheme.tilde_q.cols() != cross.rows() ||
      scheme.tilde_p.rows() != cross.cols()) {
    throw std::invalid_argument("verify_conditions: dimension mismatch");
  }

  ConditionReport report;
  if (scheme.tilde_p.cols() > 0) {
    report.nulling_residual =
        (scheme.tilde_q * cross * scheme.tilde_p).cwiseAbs().maxCoeff();
  }
  const MatrixXcd a = effective_direct_channel(bank, scheme.pattern,
                                               scheme.tilde_q);
  report.direct_rank_margin = rank_margin(a);
  report.beamformer_rank_margin = rank_margin(scheme.tilde_p);
  report.nulling_pass =
      report.nulling_residual < kNullingRelThreshold * h12.norm();
  report.direct_rank_pass = report.direct_rank_margin > kRankMarginThreshold;
  report.beamformer_rank_pass =
      report.beamformer_rank_margin > kRankMarginThreshold;
  return report;
}

MatrixXcd kronecker(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

MatrixXcd vandermonde(int rows, const VectorXcd& nodes) {
  MatrixXcd out(rows, nodes.size());
  for (Eigen::Index c = 0; c < nodes.size(); ++c) {
    complex<double> v = 1.0;
    for (int r = 0; r < rows; ++r) {
      out(r, c) = v;
      v *= nodes(c);
    }
  }
  return out;
}

DftModeBank dft_mode_bank(int n1, int m1) {
  if (m1 < 1 || m1 >= n1) {
    throw std::invalid_argument("dft_mode_bank needs 1 <= m1 < n1");
  }
  DftModeBank out;
  const int modes = m1 * n1;
  out.bank.resize(n1, modes);
  out.nodes.resize(modes);
  // Mode (m, t) is the geometric column of w^(m*n1 + t), w = exp(-j2pi/n1^2).
  for (int m = 0; m < m1; ++m) {
    for (int t = 0; t < n1; ++t) {
      const int idx = m * n1 + t;
      const complex<double> node =
          unit_root(n1 * n1, static_cast<long long>(m) * n1 + t);
      for (int r = 0; r < n1; ++r) {
        out.bank(r, idx) = std::pow(node, r);
      }
    }
  }
  out.pattern.mode_count = modes;
  out.pattern.slots.resize(n1);
  for (int t = 0; t < n1; ++t) {
    for (int m = 0; m < m1; ++m) {
      out.pattern.slots[t].push_back(m * n1 + t + 1);
      out.nodes(static_cast<Eigen::Index>(t) * m1 + m) =
          unit_root(n1 * n1, static_cast<long long>(m) * n1 + t);
    }
  }
  return out;
}

namespace {

nlohmann::json matrix_to_json(const MatrixXcd& m) {
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      data.push_back({m(r, c).real(), m(r, c).imag()});
    }
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

MatrixXcd matrix_from_json(const nlohmann::json& j) {
  const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
  const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (static_cast<Eigen::Index>(data.size()) != rows * cols) {
    throw std::invalid_argument("matrix json: data size mismatch");
  }
  MatrixXcd m(rows, cols);
  Eigen::Index i = 0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c, ++i) {
      m(r, c) = {data[i].at(0).get<double>(), data[i].at(1).get<double>()};
    }
  }
  return m;
}

}  // namespace

nlohmann::json scheme_to_json(const Scheme& scheme) {
  nlohmann::json j;
  j["expansion"] = scheme.expansion;
  j["streams"] = {scheme.streams.first, scheme.streams.second};
  j["pattern"] = {{"modes", scheme.pattern.mode_count},
                  {"slots", scheme.pattern.slots}};
  j["tilde_q"] = matrix_to_json(scheme.tilde_q);
  j["tilde_p"] = matrix_to_json(scheme.tilde_p);
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& [name, matrix] : scheme.factors) {
    factors.push_back({{"name", name}, {"matrix", matrix_to_json(matrix)}});
  }
  j["factors"] = std::move(factors);
  return j;
}

Scheme scheme_from_json(const nlohmann::json& j) {
  Scheme scheme;
  scheme.expansion = j.at("expansion").get<int>();
  scheme.streams = {j.at("streams").at(0).get<int>(),
                    j.at("streams").at(1).get<int>()};
  scheme.pattern.mode_count = j.at("pattern").at("modes").get<int>();
  scheme.pattern.slots =
      j.at("pattern").at("slots").get<std::vector<std::vector<int>>>();
  scheme.tilde_q = matrix_from_json(j.at("tilde_q"));
  scheme.tilde_p = matrix_from_json(j.at("tilde_p"));
  for (const auto& f : j.at("factors")) {
    scheme.factors.emplace_back(f.at("name").get<std::string>(),
                                matrix_from_json(f.at("matrix")));
  }
  return scheme;
}

}  // namespace dofalign
