#pragma once

// Three-dimensional rotational averages of molecule-frame tensors.
//
// The analytic route projects T onto the isotropic subspace of its rank.
// Haar averaging <R.T> is the orthogonal projector onto rotation-invariant
// tensors, so with basis members B_a and Gram matrix G_ab = <B_a, B_b>,
//
//   <T> = sum_a c_a B_a,   c = G^{-1} p,   p_a = <B_a, T>,
//
// where G^{-1} is exact (see isotropic_gram_inverse). The Monte Carlo route
// averages R.T over Haar-uniform rotations and is an independent oracle for
// the analytic one.

#include "chiraforce/geometry.hpp"
#include "chiraforce/isotropic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <thread>
#include <vector>

namespace chiraforce {

enum class AverageMethod { analytic, monte_carlo };

inline const char* to_string(AverageMethod m) {
  return m == AverageMethod::analytic ? "analytic" : "monte_carlo";
}

template <class T>
struct AverageResult {
  int rank = 0;
  CartesianTensor<T> averaged_tensor;
  /// Weights on isotropic_basis(rank).members. For Monte Carlo results these
  /// are the projection of the sample mean and only reproduce it approximately.
  std::vector<T> coefficients;
  AverageMethod method = AverageMethod::analytic;
  /// Monte Carlo only: standard error of the real part of each component in
  /// .real(), of the imaginary part in .imag().
  std::optional<Tensor> standard_error;
  std::uint64_t samples = 0;
};

/// Coefficients of the orthogonal projection of t onto the isotropic basis.
template <class T>
std::vector<T> isotropic_coefficients(const CartesianTensor<T>& t) {
  using ops = scalar_ops<T>;
  detail::require_average_rank(t.rank(), "rotational average");
  const auto basis = isotropic_basis<T>(t.rank());
  const auto& ginv = isotropic_gram_inverse(t.rank());
  const std::size_t n = basis.size();

  std::vector<T> proj;
  proj.reserve(n);
  for (const auto& b : basis.members) proj.push_back(full_contraction(b, t));

  std::vector<T> coeffs(n, T{});
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (ginv(a, b) == 0) continue;
      if constexpr (ops::is_exact) {
        coeffs[a] += ops::from_real(ginv(a, b)) * proj[b];
      } else {
        coeffs[a] += ginv(a, b).template convert_to<double>() * proj[b];
      }
    }
  return coeffs;
}

template <class T>
CartesianTensor<T> isotropic_combination(int rank, std::span<const T> coefficients) {
  const auto basis = isotropic_basis<T>(rank);
  if (coefficients.size() != basis.size()) {
    throw rank_error("rank-" + std::to_string(rank) + " isotropic basis has " +
                     std::to_string(basis.size()) + " members, got " +
                     std::to_string(coefficients.size()) + " coefficients");
  }
  CartesianTensor<T> out(rank);
  for (std::size_t a = 0; a < basis.size(); ++a) {
    if constexpr (scalar_ops<T>::is_exact) {
      if (coefficients[a].is_zero()) continue;
    }
    out += basis.members[a] * coefficients[a];
  }
  return out;
}

/// Uniform SO(3) average of t, ranks 2..5.
template <class T>
AverageResult<T> rotational_average(const CartesianTensor<T>& t) {
  AverageResult<T> result;
  result.rank = t.rank();
  result.coefficients = isotropic_coefficients(t);
  result.averaged_tensor =
      isotropic_combination<T>(t.rank(), std::span<const T>(result.coefficients));
  result.averaged_tensor.set_unit_tag(t.unit_tag());
  result.method = AverageMethod::analytic;
  return result;
}

/// Orientation average of t_{ij...} f0_i f1_j ... with lab-frame fields f.
template <class T>
T averaged_observable(const CartesianTensor<T>& mol_tensor, std::span<const Vec3<T>> fields) {
  if (static_cast<int>(fields.size()) != mol_tensor.rank()) {
    throw rank_error("averaged observable: rank-" + std::to_string(mol_tensor.rank()) +
                     " tensor with " + std::to_string(fields.size()) + " field vectors");
  }
  detail::require_average_rank(mol_tensor.rank(), "averaged observable");
  return contract_with_vectors(rotational_average(mol_tensor).averaged_tensor, fields);
}

template <class T>
T averaged_observable(const CartesianTensor<T>& mol_tensor,
                      std::initializer_list<Vec3<T>> fields) {
  return averaged_observable(mol_tensor,
                             std::span<const Vec3<T>>(fields.begin(), fields.size()));
}

// ---------------------------------------------------------------------------
// Monte Carlo
// ---------------------------------------------------------------------------

/// Samples per chunk. Each chunk draws from its own stream seeded by
/// chunk_seed(master, chunk), and chunk statistics are merged in chunk order.
inline constexpr std::uint64_t so3_chunk_samples = 16384;

namespace detail {

struct LaneStats {
  std::uint64_t count = 0;
  std::vector<double> mean;
  std::vector<double> m2;

  explicit LaneStats(std::size_t lanes = 0) : mean(lanes, 0.0), m2(lanes, 0.0) {}

  void push(std::span<const double> x) {
    ++count;
    const double inv = 1.0 / static_cast<double>(count);
    double* mu = mean.data();
    double* s = m2.data();
    const std::size_t n = x.size();
    for (std::size_t j = 0; j < n; ++j) {
      const double delta = x[j] - mu[j];
      mu[j] += delta * inv;
      s[j] += delta * (x[j] - mu[j]);
    }
  }

  // Chan et al. pairwise update.
  void merge(const LaneStats& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(count);
    const double nb = static_cast<double>(o.count);
    const double n = na + nb;
    for (std::size_t j = 0; j < mean.size(); ++j) {
      const double delta = o.mean[j] - mean[j];
      mean[j] += delta * nb / n;
      m2[j] += o.m2[j] + delta * delta * na * nb / n;
    }
    count += o.count;
  }

  double standard_error(std::size_t j) const {
    if (count < 2) return 0.0;
    const double n = static_cast<double>(count);
    return std::sqrt(std::max(m2[j], 0.0) / (n - 1.0) / n);
  }
};

inline unsigned resolve_workers(unsigned workers) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  return workers;
}

// Runs `sample(rng, out)` n times, accumulating `lanes` doubles per sample.
template <class SampleFn>
LaneStats run_so3_chunks(std::uint64_t n, std::uint64_t seed, std::size_t lanes,
                         unsigned workers, SampleFn&& sample) {
  const std::uint64_t chunks = (n + so3_chunk_samples - 1) / so3_chunk_samples;
  std::vector<LaneStats> per_chunk(chunks, LaneStats(lanes));
  std::atomic<std::uint64_t> next{0};

  // Each worker owns a copy of `sample` and so of any scratch it captures.
  auto work = [&, proto = sample]() mutable {
    auto local = proto;
    std::vector<double> out(lanes);
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      std::mt19937_64 rng(chunk_seed(seed, c));
      const std::uint64_t begin = c * so3_chunk_samples;
      const std::uint64_t end = std::min(n, begin + so3_chunk_samples);
      auto& stats = per_chunk[c];
      for (std::uint64_t s = begin; s < end; ++s) {
        local(rng, std::span<double>(out));
        stats.push(out);
      }
    }
  };

  workers = static_cast<unsigned>(std::min<std::uint64_t>(resolve_workers(workers), chunks));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  LaneStats total(lanes);
  for (const auto& s : per_chunk) total.merge(s);
  return total;
}

}  // namespace detail

/// Monte Carlo averages of several same-rank tensors over one shared stream of
/// Haar-uniform rotations. Result k is independent of how many tensors are
/// batched only in distribution, not bitwise.
inline std::vector<AverageResult<cplx>> so3_sample_average_batch(std::span<const Tensor> tensors,
                                                                 std::uint64_t n_samples,
                                                                 std::uint64_t seed,
                                                                 unsigned workers = 0) {
  if (n_samples < 1) throw std::invalid_argument("so3_sample_average: n_samples must be >= 1");
  if (tensors.empty()) return {};
  const int rank = tensors.front().rank();
  for (const auto& t : tensors) {
    if (t.rank() != rank) throw rank_error("so3_sample_average_batch: mixed tensor ranks");
  }

  // Layout: component-major, then (re, im) lane pairs per tensor.
  const std::size_t comps = pow3(rank);
  const std::size_t lanes = 2 * tensors.size();
  const std::size_t total = comps * lanes;
  std::vector<double> base(total);
  for (std::size_t c = 0; c < comps; ++c)
    for (std::size_t t = 0; t < tensors.size(); ++t) {
      base[c * lanes + 2 * t] = tensors[t][c].real();
      base[c * lanes + 2 * t + 1] = tensors[t][c].imag();
    }

  auto sample = [&, cur = std::vector<double>(total), nxt = std::vector<double>(total)](
                    std::mt19937_64& rng, std::span<double> out) mutable {
    const Matrix3 r = uniform_rotation(rng);
    const double* src_buf = base.data();
    for (int m = 0; m < rank; ++m) {
      double* dst_buf = (m == rank - 1) ? out.data() : ((m % 2 == 0) ? nxt.data() : cur.data());
      const std::size_t outer = pow3(m);
      const std::size_t inner = pow3(rank - m - 1) * lanes;
      for (std::size_t a = 0; a < outer; ++a) {
        const double* s0 = src_buf + (a * 3) * inner;
        const double* s1 = s0 + inner;
        const double* s2 = s1 + inner;
        for (int ip = 0; ip < 3; ++ip) {
          double* d = dst_buf + (a * 3 + static_cast<std::size_t>(ip)) * inner;
          const double r0 = r[ip][0], r1 = r[ip][1], r2 = r[ip][2];
          for (std::size_t b = 0; b < inner; ++b) d[b] = r0 * s0[b] + r1 * s1[b] + r2 * s2[b];
        }
      }
      src_buf = dst_buf;
    }
    if (rank == 0) std::copy(base.begin(), base.end(), out.begin());
  };

  const detail::LaneStats stats = detail::run_so3_chunks(n_samples, seed, total, workers, sample);

  std::vector<AverageResult<cplx>> results;
  results.reserve(tensors.size());
  for (std::size_t t = 0; t < tensors.size(); ++t) {
    std::vector<cplx> mean(comps);
    std::vector<cplx> se(comps);
    for (std::size_t c = 0; c < comps; ++c) {
      const std::size_t jr = c * lanes + 2 * t;
      mean[c] = {stats.mean[jr], stats.mean[jr + 1]};
      se[c] = {stats.standard_error(jr), stats.standard_error(jr + 1)};
    }
    AverageResult<cplx> r;
    r.rank = rank;
    r.averaged_tensor = Tensor(rank, std::move(mean), tensors[t].unit_tag());
    r.standard_error = Tensor(rank, std::move(se), tensors[t].unit_tag());
    if (rank >= min_average_rank && rank <= max_average_rank) {
      r.coefficients = isotropic_coefficients(r.averaged_tensor);
    }
    r.method = AverageMethod::monte_carlo;
    r.samples = n_samples;
    results.push_back(std::move(r));
  }
  return results;
}

/// (1/n) sum_k R_k.T over Haar-uniform rotations, with per-component
/// standard errors. Deterministic in (T, n_samples, seed).
inline AverageResult<cplx> so3_sample_average(const Tensor& t, std::uint64_t n_samples,
                                              std::uint64_t seed, unsigned workers = 0) {
  auto r = so3_sample_average_batch(std::span<const Tensor>(&t, 1), n_samples, seed, workers);
  return std::move(r.front());
}

struct ObservableEstimate {
  cplx mean;
  double se_real = 0.0;
  double se_imag = 0.0;
};

/// Monte Carlo estimates of `count` complex observables evaluated on the same
/// rotation samples. fn(R, out) writes the observables for rotation R.
template <class Fn>
std::vector<ObservableEstimate> so3_sample_observables(std::uint64_t n_samples,
                                                       std::uint64_t seed, std::size_t count,
                                                       Fn fn, unsigned workers = 0) {
  if (n_samples < 1) throw std::invalid_argument("so3_sample_observables: n_samples must be >= 1");
  auto sample = [fn, count, vals = std::vector<cplx>(count)](std::mt19937_64& rng,
                                                      std::span<double> out) mutable {
    fn(uniform_rotation(rng), std::span<cplx>(vals));
    for (std::size_t i = 0; i < count; ++i) {
      out[2 * i] = vals[i].real();
      out[2 * i + 1] = vals[i].imag();
    }
  };
  const auto stats = detail::run_so3_chunks(n_samples, seed, 2 * count, workers, sample);
  std::vector<ObservableEstimate> est(count);
  for (std::size_t i = 0; i < count; ++i) {
    est[i].mean = {stats.mean[2 * i], stats.mean[2 * i + 1]};
    est[i].se_real = stats.standard_error(2 * i);
    est[i].se_imag = stats.standard_error(2 * i + 1);
  }
  return est;
}

/// Monte Carlo counterpart of averaged_observable: samples
/// (R.T)_{ij...} f0_i f1_j ... = T_{ij...} (R^T f0)_i (R^T f1)_j ... .
inline ObservableEstimate so3_sample_observable(const Tensor& mol_tensor,
                                                std::span<const Vector3> fields,
                                                std::uint64_t n_samples, std::uint64_t seed,
                                                unsigned workers = 0) {
  if (static_cast<int>(fields.size()) != mol_tensor.rank()) {
    throw rank_error("so3_sample_observable: rank/field count mismatch");
  }
  const std::vector<Vector3> lab(fields.begin(), fields.end());
  return so3_sample_observables(
      n_samples, seed, 1,
      [&, rotated_fields = std::vector<Vector3>(lab.size())](const Matrix3& r,
                                                              std::span<cplx> out) mutable {
        const Matrix3 rt = transpose(r);
        for (std::size_t i = 0; i < lab.size(); ++i) rotated_fields[i] = mat_vec(rt, lab[i]);
        out[0] = contract_with_vectors(mol_tensor, std::span<const Vector3>(rotated_fields));
      },
      workers)[0];
}

}  // namespace chiraforce
