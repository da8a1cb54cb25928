// Copyright 2026 The dyncap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dyncap/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "dyncap/entropy.hpp"
#include "dyncap/error.hpp"
#include "json.hpp"

namespace dyncap {
namespace {

using Scorer = std::function<double(const EntropicTriple&)>;

struct Pool {
  std::vector<ComplexMatrix> states;
  std::vector<StateTerms> terms;
};

// One block of the scan: all k-subsets of a pool with probabilities on the
// simplex grid of step 1/prob_steps (strictly positive entries).
struct Level {
  const Pool* pool;
  std::size_t size;
  std::size_t prob_steps;
};

struct Candidate {
  double value = -std::numeric_limits<double>::infinity();
  std::size_t level = 0;
  std::vector<std::size_t> indices;
  std::size_t composition = 0;

  bool better_than(const Candidate& o) const {
    if (value != o.value) return value > o.value;
    if (level != o.level) return level < o.level;
    if (indices != o.indices) return indices < o.indices;
    return composition < o.composition;
  }
};

Scorer dcap_scorer(const TradeoffWeights& w) {
  return [w](const EntropicTriple& t) {
    return t.cq_bound + w.lambda * t.qe_bound + w.mu * t.cqe_bound;
  };
}

std::vector<std::vector<std::size_t>> compositions(std::size_t total, std::size_t parts) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(parts);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
    if (i + 1 == parts) {
      if (left >= 1) {
        cur[i] = left;
        out.push_back(cur);
      }
      return;
    }
    for (std::size_t v = 1; v + (parts - i - 1) <= left; ++v) {
      cur[i] = v;
      rec(i + 1, left - v);
    }
  };
  if (parts >= 1 && total >= parts) rec(0, total);
  return out;
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double r = 1.0;
  for (std::size_t i = 0; i < k; ++i)
    r = r * static_cast<double>(n - i) / static_cast<double>(i + 1);
  return r;
}

double count_evaluations(std::span<const Level> levels) {
  double total = 0.0;
  for (const auto& l : levels)
    total += binomial(l.pool->states.size(), l.size) *
             static_cast<double>(compositions(l.prob_steps, l.size).size());
  return total;
}

Pool make_pool(const DilatedChannel& ch, std::vector<ComplexMatrix> states) {
  Pool pool;
  pool.terms.reserve(states.size());
  for (const auto& s : states) pool.terms.push_back(state_terms(ch, s));
  pool.states = std::move(states);
  return pool;
}

ComplexMatrix bloch_matrix(double x, double y, double z) {
  return ComplexMatrix{{0.5 * (1.0 + z), 0.5 * Complex(x, -y)},
                       {0.5 * Complex(x, y), 0.5 * (1.0 - z)}};
}

std::vector<ComplexMatrix> bloch_grid(std::size_t polar_steps, std::size_t azimuth_steps,
                                      const std::vector<double>& radii) {
  std::vector<ComplexMatrix> out;
  bool centre_done = false;
  for (double r : radii) {
    if (r == 0.0) {
      if (!centre_done) out.push_back(bloch_matrix(0, 0, 0));
      centre_done = true;
      continue;
    }
    for (std::size_t i = 0; i <= polar_steps; ++i) {
      const double theta = std::numbers::pi * static_cast<double>(i) /
                           static_cast<double>(polar_steps);
      const bool pole = i == 0 || i == polar_steps;
      for (std::size_t j = 0; j < (pole ? 1 : azimuth_steps); ++j) {
        const double phi = 2.0 * std::numbers::pi * static_cast<double>(j) /
                           static_cast<double>(azimuth_steps);
        out.push_back(bloch_matrix(r * std::sin(theta) * std::cos(phi),
                                   r * std::sin(theta) * std::sin(phi),
                                   r * std::cos(theta)));
      }
    }
  }
  return out;
}

void require_grid(const OracleGrid& g) {
  if (g.polar_steps < 1 || g.azimuth_steps < 2 || g.prob_steps < 1 ||
      g.coarse_polar_steps < 1 || g.coarse_azimuth_steps < 2 ||
      g.coarse_prob_steps < 1 || g.radii.empty())
    throw_invalid("oracle grid too coarse: every axis needs at least 2 points");
  if (g.max_ensemble == 0) throw_invalid("oracle grid: max_ensemble must be positive");
  for (double r : g.radii)
    if (!(r >= 0.0 && r <= 1.0)) throw_invalid("oracle grid: radii must lie in [0,1]");
}

// Advances idx[1..] to the next increasing tuple with idx[0] held fixed.
bool next_tail(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  if (k < 2) return false;
  for (std::size_t pos = k - 1;; --pos) {
    if (idx[pos] < n - (k - pos)) {
      ++idx[pos];
      for (std::size_t i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
      return true;
    }
    if (pos == 1) return false;
  }
}

// Exhaustive scan; returns one best candidate per scorer. Work is split over
// threads by the first subset index and reduced deterministically.
std::vector<Candidate> scan(std::span<const Level> levels, std::span<const Scorer> scorers,
                            std::size_t out_dim, std::size_t& evaluations) {
  const double estimate = count_evaluations(levels);
  if (estimate > kMaxOracleEvaluations) {
    std::ostringstream os;
    os << "oracle grid too large: about " << estimate
       << " ensemble evaluations (limit " << kMaxOracleEvaluations << ")";
    throw_invalid(os.str());
  }
  const std::size_t threads =
      std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), 16));
  std::vector<std::vector<Candidate>> per_thread(
      threads, std::vector<Candidate>(scorers.size()));
  std::vector<std::size_t> counts(threads, 0);

  auto work = [&](std::size_t t) {
    auto& best = per_thread[t];
    std::size_t& count = counts[t];
    for (std::size_t li = 0; li < levels.size(); ++li) {
      const Level& level = levels[li];
      const Pool& pool = *level.pool;
      const std::size_t n = pool.states.size();
      const std::size_t k = level.size;
      if (k > n) continue;
      const auto comps = compositions(level.prob_steps, k);
      std::vector<std::size_t> idx(k);
      ComplexMatrix mixture(out_dim);
      for (std::size_t first = t; first + k <= n; first += threads) {
        idx[0] = first;
        for (std::size_t i = 1; i < k; ++i) idx[i] = first + i;
        while (true) {
          for (std::size_t c = 0; c < comps.size(); ++c) {
            TermSums s;
            std::fill(mixture.data().begin(), mixture.data().end(), Complex{});
            for (std::size_t i = 0; i < k; ++i) {
              const double p = static_cast<double>(comps[c][i]) /
                               static_cast<double>(level.prob_steps);
              const StateTerms& st = pool.terms[idx[i]];
              s.h_input += p * st.h_input;
              s.h_output += p * st.h_output;
              s.h_env += p * st.h_env;
              const auto src = st.output.data();
              auto dst = mixture.data();
              for (std::size_t e = 0; e < dst.size(); ++e) dst[e] += p * src[e];
            }
            s.h_mixture = matrix_entropy(mixture);
            ++count;
            const EntropicTriple triple = triple_from_sums(s);
            for (std::size_t f = 0; f < scorers.size(); ++f) {
              const double v = scorers[f](triple);
              if (v > best[f].value) best[f] = Candidate{v, li, idx, c};
            }
          }
          if (!next_tail(idx, n)) break;
        }
      }
    }
  };

  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }

  std::vector<Candidate> result(scorers.size());
  for (std::size_t t = 0; t < threads; ++t) {
    evaluations += counts[t];
    for (std::size_t f = 0; f < scorers.size(); ++f)
      if (per_thread[t][f].better_than(result[f])) result[f] = per_thread[t][f];
  }
  return result;
}

CqEnsemble candidate_ensemble(const Candidate& c, std::span<const Level> levels) {
  const Level& level = levels[c.level];
  const auto comps = compositions(level.prob_steps, level.size);
  std::vector<CqEnsemble::Entry> entries;
  for (std::size_t i = 0; i < level.size; ++i)
    entries.push_back({static_cast<double>(comps[c.composition][i]) /
                           static_cast<double>(level.prob_steps),
                       DensityOperator(level.pool->states[c.indices[i]])});
  return CqEnsemble(std::move(entries));
}

std::vector<Level> single_copy_levels(const OracleGrid& g, const Pool& full,
                                      const Pool& coarse) {
  std::vector<Level> levels;
  for (std::size_t k = 1; k <= g.max_ensemble; ++k) {
    if (k <= g.full_size)
      levels.push_back({&full, k, g.prob_steps});
    else
      levels.push_back({&coarse, k, g.coarse_prob_steps});
  }
  return levels;
}

void require_qubit_input(const KrausChannel& ch, const char* what) {
  if (ch.in_dim() != 2) {
    std::ostringstream os;
    os << what << ": oracle grids cover qubit inputs only";
    throw_invalid(os.str());
  }
}

std::vector<ComplexMatrix> two_copy_states(const TwoCopyGrid& g) {
  std::vector<ComplexMatrix> singles = {bloch_matrix(0, 0, 0)};
  const double axes[6][3] = {{0, 0, 1}, {0, 0, -1}, {1, 0, 0},
                             {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}};
  for (double r : g.radii) {
    if (r == 0.0) continue;
    for (const auto& a : axes) singles.push_back(bloch_matrix(r * a[0], r * a[1], r * a[2]));
  }
  std::vector<ComplexMatrix> out;
  for (const auto& a : singles)
    for (const auto& b : singles) out.push_back(tensor(a, b));

  // Local unitaries sending |0> to the +z, +x and +y axis states.
  const double h = 1.0 / std::sqrt(2.0);
  const std::vector<ComplexMatrix> rotations = {
      ComplexMatrix::identity(2), ComplexMatrix{{h, h}, {h, -h}},
      ComplexMatrix{{h, h}, {Complex(0, h), Complex(0, -h)}}};
  for (double t : g.entangled_angles) {
    std::vector<Complex> psi(4);
    psi[0] = std::cos(t);
    psi[3] = std::sin(t);
    const ComplexMatrix base = ComplexMatrix::outer(psi);
    for (const auto& u : rotations)
      for (const auto& v : rotations) {
        const ComplexMatrix uv = tensor(u, v);
        out.push_back(uv * base * uv.adjoint());
      }
  }
  return out;
}

}  // namespace

double OracleReport::extra(const std::string& key) const {
  for (const auto& [k, v] : extras)
    if (k == key) return v;
  throw_invalid("OracleReport: no extra named " + key);
}

std::string OracleGrid::to_json() const {
  nlohmann::json j = {{"prob_steps", prob_steps},
                      {"polar_steps", polar_steps},
                      {"azimuth_steps", azimuth_steps},
                      {"radii", radii},
                      {"max_ensemble", max_ensemble},
                      {"full_size", full_size},
                      {"coarse_prob_steps", coarse_prob_steps},
                      {"coarse_polar_steps", coarse_polar_steps},
                      {"coarse_azimuth_steps", coarse_azimuth_steps}};
  return j.dump();
}

std::string TwoCopyGrid::to_json() const {
  nlohmann::json j = {{"prob_steps", prob_steps},
                      {"radii", radii},
                      {"entangled_angles", entangled_angles},
                      {"max_ensemble", max_ensemble},
                      {"family", "axis-product-bloch-pairs+local-rotated-schmidt"}};
  return j.dump();
}

std::vector<OracleReport> oracle_dcap_sweep(const KrausChannel& ch,
                                            std::span<const TradeoffWeights> weights,
                                            const OracleGrid& grid) {
  require_qubit_input(ch, "oracle_dcap");
  require_grid(grid);
  for (const auto& w : weights) require_valid_weights(w);
  const DilatedChannel dilated(ch);
  const Pool full = make_pool(dilated, bloch_grid(grid.polar_steps, grid.azimuth_steps, grid.radii));
  const Pool coarse = make_pool(
      dilated, bloch_grid(grid.coarse_polar_steps, grid.coarse_azimuth_steps, grid.radii));
  const auto levels = single_copy_levels(grid, full, coarse);
  std::vector<Scorer> scorers;
  for (const auto& w : weights) scorers.push_back(dcap_scorer(w));
  std::size_t evaluations = 0;
  const auto best = scan(levels, scorers, ch.out_dim(), evaluations);

  std::vector<OracleReport> reports;
  for (const auto& c : best) {
    OracleReport r;
    r.best_value = c.value;
    r.best_ensemble = candidate_ensemble(c, levels);
    r.grid_spec = grid.to_json();
    r.evaluations = evaluations;
    r.set_target(std::numeric_limits<double>::quiet_NaN());
    reports.push_back(std::move(r));
  }
  return reports;
}

OracleReport oracle_dcap(const KrausChannel& ch, const TradeoffWeights& w,
                         const OracleGrid& grid, std::optional<double> target) {
  auto reports = oracle_dcap_sweep(ch, std::span(&w, 1), grid);
  OracleReport r = std::move(reports.front());
  if (target) r.set_target(*target);
  return r;
}

OracleReport oracle_dephasing_diagonal_sufficiency(double p, const TradeoffWeights& w,
                                                   const OracleGrid& grid,
                                                   std::size_t restricted_points) {
  if (restricted_points < 2)
    throw_invalid("oracle_dephasing_diagonal_sufficiency: need at least 2 points");
  const KrausChannel ch = dephasing(p);
  const OracleReport full = oracle_dcap(ch, w, grid);
  const DilatedChannel dilated(ch);
  const Scorer score = dcap_scorer(w);

  double best = -std::numeric_limits<double>::infinity();
  std::optional<CqEnsemble> best_ensemble;
  for (std::size_t i = 0; i < restricted_points; ++i) {
    const double nu = 0.5 * static_cast<double>(i) / static_cast<double>(restricted_points - 1);
    const double a[] = {nu, 1.0 - nu}, b[] = {1.0 - nu, nu};
    CqEnsemble ens({{0.5, DensityOperator(ComplexMatrix::diagonal(a))},
                    {0.5, DensityOperator(ComplexMatrix::diagonal(b))}});
    const double v = score(entropic_triple(ens, dilated));
    if (v > best) {
      best = v;
      best_ensemble = std::move(ens);
    }
  }
  OracleReport r;
  r.best_value = best;
  r.best_ensemble = std::move(best_ensemble);
  r.grid_spec = nlohmann::json{{"full", nlohmann::json::parse(grid.to_json())},
                               {"restricted_points", restricted_points}}
                    .dump();
  r.evaluations = full.evaluations + restricted_points;
  r.set_target(full.best_value);
  r.note = "target is the full-grid oracle; best_value is the bit-flip diagonal family";
  return r;
}

std::vector<OracleReport> oracle_additivity_sweep(
    const KrausChannel& ch, std::span<const TradeoffWeights> weights,
    std::span<const std::optional<double>> single_copy_values,
    const TwoCopyGrid& two_copy_grid, const OracleGrid& single_grid) {
  require_qubit_input(ch, "oracle_additivity");
  if (single_copy_values.size() != weights.size())
    throw_invalid("oracle_additivity: one single-copy value per weight pair required");
  if (two_copy_grid.prob_steps < 1 || two_copy_grid.max_ensemble == 0)
    throw_invalid("oracle_additivity: invalid two-copy grid");

  const auto singles = oracle_dcap_sweep(ch, weights, single_grid);
  const KrausChannel doubled = tensor_channel(ch, ch);
  const DilatedChannel dilated(doubled);
  const Pool pool = make_pool(dilated, two_copy_states(two_copy_grid));
  std::vector<Level> levels;
  for (std::size_t k = 1; k <= two_copy_grid.max_ensemble; ++k)
    levels.push_back({&pool, k, two_copy_grid.prob_steps});
  std::vector<Scorer> scorers;
  for (const auto& w : weights) scorers.push_back(dcap_scorer(w));
  std::size_t evaluations = 0;
  const auto best = scan(levels, scorers, doubled.out_dim(), evaluations);

  std::vector<OracleReport> reports;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const OracleReport& single = singles[i];
    const CqEnsemble product = product_ensemble(*single.best_ensemble, *single.best_ensemble);
    const double product_value = objective(product, doubled, weights[i]);

    OracleReport r;
    r.best_value = best[i].value;
    r.best_ensemble = candidate_ensemble(best[i], levels);
    r.grid_spec = nlohmann::json{{"two_copy", nlohmann::json::parse(two_copy_grid.to_json())},
                                 {"single_copy", nlohmann::json::parse(single_grid.to_json())}}
                      .dump();
    r.evaluations = evaluations + single.evaluations;
    const double single_value = single_copy_values[i].value_or(single.best_value);
    r.set_target(2.0 * single_value);
    r.extras = {{"single_copy_value", single_value},
                {"single_copy_oracle", single.best_value},
                {"product_value", product_value},
                {"product_residual", std::abs(product_value - 2.0 * single.best_value)}};
    r.note = "one-sided probe over a restricted two-copy family: no value above "
             "the target means no counterexample to additivity was found";
    reports.push_back(std::move(r));
  }
  return reports;
}

OracleReport oracle_additivity(const KrausChannel& ch, const TradeoffWeights& w,
                               std::optional<double> single_copy_value,
                               const TwoCopyGrid& two_copy_grid,
                               const OracleGrid& single_grid) {
  auto reports = oracle_additivity_sweep(ch, std::span(&w, 1),
                                         std::span(&single_copy_value, 1),
                                         two_copy_grid, single_grid);
  return std::move(reports.front());
}

OracleReport oracle_holevo_erasure(double eps, const OracleGrid& grid) {
  const KrausChannel ch = erasure(eps);
  OracleGrid pure = grid;
  pure.radii = {1.0};
  pure.max_ensemble = std::min<std::size_t>(grid.max_ensemble, grid.full_size);
  require_grid(pure);
  const DilatedChannel dilated(ch);
  const Pool full = make_pool(dilated, bloch_grid(pure.polar_steps, pure.azimuth_steps, pure.radii));
  const auto levels = single_copy_levels(pure, full, full);
  const Scorer holevo = [](const EntropicTriple& t) { return t.holevo(); };
  std::size_t evaluations = 0;
  const auto best = scan(levels, std::span(&holevo, 1), ch.out_dim(), evaluations);

  // Two copies: products of the six pure axis states, |X| <= 4, step 1/4.
  const KrausChannel doubled = tensor_channel(ch, ch);
  const DilatedChannel dilated2(doubled);
  TwoCopyGrid product_grid;
  product_grid.radii = {1.0};
  product_grid.entangled_angles = {};
  std::vector<ComplexMatrix> products;
  for (auto& m : two_copy_states(product_grid))
    if (std::abs(m.trace().real() - 1.0) < 1e-12 &&
        std::abs((m * m).trace().real() - 1.0) < 1e-9)
      products.push_back(std::move(m));
  const Pool pool2 = make_pool(dilated2, std::move(products));
  std::vector<Level> levels2;
  for (std::size_t k = 1; k <= 4; ++k) levels2.push_back({&pool2, k, 4});
  const auto best2 = scan(levels2, std::span(&holevo, 1), doubled.out_dim(), evaluations);

  OracleReport r;
  r.best_value = best.front().value;
  r.best_ensemble = candidate_ensemble(best.front(), levels);
  r.grid_spec = nlohmann::json{{"single_copy", nlohmann::json::parse(pure.to_json())},
                               {"two_copy", {{"family", "pure-axis-products"},
                                             {"prob_steps", 4},
                                             {"max_ensemble", 4}}}}
                    .dump();
  r.evaluations = evaluations;
  r.set_target(1.0 - eps);
  r.extras = {{"two_copy_best", best2.front().value},
              {"two_copy_target", 2.0 * (1.0 - eps)},
              {"two_copy_gap", 2.0 * (1.0 - eps) - best2.front().value}};
  return r;
}

}  // namespace dyncap
