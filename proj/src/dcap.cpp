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

#include "dyncap/dcap.hpp"

#include <algorithm>
#include <cmath>
#include <array>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <utility>

#include "dyncap/entropy.hpp"
#include "dyncap/error.hpp"
#include "dyncap/region.hpp"

namespace dyncap {
namespace {

constexpr double kImprovementThreshold = 1e-13;
constexpr double kNegligibleProbability = 1e-12;

// Linear combination of the summed entropies. D_{lambda,mu} expands to
// H(A|X) + (1+mu) H(B) + lambda H(B|X) - (1+lambda+mu) H(E|X).
struct Functional {
  double input = 0.0;
  double mixture = 0.0;
  double output = 0.0;
  double env = 0.0;

  double operator()(const TermSums& s) const {
    return input * s.h_input + mixture * s.h_mixture + output * s.h_output +
           env * s.h_env;
  }
};

Functional dcap_functional(const TradeoffWeights& w) {
  return {1.0, 1.0 + w.mu, w.lambda, -(1.0 + w.lambda + w.mu)};
}

enum class StateFamily { kBlochMixed, kBlochPure, kGeneralMixed, kGeneralPure };

bool is_pure_family(StateFamily f) {
  return f == StateFamily::kBlochPure || f == StateFamily::kGeneralPure;
}

std::size_t params_per_state(StateFamily f, std::size_t d) {
  switch (f) {
    case StateFamily::kBlochMixed:
    case StateFamily::kBlochPure:
      return 3;
    case StateFamily::kGeneralMixed:
      return 2 * d * d;
    case StateFamily::kGeneralPure:
      return 2 * d;
  }
  return 0;
}

// Maps a parameter block to a state, rewriting the block into canonical
// form (Bloch vectors projected onto the ball or sphere, normalised
// amplitudes). Returns false if the block does not describe a state.
bool decode_state(StateFamily f, std::size_t d, std::span<double> block,
                  ComplexMatrix& out) {
  switch (f) {
    case StateFamily::kBlochMixed:
    case StateFamily::kBlochPure: {
      const double r = std::sqrt(block[0] * block[0] + block[1] * block[1] +
                                 block[2] * block[2]);
      if (f == StateFamily::kBlochPure || r > 1.0) {
        if (r == 0.0) return false;
        for (int i = 0; i < 3; ++i) block[i] /= r;
      }
      const double x = block[0], y = block[1], z = block[2];
      out = ComplexMatrix{{0.5 * (1.0 + z), 0.5 * Complex(x, -y)},
                          {0.5 * Complex(x, y), 0.5 * (1.0 - z)}};
      return true;
    }
    case StateFamily::kGeneralMixed: {
      ComplexMatrix a(d);
      double norm = 0.0;
      for (std::size_t k = 0; k < d * d; ++k) {
        a.data()[k] = Complex(block[2 * k], block[2 * k + 1]);
        norm += std::norm(a.data()[k]);
      }
      if (norm == 0.0) return false;
      const double scale = 1.0 / std::sqrt(norm);
      for (double& v : block) v *= scale;
      a *= scale;
      out = a * a.adjoint();
      return true;
    }
    case StateFamily::kGeneralPure: {
      std::vector<Complex> psi(d);
      double norm = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        psi[k] = Complex(block[2 * k], block[2 * k + 1]);
        norm += std::norm(psi[k]);
      }
      if (norm == 0.0) return false;
      const double scale = 1.0 / std::sqrt(norm);
      for (double& v : block) v *= scale;
      for (auto& c : psi) c *= scale;
      out = ComplexMatrix::outer(psi);
      return true;
    }
  }
  return false;
}

void encode_state(StateFamily f, std::size_t d, const ComplexMatrix& rho,
                  std::span<double> block) {
  switch (f) {
    case StateFamily::kBlochMixed:
    case StateFamily::kBlochPure:
      block[0] = 2.0 * rho(0, 1).real();
      block[1] = -2.0 * rho(0, 1).imag();
      block[2] = (rho(0, 0) - rho(1, 1)).real();
      return;
    case StateFamily::kGeneralMixed: {
      // A = sqrt(rho) gives A A^dagger = rho.
      const EigenSystem es = hermitian_eigen(rho);
      ComplexMatrix a(d);
      for (std::size_t k = 0; k < d; ++k) {
        const double s = std::sqrt(std::max(es.values[k], 0.0));
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = 0; j < d; ++j)
            a(i, j) += s * es.vectors(i, k) * std::conj(es.vectors(j, k));
      }
      for (std::size_t k = 0; k < d * d; ++k) {
        block[2 * k] = a.data()[k].real();
        block[2 * k + 1] = a.data()[k].imag();
      }
      return;
    }
    case StateFamily::kGeneralPure: {
      const EigenSystem es = hermitian_eigen(rho);
      for (std::size_t i = 0; i < d; ++i) {
        block[2 * i] = es.vectors(i, d - 1).real();
        block[2 * i + 1] = es.vectors(i, d - 1).imag();
      }
      return;
    }
  }
}

struct Seed {
  std::size_t size;
  std::vector<double> params;  // size probabilities followed by state blocks
};

// Incrementally evaluated ensemble: a coordinate move recomputes only the
// entropies of the state it touches.
class Search {
 public:
  Search(const DilatedChannel& ch, StateFamily family, const Functional& f,
         Seed seed, std::size_t& evaluations)
      : ch_(ch),
        family_(family),
        f_(f),
        dim_(ch.channel.in_dim()),
        size_(seed.size),
        pps_(params_per_state(family, dim_)),
        x_(std::move(seed.params)),
        evaluations_(evaluations) {
    probs_.resize(size_);
    valid_ = decode_probabilities(x_, probs_);
    terms_.resize(size_);
    for (std::size_t s = 0; s < size_ && valid_; ++s) {
      ComplexMatrix rho;
      valid_ = decode_state(family_, dim_, block(x_, s), rho);
      if (valid_) terms_[s] = state_terms(ch_, rho);
    }
    ++evaluations_;
    value_ = valid_ ? f_(sums(probs_, nullptr, 0)) : -1e300;
  }

  double value() const { return value_; }
  bool valid() const { return valid_; }
  std::size_t dimension() const { return x_.size(); }
  double coordinate(std::size_t i) const { return x_[i]; }

  // Moves coordinate i to v if that improves the objective.
  bool try_move(std::size_t i, double v) {
    ++evaluations_;
    std::vector<double> trial = x_;
    trial[i] = v;
    if (i < size_) {
      std::vector<double> p(size_);
      if (!decode_probabilities(trial, p)) return false;
      const double value = f_(sums(p, nullptr, 0));
      if (value <= value_ + kImprovementThreshold) return false;
      x_ = std::move(trial);
      probs_ = std::move(p);
      value_ = value;
      return true;
    }
    const std::size_t s = (i - size_) / pps_;
    ComplexMatrix rho;
    if (!decode_state(family_, dim_, block(trial, s), rho)) return false;
    StateTerms t = state_terms(ch_, rho);
    const double value = f_(sums(probs_, &t, s));
    if (value <= value_ + kImprovementThreshold) return false;
    x_ = std::move(trial);
    terms_[s] = std::move(t);
    value_ = value;
    return true;
  }

  CqEnsemble ensemble() const {
    std::vector<CqEnsemble::Entry> entries;
    std::vector<double> x = x_;
    for (std::size_t s = 0; s < size_; ++s) {
      ComplexMatrix rho;
      decode_state(family_, dim_, block(x, s), rho);
      entries.push_back({probs_[s], DensityOperator(std::move(rho))});
    }
    return CqEnsemble(std::move(entries));
  }

 private:
  std::span<double> block(std::vector<double>& x, std::size_t s) const {
    return std::span<double>(x).subspan(size_ + s * pps_, pps_);
  }

  bool decode_probabilities(std::vector<double>& x, std::vector<double>& p) const {
    double total = 0.0;
    for (std::size_t s = 0; s < size_; ++s) total += std::abs(x[s]);
    if (!(total > 0.0)) return false;
    for (std::size_t s = 0; s < size_; ++s) {
      p[s] = std::abs(x[s]) / total;
      x[s] = p[s];
    }
    return true;
  }

  TermSums sums(const std::vector<double>& p, const StateTerms* replacement,
                std::size_t replaced) const {
    TermSums out;
    ComplexMatrix mixture(ch_.channel.out_dim());
    for (std::size_t s = 0; s < size_; ++s) {
      const StateTerms& t = (replacement && s == replaced) ? *replacement : terms_[s];
      out.h_input += p[s] * t.h_input;
      out.h_output += p[s] * t.h_output;
      out.h_env += p[s] * t.h_env;
      mixture += p[s] * t.output;
    }
    out.h_mixture = matrix_entropy(mixture);
    return out;
  }

  const DilatedChannel& ch_;
  StateFamily family_;
  Functional f_;
  std::size_t dim_;
  std::size_t size_;
  std::size_t pps_;
  std::vector<double> x_;
  std::vector<double> probs_;
  std::vector<StateTerms> terms_;
  double value_ = 0.0;
  bool valid_ = false;
  std::size_t& evaluations_;
};

// Returns whether the step shrank below min_step.
bool pattern_search(Search& s, const OptimizerSettings& settings,
                    std::size_t& evaluations, std::size_t budget_end) {
  double step = settings.initial_step;
  while (step >= settings.min_step && evaluations < budget_end) {
    bool improved = false;
    for (std::size_t i = 0; i < s.dimension() && evaluations < budget_end; ++i) {
      const double x = s.coordinate(i);
      if (s.try_move(i, x + step) ||
          (evaluations < budget_end && s.try_move(i, x - step)))
        improved = true;
    }
    if (!improved) step *= 0.5;
  }
  return step < settings.min_step;
}

std::vector<std::array<double, 3>> seed_directions(bool with_antipodes) {
  std::vector<std::array<double, 3>> dirs = {
      {0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
  const double r3 = 1.0 / std::sqrt(3.0), r2 = 1.0 / std::sqrt(2.0);
  for (double sy : {1.0, -1.0})
    for (double sx : {1.0, -1.0}) dirs.push_back({sx * r3, sy * r3, r3});
  for (double s : {1.0, -1.0}) {
    dirs.push_back({r2, s * r2, 0});
    dirs.push_back({r2, 0, s * r2});
    dirs.push_back({0, r2, s * r2});
  }
  if (with_antipodes) {
    const std::size_t n = dirs.size();
    for (std::size_t i = 0; i < n; ++i)
      dirs.push_back({-dirs[i][0], -dirs[i][1], -dirs[i][2]});
  }
  return dirs;
}

Seed bloch_seed(const std::vector<std::pair<double, std::array<double, 3>>>& items) {
  Seed s{items.size(), {}};
  for (const auto& [p, v] : items) s.params.push_back(p);
  for (const auto& [p, v] : items) s.params.insert(s.params.end(), v.begin(), v.end());
  return s;
}

std::vector<Seed> qubit_seeds(StateFamily family, std::size_t cap) {
  const bool pure = is_pure_family(family);
  std::vector<double> radii = pure ? std::vector<double>{1.0}
                                   : std::vector<double>{0.5, 1.0};
  std::vector<Seed> seeds;
  if (!pure) seeds.push_back(bloch_seed({{1.0, {0, 0, 0}}}));
  for (const auto& d : seed_directions(true))
    for (double r : radii)
      seeds.push_back(bloch_seed({{1.0, {r * d[0], r * d[1], r * d[2]}}}));
  if (cap >= 2)
    for (const auto& d : seed_directions(false))
      for (double r : radii)
        seeds.push_back(bloch_seed({{0.5, {r * d[0], r * d[1], r * d[2]}},
                                    {0.5, {-r * d[0], -r * d[1], -r * d[2]}}}));
  if (cap >= 3) {
    const double c = -0.5, s = std::sqrt(3.0) / 2.0;
    const double w = 1.0 / 3.0;
    seeds.push_back(bloch_seed({{w, {1, 0, 0}}, {w, {c, s, 0}}, {w, {c, -s, 0}}}));
    seeds.push_back(bloch_seed({{w, {0, 0, 1}}, {w, {s, 0, c}}, {w, {-s, 0, c}}}));
    seeds.push_back(bloch_seed({{w, {0, 1, 0}}, {w, {0, c, s}}, {w, {0, c, -s}}}));
  }
  if (cap >= 4) {
    const double t = 1.0 / std::sqrt(3.0);
    seeds.push_back(bloch_seed({{0.25, {t, t, t}},
                                {0.25, {t, -t, -t}},
                                {0.25, {-t, t, -t}},
                                {0.25, {-t, -t, t}}}));
  }
  return seeds;
}

Seed ensemble_seed(StateFamily family, std::size_t d,
                   const std::vector<std::pair<double, ComplexMatrix>>& items) {
  const std::size_t pps = params_per_state(family, d);
  Seed s{items.size(), std::vector<double>(items.size() * (1 + pps))};
  for (std::size_t i = 0; i < items.size(); ++i) {
    s.params[i] = items[i].first;
    encode_state(family, d, items[i].second,
                 std::span<double>(s.params).subspan(items.size() + i * pps, pps));
  }
  return s;
}

std::vector<Seed> general_seeds(StateFamily family, std::size_t d, std::size_t cap) {
  std::vector<Seed> seeds;
  if (!is_pure_family(family))
    seeds.push_back(ensemble_seed(
        family, d, {{1.0, (1.0 / static_cast<double>(d)) * ComplexMatrix::identity(d)}}));
  std::vector<std::pair<double, ComplexMatrix>> basis, fourier;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Complex> e(d), f(d);
    e[i] = 1.0;
    for (std::size_t j = 0; j < d; ++j)
      f[j] = std::polar(1.0 / std::sqrt(static_cast<double>(d)),
                        2.0 * std::numbers::pi * static_cast<double>(i * j) /
                            static_cast<double>(d));
    seeds.push_back(ensemble_seed(family, d, {{1.0, ComplexMatrix::outer(e)}}));
    basis.push_back({1.0 / static_cast<double>(d), ComplexMatrix::outer(e)});
    fourier.push_back({1.0 / static_cast<double>(d), ComplexMatrix::outer(f)});
  }
  if (d <= cap) {
    seeds.push_back(ensemble_seed(family, d, basis));
    seeds.push_back(ensemble_seed(family, d, fourier));
  }
  return seeds;
}

std::vector<Seed> random_seeds(StateFamily family, std::size_t d, std::size_t cap,
                               std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> size_dist(1, cap);
  const std::size_t pps = params_per_state(family, d);
  std::vector<Seed> seeds;
  for (std::size_t n = 0; n < count; ++n) {
    const std::size_t k = size_dist(rng);
    Seed s{k, std::vector<double>(k * (1 + pps))};
    for (std::size_t i = 0; i < k; ++i) s.params[i] = 0.05 + unit(rng);
    for (std::size_t i = k; i < s.params.size(); ++i) s.params[i] = gauss(rng);
    if (family == StateFamily::kBlochMixed) {
      // Uniform in the ball: Gaussian direction, radius u^(1/3).
      for (std::size_t i = 0; i < k; ++i) {
        double* v = &s.params[k + 3 * i];
        const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        const double target = std::cbrt(unit(rng));
        for (int j = 0; j < 3; ++j) v[j] *= r > 0.0 ? target / r : 0.0;
      }
    }
    seeds.push_back(std::move(s));
  }
  return seeds;
}

StateFamily family_for(std::size_t in_dim, bool pure) {
  if (in_dim == 2) return pure ? StateFamily::kBlochPure : StateFamily::kBlochMixed;
  return pure ? StateFamily::kGeneralPure : StateFamily::kGeneralMixed;
}

OptimizationResult run_search(const KrausChannel& channel, const Functional& f,
                              bool pure, std::size_t cap,
                              const OptimizerSettings& settings,
                              std::span<const CqEnsemble> extra_seeds) {
  if (settings.max_evaluations == 0)
    throw_invalid("optimizer budget must be positive");
  if (cap == 0) throw_invalid("ensemble size cap must be positive");
  if (!(settings.min_step > 0.0) || !(settings.initial_step >= settings.min_step))
    throw_invalid("optimizer step sizes are inconsistent");
  const std::size_t d = channel.in_dim();
  const DilatedChannel ch(channel);
  const StateFamily family = family_for(d, pure);

  std::vector<Seed> seeds = d == 2 ? qubit_seeds(family, cap)
                                   : general_seeds(family, d, cap);
  for (const auto& ens : extra_seeds) {
    if (ens.input_dim() != d)
      throw_invalid("extra seed ensemble does not match the channel input dimension");
    if (ens.size() > cap) continue;
    std::vector<std::pair<double, ComplexMatrix>> items;
    for (const auto& e : ens.entries()) items.push_back({e.probability, e.state.matrix()});
    seeds.push_back(ensemble_seed(family, d, items));
  }
  {
    auto extra = random_seeds(family, d, cap, settings.random_seeds, settings.seed);
    for (auto& s : extra) seeds.push_back(std::move(s));
  }
  std::erase_if(seeds, [&](const Seed& s) { return s.size > cap; });

  std::size_t evaluations = 0;
  std::vector<std::pair<double, std::size_t>> ranked;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    Search s(ch, family, f, seeds[i], evaluations);
    if (s.valid()) ranked.push_back({s.value(), i});
  }
  if (ranked.empty()) throw_invariant("optimizer: no valid seed ensemble");
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  const std::size_t refine = std::min(std::max<std::size_t>(settings.refine_seeds, 1),
                                      ranked.size());

  double best_value = -1e300;
  std::optional<CqEnsemble> best;
  bool best_converged = false;
  for (std::size_t r = 0; r < refine; ++r) {
    Search s(ch, family, f, seeds[ranked[r].second], evaluations);
    bool converged = false;
    if (evaluations < settings.max_evaluations) {
      const std::size_t share = (settings.max_evaluations - evaluations) / (refine - r);
      converged = pattern_search(s, settings, evaluations, evaluations + share);
    }
    if (s.value() > best_value) {
      best_value = s.value();
      best = s.ensemble();
      best_converged = converged;
    }
  }
  return OptimizationResult{best_value, std::move(*best), evaluations, best_converged, cap};
}

std::size_t default_cap(const KrausChannel& ch, const OptimizerSettings& settings) {
  if (settings.max_ensemble_size != 0) return settings.max_ensemble_size;
  return ch.in_dim() == 2 ? 4 : 6;
}

CqEnsemble drop_negligible(const CqEnsemble& ens) {
  std::vector<CqEnsemble::Entry> kept;
  double total = 0.0;
  for (const auto& e : ens.entries())
    if (e.probability > kNegligibleProbability) {
      kept.push_back(e);
      total += e.probability;
    }
  for (auto& e : kept) e.probability /= total;
  return CqEnsemble(std::move(kept));
}

}  // namespace

void require_valid_weights(const TradeoffWeights& w) {
  if (!(w.lambda >= 0.0) || !(w.mu >= 0.0) || !std::isfinite(w.lambda) ||
      !std::isfinite(w.mu)) {
    std::ostringstream os;
    os << "trade-off weights must be finite and non-negative (lambda=" << w.lambda
       << ", mu=" << w.mu << ")";
    throw_invalid(os.str());
  }
}

double objective(const CqEnsemble& ens, const KrausChannel& ch,
                 const TradeoffWeights& w) {
  require_valid_weights(w);
  const EntropicTriple t = entropic_triple(ens, ch);
  return t.cq_bound + w.lambda * t.qe_bound + w.mu * t.cqe_bound;
}

OptimizationResult dcap_optimize(const KrausChannel& ch, const TradeoffWeights& w,
                                 const OptimizerSettings& settings,
                                 std::span<const CqEnsemble> extra_seeds) {
  require_valid_weights(w);
  return run_search(ch, dcap_functional(w), false, default_cap(ch, settings),
                    settings, extra_seeds);
}

double dcap_closed_form_erasure(double eps, const TradeoffWeights& w) {
  require_valid_weights(w);
  if (!(eps >= 0.0 && eps <= 1.0))
    throw_invalid("dcap_closed_form_erasure: eps outside [0,1]");
  const double coefficient = (1.0 - eps) + w.lambda * (1.0 - 2.0 * eps) - w.mu * eps;
  const double h = coefficient >= 0.0 ? 1.0 : 0.0;  // H2(1/2) or H2(0)
  return (1.0 - eps) * (1.0 + h) + w.lambda * (1.0 - 2.0 * eps) * h +
         w.mu * ((1.0 - eps) - eps * h);
}

double dcap_closed_form_dephasing(double p, const TradeoffWeights& w) {
  require_valid_weights(w);
  return maximize_over_surface(Surface::dephasing(p), [&](const EntropicTriple& b) {
           return b.cq_bound + w.lambda * b.qe_bound + w.mu * b.cqe_bound;
         }).value;
}

OptimizationResult ea_capacity(const KrausChannel& ch, const OptimizerSettings& settings) {
  return run_search(ch, {1.0, 1.0, 0.0, -1.0}, false, 1, settings, {});
}

OptimizationResult coherent_information_capacity(const KrausChannel& ch,
                                                 const OptimizerSettings& settings) {
  return run_search(ch, {0.0, 0.0, 1.0, -1.0}, false, 1, settings, {});
}

OptimizationResult holevo_one_shot(const KrausChannel& ch,
                                   const OptimizerSettings& settings) {
  return run_search(ch, {0.0, 1.0, -1.0, 0.0}, true, default_cap(ch, settings),
                    settings, {});
}

AdditivityProbe additivity_gap(const KrausChannel& ch, const TradeoffWeights& w,
                               const OptimizerSettings& settings) {
  require_valid_weights(w);
  if (ch.in_dim() != 2)
    throw_invalid("additivity_gap: two-copy probes require a qubit-input channel");
  OptimizationResult single = dcap_optimize(ch, w, settings);
  const KrausChannel doubled = tensor_channel(ch, ch);
  const CqEnsemble compact = drop_negligible(single.argmax);
  const CqEnsemble product = product_ensemble(compact, compact);
  OptimizerSettings two = settings;
  two.max_ensemble_size =
      std::max<std::size_t>(settings.max_ensemble_size == 0 ? 6 : settings.max_ensemble_size,
                            product.size());
  OptimizationResult pair = dcap_optimize(doubled, w, two, std::span(&product, 1));
  const double doubled_value = 2.0 * single.value;
  return AdditivityProbe{pair.value, doubled_value, std::move(single), std::move(pair)};
}

}  // namespace dyncap
