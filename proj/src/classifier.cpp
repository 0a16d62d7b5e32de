// src/classifier.cpp

// Copyright 2026   The wordseg Authors

// See the LICENSE file for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "wordseg/classifier.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "wordseg/errors.hpp"
#include "wordseg/kernels.hpp"
#include "wordseg/linalg.hpp"
#include "wordseg/parallel.hpp"
#include "wordseg/random.hpp"
#include "wordseg/version.hpp"

namespace wordseg {

using json = nlohmann::ordered_json;

std::string to_string(Objective o) { return o == Objective::ridge ? "ridge" : "logistic"; }

Objective parse_objective(const std::string& text) {
  if (text == "ridge") return Objective::ridge;
  if (text == "logistic") return Objective::logistic;
  throw ArgumentError("unknown objective '" + text + "' (expected ridge or logistic)");
}

double TrainingSet::positive_fraction() const {
  if (labels.empty()) return 0.0;
  std::size_t pos = 0;
  for (auto y : labels) pos += y;
  return static_cast<double>(pos) / static_cast<double>(labels.size());
}

namespace {

// Column means of the training features, and the rows centered by them.
struct Centered {
  std::vector<double> mean;
  std::vector<double> rows;  // M x D
};

Centered center(const TrainingSet& ts) {
  const std::size_t m = ts.rows();
  const std::size_t d = ts.dim;
  Centered c{std::vector<double>(d, 0.0), std::vector<double>(m * d)};
  for (std::size_t i = 0; i < m; ++i) {
    const float* x = ts.features.data() + i * d;
    for (std::size_t j = 0; j < d; ++j) c.mean[j] += x[j];
  }
  for (auto& v : c.mean) v /= static_cast<double>(m);
  for (std::size_t i = 0; i < m; ++i) {
    const float* x = ts.features.data() + i * d;
    double* out = c.rows.data() + i * d;
    for (std::size_t j = 0; j < d; ++j) out[j] = static_cast<double>(x[j]) - c.mean[j];
  }
  return c;
}

void check_training_set(const TrainingSet& ts) {
  if (ts.rows() == 0) throw ArgumentError("training set is empty");
  if (ts.dim == 0 || ts.features.size() != ts.rows() * ts.dim)
    throw ArgumentError("training set features do not match rows x dim");
}

// Fills the upper triangle of A with sum_i w_i x_i x_i^T and mirrors it.
void accumulate_gram(const std::vector<double>& rows, std::size_t d, std::span<const double> row_weights,
                     SquareMatrix& a) {
  const auto& k = kernels::active();
  const std::size_t m = rows.size() / d;
  for (std::size_t r = 0; r < m; ++r) {
    const double* x = rows.data() + r * d;
    const double w = row_weights.empty() ? 1.0 : row_weights[r];
    if (w == 0.0) continue;
    for (std::size_t i = 0; i < d; ++i) {
      const double xi = w * x[i];
      if (xi != 0.0) k.axpy(xi, x + i, &a.a[i * d + i], d - i);
    }
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < i; ++j) a(i, j) = a(j, i);
}

double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

TrainingSet assemble_training_set(std::span<const Utterance> corpus, const TrainingSetOptions& opts) {
  if (corpus.empty()) throw ArgumentError("cannot assemble a training set from an empty corpus");
  if (opts.num_utterances == 0) throw ArgumentError("number of training utterances must be positive");
  if (opts.num_utterances > corpus.size())
    throw ArgumentError("requested " + std::to_string(opts.num_utterances) + " training utterances but the corpus has " +
                        std::to_string(corpus.size()));
  const auto selected = sample_without_replacement(corpus.size(), opts.num_utterances, opts.seed);

  TrainingSet ts;
  ts.dim = corpus[selected.front()].features.dim;
  for (auto i : selected) {
    const auto& f = corpus[i].features;
    if (f.dim != ts.dim) throw DataError("utterance '" + f.utterance_id + "' has a different feature dimension");
    ts.utterance_ids.push_back(f.utterance_id);
  }

  std::vector<std::vector<std::uint8_t>> labels(selected.size());
  if (opts.label_source == LabelSource::pseudo) {
    std::vector<GradientMagnitudes> mags(selected.size());
    parallel_for(selected.size(), opts.jobs,
                 [&](std::size_t k) { mags[k] = gradient_magnitude(corpus[selected[k]].features); });
    std::vector<double> pooled;
    for (const auto& m : mags) pooled.insert(pooled.end(), m.values.begin(), m.values.end());
    ts.threshold = percentile_threshold(pooled, opts.percentile);
    for (std::size_t k = 0; k < mags.size(); ++k) labels[k] = pseudo_labels(mags[k], *ts.threshold).labels;
  } else {
    for (std::size_t k = 0; k < selected.size(); ++k) {
      const auto& u = corpus[selected[k]];
      if (!u.ground_truth_ms)
        throw DataError("utterance '" + u.features.utterance_id + "' has no ground-truth boundaries");
      const auto b = boundaries_from_ms(u.features.utterance_id, *u.ground_truth_ms, u.features.num_frames,
                                        u.features.frame_period_ms);
      labels[k].assign(u.features.num_frames, 0);
      for (auto f : b.frames) labels[k][f] = 1;
    }
  }

  for (std::size_t k = 0; k < selected.size(); ++k) {
    const auto& f = corpus[selected[k]].features;
    ts.features.insert(ts.features.end(), f.data.begin(), f.data.end());
    ts.labels.insert(ts.labels.end(), labels[k].begin(), labels[k].end());
  }
  return ts;
}

TrainingSet assemble_training_set(const DatasetManifest& manifest, const TrainingSetOptions& opts) {
  const auto corpus = load_corpus(manifest, opts.jobs);
  return assemble_training_set(corpus, opts);
}

LinearModel train_ridge(const TrainingSet& ts, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ArgumentError("ridge lambda must be positive and finite");
  check_training_set(ts);
  const std::size_t m = ts.rows();
  const std::size_t d = ts.dim;
  const Centered c = center(ts);

  double y_mean = 0.0;
  for (auto y : ts.labels) y_mean += y;
  y_mean /= static_cast<double>(m);

  SquareMatrix a(d);
  accumulate_gram(c.rows, d, {}, a);
  for (std::size_t i = 0; i < d; ++i) a(i, i) += lambda;

  const auto& k = kernels::active();
  std::vector<double> rhs(d, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double yc = static_cast<double>(ts.labels[i]) - y_mean;
    if (yc != 0.0) k.axpy(yc, c.rows.data() + i * d, rhs.data(), d);
  }

  LinearModel model;
  model.weights = Cholesky(a).solve(rhs);
  model.lambda = lambda;
  model.objective = Objective::ridge;
  double offset = 0.0;
  for (std::size_t j = 0; j < d; ++j) offset += model.weights[j] * c.mean[j];
  model.bias = y_mean - offset;
  return model;
}

LogisticFit train_logistic(const TrainingSet& ts, double lambda, const LogisticOptions& opts) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ArgumentError("logistic lambda must be non-negative");
  check_training_set(ts);
  const std::size_t m = ts.rows();
  const std::size_t d = ts.dim;
  const Centered c = center(ts);
  const auto& k = kernels::active();

  // Parameters: weights w (d) and the intercept in centered coordinates.
  std::vector<double> w(d, 0.0);
  double y_mean = ts.positive_fraction();
  double b = (y_mean > 0.0 && y_mean < 1.0) ? std::log(y_mean / (1.0 - y_mean)) : 0.0;

  std::vector<double> z(m);
  auto margins = [&](const std::vector<double>& ww, double bb, std::vector<double>& out) {
    for (std::size_t i = 0; i < m; ++i) {
      double s = bb;
      const double* x = c.rows.data() + i * d;
      for (std::size_t j = 0; j < d; ++j) s += x[j] * ww[j];
      out[i] = s;
    }
  };
  auto objective = [&](const std::vector<double>& zz, const std::vector<double>& ww) {
    double loss = 0.0;
    for (std::size_t i = 0; i < m; ++i) loss += softplus(zz[i]) - ts.labels[i] * zz[i];
    double reg = 0.0;
    for (double v : ww) reg += v * v;
    return loss + lambda * reg;
  };

  LogisticFit fit;
  margins(w, b, z);
  double current = objective(z, w);
  std::vector<double> grad(d + 1), s(m), trial_w(d), trial_z(m);
  for (fit.iterations = 0; fit.iterations < opts.max_iters; ++fit.iterations) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      const double p = sigmoid(z[i]);
      const double r = p - ts.labels[i];
      s[i] = p * (1.0 - p);
      k.axpy(r, c.rows.data() + i * d, grad.data(), d);
      grad[d] += r;
    }
    for (std::size_t j = 0; j < d; ++j) grad[j] += 2.0 * lambda * w[j];
    double gnorm = 0.0;
    for (double g : grad) gnorm += g * g;
    fit.gradient_norm = std::sqrt(gnorm);
    if (fit.gradient_norm < opts.tol) {
      fit.converged = true;
      break;
    }

    SquareMatrix h(d + 1);
    {
      SquareMatrix hw(d);
      accumulate_gram(c.rows, d, s, hw);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) h(i, j) = hw(i, j);
    }
    for (std::size_t i = 0; i < m; ++i) {
      const double* x = c.rows.data() + i * d;
      for (std::size_t j = 0; j < d; ++j) h(j, d) += s[i] * x[j];
      h(d, d) += s[i];
    }
    for (std::size_t j = 0; j < d; ++j) {
      h(d, j) = h(j, d);
      h(j, j) += 2.0 * lambda;
    }

    // Levenberg damping only when the Hessian is numerically singular
    // (separable data with lambda = 0).
    std::vector<double> step;
    double damping = 0.0;
    for (int attempt = 0; attempt < 60; ++attempt) {
      SquareMatrix damped = h;
      for (std::size_t i = 0; i <= d; ++i) damped(i, i) += damping;
      try {
        step = Cholesky(damped).solve(grad);
        break;
      } catch (const DataError&) {
        damping = damping == 0.0 ? 1e-10 * (1.0 + h(d, d)) : damping * 10.0;
      }
    }
    if (step.empty()) break;

    double gdotstep = 0.0;
    for (std::size_t j = 0; j <= d; ++j) gdotstep += grad[j] * step[j];
    double t = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 50; ++ls, t *= 0.5) {
      for (std::size_t j = 0; j < d; ++j) trial_w[j] = w[j] - t * step[j];
      const double trial_b = b - t * step[d];
      margins(trial_w, trial_b, trial_z);
      const double value = objective(trial_z, trial_w);
      if (value <= current - 1e-4 * t * gdotstep) {
        w = trial_w;
        b = trial_b;
        z = trial_z;
        current = value;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // No further decrease is representable; the iterate is as good as it gets.
      fit.converged = fit.gradient_norm < std::sqrt(opts.tol);
      break;
    }
  }

  fit.model.weights = w;
  fit.model.lambda = lambda;
  fit.model.objective = Objective::logistic;
  double offset = 0.0;
  for (std::size_t j = 0; j < d; ++j) offset += w[j] * c.mean[j];
  fit.model.bias = b - offset;
  return fit;
}

std::vector<double> score(const LinearModel& model, const FrameSequence& seq) {
  if (seq.dim != model.feature_dim())
    throw ArgumentError("model expects " + std::to_string(model.feature_dim()) + "-dimensional features, '" +
                        seq.utterance_id + "' has " + std::to_string(seq.dim));
  const auto& k = kernels::active();
  std::vector<double> out(seq.num_frames);
  for (std::size_t t = 0; t < seq.num_frames; ++t)
    out[t] = k.dot(seq.data.data() + t * seq.dim, model.weights.data(), seq.dim) + model.bias;
  return out;
}

std::string model_to_json(const LinearModel& model) {
  json j;
  j["objective"] = to_string(model.objective);
  j["lambda"] = model.lambda;
  j["bias"] = model.bias;
  j["weights"] = model.weights;
  j["feature_dim"] = model.feature_dim();
  j["toolkit_version"] = kVersion;
  return j.dump(2) + "\n";
}

void write_model(const LinearModel& model, const std::filesystem::path& path) {
  write_text_file(path, model_to_json(model));
}

LinearModel read_model(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  LinearModel m;
  try {
    m.objective = parse_objective(j.at("objective").get<std::string>());
    m.lambda = j.at("lambda").get<double>();
    m.bias = j.at("bias").get<double>();
    m.weights = j.at("weights").get<std::vector<double>>();
    const auto dim = j.at("feature_dim").get<std::size_t>();
    if (dim != m.weights.size()) throw FormatError("feature_dim disagrees with the weights array");
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  } catch (const ArgumentError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  if (m.weights.empty()) throw FormatError(path.string() + ": model has no weights");
  for (double v : m.weights)
    if (!std::isfinite(v)) throw DataError(path.string() + ": non-finite weight");
  if (!std::isfinite(m.bias)) throw DataError(path.string() + ": non-finite bias");
  return m;
}

}  // namespace wordseg
