#include "adlab/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "adlab/rng.hpp"

namespace adlab {

SyntheticDataset make_blobs(const BlobSpec& spec, std::uint64_t seed) {
  if (spec.classes < 2 || spec.samples_per_class == 0 || spec.dim == 0)
    throw std::invalid_argument("make_blobs: bad spec");
  GaussianStream rng(seed);
  SyntheticDataset data;
  data.dim = spec.dim;
  data.classes = spec.classes;
  for (std::size_t c = 0; c < spec.classes; ++c) {
    ParamVector mean(spec.dim, 0.0);
    mean[c % spec.dim] = spec.separation;
    for (std::size_t s = 0; s < spec.samples_per_class; ++s) {
      ParamVector x(spec.dim);
      for (std::size_t i = 0; i < spec.dim; ++i)
        x[i] = mean[i] + spec.cov_scale * rng.normal();
      data.features.push_back(std::move(x));
      data.labels.push_back(c);
    }
  }
  return data;
}

MlpModel::MlpModel(MlpShape shape, std::uint64_t seed, double init_scale)
    : shape_(shape), params_(shape.param_count(), 0.0) {
  if (shape.in == 0 || shape.out < 2)
    throw std::invalid_argument("MlpModel: need in >= 1 and out >= 2");
  GaussianStream rng(seed);
  for (double& w : params_) w = init_scale * rng.normal();
}

ParamVector MlpModel::logits(const ParamVector& x) const {
  const std::size_t in = shape_.in, hid = shape_.hidden, out = shape_.out;
  if (hid == 0) {
    const double* w = params_.data();
    const double* b = w + out * in;
    ParamVector z(out);
    for (std::size_t k = 0; k < out; ++k)
      z[k] = kernels::dot(w + k * in, x.data(), in) + b[k];
    return z;
  }
  const double* w1 = params_.data();
  const double* b1 = w1 + hid * in;
  const double* w2 = b1 + hid;
  const double* b2 = w2 + out * hid;
  ParamVector h(hid);
  for (std::size_t j = 0; j < hid; ++j)
    h[j] = std::max(0.0, kernels::dot(w1 + j * in, x.data(), in) + b1[j]);
  ParamVector z(out);
  for (std::size_t k = 0; k < out; ++k)
    z[k] = kernels::dot(w2 + k * hid, h.data(), hid) + b2[k];
  return z;
}

namespace {

// In place: logits -> probabilities. Returns log sum exp for the loss.
double softmax(ParamVector& z) {
  double zmax = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& v : z) {
    v = std::exp(v - zmax);
    sum += v;
  }
  for (double& v : z) v /= sum;
  return zmax + std::log(sum);
}

}  // namespace

double MlpModel::forward_loss(const SyntheticDataset& data,
                              const std::vector<std::size_t>& batch,
                              ParamVector& grad) const {
  if (batch.empty()) throw std::invalid_argument("forward_loss: empty batch");
  if (data.dim != shape_.in || data.classes != shape_.out)
    throw DimensionError("forward_loss: dataset/model shape mismatch");

  const std::size_t in = shape_.in, hid = shape_.hidden, out = shape_.out;
  grad.assign(params_.size(), 0.0);
  double loss = 0.0;

  for (std::size_t idx : batch) {
    const ParamVector& x = data.features.at(idx);
    const std::size_t label = data.labels.at(idx);

    if (hid == 0) {
      const double* w = params_.data();
      const double* b = w + out * in;
      double* gw = grad.data();
      double* gb = gw + out * in;
      ParamVector p(out);
      for (std::size_t k = 0; k < out; ++k)
        p[k] = kernels::dot(w + k * in, x.data(), in) + b[k];
      double lse = softmax(p);
      loss += lse - (kernels::dot(w + label * in, x.data(), in) + b[label]);
      for (std::size_t k = 0; k < out; ++k) {
        double d = p[k] - (k == label ? 1.0 : 0.0);
        kernels::axpy(d, x.data(), gw + k * in, in);
        gb[k] += d;
      }
    } else {
      const double* w1 = params_.data();
      const double* b1 = w1 + hid * in;
      const double* w2 = b1 + hid;
      const double* b2 = w2 + out * hid;
      double* gw1 = grad.data();
      double* gb1 = gw1 + hid * in;
      double* gw2 = gb1 + hid;
      double* gb2 = gw2 + out * hid;

      ParamVector pre(hid), h(hid);
      for (std::size_t j = 0; j < hid; ++j) {
        pre[j] = kernels::dot(w1 + j * in, x.data(), in) + b1[j];
        h[j] = std::max(0.0, pre[j]);
      }
      ParamVector p(out);
      for (std::size_t k = 0; k < out; ++k)
        p[k] = kernels::dot(w2 + k * hid, h.data(), hid) + b2[k];
      double lse = softmax(p);
      loss += lse -
              (kernels::dot(w2 + label * hid, h.data(), hid) + b2[label]);

      ParamVector dh(hid, 0.0);
      for (std::size_t k = 0; k < out; ++k) {
        double d = p[k] - (k == label ? 1.0 : 0.0);
        kernels::axpy(d, h.data(), gw2 + k * hid, hid);
        gb2[k] += d;
        kernels::axpy(d, w2 + k * hid, dh.data(), hid);
      }
      for (std::size_t j = 0; j < hid; ++j) {
        if (pre[j] <= 0.0) continue;
        kernels::axpy(dh[j], x.data(), gw1 + j * in, in);
        gb1[j] += dh[j];
      }
    }
  }

  double inv = 1.0 / static_cast<double>(batch.size());
  kernels::scal(inv, grad.data(), grad.size());
  return loss * inv;
}

double MlpModel::dataset_loss(const SyntheticDataset& data) const {
  std::vector<std::size_t> all(data.size());
  std::iota(all.begin(), all.end(), 0);
  ParamVector grad;
  return forward_loss(data, all, grad);
}

double MlpModel::accuracy(const SyntheticDataset& data) const {
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    ParamVector z = logits(data.features[i]);
    std::size_t best =
        std::distance(z.begin(), std::max_element(z.begin(), z.end()));
    if (best == data.labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

std::vector<TrainRecord> train(MlpModel& model, const SyntheticDataset& data,
                               const SyntheticDataset& eval_data,
                               const TrainOptions& opts) {
  if (opts.epochs < 3)
    throw std::invalid_argument("train: need epochs >= 3 for omega comparisons");
  if (opts.batch_size == 0)
    throw std::invalid_argument("train: batch_size must be >= 1");
  opts.optimizer.validate();

  GaussianStream rng(opts.seed);
  UmState opt_state(model.params());
  std::optional<AutoDropScheduler> scheduler;
  if (opts.autodrop) scheduler.emplace(*opts.autodrop);
  double alpha = opts.autodrop ? opts.autodrop->alpha0 : opts.fixed_alpha;

  // Fixed-schedule runs still report omega; same convention as the
  // scheduler (first angle at the third epoch-end snapshot).
  std::optional<ParamVector> prev_params, prev_step;

  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);

  std::vector<TrainRecord> records;
  ParamVector grad;
  for (std::uint64_t epoch = 1; epoch <= opts.epochs; ++epoch) {
    // Seeded Fisher-Yates shuffle.
    for (std::size_t i = order.size() - 1; i > 0; --i)
      std::swap(order[i], order[rng.below(i + 1)]);

    double epoch_loss = 0.0;
    std::size_t batches = 0;
    for (std::size_t start = 0; start < order.size();
         start += opts.batch_size) {
      std::size_t end = std::min(order.size(), start + opts.batch_size);
      std::vector<std::size_t> batch(order.begin() + start,
                                     order.begin() + end);
      epoch_loss += model.forward_loss(data, batch, grad);
      ++batches;
      um_step(opts.optimizer, opt_state, grad, alpha);
      model.params() = opt_state.x;
    }

    TrainRecord rec;
    rec.epoch = epoch;
    rec.train_loss = epoch_loss / static_cast<double>(batches);
    rec.eval_acc = model.accuracy(eval_data);
    rec.dropped = false;
    rec.omega = std::numeric_limits<double>::quiet_NaN();

    if (scheduler) {
      EpochDecision decision = scheduler->observe_epoch(model.params());
      if (auto omega = scheduler->last_omega()) rec.omega = *omega;
      if (decision.params_override) {
        // Averaged parameters replace the model and training restarts from
        // them; keeping the momentum buffers would aim the next update at
        // the pre-average iterate and kick the model off the new point.
        model.params() = *decision.params_override;
        opt_state = UmState(model.params());
      }
      rec.dropped = decision.dropped;
      alpha = decision.alpha_for_next_epoch;
    } else {
      if (prev_params) {
        ParamVector step = sub(model.params(), *prev_params);
        if (prev_step) rec.omega = angle_between_degrees(step, *prev_step);
        prev_step = std::move(step);
      }
      prev_params = model.params();
    }
    rec.lr = alpha;
    records.push_back(rec);
  }
  return records;
}

}  // namespace adlab
