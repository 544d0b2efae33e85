#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "qmlbench/qgan.hpp"

namespace qmlbench {

namespace {

Vec latent_state(const RVec& z) {
  Vec amps = Vec::Ones(1);
  for (Eigen::Index q = 0; q < z.size(); ++q) {
    const double c = std::cos(z(q) / 2), s = std::sin(z(q) / 2);
    Vec next(amps.size() * 2);
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
      next(2 * i) = amps(i) * c;
      next(2 * i + 1) = amps(i) * s;
    }
    amps.swap(next);
  }
  return amps;
}

// unnormalised |amp|^2 of system states with all ancillas 0
RVec numerators(const QganGenerator& g, const RVec& theta, const Vec& in) {
  const Vec out = g.circuit.apply(theta, in);
  RVec num(g.patch_size());
  for (int k = 0; k < g.patch_size(); ++k) num(k) = std::norm(out((Eigen::Index)k << g.n_anc));
  return num;
}

void check_config(const QganConfig& c) {
  if (c.T < 1 || c.n < 2 || c.n_anc < 1 || c.n_anc >= c.n || c.layers < 1)
    throw ArgumentError("QGAN needs T >= 1, layers >= 1 and 1 <= N_A < N");
  if (c.batch < 1 || c.epochs < 0) throw ArgumentError("batch must be positive and epochs non-negative");
  check_capacity(c.n);
}

}  // namespace

QganGenerator qgan_generator_init(const QganConfig& cfg, Rng& rng) {
  check_config(cfg);
  QganGenerator g;
  g.n = cfg.n;
  g.n_anc = cfg.n_anc;
  g.layers = cfg.layers;
  g.circuit.n = cfg.n;
  g.circuit.layers = cfg.layers;
  for (int l = 0; l < cfg.layers; ++l) {
    for (int q = 0; q < cfg.n; ++q) g.circuit.add_rot(q);
    for (int q = 0; q + 1 < cfg.n; ++q) g.circuit.add_fixed(gates::CZ().m, {q, q + 1}, "CZ");
  }
  for (int t = 0; t < cfg.T; ++t) {
    RVec p(g.circuit.num_params);
    for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = rng.uniform();
    g.params.push_back(std::move(p));
  }
  return g;
}

PatchProbs qgan_patch_probs(const QganGenerator& g, int t, const RVec& z) {
  if (z.size() != g.n) throw ArgumentError("latent vector must have one angle per qubit");
  const RVec num = numerators(g, g.params.at(t), latent_state(z));
  PatchProbs r;
  r.post = num.sum();
  r.p = r.post > 0 ? RVec(num / r.post) : RVec(num);
  return r;
}

RMat qgan_patch_jacobian(const QganGenerator& g, int t, const RVec& z) {
  const Vec in = latent_state(z);
  const RVec& theta = g.params.at(t);
  const RVec num = numerators(g, theta, in);
  const double post = num.sum();
  if (post < 1e-300) throw NumericError("post-selection probability vanished");
  RMat J(g.patch_size(), theta.size());
  RVec th = theta;
  for (Eigen::Index j = 0; j < theta.size(); ++j) {
    th(j) = theta(j) + kPi / 2;
    const RVec up = numerators(g, th, in);
    th(j) = theta(j) - kPi / 2;
    const RVec dn = numerators(g, th, in);
    th(j) = theta(j);
    const RVec dnum = 0.5 * (up - dn);
    const double dpost = dnum.sum();
    J.col(j) = (dnum * post - num * dpost) / (post * post);
  }
  return J;
}

RVec minmax_rescale(const RVec& p) {
  const double lo = p.minCoeff(), hi = p.maxCoeff();
  return (p.array() - lo) / (hi - lo + 1e-8);
}

RMat minmax_jacobian(const RVec& p) {
  Eigen::Index m = 0, M = 0;
  const double lo = p.minCoeff(&m), hi = p.maxCoeff(&M);
  const double D = hi - lo + 1e-8;
  const Eigen::Index n = p.size();
  RMat J = RMat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    J(i, i) += 1 / D;
    J(i, m) -= 1 / D;
    const double c = (p(i) - lo) / (D * D);
    J(i, M) -= c;
    J(i, m) += c;
  }
  return J;
}

RVec qgan_generate(const QganGenerator& g, const RVec& z, std::vector<PatchProbs>* raw) {
  RVec img(g.pixels());
  if (raw) raw->clear();
  for (int t = 0; t < (int)g.params.size(); ++t) {
    PatchProbs pp = qgan_patch_probs(g, t, z);
    img.segment(t * g.patch_size(), g.patch_size()) = minmax_rescale(pp.p);
    if (raw) raw->push_back(std::move(pp));
  }
  return img;
}

QganResult qgan_patch_train(const std::vector<RVec>& images, const QganConfig& cfg) {
  check_config(cfg);
  const int patch = 1 << (cfg.n - cfg.n_anc);
  const int pixels = patch * cfg.T;
  if (images.empty()) throw ValidationError("QGAN needs at least one training image");
  for (auto& im : images)
    if (im.size() != pixels)
      throw ValidationError("image pixel count must equal T * 2^(N - N_A) = " + std::to_string(pixels));

  const auto t0 = std::chrono::steady_clock::now();
  Rng master(cfg.seed);
  Rng init = master.derive("init"), latent = master.derive("latent"), order = master.derive("shuffle");

  QganResult res;
  res.gen = qgan_generator_init(cfg, init);
  res.disc = MLP::init({pixels, 64, 32, 1}, Activation::relu, OutputKind::sigmoid, init);
  res.record.seed = cfg.seed;

  auto draw_latent = [&](std::vector<PatchProbs>& raw) {
    for (;;) {
      RVec z(cfg.n);
      for (int q = 0; q < cfg.n; ++q) z(q) = latent.uniform(0, kPi);
      RVec img = qgan_generate(res.gen, z, &raw);
      bool ok = true;
      for (auto& r : raw) ok = ok && r.post >= 1e-9;
      if (ok) {
        for (auto& r : raw) {
          res.min_post = std::min(res.min_post, r.post);
          res.max_sum_error = std::max(res.max_sum_error, std::abs(r.p.sum() - 1));
          res.min_entry = std::min(res.min_entry, r.p.minCoeff());
        }
        return std::make_pair(z, img);
      }
      ++res.resampled_latents;
    }
  };

  std::vector<size_t> idx(images.size());
  std::iota(idx.begin(), idx.end(), 0);
  const RVec one = RVec::Ones(1), zero = RVec::Zero(1);
  int step = 0;

  for (int ep = 1; ep <= cfg.epochs; ++ep) {
    std::shuffle(idx.begin(), idx.end(), order.engine());
    double sum_d = 0, sum_g = 0;
    int nb = 0;
    // drop_last, like the reference loader
    for (size_t s = 0; s + cfg.batch <= idx.size(); s += cfg.batch) {
      const int B = cfg.batch;
      std::vector<RVec> zs, fakes;
      std::vector<std::vector<PatchProbs>> raws(B);
      for (int b = 0; b < B; ++b) {
        auto [z, img] = draw_latent(raws[b]);
        zs.push_back(z);
        fakes.push_back(img);
      }

      // discriminator: mean BCE on fakes (label 0) plus mean BCE on reals (label 1)
      MLPGrad acc;
      double loss_d = 0;
      auto accumulate = [&](const MLPGrad& g) {
        if (acc.dW.empty()) {
          acc.dW = g.dW;
          acc.db = g.db;
          for (auto& m : acc.dW) m /= B;
          for (auto& v : acc.db) v /= B;
          return;
        }
        for (size_t l = 0; l < g.dW.size(); ++l) {
          acc.dW[l] += g.dW[l] / B;
          acc.db[l] += g.db[l] / B;
        }
      };
      for (int b = 0; b < B; ++b) {
        const MLPGrad gf = mlp_backprop(res.disc, fakes[b], zero, LossKind::bce);
        const MLPGrad gr = mlp_backprop(res.disc, images[idx[s + b]], one, LossKind::bce);
        loss_d += (gf.loss + gr.loss) / B;
        accumulate(gf);
        accumulate(gr);
      }
      for (size_t l = 0; l < acc.dW.size(); ++l) {
        res.disc.W[l] -= cfg.lr_d * acc.dW[l];
        res.disc.b[l] -= cfg.lr_d * acc.db[l];
      }

      // generator against the updated discriminator
      double loss_g = 0;
      std::vector<RVec> gpar(cfg.T);
      for (auto& v : gpar) v = RVec::Zero(res.gen.circuit.num_params);
      for (int b = 0; b < B; ++b) {
        const MLPGrad gg = mlp_backprop(res.disc, fakes[b], one, LossKind::bce);
        loss_g += gg.loss / B;
        for (int t = 0; t < cfg.T; ++t) {
          const RVec dx = gg.dinput.segment(t * patch, patch) / B;
          const RVec dp = minmax_jacobian(raws[b][t].p).transpose() * dx;
          gpar[t] += qgan_patch_jacobian(res.gen, t, zs[b]).transpose() * dp;
        }
      }
      for (int t = 0; t < cfg.T; ++t) res.gen.params[t] -= cfg.lr_g * gpar[t];

      if (!std::isfinite(loss_d) || !std::isfinite(loss_g)) throw NumericError("QGAN loss became non-finite");
      res.steps.push_back({ep, ++step, loss_d, loss_g});
      sum_d += loss_d;
      sum_g += loss_g;
      ++nb;
    }
    res.record.epochs.push_back(ep);
    res.record.train_loss.push_back(nb ? sum_g / nb : 0.0);
    res.record.test_loss.push_back(nb ? sum_d / nb : 0.0);
  }
  RVec all(res.gen.circuit.num_params * cfg.T);
  for (int t = 0; t < cfg.T; ++t) all.segment(t * res.gen.circuit.num_params, res.gen.circuit.num_params) = res.gen.params[t];
  res.record.param_hash = hash_params(all);
  res.record.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace qmlbench
