#include "qmlbench/transformer.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <limits>

#include "qmlbench/grover.hpp"
#include "qmlbench/rng.hpp"

namespace qmlbench {

void TransformerWeights::validate() const {
  const Eigen::Index d = Wq.rows();
  if (d < 1) throw ValidationError("weights are empty");
  for (const RMat* m : {&Wq, &Wk, &Wv})
    if (m->rows() != d || m->cols() != d) throw ValidationError("attention weights must all be d x d");
  if (M1.cols() != d || M1.rows() < 1) throw ValidationError("M1 must be d' x d");
  if (M2.rows() != d || M2.cols() != M1.rows()) throw ValidationError("M2 must be d x d'");
  if (b1.size() != M1.rows()) throw ValidationError("b1 must have length d'");
  if (b2.size() != d) throw ValidationError("b2 must have length d");
  auto finite = [](const auto& m) { return m.allFinite(); };
  if (!finite(Wq) || !finite(Wk) || !finite(Wv) || !finite(M1) || !finite(M2) || !finite(b1) || !finite(b2))
    throw ValidationError("weights contain non-finite entries");
}

namespace {
void check_sequence(const RMat& S, const TransformerWeights& w) {
  w.validate();
  if (S.rows() < 1 || S.cols() != w.d()) throw ValidationError("S must be l x d with d matching the weights");
  if (!S.allFinite()) throw ValidationError("S contains non-finite entries");
}
}  // namespace

RMat attention_weights(const RMat& S, const TransformerWeights& w, double alpha0, bool masked) {
  check_sequence(S, w);
  if (!(alpha0 > 0)) throw ArgumentError("attention scale must be positive");
  const RMat A = (S * w.Wq) * (S * w.Wk).transpose() / alpha0;
  const Eigen::Index l = A.rows();
  RMat P = RMat::Zero(l, l);
  for (Eigen::Index j = 0; j < l; ++j) {
    const Eigen::Index last = masked ? j : l - 1;
    const double mx = A.row(j).head(last + 1).maxCoeff();
    double z = 0;
    for (Eigen::Index k = 0; k <= last; ++k) z += (P(j, k) = std::exp(A(j, k) - mx));
    P.row(j) /= z;
  }
  return P;
}

RMat classical_attention(const RMat& S, const TransformerWeights& w, double alpha0, bool masked) {
  return attention_weights(S, w, alpha0, masked) * (S * w.Wv);
}

RVec layer_norm(const RVec& x, double gamma, double beta) {
  if (x.size() == 0) throw ArgumentError("layer norm of an empty vector");
  const RVec c = x.array() - x.mean();
  const double sigma = std::sqrt(c.squaredNorm() / x.size());
  if (sigma < 1e-12) throw DegenerateError("layer norm input has zero variance");
  return (gamma * c / sigma).array() + beta;
}

RVec layer_norm_residual(const RVec& g, const RVec& s, double gamma, double beta) {
  if (g.size() != s.size()) throw ArgumentError("residual branches differ in length");
  return layer_norm(g + s, gamma, beta);
}

double gelu_exact(double x) { return x * 0.5 * (1.0 + std::erf(x / std::sqrt(2.0))); }

RVec ffn(const RVec& x, const TransformerWeights& w) {
  if (x.size() != w.M1.cols()) throw ArgumentError("FFN input has the wrong length");
  const RVec h = (w.M1 * x + w.b1).unaryExpr([](double v) { return gelu_exact(v); });
  return w.M2 * h + w.b2;
}

RVec classical_transformer_row(const RMat& S, int j, const TransformerWeights& w, double alpha0, bool masked) {
  check_sequence(S, w);
  if (j < 0 || j >= S.rows()) throw ArgumentError("row index out of range");
  const RMat G = classical_attention(S, w, alpha0, masked);
  const RVec x = layer_norm_residual(G.row(j).transpose(), S.row(j).transpose(), w.gamma, w.beta);
  return layer_norm(ffn(x, w), w.gamma, w.beta);
}

ToyInstance toy_cat_sleeps() {
  ToyInstance t;
  t.S.resize(3, 4);
  t.S << 1, 0, 1, 0, 0, 1, 1, 1, 1, 1, 0, 1;
  auto& w = t.w;
  w.Wq.resize(4, 4);
  w.Wq << 0.2, 0.4, 0.6, 0.8, 0.1, 0.3, 0.5, 0.7, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2;
  w.Wk.resize(4, 4);
  w.Wk << 0.1, 0.3, 0.5, 0.7, 0.6, 0.4, 0.2, 0.1, 0.8, 0.9, 0.7, 0.6, 0.2, 0.1, 0.3, 0.4;
  w.Wv.resize(4, 4);
  w.Wv << 0.3, 0.5, 0.7, 0.9, 0.6, 0.4, 0.2, 0.1, 0.8, 0.9, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2;
  // the toy stops at attention; identity-like FFN so the full row is defined
  w.M1 = RMat::Identity(4, 4);
  w.M2 = RMat::Identity(4, 4);
  w.b1 = RVec::Zero(4);
  w.b2 = RVec::Zero(4);
  return t;
}

RowSampler parse_row_sampler(const std::string& s) {
  if (s == "unit") return RowSampler::unit;
  if (s == "gaussian") return RowSampler::gaussian;
  if (s == "orthonormal") return RowSampler::orthonormal;
  if (s == "repeated") return RowSampler::repeated;
  throw ArgumentError("unknown row sampler '" + s + "'");
}

std::string to_string(RowSampler s) {
  switch (s) {
    case RowSampler::unit: return "unit";
    case RowSampler::gaussian: return "gaussian";
    case RowSampler::orthonormal: return "orthonormal";
    case RowSampler::repeated: return "repeated";
  }
  return "?";
}

namespace {
RMat sample_rows(RowSampler s, long long ell, int d, Rng& rng) {
  RMat S(ell, d);
  switch (s) {
    case RowSampler::unit:
      for (long long i = 0; i < ell; ++i) {
        RVec r(d);
        for (int k = 0; k < d; ++k) r(k) = rng.normal();
        S.row(i) = r.normalized().transpose();
      }
      break;
    case RowSampler::gaussian:
      // N(0, 1/d) entries: rows have expected unit norm
      for (Eigen::Index i = 0; i < S.size(); ++i) S.data()[i] = rng.normal() / std::sqrt(double(d));
      break;
    case RowSampler::orthonormal: {
      if (ell > d) throw ArgumentError("orthonormal rows need l <= d");
      RMat g(d, d);
      for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = rng.normal();
      Eigen::HouseholderQR<RMat> qr(g);
      const RMat q = qr.householderQ();
      S = q.topRows(ell);
      break;
    }
    case RowSampler::repeated: {
      RVec r(d);
      for (int k = 0; k < d; ++k) r(k) = rng.normal();
      r.normalize();
      for (long long i = 0; i < ell; ++i) S.row(i) = r.transpose();
      break;
    }
  }
  return S;
}
}  // namespace

NormStudy norm_scaling_study(RowSampler sampler, const std::vector<long long>& ells, int d, int trials,
                             std::uint64_t seed) {
  if (ells.empty() || trials < 1 || d < 1) throw ArgumentError("norm study needs lengths, trials and d >= 1");
  NormStudy st;
  st.sampler = sampler;
  st.d = d;
  Rng master(seed);
  std::vector<double> xs, ys, yf;
  for (long long ell : ells) {
    if (ell < 1) throw ArgumentError("sequence lengths must be positive");
    NormRow row;
    row.ell = ell;
    for (int t = 0; t < trials; ++t) {
      Rng rng = master.derive(std::uint64_t(ell)).derive(std::uint64_t(t));
      const RMat S = sample_rows(sampler, ell, d, rng);
      Eigen::JacobiSVD<RMat> svd(S);
      const double sp = svd.singularValues()(0), fr = S.norm();
      row.spectral += sp / trials;
      row.frobenius += fr / trials;
      if (sampler == RowSampler::unit) row.frobenius_dev = std::max(row.frobenius_dev, std::abs(fr - std::sqrt(double(ell))));
      if (ell > 1 && sp >= std::sqrt(double(ell)) * (1 - 1e-9)) st.worst_case = true;
    }
    st.rows.push_back(row);
    xs.push_back(double(ell));
    ys.push_back(row.spectral);
    yf.push_back(row.frobenius);
  }
  if (ells.size() >= 2) {
    st.slope_spectral = loglog_slope(xs, ys);
    st.slope_frobenius = loglog_slope(xs, yf);
  }
  return st;
}

}  // namespace qmlbench
