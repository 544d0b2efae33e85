#include "qmlbench/qtransformer.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace qmlbench {

QMode parse_qmode(const std::string& s) {
  if (s == "exact") return QMode::exact;
  if (s == "polynomial" || s == "poly") return QMode::polynomial;
  throw ArgumentError("unknown transformer mode '" + s + "'");
}

std::string to_string(QMode m) { return m == QMode::exact ? "exact" : "polynomial"; }

namespace {

double spectral(const RMat& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<RMat> svd(m);
  return svd.singularValues()(0);
}

RMat pad(const RMat& m, long long r, long long c) {
  RMat out = RMat::Zero(r, c);
  out.topLeftCorner(m.rows(), m.cols()) = m;
  return out;
}

Mat cplx(const RMat& m) { return m.cast<cd>(); }

Vec basis(long long dim, long long k) {
  Vec e = Vec::Zero(dim);
  e(k) = 1.0;
  return e;
}

// vector of a post-selected row; the imaginary part is numerical noise
RVec real_part(const Vec& v) { return v.real(); }

RowState make_state(const RVec& v, std::vector<std::pair<std::string, double>> factors, const char* what) {
  const double eta = v.norm();
  if (!(eta > 1e-13)) throw DegenerateError(std::string(what) + ": post-selected amplitude vanished");
  RowState st;
  st.amps = v / eta;
  factors.emplace_back("success_amplitude", eta);
  st.scale = 1.0;
  for (auto& f : factors) st.scale *= f.second;
  st.factors = std::move(factors);
  return st;
}

// encoding of a single column vector as column 0 of a unitary, scaled by its norm
BlockEncoding be_column(const RVec& v) {
  BlockEncoding be = be_from_unitary(completion_with_column(Vec(v.cast<cd>() / v.norm())));
  be.alpha = v.norm();
  be.prov.ops = {"state_prep"};
  return be;
}

struct LnStage {
  RowState st;
  BlockEncoding enc;
};

// centre a length-d vector: (diag(psi) - mean(psi) I) H|0>, an LCU of two encodings
LnStage ln_center(const RVec& psi, double prefactor) {
  const long long d = psi.size();
  const double nrm = psi.norm();
  if (!(nrm > 0)) throw DegenerateError("layer norm input is zero");
  StateEncoding se = state_encode(psi);
  se.alpha = nrm;
  const BlockEncoding diag = be_diag_from_state(se);
  const double rd = std::sqrt(double(d));
  // |sqrt(d) mean| <= ||psi|| by Cauchy-Schwarz; a hair of slack for rounding
  BlockEncoding mean = be_from_matrix(Mat(rd * psi.mean() * Mat::Identity(d, d)), nrm * (1 + 1e-12));
  mean.prov.ops = {"mean_from_state"};
  LnStage out;
  out.enc = be_linear_combination({diag, mean}, {1.0, -1.0 / rd});
  const RVec v = real_part(apply_and_postselect(out.enc, Vec::Constant(d, 1.0 / rd)));
  if (v.norm() < 1e-12 * nrm / (rd * out.enc.alpha)) throw DegenerateError("layer norm input has zero variance");
  out.st = make_state(v, {{"prefactor", prefactor}, {"alpha_ln", out.enc.alpha}, {"sqrt_d", rd}}, "layer norm");
  return out;
}

StageCost stage_cost(const std::string& name, const BlockEncoding& be, int degree, long long query_mult = 1) {
  StageCost c;
  c.stage = name;
  c.queries = std::max<long long>(1, be.prov.queries) * query_mult;
  c.logical_anc = be.prov.logical_anc;
  c.alpha = be.alpha;
  c.degree = degree;
  c.rounds = (long long)std::ceil(be.alpha - 1e-12);
  if (c.rounds < 1) c.rounds = 1;
  return c;
}

double max_abs(const RVec& a, const RVec& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

QTransformerResult q_transformer_row(const RMat& S, const TransformerWeights& w, const QTransformerConfig& cfg) {
  w.validate();
  const int d = w.d(), dff = w.d_ff();
  const long long l = S.rows();
  if (!is_pow2(d) || d < 2) throw ValidationError("embedding dimension must be a power of two and at least 2");
  if (l < 1 || S.cols() != d || !S.allFinite()) throw ValidationError("S must be a finite l x d matrix");
  if (cfg.j < 0 || cfg.j >= l) throw ArgumentError("row index out of range");
  if (cfg.mode == QMode::polynomial && !(cfg.eps > 0 && cfg.eps < 1)) throw ArgumentError("epsilon must lie in (0,1)");
  const int j = cfg.j;

  QTransformerResult R;
  R.alpha_s = cfg.alpha_s > 0 ? cfg.alpha_s : spectral(S);
  R.alpha_w = cfg.alpha_w > 0 ? cfg.alpha_w : std::max({spectral(w.Wq), spectral(w.Wk), spectral(w.Wv)});
  R.alpha_m = cfg.alpha_m > 0 ? cfg.alpha_m : std::max(spectral(w.M1), spectral(w.M2));
  if (!(R.alpha_s > 0) || !(R.alpha_w > 0) || !(R.alpha_m > 0)) throw DegenerateError("an input matrix is zero");
  R.alpha0 = R.alpha_s * R.alpha_s * R.alpha_w * R.alpha_w;

  // classical reference, LN with gamma 1 and beta 0
  TransformerWeights wc = w;
  wc.gamma = 1.0;
  wc.beta = 0.0;
  const RMat P = attention_weights(S, wc, R.alpha0, cfg.masked);
  const RMat Gc = P * (S * w.Wv);
  const RVec g_ref = Gc.row(j).transpose();
  const RVec r_ref = g_ref + S.row(j).transpose();
  const RVec x_ref = layer_norm(r_ref, 1.0, 0.0);
  const RVec y_ref = ffn(x_ref, wc);
  R.classical = layer_norm(y_ref, 1.0, 0.0).normalized();

  const PolySpec p_exp = poly_approx_exp(cfg.eps, 0.5);
  R.degree_exp = p_exp.degree();

  // ---- attention ----
  const long long D1 = std::max<long long>(next_pow2(l), d);
  const BlockEncoding beS = be_from_matrix(cplx(pad(S, D1, D1)), R.alpha_s);
  const BlockEncoding beWq = be_from_matrix(cplx(pad(w.Wq, D1, D1)), R.alpha_w);
  const BlockEncoding beWk = be_from_matrix(cplx(pad(w.Wk, D1, D1)), R.alpha_w);
  const BlockEncoding beWv = be_from_matrix(cplx(pad(w.Wv, D1, D1)), R.alpha_w);
  const BlockEncoding beQK = be_product(be_product(beS, beWq), be_transpose(be_product(beS, beWk)));

  BlockEncoding beE;
  if (cfg.mode == QMode::exact) {
    const double b = std::exp(0.5) - 1;
    beE = be_elementwise_fn(beQK, [](double x) { return cd(std::exp(x / 2) - 1); }, b, 1.0, j, R.degree_exp, "exp_half");
  } else {
    beE = be_elementwise_poly(beQK, p_exp, j);
  }
  std::vector<int> mask(D1, 0);
  for (long long k = 0; k < l; ++k) mask[k] = (!cfg.masked || k <= j) ? 1 : 0;
  const BlockEncoding beEP = be_product(beE, be_diag_projector(mask));
  const RVec sm = real_part(apply_and_postselect(be_transpose(beEP), basis(D1, j)));
  R.softmax = make_state(sm, {{"alpha_softmax", beEP.alpha}}, "softmax");
  {
    RVec ref = RVec::Zero(D1);
    for (long long k = 0; k < l; ++k)
      if (mask[k]) ref(k) = std::exp((S.row(j) * w.Wq).dot(S.row(k) * w.Wk) / (2 * R.alpha0));
    R.recon_softmax = max_abs(R.softmax.unnormalized(), ref);
  }
  R.cost.push_back(stage_cost("softmax", beEP, R.degree_exp));

  // square the amplitudes: column 0 of U o U is the softmax row
  const Mat Ua = completion_with_column(Vec(R.softmax.amps.cast<cd>()));
  const BlockEncoding beF = be_hadamard_product(be_from_unitary(Ua), be_from_unitary(Ua));
  const BlockEncoding beV = be_product(beS, beWv);
  const BlockEncoding beG0 = be_product(be_transpose(beF), beV);
  Mat swap = Mat::Identity(D1, D1);
  if (j != 0) {
    swap(0, 0) = swap(j, j) = 0.0;
    swap(0, j) = swap(j, 0) = 1.0;
  }
  BlockEncoding beG = be_product(be_from_unitary(swap), beG0);
  beG.prov.queries += beEP.prov.queries;  // the softmax state is prepared from the QK encoding
  const RVec gv = real_part(apply_and_postselect(be_transpose(beG), basis(D1, j)));
  if (D1 > d && gv.tail(D1 - d).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, gv.norm()))
    throw NumericError("attention output leaked into padded coordinates");
  R.attention = make_state(gv.head(d), {{"alpha_v", beG.alpha}}, "attention");
  R.recon_attention = max_abs(R.attention.unnormalized(), g_ref);
  R.cost.push_back(stage_cost("attention", beG, R.degree_exp));

  // ---- residual + layer norm ----
  const BlockEncoding beRes = be_linear_combination({beG, beS}, {1.0, 1.0});
  const RVec rv = real_part(apply_and_postselect(be_transpose(beRes), basis(D1, j))).head(d);
  LnStage ln1 = ln_center(rv, beRes.alpha);
  ln1.enc.prov.queries += beRes.prov.queries;
  R.layernorm = ln1.st;
  R.recon_layernorm = max_abs(R.layernorm.unnormalized(), RVec(r_ref.array() - r_ref.mean()));
  R.cost.push_back(stage_cost("layernorm", ln1.enc, 0));

  // ---- feed-forward ----
  const long long D2 = std::max<long long>(d, next_pow2(dff));
  RVec psi = RVec::Zero(D2);
  psi.head(d) = R.layernorm.amps;
  const BlockEncoding bePsi = be_from_unitary(completion_with_column(Vec(psi.cast<cd>())));
  const BlockEncoding beM1 = be_from_matrix(cplx(pad(w.M1, D2, D2)), R.alpha_m);
  const BlockEncoding beM2 = be_from_matrix(cplx(pad(w.M2, D2, D2)), R.alpha_m);
  // classical LN rescales the unit state by sqrt(d); fold it into the LCU weight
  const double fold = std::sqrt(double(d));
  std::vector<BlockEncoding> hs{be_product(beM1, bePsi)};
  std::vector<cd> hc{fold};
  if (w.b1.norm() > 0) {
    hs.push_back(be_column(pad(w.b1, D2, 1)));
    hc.push_back(1.0);
  }
  const BlockEncoding beH = be_linear_combination(hs, hc);
  const double alpha_h = beH.alpha;
  const RVec hamp = real_part(apply_and_postselect(beH, basis(D2, 0)));

  const PolySpec p_cdf = poly_approx_gauss_cdf(alpha_h, 1.0, cfg.eps);
  R.degree_gelu = p_cdf.degree();
  StateEncoding seh = state_encode(hamp);
  seh.alpha = hamp.norm();
  BlockEncoding bePhi;
  if (cfg.mode == QMode::exact) {
    bePhi = be_diag_fn_from_state(seh, [alpha_h](double x) { return gauss_cdf(alpha_h * x); }, 1.0, "gauss_cdf");
  } else {
    const double bound = std::max(1.0, p_cdf.grid_max()) + 1e-12;
    bePhi = be_diag_fn_from_state(seh, [&p_cdf](double x) { return p_cdf.eval_real(x); }, bound, "gauss_cdf_poly");
  }
  const BlockEncoding beY = be_product(beM2, be_product(bePhi, beH));
  std::vector<BlockEncoding> ys{beY};
  std::vector<cd> yc{1.0};
  if (w.b2.norm() > 0) {
    ys.push_back(be_column(pad(w.b2, D2, 1)));
    yc.push_back(1.0);
  }
  const BlockEncoding beFfn = be_linear_combination(ys, yc);
  const RVec yv = real_part(apply_and_postselect(beFfn, basis(D2, 0)));
  if (D2 > d && yv.tail(D2 - d).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, yv.norm()))
    throw NumericError("FFN output leaked into padded coordinates");
  R.ffn = make_state(yv.head(d), {{"alpha_ffn", beFfn.alpha}}, "ffn");
  R.recon_ffn = max_abs(R.ffn.unnormalized(), y_ref);
  R.cost.push_back(stage_cost("ffn", beFfn, R.degree_gelu, std::max(1, R.degree_gelu)));

  // ---- output layer norm ----
  LnStage ln2 = ln_center(R.ffn.amps, 1.0);
  R.output = ln2.st;
  R.output.scale = 1.0;
  R.output.factors.clear();
  R.cost.push_back(stage_cost("output_layernorm", ln2.enc, 0));

  R.cosine = R.output.amps.dot(R.classical);
  for (auto& c : R.cost) R.construction_count += c.queries * c.rounds;
  return R;
}

}  // namespace qmlbench
