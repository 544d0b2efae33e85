#include "qmlbench/blockenc.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <numeric>

namespace qmlbench {

namespace {
int g_compact_limit = 10;

double spectral_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

Provenance merge(const Provenance& a, const Provenance& b, const std::string& op) {
  Provenance p;
  p.ops = a.ops;
  p.ops.insert(p.ops.end(), b.ops.begin(), b.ops.end());
  p.ops.push_back(op);
  p.queries = a.queries + b.queries;
  return p;
}

// I_{2^k} (x) U: extra idle ancillas in front
Mat pad_front(const Mat& u, int k) { return k == 0 ? u : kron(Mat(Mat::Identity(1LL << k, 1LL << k)), u); }

BlockEncoding shrink(const BlockEncoding& be) { return be.anc > 1 ? compact(be) : be; }

void check_real(const Mat& m, const char* what) {
  if (m.imag().cwiseAbs().maxCoeff() > 1e-9) throw ValidationError(std::string(what) + " needs a real target");
}
}  // namespace

int compaction_limit() { return g_compact_limit; }
void set_compaction_limit(int qubits) {
  if (qubits < 2) throw ArgumentError("compaction limit must be at least 2 qubits");
  g_compact_limit = qubits;
}

Vec StateEncoding::target() const {
  const long long d = 1LL << n;
  return alpha * unitary.col(0).head(d);
}

Mat block(const BlockEncoding& be) {
  const long long d = be.target_dim();
  return be.unitary.topLeftCorner(d, d);
}

Mat extract(const BlockEncoding& be) { return be.alpha * block(be); }

void check_block_encoding(const BlockEncoding& be, double tol) {
  if (be.unitary.rows() != (1LL << (be.anc + be.n))) throw ValidationError("block encoding has inconsistent shape");
  if (!is_unitary(be.unitary, tol)) throw ValidationError("block encoding is not unitary");
  if (spectral_norm(extract(be)) > be.alpha + tol) throw ValidationError("extracted block exceeds its scale factor");
}

Mat completion_with_column(const Vec& v) {
  const long long d = v.size();
  if (std::abs(v.norm() - 1.0) > 1e-10) throw ArgumentError("completion needs a unit vector");
  Mat aug = Mat::Identity(d, d);
  aug.col(0) = v;
  Eigen::HouseholderQR<Mat> qr(aug);
  Mat q = qr.householderQ();
  // Householder fixes the first column only up to a phase
  const cd ph = q.col(0).dot(v);
  q.col(0) *= ph / std::abs(ph);
  return q;
}

BlockEncoding be_from_unitary(const Mat& u) {
  if (u.rows() != u.cols()) throw ArgumentError("unitary must be square");
  if (!is_unitary(u, 1e-10)) throw ValidationError("be_from_unitary needs a unitary matrix");
  BlockEncoding be;
  be.unitary = u;
  be.alpha = 1.0;
  be.anc = 0;
  be.n = log2_exact(u.rows());
  be.prov.ops = {"unitary"};
  return be;
}

BlockEncoding be_from_matrix(const Mat& m, double alpha) {
  if (m.rows() != m.cols()) throw ArgumentError("block encodings target square matrices");
  if (!(alpha > 0)) throw ArgumentError("scale factor must be positive");
  const int n = log2_exact(m.rows());
  check_capacity(n + 1);
  const long long d = m.rows();
  const Mat b = m / alpha;
  Eigen::JacobiSVD<Mat> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  RVec s = svd.singularValues();
  if (s.size() && s(0) > 1.0 + 1e-9) throw ValidationError("matrix norm exceeds the requested scale factor");
  RVec c(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) c(i) = std::sqrt(std::max(0.0, 1.0 - std::min(1.0, s(i)) * s(i)));
  const Mat& W = svd.matrixU();
  const Mat& V = svd.matrixV();
  Mat u(2 * d, 2 * d);
  u.topLeftCorner(d, d) = b;
  u.topRightCorner(d, d) = W * c.cast<cd>().asDiagonal() * W.adjoint();
  u.bottomLeftCorner(d, d) = V * c.cast<cd>().asDiagonal() * V.adjoint();
  u.bottomRightCorner(d, d) = -b.adjoint();
  BlockEncoding be;
  be.unitary = std::move(u);
  be.alpha = alpha;
  be.anc = 1;
  be.n = n;
  be.prov.ops = {"dilate"};
  be.prov.logical_anc = 1;
  return be;
}

BlockEncoding be_from_matrix(const Mat& m) {
  const double a = spectral_norm(m);
  if (!(a > 0)) throw DegenerateError("cannot encode the zero matrix with its own norm");
  return be_from_matrix(m, a);
}

BlockEncoding compact(const BlockEncoding& be) {
  BlockEncoding out = be_from_matrix(extract(be), be.alpha);
  out.prov = be.prov;
  out.prov.ops.push_back("compact");
  return out;
}

BlockEncoding be_lcu(const std::vector<double>& coeffs, const std::vector<Mat>& unitaries) {
  if (coeffs.empty() || coeffs.size() != unitaries.size())
    throw ArgumentError("LCU needs one coefficient per unitary and at least one term");
  const long long d = unitaries[0].rows();
  double l1 = 0;
  for (size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] < 0) throw ValidationError("LCU coefficients must be non-negative; fold signs into the unitaries");
    if (unitaries[k].rows() != d || unitaries[k].cols() != d) throw ArgumentError("LCU unitaries must share one dimension");
    if (!is_unitary(unitaries[k], 1e-10)) throw ValidationError("LCU term is not unitary");
    l1 += coeffs[k];
  }
  if (!(l1 > 0)) throw DegenerateError("LCU coefficients are all zero");
  const int K = (int)coeffs.size();
  const int m = ceil_log2(K);
  const int n = log2_exact(d);
  check_capacity(m + n);
  const long long dm = 1LL << m;
  Vec c = Vec::Zero(dm);
  for (int k = 0; k < K; ++k) c(k) = std::sqrt(coeffs[k] / l1);
  const Mat prep = kron(completion_with_column(c), Mat(Mat::Identity(d, d)));
  Mat select = Mat::Identity(dm * d, dm * d);
  for (int k = 0; k < K; ++k) select.block(k * d, k * d, d, d) = unitaries[k];
  BlockEncoding be;
  be.unitary = prep.adjoint() * select * prep;
  be.alpha = l1;
  be.anc = m;
  be.n = n;
  be.prov.ops = {"lcu"};
  be.prov.logical_anc = m;
  be.prov.queries = K;
  return be;
}

BlockEncoding be_product(const BlockEncoding& a0, const BlockEncoding& b0) {
  if (a0.n != b0.n) throw ArgumentError("product needs equal target dimensions");
  BlockEncoding a = a0, b = b0;
  const int n = a.n;
  if (a.anc + b.anc + n > g_compact_limit) {
    a = shrink(a);
    b = shrink(b);
  }
  BlockEncoding out;
  out.n = n;
  out.alpha = a.alpha * b.alpha;
  out.prov = merge(a.prov, b.prov, "product");
  out.prov.logical_anc = a.prov.logical_anc + b.prov.logical_anc;
  out.prov.eps = a.alpha * b.prov.eps + b.alpha * a.prov.eps;
  const int tot = a.anc + b.anc + n;
  if (tot > g_compact_limit) {
    BlockEncoding s = be_from_matrix(block(a) * block(b) * out.alpha, out.alpha);
    out.unitary = s.unitary;
    out.anc = 1;
    out.prov.ops.push_back("compact");
    return out;
  }
  check_capacity(tot);
  std::vector<int> ta, tb;
  for (int i = 0; i < a.anc; ++i) ta.push_back(i);
  for (int i = 0; i < b.anc; ++i) tb.push_back(a.anc + i);
  for (int i = 0; i < n; ++i) {
    ta.push_back(a.anc + b.anc + i);
    tb.push_back(a.anc + b.anc + i);
  }
  out.unitary = embed(a.unitary, ta, tot) * embed(b.unitary, tb, tot);
  out.anc = a.anc + b.anc;
  return out;
}

BlockEncoding be_transpose(const BlockEncoding& a) {
  check_real(block(a), "transpose");
  BlockEncoding out = a;
  out.unitary = a.unitary.adjoint();
  out.prov.ops.push_back("transpose");
  return out;
}

BlockEncoding be_linear_combination(const std::vector<BlockEncoding>& encs0, const std::vector<cd>& x) {
  if (encs0.empty() || encs0.size() != x.size())
    throw ArgumentError("linear combination needs one coefficient per encoding");
  std::vector<BlockEncoding> encs = encs0;
  const int n = encs[0].n;
  for (auto& e : encs)
    if (e.n != n) throw ArgumentError("linear combination needs equal target dimensions");
  const int K = (int)encs.size();
  const int m = ceil_log2(K);
  auto amax = [&] {
    int r = 0;
    for (auto& e : encs) r = std::max(r, e.anc);
    return r;
  };
  if (m + amax() + n > g_compact_limit)
    for (auto& e : encs) e = shrink(e);
  std::vector<double> w(K);
  double beta = 0;
  for (int k = 0; k < K; ++k) beta += (w[k] = std::abs(x[k]) * encs[k].alpha);
  if (!(beta > 0)) throw DegenerateError("linear combination has zero total weight");

  BlockEncoding out;
  out.n = n;
  out.alpha = beta;
  out.prov.ops = {};
  int la = 0;
  out.prov.queries = 0;
  for (int k = 0; k < K; ++k) {
    out.prov.ops.insert(out.prov.ops.end(), encs[k].prov.ops.begin(), encs[k].prov.ops.end());
    la = std::max(la, encs[k].prov.logical_anc);
    out.prov.queries += encs[k].prov.queries;
    out.prov.eps += std::abs(x[k]) * encs[k].prov.eps;
  }
  out.prov.ops.push_back("linear_combination");
  out.prov.logical_anc = la + m;

  const int a = amax();
  if (m + a + n > g_compact_limit) {
    Mat t = Mat::Zero(1LL << n, 1LL << n);
    for (int k = 0; k < K; ++k) t += x[k] * extract(encs[k]);
    out.unitary = be_from_matrix(t, beta).unitary;
    out.anc = 1;
    out.prov.ops.push_back("compact");
    return out;
  }
  check_capacity(m + a + n);
  const long long dm = 1LL << m, db = 1LL << (a + n);
  Vec c = Vec::Zero(dm);
  for (int k = 0; k < K; ++k) c(k) = std::sqrt(w[k] / beta);
  const Mat prep = kron(completion_with_column(c), Mat(Mat::Identity(db, db)));
  Mat select = Mat::Identity(dm * db, dm * db);
  for (int k = 0; k < K; ++k) {
    const cd ph = std::abs(x[k]) > 0 ? x[k] / std::abs(x[k]) : cd(1.0);
    select.block(k * db, k * db, db, db) = ph * pad_front(encs[k].unitary, a - encs[k].anc);
  }
  out.unitary = prep.adjoint() * select * prep;
  out.anc = m + a;
  return out;
}

BlockEncoding be_hadamard_product(const BlockEncoding& a0, const BlockEncoding& b0) {
  if (a0.n != b0.n) throw ArgumentError("Hadamard product needs equal target dimensions");
  BlockEncoding a = a0, b = b0;
  const int n = a.n;
  if (a.anc + b.anc + 2 * n > g_compact_limit) {
    a = shrink(a);
    b = shrink(b);
  }
  BlockEncoding out;
  out.n = n;
  out.alpha = a.alpha * b.alpha;
  out.prov = merge(a.prov, b.prov, "hadamard_product");
  out.prov.logical_anc = a.prov.logical_anc + b.prov.logical_anc + n;
  out.prov.eps = a.alpha * b.prov.eps + b.alpha * a.prov.eps;
  const int tot = a.anc + b.anc + 2 * n;
  if (tot > g_compact_limit) {
    out.unitary = be_from_matrix(extract(a).cwiseProduct(extract(b)), out.alpha).unitary;
    out.anc = 1;
    out.prov.ops.push_back("compact");
    return out;
  }
  check_capacity(tot);
  // register order: [ancA, ancB, sys2, sys1]; sys2 starts in |0> and acts as ancilla
  std::vector<int> ta, tb;
  for (int i = 0; i < a.anc; ++i) ta.push_back(i);
  for (int i = 0; i < b.anc; ++i) tb.push_back(a.anc + i);
  const int s2 = a.anc + b.anc, s1 = s2 + n;
  for (int i = 0; i < n; ++i) {
    ta.push_back(s1 + i);
    tb.push_back(s2 + i);
  }
  const long long D = 1LL << tot, dn = 1LL << n;
  // P|s2>|s1> = |s2 xor s1>|s1>, bitwise CNOTs sys1 -> sys2
  Mat P = Mat::Zero(D, D);
  for (long long col = 0; col < D; ++col) {
    const long long s1v = col & (dn - 1);
    P(col ^ (s1v << n), col) = 1.0;
  }
  out.unitary = P * embed(a.unitary, ta, tot) * embed(b.unitary, tb, tot) * P;
  out.anc = a.anc + b.anc + n;
  return out;
}

BlockEncoding be_tensor_identity(const BlockEncoding& a, int extra) {
  if (extra < 0) throw ArgumentError("extra qubit count must be non-negative");
  check_capacity(a.anc + a.n + extra);
  BlockEncoding out = a;
  out.unitary = kron(a.unitary, Mat(Mat::Identity(1LL << extra, 1LL << extra)));
  out.n = a.n + extra;
  out.prov.ops.push_back("tensor_identity");
  return out;
}

BlockEncoding be_elementwise_fn(const BlockEncoding& a, const std::function<cd(double)>& g, double g_bound, cd c0,
                                std::optional<int> row_restrict, int degree, const std::string& label) {
  const Mat b = block(a);
  check_real(b, "element-wise transform");
  const long long d = b.rows();
  Mat t(d, d);
  for (long long i = 0; i < d; ++i)
    for (long long j = 0; j < d; ++j) t(i, j) = g(b(i, j).real());
  double jnorm = 0;
  if (std::abs(c0) > 0) {
    if (row_restrict) {
      if (*row_restrict < 0 || *row_restrict >= d) throw ArgumentError("row index out of range");
      t.row(*row_restrict).array() += c0;
      jnorm = std::sqrt(double(d));
    } else {
      t.array() += c0;
      jnorm = double(d);
    }
  }
  const double scale = g_bound + std::abs(c0) * jnorm;
  if (!(scale > 0)) throw DegenerateError("element-wise transform of scale zero");
  if (spectral_norm(t) > scale * (1 + 1e-12) + 1e-12) throw NumericError("element-wise transform exceeds its scale bound");
  BlockEncoding out = be_from_matrix(t, scale);
  const int r = std::max(1, degree);
  out.prov.ops = a.prov.ops;
  out.prov.ops.push_back(label);
  out.prov.logical_anc = r * a.prov.logical_anc + (r - 1) * a.n + ceil_log2(r + 1);
  out.prov.queries = (long long)r * (r + 1) / 2 * a.prov.queries;
  out.prov.eps = a.prov.eps;
  out.prov.notes["degree"] = r;
  out.prov.notes["construction_alpha"] = r * std::abs(c0) + g_bound;
  out.prov.notes["constructed_alpha"] = scale;
  return out;
}

BlockEncoding be_elementwise_poly(const BlockEncoding& a, const PolySpec& p, std::optional<int> row_restrict) {
  if (p.basis != PolySpec::Basis::monomial) throw ArgumentError("element-wise construction takes monomial coefficients");
  if (p.degree() < 1) throw ValidationError("element-wise polynomial needs degree at least 1");
  PolySpec tail = p;
  tail.coeffs[0] = 0.0;
  return be_elementwise_fn(
      a, [&tail](double x) { return tail.eval(x); }, p.tail_one_norm(), p.coeffs[0], row_restrict, p.degree(),
      "elementwise_poly");
}

BlockEncoding qsvt_apply(const BlockEncoding& a, const PolySpec& p) {
  if (p.declared_bound > 0.25 + 1e-12) throw ValidationError("QSVT polynomial must be bounded by 1/4 on [-1,1]");
  PolySpec probe = p;
  probe.domain = p.basis == PolySpec::Basis::chebyshev ? p.domain : 1.0;
  if (probe.grid_max() > 0.25 + 1e-9) throw ValidationError("QSVT polynomial exceeds 1/4 on [-1,1]");
  const Mat b = block(a);
  Eigen::JacobiSVD<Mat> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVec s = svd.singularValues();
  Vec ps(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) ps(i) = p.eval(s(i));
  const Mat t = svd.matrixU() * ps.asDiagonal() * svd.matrixV().adjoint();
  BlockEncoding out = be_from_matrix(t, 1.0);
  out.prov.ops = a.prov.ops;
  out.prov.ops.push_back("qsvt");
  out.prov.logical_anc = a.prov.logical_anc + 3;
  out.prov.queries = (long long)p.degree() * a.prov.queries;
  out.prov.eps = a.prov.eps;
  out.prov.notes["degree"] = p.degree();
  return out;
}

BlockEncoding be_pseudo_inverse(const BlockEncoding& a, double delta, double eps) {
  if (!(eps > 0 && eps <= delta && delta <= 0.5)) throw ArgumentError("need 0 < eps <= delta <= 1/2");
  const Mat b = block(a);
  Eigen::JacobiSVD<Mat> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVec s = svd.singularValues();
  const double zero_tol = 1e-10;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > zero_tol && s(i) < delta)
      throw ValidationError("singular value " + std::to_string(s(i)) + " of A/alpha is below delta = " +
                            std::to_string(delta));
  // (1 - (1-x^2)^b)/x is an odd polynomial of degree 2b-1 within eps/x of 1/x for x >= delta
  const long long bexp = (long long)std::ceil(std::log(1.0 / eps) / (delta * delta));
  RVec f(s.size());
  double err = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) <= zero_tol) {
      f(i) = 0.0;
      continue;
    }
    const double tail = std::pow(1.0 - s(i) * s(i), double(bexp));
    f(i) = (1.0 - tail) / s(i);
    err = std::max(err, tail);
  }
  const Mat t = svd.matrixV() * f.cast<cd>().asDiagonal() * svd.matrixU().adjoint();
  BlockEncoding out = be_from_matrix(t, 1.0 / delta);
  out.prov.ops = a.prov.ops;
  out.prov.ops.push_back("pseudo_inverse");
  out.prov.logical_anc = a.prov.logical_anc + 2;
  const long long construction_q = (long long)std::ceil(std::log(1.0 / eps) / delta);
  out.prov.queries = construction_q * a.prov.queries;
  out.prov.eps = err;
  out.prov.notes["emulation_degree"] = double(2 * bexp - 1);
  out.prov.notes["construction_queries"] = double(construction_q);
  return out;
}

StateEncoding state_encode(const Vec& x) {
  const double nrm = x.norm();
  if (x.size() == 0 || !(nrm > 0)) throw ArgumentError("state_encode of a zero vector");
  const long long d = next_pow2(x.size());
  Vec v = Vec::Zero(d);
  v.head(x.size()) = x / nrm;
  StateEncoding se;
  se.unitary = completion_with_column(v);
  se.alpha = 1.0;
  se.anc = 0;
  se.n = log2_exact(d);
  return se;
}

StateEncoding state_encode(const RVec& x) { return state_encode(Vec(x.cast<cd>())); }

BlockEncoding be_diag_fn_from_state(const StateEncoding& se, const std::function<double(double)>& f, double f_bound,
                                    const std::string& label) {
  const Vec t = se.target();
  if (t.imag().cwiseAbs().maxCoeff() > 1e-9) throw ValidationError("diagonal encoding needs real amplitudes");
  Vec diag(t.size());
  for (Eigen::Index k = 0; k < t.size(); ++k) {
    diag(k) = f(t(k).real());
    if (std::abs(diag(k)) > f_bound + 1e-12) throw NumericError("diagonal function exceeds its declared bound");
  }
  BlockEncoding out = be_from_matrix(Mat(diag.asDiagonal()), f_bound);
  out.prov.ops = {label};
  out.prov.logical_anc = se.anc + se.n + 2;
  return out;
}

BlockEncoding be_diag_from_state(const StateEncoding& se) {
  return be_diag_fn_from_state(se, [](double x) { return x; }, se.alpha, "diag_from_state");
}

BlockEncoding be_row_ones(int n, long long j) {
  const long long d = 1LL << n;
  if (j < 0 || j >= d) throw ArgumentError("row index out of range");
  Mat pj = Mat::Zero(d, d);
  for (long long x = 0; x < d; ++x) pj(x ^ j, x) = 1.0;
  Mat h = Mat::Ones(1, 1);
  for (int q = 0; q < n; ++q) h = kron(h, gates::H().m);
  Mat z0 = Mat::Identity(d, d);
  z0(0, 0) = -1.0;
  const double c = std::sqrt(double(d)) / 2.0;
  BlockEncoding be = be_lcu({c, c}, {pj * h, Mat(-pj * z0 * h)});
  be.prov.ops = {"row_ones"};
  be.prov.queries = 0;
  return be;
}

BlockEncoding be_diag_projector(const std::vector<int>& mask) {
  const long long d = (long long)mask.size();
  log2_exact(d);
  Mat r = Mat::Zero(d, d);
  for (long long i = 0; i < d; ++i) {
    if (mask[i] != 0 && mask[i] != 1) throw ArgumentError("projector mask entries must be 0 or 1");
    r(i, i) = mask[i] ? 1.0 : -1.0;
  }
  BlockEncoding be = be_lcu({0.5, 0.5}, {Mat(Mat::Identity(d, d)), r});
  be.prov.ops = {"projector"};
  be.prov.queries = 0;
  return be;
}

Vec apply_and_postselect(const BlockEncoding& be, const Vec& sys_in) {
  const long long d = be.target_dim();
  if (sys_in.size() != d) throw ArgumentError("input vector has the wrong dimension");
  return be.unitary.topLeftCorner(d, d) * sys_in;
}

}  // namespace qmlbench
