#include <algorithm>
#include <Eigen/Eigenvalues>
#include <cmath>

#include "qmlbench/readout.hpp"

namespace qmlbench {

std::vector<std::string> tomography_settings(int n) {
  std::vector<std::string> out{""};
  for (int q = 0; q < n; ++q) {
    std::vector<std::string> next;
    for (auto& s : out)
      for (char c : {'X', 'Y', 'Z'}) next.push_back(s + c);
    out.swap(next);
  }
  return out;
}

Mat setting_projector(const std::string& setting, long long outcome) {
  const Mat u = pauli_basis_rotation(setting);
  return u.adjoint().col(outcome) * u.adjoint().col(outcome).adjoint();
}

MeasurementData simulate_tomography_data(const DensityMatrix& rho, long long shots, Rng& rng) {
  if (shots < 0) throw ArgumentError("shots must be non-negative");
  MeasurementData data;
  data.n = rho.n;
  data.shots = shots;
  for (auto& s : tomography_settings(rho.n)) {
    const Mat u = pauli_basis_rotation(s);
    const Mat rot = u * rho.m * u.adjoint();
    std::vector<double> p(rho.dim());
    double tot = 0;
    for (long long i = 0; i < rho.dim(); ++i) tot += (p[i] = std::max(0.0, rot(i, i).real()));
    for (auto& x : p) x /= tot;
    SettingRecord rec{s, p};
    if (shots > 0) {
      Rng sub = rng.derive(s);
      auto c = sample_counts(p, shots, sub);
      rec.counts.assign(c.begin(), c.end());
    }
    data.records.push_back(std::move(rec));
  }
  return data;
}

namespace {

struct Frequencies {
  std::vector<Mat> proj;
  std::vector<double> f;  // normalised per setting
};

Frequencies frequencies(const MeasurementData& data) {
  if (data.records.empty()) throw ValidationError("no measurement records");
  const long long d = 1LL << data.n;
  Frequencies out;
  for (auto& r : data.records) {
    if ((int)r.setting.size() != data.n || !is_valid_pauli(r.setting))
      throw ValidationError("bad setting label '" + r.setting + "'");
    if ((long long)r.counts.size() != d) throw ValidationError("setting " + r.setting + " has the wrong outcome count");
    double tot = 0;
    for (double c : r.counts) {
      if (c < 0) throw ValidationError("negative count in setting " + r.setting);
      tot += c;
    }
    if (!(tot > 0)) throw ValidationError("setting " + r.setting + " has no data");
    for (long long b = 0; b < d; ++b) {
      out.proj.push_back(setting_projector(r.setting, b));
      out.f.push_back(r.counts[b] / tot);
    }
  }
  return out;
}

double min_eig(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double loglik(const Mat& rho, const Frequencies& fr) {
  double l = 0;
  for (size_t i = 0; i < fr.f.size(); ++i)
    if (fr.f[i] > 0) l += fr.f[i] * std::log(std::max((fr.proj[i] * rho).trace().real(), 1e-300));
  return l;
}

// nearest density matrix in Frobenius norm: eigenvalues projected onto the simplex
Mat project_density(const Mat& x) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (x + x.adjoint()));
  RVec lam = es.eigenvalues();
  RVec s = lam;
  std::sort(s.data(), s.data() + s.size(), std::greater<double>());
  double cum = 0, tau = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    cum += s(k);
    const double t = (cum - 1) / double(k + 1);
    if (s(k) - t > 0) tau = t;
  }
  lam = (lam.array() - tau).max(0.0);
  return es.eigenvectors() * lam.cast<cd>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double log_likelihood(const Mat& rho, const MeasurementData& data) { return loglik(rho, frequencies(data)); }

TomographyResult qst_linear_inversion(const MeasurementData& data) {
  const Frequencies fr = frequencies(data);
  const long long d = 1LL << data.n;
  const auto paulis = all_pauli_strings(data.n);
  // rho = (1/d) sum_P c_P P with real c_P; p_i = (1/d) sum_P c_P Tr(P E_i)
  std::vector<Mat> pm;
  for (auto& s : paulis) pm.push_back(pauli_string(s));
  RMat A(fr.f.size(), paulis.size());
  for (size_t i = 0; i < fr.f.size(); ++i)
    for (size_t k = 0; k < paulis.size(); ++k) A(i, k) = (pm[k] * fr.proj[i]).trace().real() / double(d);
  RVec p = Eigen::Map<const RVec>(fr.f.data(), fr.f.size());
  RMat ata = A.transpose() * A;
  Eigen::SelfAdjointEigenSolver<RMat> es(ata, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < 1e-12 * es.eigenvalues().maxCoeff())
    throw SingularityError("tomography design matrix is rank deficient");
  RVec c = ata.ldlt().solve(A.transpose() * p);
  Mat rho = Mat::Zero(d, d);
  for (size_t k = 0; k < paulis.size(); ++k) rho += c(k) * pm[k];
  rho /= double(d);
  rho = 0.5 * (rho + rho.adjoint());
  rho /= rho.trace().real();
  TomographyResult r;
  r.rho_hat = rho;
  r.method = "linear_inversion";
  r.settings_used = (int)data.records.size();
  r.shots_per_setting = data.shots;
  r.min_eigenvalue = min_eig(rho);
  r.psd_violation = r.min_eigenvalue < -1e-12;
  return r;
}

TomographyResult qst_mle(const MeasurementData& data, int max_iter, double tol, double dilution) {
  const Frequencies fr = frequencies(data);
  const long long d = 1LL << data.n;
  const double nset = double(data.records.size());
  Mat rho = Mat::Identity(d, d) / double(d);
  double l = loglik(rho, fr);
  TomographyResult r;
  r.loglik.push_back(l);
  r.converged = false;
  double t = dilution, eta = 1.0;
  int it = 0;
  for (; it < max_iter; ++it) {
    Mat R = Mat::Zero(d, d);
    for (size_t i = 0; i < fr.f.size(); ++i) {
      if (fr.f[i] <= 0) continue;
      const double pr = std::max((fr.proj[i] * rho).trace().real(), 1e-12);
      R += (fr.f[i] / pr) * fr.proj[i];
    }
    R /= nset;  // equals I at a perfect fit
    Mat next;
    double lnext = 0;
    // diluted step; shrink the step if the likelihood would drop
    for (int tries = 0;; ++tries) {
      const Mat g = Mat::Identity(d, d) + t * R;
      next = g * rho * g.adjoint();
      next = 0.5 * (next + next.adjoint());
      next /= next.trace().real();
      lnext = loglik(next, fr);
      if (lnext >= l - 1e-13 || tries > 40) break;
      t *= 0.5;
    }
    // RrhoR crawls once the optimum is rank deficient (R -> I on the kernel),
    // so a projected gradient step competes and the better one is kept
    for (int tries = 0; tries < 40; ++tries) {
      const Mat pg = project_density(rho + eta * R);
      const double lpg = loglik(pg, fr);
      if (lpg >= l - 1e-13) {
        if (lpg > lnext) {
          next = pg;
          lnext = lpg;
        }
        eta *= 1.5;
        break;
      }
      eta *= 0.5;
    }
    const double change = (next - rho).norm();
    rho = next;
    l = lnext;
    r.loglik.push_back(l);
    if (change < tol) {
      r.converged = true;
      ++it;
      break;
    }
  }
  r.rho_hat = rho;
  r.method = "mle";
  r.iterations = it;
  r.settings_used = (int)data.records.size();
  r.shots_per_setting = data.shots;
  r.min_eigenvalue = min_eig(rho);
  r.psd_violation = r.min_eigenvalue < -1e-12;
  return r;
}

}  // namespace qmlbench
