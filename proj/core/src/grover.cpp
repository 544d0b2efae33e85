#include <algorithm>
#include <cmath>
#include <random>

#include "qmlbench/grover.hpp"
#include "qmlbench/learners.hpp"

namespace qmlbench {

SearchProblem::SearchProblem(int n_, const std::function<bool(long long)>& f) : n(n_) {
  if (n < 1) throw ArgumentError("search needs at least one qubit");
  check_capacity(n);
  marked.assign(dim(), 0);
  for (long long x = 0; x < dim(); ++x)
    if (f(x)) {
      marked[x] = 1;
      ++M;
    }
}

void apply_oracle(const SearchProblem& p, Vec& amps) {
  for (long long x = 0; x < p.dim(); ++x)
    if (p.marked[x]) amps(x) = -amps(x);
}

void walsh_hadamard(Vec& amps, int n) {
  const long long d = 1LL << n;
  const double s = 1 / std::sqrt(2.0);
  for (long long h = 1; h < d; h <<= 1)
    for (long long i = 0; i < d; i += 2 * h)
      for (long long j = i; j < i + h; ++j) {
        const cd a = amps(j), b = amps(j + h);
        amps(j) = s * (a + b);
        amps(j + h) = s * (a - b);
      }
}

void apply_diffusion(Vec& amps, int n) {
  walsh_hadamard(amps, n);
  // U0 = 2|0><0| - I
  amps = -amps;
  amps(0) = -amps(0);
  walsh_hadamard(amps, n);
}

namespace {
// 2|phi0><phi0| - I written as reflection about the mean; same operator, O(d)
void reflect_about_mean(Vec& amps) {
  const cd mean = amps.mean();
  amps = (2.0 * mean - amps.array()).matrix();
}

Vec uniform_state(long long d) { return Vec::Constant(d, 1 / std::sqrt(double(d))); }

double marked_prob(const SearchProblem& p, const Vec& v) {
  double s = 0;
  for (long long x = 0; x < p.dim(); ++x)
    if (p.marked[x]) s += std::norm(v(x));
  return s;
}

long long sample_index(const Vec& v, Rng& rng) {
  std::vector<double> w(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) w[i] = std::norm(v(i));
  std::discrete_distribution<long long> dist(w.begin(), w.end());
  return dist(rng.engine());
}
}  // namespace

int grover_iterations(long long d, long long M) {
  if (M < 1 || M > d) throw ValidationError("solution count must satisfy 1 <= M <= d");
  if (M == d) return 0;
  return std::max(0, (int)std::floor(kPi / 4 * std::sqrt(double(d) / M) - 0.5));
}

Vec grover_state(const SearchProblem& p, int m) {
  Vec v = uniform_state(p.dim());
  for (int k = 0; k < m; ++k) {
    apply_oracle(p, v);
    apply_diffusion(v, p.n);
  }
  return v;
}

GroverResult grover_search(const SearchProblem& p, Rng& rng) {
  if (p.M == 0) throw ValidationError("search problem has no solution");
  GroverResult r;
  r.m = grover_iterations(p.dim(), p.M);
  const Vec v = grover_state(p, r.m);
  r.success_prob = marked_prob(p, v);
  const double theta = std::asin(std::sqrt(double(p.M) / p.dim()));
  r.success_closed = std::pow(std::sin((2 * r.m + 1) * theta), 2);
  r.index = sample_index(v, rng);
  r.found = p.marked[r.index];
  return r;
}

std::vector<AmplitudeStep> grover_amplitude_trace(const SearchProblem& p, int m_max) {
  if (p.M == 0 || p.M == p.dim()) throw ValidationError("amplitude trace needs 1 <= M < d");
  const double theta = std::asin(std::sqrt(double(p.M) / p.dim()));
  const double st = 1 / std::sqrt(double(p.M)), so = 1 / std::sqrt(double(p.dim() - p.M));
  std::vector<AmplitudeStep> out;
  Vec v = uniform_state(p.dim());
  for (int k = 0; k <= m_max; ++k) {
    if (k > 0) {
      apply_oracle(p, v);
      apply_diffusion(v, p.n);
    }
    cd a = 0, b = 0;
    for (long long x = 0; x < p.dim(); ++x) (p.marked[x] ? a : b) += v(x);
    AmplitudeStep s;
    s.k = k;
    s.alpha = (a * st).real();
    s.beta = (b * so).real();
    s.alpha_closed = std::sin((2 * k + 1) * theta);
    s.beta_closed = std::cos((2 * k + 1) * theta);
    out.push_back(s);
  }
  return out;
}

// ---- perceptrons ----

namespace {
void check_perceptron_data(const Dataset& X, const std::vector<int>& y, double gamma, double eps) {
  if (X.empty() || X.size() != y.size()) throw ArgumentError("features and labels differ in count");
  if (!(gamma > 0 && gamma < 1) || !(eps > 0 && eps < 1)) throw ArgumentError("gamma and epsilon must lie in (0,1)");
  for (size_t i = 0; i < X.size(); ++i) {
    if (y[i] != 1 && y[i] != -1) throw ValidationError("labels must be -1 or +1");
    if (std::abs(X[i].norm() - 1) > 1e-9) throw ValidationError("perceptron inputs must have unit norm");
  }
}

bool misclassified(const RVec& w, const RVec& x, int y) { return y * w.dot(x) <= 0; }

bool separates(const RVec& w, const Dataset& X, const std::vector<int>& y) {
  for (size_t i = 0; i < X.size(); ++i)
    if (misclassified(w, X[i], y[i])) return false;
  return true;
}
}  // namespace

PerceptronRun quantum_perceptron_train(const Dataset& X, const std::vector<int>& y, double gamma, double epsilon,
                                       double c, std::uint64_t seed) {
  check_perceptron_data(X, y, gamma, epsilon);
  if (!(c > 1 && c < 2)) throw ArgumentError("expansion constant c must lie in (1,2)");
  const long long d = X.size();
  const int n = log2_exact(d);
  Rng rng(seed);

  const int H = (int)std::ceil(1 / (gamma * gamma));
  const int K = (int)std::ceil(std::log(gamma * gamma * epsilon) / std::log(0.75));
  const int J = std::max(1, (int)std::ceil(std::log(1 / std::sin(2 * std::asin(1 / std::sqrt(double(d))))) / std::log(c)));

  PerceptronRun run;
  run.w = RVec::Zero(X[0].size());
  auto& L = run.ledger;
  for (int h = 1; h <= H; ++h) {
    long long phase = 0;
    for (int k = 1; k <= K; ++k) {
      for (int j = 1; j <= J; ++j) {
        const long long top = (long long)std::ceil(std::pow(c, j));
        const int m = (int)rng.below(top);
        // the oracle's phase pattern is the current misclassification set
        SearchProblem p;
        p.n = n;
        p.marked.assign(d, 0);
        for (long long i = 0; i < d; ++i) p.marked[i] = misclassified(run.w, X[i], y[i]);
        Vec v = uniform_state(d);
        for (int r = 0; r < m; ++r) {
          apply_oracle(p, v);
          reflect_about_mean(v);
        }
        L.fw_quantum += m;
        phase += m;
        L.m_values.push_back(m);
        ++L.grover_runs;
        const long long q = sample_index(v, rng);
        ++L.fw_classical;
        if (misclassified(run.w, X[q], y[q])) {
          run.w += y[q] * X[q];
          ++L.updates;
        }
      }
    }
    L.per_phase.push_back(phase);
  }
  run.separates = separates(run.w, X, y);
  return run;
}

PerceptronRun classical_perceptron_sampling_baseline(const Dataset& X, const std::vector<int>& y, double gamma,
                                                     double epsilon, std::uint64_t seed) {
  check_perceptron_data(X, y, gamma, epsilon);
  const long long d = X.size();
  const long long mc = d * (long long)std::ceil(std::log(1 / (epsilon * gamma * gamma)));
  const int H = (int)std::ceil(1 / (gamma * gamma));
  Rng rng(seed);
  PerceptronRun run;
  run.w = RVec::Zero(X[0].size());
  auto& L = run.ledger;
  // at most H updates can happen, so H + 1 rounds include the closing verification
  for (int h = 1; h <= H + 1; ++h) {
    long long used = 0;
    bool updated = false;
    while (used < mc) {
      const long long q = rng.below(d);
      ++used;
      if (misclassified(run.w, X[q], y[q])) {
        run.w += y[q] * X[q];
        ++L.updates;
        updated = true;
        break;
      }
    }
    L.fw_classical += used;
    L.per_phase.push_back(used);
    if (!updated) break;
  }
  run.separates = separates(run.w, X, y);
  return run;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ArgumentError("slope needs at least two points");
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0 || y[i] <= 0) throw ArgumentError("log-log slope needs positive values");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= x.size();
  my /= x.size();
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double a = std::log(x[i]) - mx, b = std::log(y[i]) - my;
    sxy += a * b;
    sxx += a * a;
  }
  return sxy / sxx;
}

namespace {
double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}
}  // namespace

ScalingStudy perceptron_scaling_study(const std::vector<long long>& ds, int seeds, double gamma, double epsilon,
                                      double c, int dim, std::uint64_t seed) {
  if (ds.empty() || seeds < 1) throw ArgumentError("scaling study needs sizes and seeds");
  Rng master(seed);
  ScalingStudy st;
  std::vector<double> xs, yq, yc;
  for (long long d : ds) {
    std::vector<double> q, cl;
    int okq = 0, okc = 0;
    for (int s = 0; s < seeds; ++s) {
      Rng r = master.derive(std::uint64_t(d)).derive(std::uint64_t(s));
      const std::uint64_t data_seed = r.engine()(), qs = r.engine()(), cs = r.engine()();
      const MarginData md = synth_margin_dataset((int)d, dim, gamma, data_seed);
      const PerceptronRun a = quantum_perceptron_train(md.X, md.y, gamma, epsilon, c, qs);
      const PerceptronRun b = classical_perceptron_sampling_baseline(md.X, md.y, gamma, epsilon, cs);
      q.push_back(double(a.ledger.fw_quantum));
      cl.push_back(double(b.ledger.fw_classical));
      okq += a.separates;
      okc += b.separates;
    }
    ScalingRow row;
    row.d = d;
    row.median_quantum = median(q);
    row.median_classical = median(cl);
    row.quantum_success = double(okq) / seeds;
    row.classical_success = double(okc) / seeds;
    st.rows.push_back(row);
    xs.push_back(double(d));
    yq.push_back(row.median_quantum);
    yc.push_back(row.median_classical);
  }
  if (ds.size() >= 2) {
    st.slope_quantum = loglog_slope(xs, yq);
    st.slope_classical = loglog_slope(xs, yc);
  }
  return st;
}

}  // namespace qmlbench
