#include "radyn/disconnection.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace radyn {

namespace {

constexpr int kMaxSlots = 64;

void check_md(int m, int d) {
  if (m < 1 || m > kMaxSlots)
    throw std::invalid_argument("slot count m must lie in [1, " +
                                std::to_string(kMaxSlots) + "]");
  if (d < 1 || d > m)
    throw std::invalid_argument("initial degree d must lie in [1, m]");
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;  // exact in double for k <= 18
}

}  // namespace

double disconnection_coefficient_sum(int m, int d) {
  check_md(m, d);
  double total = 0.0;
  for (int k = 1; k <= d; ++k) {
    const double outer = factorial(m - k) * factorial(k - 1);
    double inner = 0.0;
    for (int n = 0; n <= m - k; ++n) inner += 1.0 / (factorial(n) * factorial(m - n));
    total += outer * inner;
  }
  return total;
}

double disconnection_coefficient(int m, int d) {
  check_md(m, d);
  // Increment of the mean between neighbor start states, top down.
  std::vector<double> inc(m + 1, 0.0);
  inc[m] = 1.0 / m;
  for (int k = m - 1; k >= 1; --k)
    inc[k] = (static_cast<double>(m - k) / k) * inc[k + 1] + 1.0 / k;
  double total = 0.0;
  for (int k = 1; k <= d; ++k) total += inc[k];
  return total;
}

double mean_disconnection_time(int m, int d, double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
  return disconnection_coefficient(m, d) * mu;
}

std::vector<double> edge_loss_hitting_times(int m, double mu) {
  if (m < 1 || m > kMaxSlots) throw std::invalid_argument("m out of range");
  if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
  // Unknowns x_1..x_m: m x_k - k x_{k-1} - (m-k) x_{k+1} = mu, x_0 = 0.
  const int size = m;
  std::vector<double> a(static_cast<size_t>(size) * size, 0.0);
  std::vector<double> b(size, mu);
  for (int row = 0; row < size; ++row) {
    const int k = row + 1;
    a[row * size + row] = m;
    if (k >= 2) a[row * size + (row - 1)] = -k;
    if (k <= m - 1) a[row * size + (row + 1)] = -(m - k);
  }
  // Gaussian elimination with partial pivoting.
  std::vector<int> perm(size);
  for (int i = 0; i < size; ++i) perm[i] = i;
  for (int col = 0; col < size; ++col) {
    int pivot = col;
    for (int row = col + 1; row < size; ++row)
      if (std::abs(a[row * size + col]) > std::abs(a[pivot * size + col])) pivot = row;
    if (pivot != col) {
      for (int j = 0; j < size; ++j) std::swap(a[col * size + j], a[pivot * size + j]);
      std::swap(b[col], b[pivot]);
    }
    const double diag = a[col * size + col];
    if (diag == 0.0) throw std::runtime_error("singular hitting-time system");
    for (int row = col + 1; row < size; ++row) {
      const double factor = a[row * size + col] / diag;
      if (factor == 0.0) continue;
      for (int j = col; j < size; ++j) a[row * size + j] -= factor * a[col * size + j];
      b[row] -= factor * b[col];
    }
  }
  std::vector<double> x(size, 0.0);
  for (int row = size - 1; row >= 0; --row) {
    double acc = b[row];
    for (int j = row + 1; j < size; ++j) acc -= a[row * size + j] * x[j];
    x[row] = acc / a[row * size + row];
  }
  return x;
}

PhaseTypeDist::PhaseTypeDist(int m, int d, double lambda)
    : m_(m), d_(d), lambda_(lambda) {
  check_md(m, d);
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
}

double PhaseTypeDist::uniformized_sum(double x, bool want_density) const {
  if (x < 0.0) throw std::invalid_argument("evaluation point x must be >= 0");
  const double nu = m_ * lambda_ * x;  // uniformization rate times horizon
  if (nu > 6e6)
    throw std::domain_error("uniformization horizon too large (m*lambda*x > 6e6)");
  if (nu == 0.0) return want_density ? (d_ == 1 ? lambda_ : 0.0) : 1.0;

  const long jmax =
      static_cast<long>(nu + 12.0 * std::sqrt(nu) + 30.0);
  const double log_nu = std::log(nu);

  // Row vector w = e_d * P^j over transient states 1..m (index 0 = state 1).
  std::vector<double> w(m_, 0.0), next(m_, 0.0);
  w[d_ - 1] = 1.0;
  double acc = 0.0;
  for (long j = 0; j <= jmax; ++j) {
    // Weight exp(-nu) nu^j / j!, evaluated in log space so that large nu
    // does not underflow before the mode is reached.
    const double log_w = -nu + j * log_nu - std::lgamma(j + 1.0);
    if (log_w > -745.0) {
      const double weight = std::exp(log_w);
      if (want_density) {
        acc += weight * w[0] * lambda_;
      } else {
        double mass = 0.0;
        for (double c : w) mass += c;
        acc += weight * mass;
      }
    }
    if (j == jmax) break;
    // next = w * P with P[k][k-1] = k/m, P[k][k+1] = (m-k)/m, exit from 1.
    for (int i = 0; i < m_; ++i) next[i] = 0.0;
    for (int i = 0; i < m_; ++i) {
      const double c = w[i];
      if (c == 0.0) continue;
      const int k = i + 1;
      if (k >= 2) next[i - 1] += c * (static_cast<double>(k) / m_);
      if (k <= m_ - 1) next[i + 1] += c * (static_cast<double>(m_ - k) / m_);
    }
    w.swap(next);
  }
  return acc;
}

double PhaseTypeDist::survival(double x) const { return uniformized_sum(x, false); }

double PhaseTypeDist::density(double x) const { return uniformized_sum(x, true); }

double PhaseTypeDist::mean() const {
  // Solve S z = -1 for mean absorption times, tridiagonal Thomas pass in
  // units of mu = 1/lambda: -m z_k + k z_{k-1} + (m-k) z_{k+1} = -mu.
  const double mu = 1.0 / lambda_;
  std::vector<double> diag(m_, -static_cast<double>(m_));
  std::vector<double> rhs(m_, -mu);
  // Forward sweep eliminating the lower band (coefficient k at row k>=2).
  std::vector<double> upper(m_, 0.0);
  for (int i = 0; i < m_; ++i) {
    const int k = i + 1;
    upper[i] = (k <= m_ - 1) ? static_cast<double>(m_ - k) : 0.0;
  }
  for (int i = 1; i < m_; ++i) {
    const double lower = static_cast<double>(i + 1);  // coefficient of z_{k-1}
    const double factor = lower / diag[i - 1];
    diag[i] -= factor * upper[i - 1];
    rhs[i] -= factor * rhs[i - 1];
  }
  std::vector<double> z(m_, 0.0);
  z[m_ - 1] = rhs[m_ - 1] / diag[m_ - 1];
  for (int i = m_ - 2; i >= 0; --i) z[i] = (rhs[i] - upper[i] * z[i + 1]) / diag[i];
  return z[d_ - 1];
}

std::pair<double, double> concentration_check(int m, int d, double mu,
                                              double scale_ratio) {
  if (!(mu > 0.0) || !(scale_ratio > 0.0))
    throw std::invalid_argument("mu and scale_ratio must be positive");
  const PhaseTypeDist dist(m, d, 1.0 / mu);
  const double x = mu * scale_ratio;
  const double upper = dist.survival(x);
  return {1.0 - upper, upper};
}

}  // namespace radyn
