#include "citygen/SavitzkyGolay.hpp"

#include "citygen/Error.hpp"

#include <cmath>
#include <vector>

namespace citygen {

namespace {

// Solves the (order+1)-sized normal equations with partial pivoting.
std::vector<double> SolveLinear(std::vector<std::vector<double>> a, std::vector<double> b)
{
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row)
      if (std::fabs(a[row][col]) > std::fabs(a[pivot][col])) pivot = row;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    if (a[col][col] == 0.0) throw Error("singular system in filter design");
    for (std::size_t row = col + 1; row < n; ++row) {
      const double f = a[row][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[row][k] -= f * a[col][k];
      b[row] -= f * b[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t row = n; row-- > 0;) {
    double s = b[row];
    for (std::size_t k = row + 1; k < n; ++k) s -= a[row][k] * x[k];
    x[row] = s / a[row][row];
  }
  return x;
}

}  // namespace

std::vector<double> SavitzkyGolayCoefficients(int window, int order)
{
  if (window < 1 || window % 2 == 0) throw Error("filter window must be odd and positive");
  if (order < 0 || order >= window) throw Error("filter order must be < window");

  const int half = window / 2;
  const int terms = order + 1;
  // Abscissa scaled to [-1, 1]; the fitted centre value is basis-invariant
  // and the normal matrix stays well conditioned at high orders.
  const double scale = half > 0 ? 1.0 / half : 1.0;

  // Normal matrix M[j][k] = sum_i t_i^(j+k); rhs picks the centre evaluation.
  std::vector<std::vector<double>> m(terms, std::vector<double>(terms, 0.0));
  for (int j = 0; j < terms; ++j)
    for (int k = 0; k < terms; ++k) {
      double s = 0.0;
      for (int i = -half; i <= half; ++i) s += std::pow(i * scale, j + k);
      m[j][k] = s;
    }

  // h_i = sum_j c_j t_i^j with c = M^{-1} e_0 gives the centre-row weights.
  std::vector<double> e0(terms, 0.0);
  e0[0] = 1.0;
  const std::vector<double> c = SolveLinear(m, e0);

  std::vector<double> h(window, 0.0);
  for (int i = -half; i <= half; ++i) {
    double v = 0.0, p = 1.0;
    for (int j = 0; j < terms; ++j) {
      v += c[j] * p;
      p *= i * scale;
    }
    h[i + half] = v;
  }
  return h;
}

std::vector<double> SavitzkyGolaySmoothCircular(const std::vector<double>& signal, int window,
                                                int order)
{
  const std::vector<double> h = SavitzkyGolayCoefficients(window, order);
  const int n = static_cast<int>(signal.size());
  const int half = window / 2;
  std::vector<double> out(signal.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int k = -half; k <= half; ++k) {
      const int j = ((i + k) % n + n) % n;
      s += h[k + half] * signal[j];
    }
    out[i] = s;
  }
  return out;
}

std::vector<double> MovingAverageCircular(const std::vector<double>& signal, int window)
{
  const int n = static_cast<int>(signal.size());
  const int half = window / 2;
  std::vector<double> out(signal.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    int count = 0;
    for (int k = -half; k <= half; ++k) {
      const int j = ((i + k) % n + n) % n;
      s += signal[j];
      ++count;
    }
    out[i] = s / count;
  }
  return out;
}

}  // namespace citygen
