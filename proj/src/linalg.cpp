#include "qhf/linalg.hpp"

#include <stdexcept>

namespace qhf::la {

Mat identity(std::size_t n) {
  Mat m(n, Vec(n, ScalarQ(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = ScalarQ(1);
  return m;
}

Vec mat_vec(const Mat& a, const Vec& v) {
  Vec r(a.size(), ScalarQ(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
  return r;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Mat r(n, Vec(m, ScalarQ(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][t] * b[t][j];
    }
  return r;
}

std::vector<std::size_t> rref(Mat& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  std::size_t cols = m[0].size(), row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col].is_zero()) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    ScalarQ inv = m[row][col].inv();
    for (std::size_t j = col; j < cols; ++j) m[row][j] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][col].is_zero()) continue;
      ScalarQ f = m[i][col];
      for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  return pivots;
}

std::size_t rank(Mat m) { return rref(m).size(); }

std::optional<Vec> solve(const Mat& a, const Vec& b) {
  if (a.empty()) return Vec{};
  std::size_t n = a.size(), cols = a[0].size();
  Mat aug(n, Vec(cols + 1, ScalarQ(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug[i][j] = a[i][j];
    aug[i][cols] = b[i];
  }
  auto pivots = rref(aug);
  Vec x(cols, ScalarQ(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == cols) return std::nullopt;  // 0 = 1 row
    x[pivots[i]] = aug[i][cols];
  }
  return x;
}

Mat inverse(const Mat& a) {
  std::size_t n = a.size();
  Mat aug(n, Vec(2 * n, ScalarQ(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = ScalarQ(1);
  }
  auto pivots = rref(aug);
  if (pivots.size() != n || pivots.back() != n - 1)
    throw std::logic_error("singular matrix");
  Mat r(n, Vec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r[i][j] = aug[i][n + j];
  return r;
}

std::vector<Vec> kernel(Mat a) {
  if (a.empty()) return {};
  std::size_t cols = a[0].size();
  auto pivots = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec v(cols, ScalarQ(0));
    v[f] = ScalarQ(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace qhf::la
