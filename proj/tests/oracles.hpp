// Copyright 2026 The Bregman Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Reference computations for the tests. Everything here works on plain
// std::vector and loops so it shares no code path with the library.

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;
using Rows = std::vector<Vec>;

inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Vec mean(const Vec& mu, const Rows& x) {
  Vec y(x.front().size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) y[j] += mu[i] * x[i][j];
  }
  return y;
}

/// sum_i x_i ln(x_i / y_i), term by term.
inline double kl(const Vec& x, const Vec& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0) s += x[i] * std::log(x[i] / y[i]);
  }
  return s;
}

/// 1/2 (x - y)^T W (x - y) with W given row by row.
inline double half_quadratic(const Rows& w, const Vec& x, const Vec& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) s += (x[i] - y[i]) * w[i][j] * (x[j] - y[j]);
  }
  return 0.5 * s;
}

inline double half_sqdist(const Vec& x, const Vec& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
  return 0.5 * s;
}

/// sum_{a,b} p(a,b) ln(p(a,b) / (p(a) p(b))) from the explicit joint table.
inline double mutual_information_table(const Vec& mu, const Rows& cond) {
  const std::size_t k = mu.size(), l = cond.front().size();
  Rows p(k, Vec(l));
  Vec pa(k, 0.0), pb(l, 0.0);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < l; ++b) {
      p[a][b] = mu[a] * cond[a][b];
      pa[a] += p[a][b];
      pb[b] += p[a][b];
    }
  }
  double mi = 0.0;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < l; ++b) {
      if (p[a][b] > 0.0) mi += p[a][b] * std::log(p[a][b] / (pa[a] * pb[b]));
    }
  }
  return mi;
}

/// Sum_i mu_i ||x_i||^2 - ||y||^2 and Sum_i mu_i ||x_i - y||^2, each from scratch.
inline double second_moment_form(const Vec& mu, const Rows& x) {
  const Vec y = mean(mu, x);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += mu[i] * dot(x[i], x[i]);
  return s - dot(y, y);
}

inline double deviation_form(const Vec& mu, const Rows& x) {
  const Vec y = mean(mu, x);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += mu[i] * 2.0 * half_sqdist(x[i], y);
  return s;
}

/// Bias-variance identity: sum_i mu_i 1/2|x_i - z|^2 = I + 1/2|y - z|^2.
inline double bias_variance_rhs(const Vec& mu, const Rows& x, const Vec& z) {
  return 0.5 * deviation_form(mu, x) + half_sqdist(mean(mu, x), z);
}

/// Central differences of f at x.
inline Vec finite_difference_gradient(const std::function<double(const Vec&)>& f, Vec x,
                                      double h) {
  Vec g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    x[i] = xi + h;
    const double up = f(x);
    x[i] = xi - h;
    const double down = f(x);
    x[i] = xi;
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

/// Solves the normal equations A^T A b = A^T r by Gaussian elimination with
/// partial pivoting. A is m x p, row-major.
inline Vec least_squares_normal(const Rows& a, const Vec& r) {
  const std::size_t p = a.front().size();
  Rows m(p, Vec(p + 1, 0.0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t u = 0; u < p; ++u) {
      for (std::size_t v = 0; v < p; ++v) m[u][v] += a[i][u] * a[i][v];
      m[u][p] += a[i][u] * r[i];
    }
  }
  for (std::size_t col = 0; col < p; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < p; ++row) {
      if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
    }
    std::swap(m[col], m[pivot]);
    for (std::size_t row = 0; row < p; ++row) {
      if (row == col) continue;
      const double f = m[row][col] / m[col][col];
      for (std::size_t v = col; v <= p; ++v) m[row][v] -= f * m[col][v];
    }
  }
  Vec b(p);
  for (std::size_t u = 0; u < p; ++u) b[u] = m[u][p] / m[u][u];
  return b;
}

/// Best loss over all partitions of the rows into exactly k nonempty clusters,
/// each cluster scored as sum_{i in c} mu_i div(x_i, weighted mean of c).
/// Enumerates restricted growth strings, so n should stay small (<= 12).
struct PartitionOptimum {
  double loss = std::numeric_limits<double>::infinity();
  std::vector<int> labels;
};

inline PartitionOptimum best_partition(const Vec& mu, const Rows& x, int k,
                                       const std::function<double(const Vec&, const Vec&)>& div) {
  const int n = static_cast<int>(x.size());
  const std::size_t dim = x.front().size();
  PartitionOptimum best;
  std::vector<int> labels(static_cast<std::size_t>(n), 0);

  auto score = [&] {
    double loss = 0.0;
    for (int c = 0; c < k; ++c) {
      double mass = 0.0;
      Vec centre(dim, 0.0);
      for (int i = 0; i < n; ++i) {
        if (labels[static_cast<std::size_t>(i)] != c) continue;
        mass += mu[static_cast<std::size_t>(i)];
        for (std::size_t j = 0; j < dim; ++j) centre[j] += mu[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)][j];
      }
      for (double& v : centre) v /= mass;
      for (int i = 0; i < n; ++i) {
        if (labels[static_cast<std::size_t>(i)] == c) {
          loss += mu[static_cast<std::size_t>(i)] * div(x[static_cast<std::size_t>(i)], centre);
        }
      }
    }
    return loss;
  };

  std::function<void(int, int)> recurse = [&](int i, int used) {
    if (n - i < k - used) return;
    if (i == n) {
      if (used != k) return;
      const double loss = score();
      if (loss < best.loss) {
        best.loss = loss;
        best.labels = labels;
      }
      return;
    }
    for (int c = 0; c <= std::min(used, k - 1); ++c) {
      labels[static_cast<std::size_t>(i)] = c;
      recurse(i + 1, c == used ? used + 1 : used);
    }
  };
  recurse(0, 0);
  return best;
}

}  // namespace oracle
