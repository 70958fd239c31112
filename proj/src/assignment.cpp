#include "matchlab/assignment.hpp"

#include <functional>
#include <limits>
#include <queue>
#include <utility>

namespace matchlab {

std::vector<int> assign_min_cost(const std::vector<double>& cost, int n) {
  // duals over a virtual 0 row/column; 1-based internals
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(static_cast<size_t>(n) + 1, 0.0), v(static_cast<size_t>(n) + 1, 0.0);
  std::vector<int> p(static_cast<size_t>(n) + 1, 0), way(static_cast<size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(static_cast<size_t>(n) + 1, inf);
    std::vector<char> used(static_cast<size_t>(n) + 1, 0);
    do {
      used[static_cast<size_t>(j0)] = 1;
      int i0 = p[static_cast<size_t>(j0)], j1 = 0;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[static_cast<size_t>(j)]) continue;
        double cur = cost[static_cast<size_t>(i0 - 1) * n + (j - 1)] -
                     u[static_cast<size_t>(i0)] - v[static_cast<size_t>(j)];
        if (cur < minv[static_cast<size_t>(j)]) {
          minv[static_cast<size_t>(j)] = cur;
          way[static_cast<size_t>(j)] = j0;
        }
        if (minv[static_cast<size_t>(j)] < delta) {
          delta = minv[static_cast<size_t>(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[static_cast<size_t>(j)]) {
          u[static_cast<size_t>(p[static_cast<size_t>(j)])] += delta;
          v[static_cast<size_t>(j)] -= delta;
        } else {
          minv[static_cast<size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (p[static_cast<size_t>(j0)] != 0);
    do {
      int j1 = way[static_cast<size_t>(j0)];
      p[static_cast<size_t>(j0)] = p[static_cast<size_t>(j1)];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(static_cast<size_t>(n), -1);
  for (int j = 1; j <= n; ++j)
    if (p[static_cast<size_t>(j)] > 0) row_to_col[static_cast<size_t>(p[static_cast<size_t>(j)] - 1)] = j - 1;
  return row_to_col;
}

std::pair<int, std::vector<int>> max_bipartite_matching(
    const std::vector<std::vector<int>>& adj, int n_right) {
  int nl = static_cast<int>(adj.size());
  std::vector<int> mate_l(static_cast<size_t>(nl), -1), mate_r(static_cast<size_t>(n_right), -1);
  std::vector<int> dist(static_cast<size_t>(nl));
  constexpr int kInf = std::numeric_limits<int>::max();

  auto bfs = [&]() {
    std::queue<int> q;
    for (int l = 0; l < nl; ++l) {
      if (mate_l[static_cast<size_t>(l)] < 0) {
        dist[static_cast<size_t>(l)] = 0;
        q.push(l);
      } else {
        dist[static_cast<size_t>(l)] = kInf;
      }
    }
    bool reachable = false;
    while (!q.empty()) {
      int l = q.front();
      q.pop();
      for (int r : adj[static_cast<size_t>(l)]) {
        int l2 = mate_r[static_cast<size_t>(r)];
        if (l2 < 0) {
          reachable = true;
        } else if (dist[static_cast<size_t>(l2)] == kInf) {
          dist[static_cast<size_t>(l2)] = dist[static_cast<size_t>(l)] + 1;
          q.push(l2);
        }
      }
    }
    return reachable;
  };
  std::function<bool(int)> dfs = [&](int l) {
    for (int r : adj[static_cast<size_t>(l)]) {
      int l2 = mate_r[static_cast<size_t>(r)];
      if (l2 < 0 || (dist[static_cast<size_t>(l2)] == dist[static_cast<size_t>(l)] + 1 && dfs(l2))) {
        mate_l[static_cast<size_t>(l)] = r;
        mate_r[static_cast<size_t>(r)] = l;
        return true;
      }
    }
    dist[static_cast<size_t>(l)] = kInf;
    return false;
  };

  int size = 0;
  while (bfs()) {
    for (int l = 0; l < nl; ++l)
      if (mate_l[static_cast<size_t>(l)] < 0 && dfs(l)) ++size;
  }
  return {size, mate_l};
}

}  // namespace matchlab
