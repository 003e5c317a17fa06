#include "simplex.hpp"

namespace toric::detail {

std::optional<LpSolution> maximize(const RatVector& c, const std::vector<RatVector>& a, const RatVector& b) {
  const std::size_t m = a.size(), n = c.size();
  // Tableau columns: n structural, m slack, then the right-hand side.
  std::vector<RatVector> t(m, RatVector(n + m + 1));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (b[i].sign() < 0) throw Error("simplex: negative right-hand side");
    for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
    t[i][n + i] = 1;
    t[i][n + m] = b[i];
    basis[i] = n + i;
  }
  // Reduced costs, stored as -c so that a negative entry means "improving".
  RatVector z(n + m + 1);
  for (std::size_t j = 0; j < n; ++j) z[j] = -c[j];

  while (true) {
    // Bland: smallest improving column, then smallest basic index among ratio ties.
    std::size_t enter = n + m;
    for (std::size_t j = 0; j < n + m; ++j)
      if (z[j].sign() < 0) {
        enter = j;
        break;
      }
    if (enter == n + m) break;
    std::optional<std::size_t> leave;
    Rat best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter].sign() <= 0) continue;
      Rat ratio = t[i][n + m] / t[i][enter];
      if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (!leave) return std::nullopt;
    const std::size_t r = *leave;
    Rat piv = t[r][enter];
    for (auto& v : t[r]) v /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || t[i][enter].sign() == 0) continue;
      Rat f = t[i][enter];
      for (std::size_t j = 0; j <= n + m; ++j) t[i][j] -= f * t[r][j];
    }
    if (z[enter].sign() != 0) {
      Rat f = z[enter];
      for (std::size_t j = 0; j <= n + m; ++j) z[j] -= f * t[r][j];
    }
    basis[r] = enter;
  }
  LpSolution sol{z[n + m], RatVector(n)};
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) sol.x[basis[i]] = t[i][n + m];
  return sol;
}

}  // namespace toric::detail
