#include "wbx/towers.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "wbx/error.hpp"
#include "wbx/scalar.hpp"

namespace wbx {

long catalan(int k) {
  // C_0 = 1, C_{k+1} = sum C_i C_{k-i}
  std::vector<long> c{1};
  for (int i = 1; i <= k; ++i) {
    long v = 0;
    for (int j = 0; j < i; ++j) v += c[j] * c[i - 1 - j];
    c.push_back(v);
  }
  return c[k];
}

namespace {

// Noncrossing perfect matchings via the balanced-parenthesis bijection.
std::vector<std::vector<int>> planar_pairings(int k) {
  std::vector<std::vector<int>> out;
  std::string cur;
  std::function<void(int, int)> rec = [&](int open, int close) {
    if (static_cast<int>(cur.size()) == 2 * k) {
      std::vector<int> match(2 * k);
      std::vector<int> stack;
      for (int i = 0; i < 2 * k; ++i) {
        if (cur[i] == '(') {
          stack.push_back(i);
        } else {
          match[i] = stack.back();
          match[stack.back()] = i;
          stack.pop_back();
        }
      }
      out.push_back(std::move(match));
      return;
    }
    if (open < k) {
      cur.push_back('(');
      rec(open + 1, close);
      cur.pop_back();
    }
    if (close < open) {
      cur.push_back(')');
      rec(open, close + 1);
      cur.pop_back();
    }
  };
  rec(0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

// bottom column i of a diagram is point i; top column j is point 2k-1-j
int top_point(int k, int col) { return 2 * k - 1 - col; }

} // namespace

TLAlgebra tl_algebra(int n, int k) {
  if (n != 2 && n != 3) fail(errc::unsupported_index, "tl_algebra: n must be 2 or 3");
  if (k < 1 || k > 6) fail(errc::too_many_strands, "tl_algebra: k must be in 1..6");
  TLAlgebra tl;
  tl.strands = k;
  tl.index_n = n;
  tl.beta = beta_of(n);
  tl.delta = delta_of(n);
  tl.diagrams = planar_pairings(k);
  int dim = static_cast<int>(tl.diagrams.size());

  std::map<std::vector<int>, int> index_of;
  for (int i = 0; i < dim; ++i) index_of[tl.diagrams[i]] = i;

  auto a = std::make_shared<FiniteAlgebra>();
  a->dim = dim;
  a->table.assign(dim, std::vector<SRow>(dim));
  for (int i = 0; i < dim; ++i) a->labels.push_back("D" + std::to_string(i));

  // product x*y: stack x on top of y, gluing x's bottom columns to y's top
  // columns. Nodes 0..2k-1 are x's points, 2k..4k-1 y's points. External
  // points (x's top, y's bottom) become the product diagram; internal cycles
  // contribute delta factors.
  for (int x = 0; x < dim; ++x)
    for (int y = 0; y < dim; ++y) {
      const auto& mx = tl.diagrams[x];
      const auto& my = tl.diagrams[y];
      auto partner = [&](int node) {
        return node < 2 * k ? mx[node] : my[node - 2 * k] + 2 * k;
      };
      auto glue = [&](int node) -> int {
        if (node < k) return 2 * k + top_point(k, node); // x bottom -> y top
        if (node >= 3 * k) return top_point(k, node - 2 * k); // y top -> x bottom
        return -1;
      };
      auto is_external = [&](int node) {
        return (node >= k && node < 2 * k) || (node >= 2 * k && node < 3 * k);
      };
      auto external_index = [&](int node) {
        return node < 2 * k ? node : node - 2 * k; // x top keeps its place, y bottom shifts
      };
      std::vector<int> result(2 * k, -1);
      std::vector<bool> used(4 * k, false);
      for (int s = 0; s < 4 * k; ++s) {
        if (used[s] || !is_external(s)) continue;
        used[s] = true;
        int nxt = partner(s);
        used[nxt] = true;
        while (glue(nxt) != -1) {
          int cur = glue(nxt);
          used[cur] = true;
          nxt = partner(cur);
          used[nxt] = true;
        }
        result[external_index(s)] = external_index(nxt);
        result[external_index(nxt)] = external_index(s);
      }
      int loops = 0;
      for (int s = 0; s < 4 * k; ++s) {
        if (used[s]) continue;
        ++loops;
        int cur = s;
        while (!used[cur]) {
          used[cur] = true;
          int nxt = partner(cur);
          used[nxt] = true;
          cur = glue(nxt);
        }
      }
      auto it = index_of.find(result);
      if (it == index_of.end()) fail(errc::ill_defined, "TL product left the diagram basis");
      Scalar c(1);
      for (int l = 0; l < loops; ++l) c *= tl.delta;
      a->table[x][y] = srow_unit(it->second, c);
    }

  // identity diagram: all columns vertical
  std::vector<int> ident(2 * k);
  for (int i = 0; i < k; ++i) {
    ident[i] = top_point(k, i);
    ident[top_point(k, i)] = i;
  }
  a->unit = srow_unit(index_of.at(ident));

  // U_i: cup at bottom columns (i-1, i), cap at top columns (i-1, i)
  for (int i = 1; i < k; ++i) {
    std::vector<int> d = ident;
    d[i - 1] = i;
    d[i] = i - 1;
    d[top_point(k, i - 1)] = top_point(k, i);
    d[top_point(k, i)] = top_point(k, i - 1);
    tl.idempotents.push_back(srow_unit(index_of.at(d), tl.delta.inverse()));
  }
  tl.algebra = a;
  return tl;
}

InclusionStep::InclusionStep(BratteliFloor low, BratteliFloor up, std::vector<std::vector<int>> m)
    : lower(std::move(low)), upper(std::move(up)), matrix(std::move(m)) {
  size_t nl = lower.ranks.size(), nu = upper.ranks.size();
  if (matrix.size() != nl) fail(errc::inconsistent_ranks, "inclusion matrix has wrong row count");
  for (const auto& row : matrix) {
    if (row.size() != nu) fail(errc::inconsistent_ranks, "inclusion matrix has wrong column count");
    for (int v : row)
      if (v < 0) fail(errc::inconsistent_ranks, "inclusion matrix entries must be nonnegative");
  }
  for (size_t j = 0; j < nu; ++j) {
    long sum = 0;
    for (size_t i = 0; i < nl; ++i) sum += static_cast<long>(matrix[i][j]) * lower.ranks[i];
    if (sum != upper.ranks[j])
      fail(errc::inconsistent_ranks,
           "rank equation fails at upper component " + upper.labels[j] + ": expected " +
               std::to_string(upper.ranks[j]) + ", got " + std::to_string(sum));
  }
}

InclusionStep basic_construction_step(const InclusionStep& step) {
  size_t nl = step.lower.ranks.size(), nu = step.upper.ranks.size();
  BratteliFloor next;
  for (size_t i = 0; i < nl; ++i) {
    next.labels.push_back("J(" + step.lower.labels[i] + ")");
    long r = 0;
    for (size_t j = 0; j < nu; ++j) r += static_cast<long>(step.matrix[i][j]) * step.upper.ranks[j];
    next.ranks.push_back(static_cast<int>(r));
  }
  std::vector<std::vector<int>> t(nu, std::vector<int>(nl));
  for (size_t i = 0; i < nl; ++i)
    for (size_t j = 0; j < nu; ++j) t[j][i] = step.matrix[i][j];
  return InclusionStep(step.upper, next, t);
}

InclusionStep compose_steps(const InclusionStep& s1, const InclusionStep& s2) {
  if (!(s1.upper == s2.lower)) fail(errc::floor_mismatch, "compose_steps: middle floors differ");
  size_t nl = s1.lower.ranks.size(), nm = s1.upper.ranks.size(), nu = s2.upper.ranks.size();
  std::vector<std::vector<int>> m(nl, std::vector<int>(nu, 0));
  for (size_t i = 0; i < nl; ++i)
    for (size_t j = 0; j < nu; ++j)
      for (size_t k = 0; k < nm; ++k) m[i][j] += s1.matrix[i][k] * s2.matrix[k][j];
  return InclusionStep(s1.lower, s2.upper, m);
}

InclusionStep bratteli_base_change(const InclusionStep& step, const std::vector<int>& new_lower_ranks) {
  if (new_lower_ranks.size() != step.lower.ranks.size())
    fail(errc::inconsistent_ranks, "bratteli_base_change: wrong number of lower ranks");
  BratteliFloor low = step.lower;
  low.ranks = new_lower_ranks;
  BratteliFloor up = step.upper;
  for (size_t j = 0; j < up.ranks.size(); ++j) {
    long r = 0;
    for (size_t i = 0; i < low.ranks.size(); ++i)
      r += static_cast<long>(step.matrix[i][j]) * low.ranks[i];
    up.ranks[j] = static_cast<int>(r);
  }
  return InclusionStep(low, up, step.matrix);
}

std::vector<InclusionStep> infer_middle_inclusion(const InclusionStep& bottom,
                                                  const InclusionStep& composite,
                                                  const std::vector<std::pair<int, int>>& swap_pairs) {
  if (!(bottom.lower == composite.lower))
    fail(errc::floor_mismatch, "infer_middle_inclusion: bottom floors differ");
  const BratteliFloor& mid = bottom.upper;
  const BratteliFloor& top = composite.upper;
  int nm = static_cast<int>(mid.ranks.size());
  int nt = static_cast<int>(top.ranks.size());
  int nb = static_cast<int>(bottom.lower.ranks.size());

  // every constraint is column-local, so solve column by column
  std::vector<std::vector<std::vector<int>>> per_col(nt);
  for (int j = 0; j < nt; ++j) {
    std::vector<int> col(nm, 0);
    std::function<void(int, long)> dfs = [&](int row, long ranksum) {
      if (ranksum > top.ranks[j]) return;
      if (row == nm) {
        if (ranksum != top.ranks[j]) return;
        for (int b = 0; b < nb; ++b) {
          long s = 0;
          for (int i = 0; i < nm; ++i) s += static_cast<long>(bottom.matrix[b][i]) * col[i];
          if (s != composite.matrix[b][j]) return;
        }
        for (auto [p, q] : swap_pairs)
          if (col[p] != col[q]) return;
        per_col[j].push_back(col);
        return;
      }
      int maxv = (top.ranks[j] - ranksum) / std::max(1, mid.ranks[row]);
      for (int v = 0; v <= maxv; ++v) {
        col[row] = v;
        dfs(row + 1, ranksum + static_cast<long>(v) * mid.ranks[row]);
      }
      col[row] = 0;
    };
    dfs(0, 0);
    if (per_col[j].empty())
      fail(errc::no_solution, "no middle inclusion matrix exists (column " + std::to_string(j) + ")");
    std::sort(per_col[j].begin(), per_col[j].end());
  }

  std::vector<InclusionStep> out;
  std::vector<int> choice(nt, 0);
  while (true) {
    std::vector<std::vector<int>> m(nm, std::vector<int>(nt));
    for (int j = 0; j < nt; ++j)
      for (int i = 0; i < nm; ++i) m[i][j] = per_col[j][choice[j]][i];
    out.emplace_back(mid, top, m);
    int j = nt - 1;
    while (j >= 0 && choice[j] + 1 == static_cast<int>(per_col[j].size())) {
      choice[j] = 0;
      --j;
    }
    if (j < 0) break;
    ++choice[j];
  }
  return out;
}

namespace {

long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// Ranks of the simple components of generic TL_m, through-strand count t.
BratteliFloor generic_tl_floor(int m) {
  BratteliFloor f;
  for (int t = m % 2; t <= m; t += 2) {
    f.labels.push_back("V" + std::to_string(t));
    f.ranks.push_back(static_cast<int>(binom(m, (m - t) / 2) - binom(m, (m - t) / 2 - 1)));
  }
  return f;
}

InclusionStep generic_tl_step(int m) {
  BratteliFloor lo = generic_tl_floor(m);
  BratteliFloor hi = generic_tl_floor(m + 1);
  std::vector<std::vector<int>> mat(lo.ranks.size(), std::vector<int>(hi.ranks.size(), 0));
  for (size_t i = 0; i < lo.ranks.size(); ++i)
    for (size_t j = 0; j < hi.ranks.size(); ++j) {
      int t = m % 2 + 2 * static_cast<int>(i);
      int t2 = (m + 1) % 2 + 2 * static_cast<int>(j);
      if (std::abs(t - t2) == 1) mat[i][j] = 1;
    }
  return InclusionStep(lo, hi, mat);
}

} // namespace

Tower tower(int n, int up_to) {
  if (n != 2 && n != 3) fail(errc::unsupported_index, "tower: n must be 2 or 3");
  if (up_to < 0) up_to = 2 * n - 1;
  if (up_to < 2) fail(errc::unsupported_index, "tower: need at least two floors");
  Tower tw;
  tw.n = n;
  // generic floors A_{1,k} = TL_{k+1} for k <= n
  for (int k = 1; k <= std::min(n, up_to); ++k) tw.floors.push_back(generic_tl_floor(k + 1));
  for (int k = 1; k <= std::min(n, up_to) - 1; ++k) tw.steps.push_back(generic_tl_step(k + 1));
  // Jones basic construction from floor n upward
  while (static_cast<int>(tw.floors.size()) < up_to) {
    const InclusionStep& prev = tw.steps.back();
    InclusionStep next = basic_construction_step(prev);
    tw.steps.push_back(next);
    tw.floors.push_back(next.upper);
  }
  // cross-check generic floors against the diagram-algebra dimension
  for (int k = 1; k <= std::min(n, up_to); ++k)
    if (tw.floors[k - 1].dim() != catalan(k + 1))
      fail(errc::inconsistent_ranks, "generic TL floor dimension mismatch");
  return tw;
}

BratteliFloor tensor_floor(const BratteliFloor& t, const BratteliFloor& s) {
  BratteliFloor f;
  for (size_t a = 0; a < t.ranks.size(); ++a)
    for (size_t b = 0; b < s.ranks.size(); ++b) {
      f.labels.push_back(t.labels[a] + "(x)" + s.labels[b]);
      f.ranks.push_back(t.ranks[a] * s.ranks[b]);
    }
  return f;
}

InclusionStep tensor_bottom_step(const BratteliFloor& t, const BratteliFloor& s) {
  BratteliFloor up = tensor_floor(t, s);
  int nt = static_cast<int>(t.ranks.size());
  int ns = static_cast<int>(s.ranks.size());
  std::vector<std::vector<int>> m(nt, std::vector<int>(nt * ns, 0));
  for (int a = 0; a < nt; ++a)
    for (int b = 0; b < ns; ++b) m[a][a * ns + b] = s.ranks[b];
  return InclusionStep(t, up, m);
}

std::vector<std::pair<int, int>> tensor_swap_pairs(const BratteliFloor& t) {
  int nt = static_cast<int>(t.ranks.size());
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < nt; ++a)
    for (int b = a + 1; b < nt; ++b) out.emplace_back(a * nt + b, b * nt + a);
  return out;
}

std::string emit_dot(const Tower& tw) {
  std::ostringstream os;
  os << "graph bratteli {\n  rankdir=BT;\n  node [shape=circle];\n";
  for (size_t f = 0; f < tw.floors.size(); ++f) {
    os << "  { rank=same;";
    for (size_t i = 0; i < tw.floors[f].ranks.size(); ++i)
      os << " f" << f << "_" << i << " [label=\"" << tw.floors[f].ranks[i] << "\"];";
    os << " }\n";
  }
  for (size_t sidx = 0; sidx < tw.steps.size(); ++sidx) {
    const auto& st = tw.steps[sidx];
    for (size_t i = 0; i < st.matrix.size(); ++i)
      for (size_t j = 0; j < st.matrix[i].size(); ++j)
        for (int e = 0; e < st.matrix[i][j]; ++e)
          os << "  f" << sidx << "_" << i << " -- f" << sidx + 1 << "_" << j << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string emit_table(const Tower& tw) {
  std::ostringstream os;
  for (size_t f = 0; f < tw.floors.size(); ++f) {
    os << "A_{1," << f + 1 << "}: ranks (";
    for (size_t i = 0; i < tw.floors[f].ranks.size(); ++i)
      os << (i ? ", " : "") << tw.floors[f].ranks[i];
    os << ")  dim " << tw.floors[f].dim() << "\n";
  }
  os << "dim H = " << tw.floors.back().dim() << "\n";
  return os.str();
}

} // namespace wbx
