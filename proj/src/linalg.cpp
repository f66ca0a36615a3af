#include "wbx/linalg.hpp"

#include <algorithm>
#include <queue>
#include <optional>

#include "wbx/error.hpp"

namespace wbx {

SRow srow_unit(int i, const Scalar& c) {
  if (c.is_zero()) return {};
  return {{i, c}};
}

void srow_axpy(SRow& dst, const Scalar& c, const SRow& src) {
  if (c.is_zero() || src.empty()) return;
  SRow out;
  out.reserve(dst.size() + src.size());
  size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      out.push_back(std::move(dst[i]));
      ++i;
    } else if (i == dst.size() || src[j].first < dst[i].first) {
      Scalar v = c * src[j].second;
      if (!v.is_zero()) out.emplace_back(src[j].first, std::move(v));
      ++j;
    } else {
      Scalar v = std::move(dst[i].second);
      v += c * src[j].second;
      if (!v.is_zero()) out.emplace_back(dst[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  dst = std::move(out);
}

SRow srow_add(const SRow& a, const SRow& b) {
  SRow out = a;
  srow_axpy(out, Scalar(1), b);
  return out;
}

SRow srow_scale(SRow v, const Scalar& c) {
  if (c.is_zero()) return {};
  for (auto& e : v) e.second *= c;
  return v;
}

SRow srow_neg(SRow v) {
  for (auto& e : v) e.second = -e.second;
  return v;
}

bool srow_eq(const SRow& a, const SRow& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].first != b[i].first || a[i].second != b[i].second) return false;
  return true;
}

Scalar srow_coeff(const SRow& v, int i) {
  auto it = std::lower_bound(v.begin(), v.end(), i,
                             [](const auto& e, int idx) { return e.first < idx; });
  if (it != v.end() && it->first == i) return it->second;
  return Scalar(0);
}

SRow srow_normalize(std::vector<std::pair<int, Scalar>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SRow out;
  for (auto& e : entries) {
    if (!out.empty() && out.back().first == e.first) {
      out.back().second += e.second;
      if (out.back().second.is_zero()) out.pop_back();
    } else if (!e.second.is_zero()) {
      out.push_back(std::move(e));
    }
  }
  return out;
}

SRow srow_kron(const SRow& a, const SRow& b, int db) {
  std::vector<std::pair<int, Scalar>> entries;
  entries.reserve(a.size() * b.size());
  for (const auto& [i, ca] : a)
    for (const auto& [j, cb] : b) {
      Scalar c = ca * cb;
      if (!c.is_zero()) entries.emplace_back(flat2(i, j, db), c);
    }
  return srow_normalize(std::move(entries));
}

LinMap LinMap::identity(int n) {
  LinMap m(n, n);
  for (int i = 0; i < n; ++i) m.cols[i] = srow_unit(i);
  return m;
}

SRow LinMap::apply(const SRow& x) const {
  SRow out;
  for (const auto& [i, c] : x) srow_axpy(out, c, cols[i]);
  return out;
}

LinMap LinMap::compose(const LinMap& inner) const {
  LinMap out(inner.src, dst);
  for (int j = 0; j < inner.src; ++j) out.cols[j] = apply(inner.cols[j]);
  return out;
}

LinMap LinMap::operator+(const LinMap& o) const {
  LinMap out(src, dst);
  for (int j = 0; j < src; ++j) out.cols[j] = srow_add(cols[j], o.cols[j]);
  return out;
}

LinMap LinMap::operator-(const LinMap& o) const {
  LinMap out(src, dst);
  for (int j = 0; j < src; ++j) {
    out.cols[j] = cols[j];
    srow_axpy(out.cols[j], Scalar(-1), o.cols[j]);
  }
  return out;
}

bool LinMap::operator==(const LinMap& o) const {
  if (src != o.src || dst != o.dst) return false;
  for (int j = 0; j < src; ++j)
    if (!srow_eq(cols[j], o.cols[j])) return false;
  return true;
}

bool LinMap::is_zero() const {
  for (const auto& c : cols)
    if (!c.empty()) return false;
  return true;
}

int LinMap::rank() const {
  Echelon e(dst);
  for (const auto& c : cols) e.add(c);
  return e.rank();
}

LinMap LinMap::on_leg1(const LinMap& a, int other) {
  LinMap out(a.src * other, a.dst * other);
  for (int i = 0; i < a.src; ++i)
    for (int j = 0; j < other; ++j) {
      SRow col;
      for (const auto& [k, c] : a.cols[i]) col.emplace_back(flat2(k, j, other), c);
      out.cols[flat2(i, j, other)] = std::move(col);
    }
  return out;
}

LinMap LinMap::on_leg2(const LinMap& a, int other) {
  LinMap out(other * a.src, other * a.dst);
  for (int i = 0; i < other; ++i)
    for (int j = 0; j < a.src; ++j) {
      SRow col;
      for (const auto& [k, c] : a.cols[j]) col.emplace_back(flat2(i, k, a.dst), c);
      out.cols[flat2(i, j, a.src)] = std::move(col);
    }
  return out;
}

SRow Echelon::reduce(SRow v) const {
  if (v.size() <= 8) {
    // ascending sweep; fill-in only appears to the right of the pivot
    size_t i = 0;
    while (i < v.size()) {
      auto it = by_pivot_.find(v[i].first);
      if (it == by_pivot_.end()) {
        ++i;
        continue;
      }
      srow_axpy(v, -v[i].second, rows_[it->second]);
    }
    return v;
  }

  // scratch-buffer elimination in ascending column order
  thread_local std::vector<Scalar> buf;
  thread_local std::vector<unsigned> stamp;
  thread_local unsigned epoch = 0;
  if (static_cast<int>(buf.size()) < ncols_) {
    buf.resize(ncols_);
    stamp.assign(ncols_, 0);
  }
  ++epoch;
  if (epoch == 0) {
    std::fill(stamp.begin(), stamp.end(), 0);
    ++epoch;
  }
  std::priority_queue<int, std::vector<int>, std::greater<int>> heap;
  for (auto& [col, c] : v) {
    buf[col] = std::move(c);
    stamp[col] = epoch;
    heap.push(col);
  }
  SRow out;
  int last = -1;
  while (!heap.empty()) {
    int c = heap.top();
    heap.pop();
    if (c == last) continue;
    last = c;
    if (stamp[c] != epoch || buf[c].is_zero()) continue;
    auto it = by_pivot_.find(c);
    if (it == by_pivot_.end()) {
      out.emplace_back(c, std::move(buf[c]));
      buf[c] = Scalar(0);
      continue;
    }
    Scalar val = std::move(buf[c]);
    buf[c] = Scalar(0);
    const SRow& row = rows_[it->second];
    for (size_t k = 1; k < row.size(); ++k) {
      int col = row[k].first;
      Scalar delta = val * row[k].second;
      if (stamp[col] != epoch) {
        stamp[col] = epoch;
        buf[col] = -delta;
        heap.push(col);
      } else {
        buf[col] -= delta;
      }
    }
  }
  return out;
}

bool Echelon::add(SRow v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  Scalar lead = v.front().second;
  if (!lead.is_one()) v = srow_scale(std::move(v), lead.inverse());
  by_pivot_[v.front().first] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(v));
  return true;
}

std::vector<int> Echelon::free_cols() const {
  std::vector<int> out;
  for (int c = 0; c < ncols_; ++c)
    if (!by_pivot_.count(c)) out.push_back(c);
  return out;
}

KernelImage kernel_image(const LinMap& a) {
  // Augmented rows [a(e_j) | e_j]; pivots in the image block come first, so a
  // row whose image part died records a kernel vector in its tail.
  Echelon ech(a.dst + a.src);
  KernelImage out;
  for (int j = 0; j < a.src; ++j) {
    SRow row = a.cols[j];
    row.emplace_back(a.dst + j, Scalar(1));
    row = ech.reduce(std::move(row));
    if (row.empty()) continue;
    if (row.front().first >= a.dst) {
      SRow ker;
      for (const auto& [c, s] : row) ker.emplace_back(c - a.dst, s);
      out.kernel.push_back(std::move(ker));
      continue;
    }
    SRow img;
    for (const auto& [c, s] : row) {
      if (c >= a.dst) break;
      img.emplace_back(c, s);
    }
    out.image.push_back(std::move(img));
    ech.add(std::move(row));
  }
  return out;
}

Solver::Solver(const LinMap& a) : m_(a.dst), n_(a.src), ech_(a.dst + a.src) {
  for (int j = 0; j < n_; ++j) {
    SRow row = a.cols[j];
    row.emplace_back(m_ + j, Scalar(1));
    ech_.add(std::move(row));
  }
}

std::optional<SRow> Solver::solve(const SRow& b) const {
  SRow rem = ech_.reduce(b);
  SRow x;
  for (const auto& [c, s] : rem) {
    if (c < m_) return std::nullopt;
    x.emplace_back(c - m_, -s);
  }
  return x;
}

Subquotient::Subquotient(int ambient, Echelon rel)
    : ambient_(ambient), relations_(std::move(rel)) {
  free_cols_ = relations_.free_cols();
  dim_ = static_cast<int>(free_cols_.size());
  for (int i = 0; i < dim_; ++i) free_index_[free_cols_[i]] = i;
  quot_dim_ = dim_;
  include_cols_.resize(dim_);
  for (int i = 0; i < dim_; ++i) include_cols_[i] = srow_unit(free_cols_[i]);
  include_map_ = LinMap(dim_, ambient_);
  include_map_.cols = include_cols_;
}

Subquotient Subquotient::full(int ambient) { return quotient(ambient, {}); }

Subquotient Subquotient::quotient(int ambient, const std::vector<SRow>& relations) {
  Echelon rel(ambient);
  for (const auto& r : relations) rel.add(r);
  return Subquotient(ambient, std::move(rel));
}

Subquotient Subquotient::restrict(const std::vector<SRow>& basis) const {
  if (restricted_) fail(errc::ill_defined, "restrict() on an already restricted subquotient");
  Subquotient out(ambient_, relations_);
  out.restricted_ = true;
  out.quot_dim_ = dim_;
  out.dim_ = static_cast<int>(basis.size());
  out.free_cols_ = free_cols_;
  out.free_index_ = free_index_;
  out.sub_solver_ = Echelon(quot_dim_ + out.dim_);
  for (int j = 0; j < out.dim_; ++j) {
    SRow row = basis[j];
    row.emplace_back(quot_dim_ + j, Scalar(1));
    if (!out.sub_solver_.add(std::move(row)))
      fail(errc::ill_defined, "dependent basis for subquotient restriction");
  }
  out.include_cols_.assign(out.dim_, {});
  for (int j = 0; j < out.dim_; ++j) {
    SRow amb;
    for (const auto& [q, c] : basis[j]) srow_axpy(amb, c, include_cols_[q]);
    out.include_cols_[j] = std::move(amb);
  }
  out.include_map_ = LinMap(out.dim_, ambient_);
  out.include_map_.cols = out.include_cols_;
  return out;
}

SRow Subquotient::include(const SRow& coords) const {
  SRow out;
  for (const auto& [i, c] : coords) srow_axpy(out, c, include_cols_[i]);
  return out;
}

SRow Subquotient::quot_coords(const SRow& ambient_vec) const {
  SRow red = relations_.reduce(ambient_vec);
  SRow out;
  out.reserve(red.size());
  for (const auto& [col, c] : red) out.emplace_back(free_index_.at(col), c);
  return out;
}

SRow Subquotient::project(const SRow& ambient_vec, const char* what) const {
  SRow q = quot_coords(ambient_vec);
  if (!restricted_) return q;
  SRow rem = sub_solver_.reduce(q);
  SRow coords;
  for (const auto& [c, s] : rem) {
    if (c < quot_dim_)
      fail(errc::ill_defined, std::string(what) + ": class lies outside the subspace");
    coords.emplace_back(c - quot_dim_, -s);
  }
  return coords;
}

bool Subquotient::class_is_in_subspace(const SRow& ambient_vec) const {
  SRow q = quot_coords(ambient_vec);
  if (!restricted_) return true;
  SRow rem = sub_solver_.reduce(q);
  for (const auto& [c, s] : rem)
    if (c < quot_dim_) return false;
  return true;
}

LinMap induced_map(const Subquotient& src, const Subquotient& dst, const LinMap& ambient_map,
                   const char* what) {
  if (ambient_map.src != src.ambient_dim() || ambient_map.dst != dst.ambient_dim())
    fail(errc::ill_defined, std::string(what) + ": ambient shape mismatch");
  for (const auto& w : src.relations().rows()) {
    if (!dst.class_is_zero(ambient_map.apply(w)))
      fail(errc::ill_defined, std::string(what) + ": does not descend to the quotient");
  }
  LinMap out(src.dim(), dst.dim());
  for (int j = 0; j < src.dim(); ++j)
    out.cols[j] = dst.project(ambient_map.apply(src.include_unit(j)), what);
  return out;
}

} // namespace wbx
