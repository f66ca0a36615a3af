#pragma once

#include <functional>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wbx/scalar.hpp"

namespace wbx {

// Sparse vector: (index, coefficient) pairs, strictly increasing indices, no zeros.
using SRow = std::vector<std::pair<int, Scalar>>;

SRow srow_unit(int i, const Scalar& c = Scalar(1));
void srow_axpy(SRow& dst, const Scalar& c, const SRow& src); // dst += c*src
SRow srow_add(const SRow& a, const SRow& b);
SRow srow_scale(SRow v, const Scalar& c);
SRow srow_neg(SRow v);
bool srow_eq(const SRow& a, const SRow& b);
Scalar srow_coeff(const SRow& v, int i);
// Canonicalize an unsorted / duplicated entry list.
SRow srow_normalize(std::vector<std::pair<int, Scalar>> entries);

inline int flat2(int i, int j, int dj) { return i * dj + j; }
inline int flat3(int i, int j, int k, int dj, int dk) { return (i * dj + j) * dk + k; }

// Kronecker product of sparse vectors; result lives in dim(a)*db space.
SRow srow_kron(const SRow& a, const SRow& b, int db);

// Linear map stored by columns (images of domain basis vectors).
struct LinMap {
  int src = 0;
  int dst = 0;
  std::vector<SRow> cols;

  LinMap() = default;
  LinMap(int src_dim, int dst_dim) : src(src_dim), dst(dst_dim), cols(src_dim) {}

  static LinMap identity(int n);

  SRow apply(const SRow& x) const;
  SRow apply_unit(int i) const { return cols[i]; }
  LinMap compose(const LinMap& inner) const; // (*this) o inner
  LinMap operator+(const LinMap& o) const;
  LinMap operator-(const LinMap& o) const;
  bool operator==(const LinMap& o) const;
  bool is_zero() const;
  int rank() const;

  // A (x) id  and  id (x) A on a two-leg tensor space.
  static LinMap on_leg1(const LinMap& a, int other);
  static LinMap on_leg2(const LinMap& a, int other);
};

// Row space in reduced echelon form; supports reduction, membership, rank.
class Echelon {
public:
  explicit Echelon(int ncols) : ncols_(ncols) {}

  SRow reduce(SRow v) const;
  bool add(SRow v); // true if the row space grew
  bool contains(const SRow& v) const { return reduce(v).empty(); }
  int rank() const { return static_cast<int>(rows_.size()); }
  int ncols() const { return ncols_; }
  const std::vector<SRow>& rows() const { return rows_; }
  std::vector<int> free_cols() const;
  bool is_pivot(int col) const { return by_pivot_.count(col) != 0; }

private:
  int ncols_;
  std::vector<SRow> rows_; // leading coefficient 1, mutually reduced
  std::unordered_map<int, int> by_pivot_;
};

struct KernelImage {
  std::vector<SRow> kernel; // basis in source coordinates
  std::vector<SRow> image;  // basis in target coordinates
};

KernelImage kernel_image(const LinMap& a);

// Solves a.x = b exactly; empty optional if inconsistent.
class Solver {
public:
  explicit Solver(const LinMap& a);
  std::optional<SRow> solve(const SRow& b) const;

private:
  int m_;
  int n_;
  Echelon ech_;
};

// A subquotient of an ambient space: quotient by a relation span, optionally
// restricted to a subspace of that quotient. Carries an explicit section
// (include) and a membership-checked projection, so element formulas can be
// evaluated on representatives and pushed back down.
class Subquotient {
public:
  Subquotient() : Subquotient(0, Echelon(0)) {}

  static Subquotient full(int ambient);
  static Subquotient quotient(int ambient, const std::vector<SRow>& relations);
  // Restrict to the span of `basis` (independent vectors in this->coords).
  Subquotient restrict(const std::vector<SRow>& basis) const;

  int ambient_dim() const { return ambient_; }
  int dim() const { return dim_; }

  // Representative of a coordinate vector.
  SRow include(const SRow& coords) const;
  SRow include_unit(int i) const { return include_cols_[i]; }
  const LinMap& include_map() const { return include_map_; }

  // Coordinates of an ambient vector's class; throws IllDefined if the class
  // is outside the subspace.
  SRow project(const SRow& ambient_vec, const char* what = "projection") const;
  bool class_is_in_subspace(const SRow& ambient_vec) const;
  bool class_is_zero(const SRow& ambient_vec) const { return relations_.contains(ambient_vec); }

  const Echelon& relations() const { return relations_; }

private:
  Subquotient(int ambient, Echelon rel);

  int ambient_ = 0;
  int dim_ = 0;
  Echelon relations_{0};
  std::vector<int> free_cols_;
  std::unordered_map<int, int> free_index_;
  bool restricted_ = false;
  // Only for restricted subquotients: augmented echelon expressing quotient
  // vectors in the sub basis.
  Echelon sub_solver_{0};
  int quot_dim_ = 0;
  std::vector<SRow> include_cols_;
  LinMap include_map_;

  SRow quot_coords(const SRow& ambient_vec) const;
  friend class SubquotientBuilder;
};

// Induced map between subquotients from a map of ambient spaces. Checks that
// relations map to relations and that every image class lies in the target
// subspace; throws IllDefined otherwise.
LinMap induced_map(const Subquotient& src, const Subquotient& dst, const LinMap& ambient_map,
                   const char* what);

} // namespace wbx
