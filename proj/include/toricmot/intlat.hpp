#pragma once
#include <optional>
#include <utility>

#include "toricmot/arith.hpp"

namespace toricmot {

// Dense integer matrix; rows are lattice vectors.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Int> a;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(size_t(r) * c, Int(0)) {}
  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  static IntMatrix from_rows(const std::vector<IVec>& rows_in, int ncols) {
    IntMatrix m(int(rows_in.size()), ncols);
    for (size_t i = 0; i < rows_in.size(); ++i)
      for (int j = 0; j < ncols; ++j) m.at(int(i), j) = rows_in[i][j];
    return m;
  }

  Int& at(int i, int j) { return a[size_t(i) * cols + j]; }
  const Int& at(int i, int j) const { return a[size_t(i) * cols + j]; }
  IVec row(int i) const {
    IVec r(cols);
    for (int j = 0; j < cols; ++j) r[j] = at(i, j);
    return r;
  }
  IVec col(int j) const {
    IVec c(rows);
    for (int i = 0; i < rows; ++i) c[i] = at(i, j);
    return c;
  }
  bool operator==(const IntMatrix& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
};

IntMatrix mat_mul(const IntMatrix& A, const IntMatrix& B);

struct HnfResult {
  IntMatrix h;  // row-echelon Hermite form
  IntMatrix u;  // unimodular, u * input == h
};

struct SnfResult {
  std::vector<Int> diag;  // invariant factors d_1 | d_2 | ... (nonzero ones first)
  IntMatrix u;            // unimodular rows x rows
  IntMatrix v;            // unimodular cols x cols, u * A * v == diag
};

HnfResult hermite_normal_form(const IntMatrix& A);
SnfResult smith_normal_form(const IntMatrix& A);

int lattice_rank(const IntMatrix& A);

// Index of the row lattice of A inside the saturation of its rational span,
// i.e. the product of the nonzero invariant factors. 1 for the empty matrix.
Int lattice_index(const IntMatrix& A);

// True iff the rows extend to a basis of Z^cols. Rows must be independent.
bool is_part_of_basis(const IntMatrix& A);

// Solution set of A x = b over the integers: one particular solution plus a
// basis of the integer kernel lattice of A. nullopt when no integer solution.
struct LinearSolution {
  IVec particular;
  std::vector<IVec> kernel;  // basis vectors, may be empty
};
std::optional<LinearSolution> solve_integer(const IntMatrix& A, const IVec& b);

// Basis of {x in Z^cols : A x = 0}.
std::vector<IVec> kernel_basis(const IntMatrix& A);

// Rows of the HNF with zero rows dropped: a basis of the row lattice.
std::vector<IVec> row_lattice_basis(const std::vector<IVec>& rows, int ncols);

}  // namespace toricmot
