#include "toricmot/intlat.hpp"

#include <algorithm>

namespace toricmot {

IntMatrix mat_mul(const IntMatrix& A, const IntMatrix& B) {
  if (A.cols != B.rows) throw std::invalid_argument("mat_mul: shape mismatch");
  IntMatrix C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      const Int& aik = A.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < B.cols; ++j) C.at(i, j) += aik * B.at(k, j);
    }
  return C;
}

namespace {

void swap_rows(IntMatrix& M, int i, int j) {
  if (i == j) return;
  for (int k = 0; k < M.cols; ++k) std::swap(M.at(i, k), M.at(j, k));
}

void swap_cols(IntMatrix& M, int i, int j) {
  if (i == j) return;
  for (int k = 0; k < M.rows; ++k) std::swap(M.at(k, i), M.at(k, j));
}

// row[i] += c * row[j]
void add_row(IntMatrix& M, int i, int j, const Int& c) {
  for (int k = 0; k < M.cols; ++k) M.at(i, k) += c * M.at(j, k);
}

void add_col(IntMatrix& M, int i, int j, const Int& c) {
  for (int k = 0; k < M.rows; ++k) M.at(k, i) += c * M.at(k, j);
}

void negate_row(IntMatrix& M, int i) {
  for (int k = 0; k < M.cols; ++k) M.at(i, k) = -M.at(i, k);
}

void negate_col(IntMatrix& M, int i) {
  for (int k = 0; k < M.rows; ++k) M.at(k, i) = -M.at(k, i);
}

}  // namespace

HnfResult hermite_normal_form(const IntMatrix& A) {
  IntMatrix h = A;
  IntMatrix u = IntMatrix::identity(A.rows);
  int r = 0;
  for (int c = 0; c < h.cols && r < h.rows; ++c) {
    // Euclid on the column: pivot is the minimal nonzero absolute value.
    while (true) {
      int piv = -1;
      for (int i = r; i < h.rows; ++i) {
        if (h.at(i, c) == 0) continue;
        if (piv < 0 || mpz_cmpabs(h.at(i, c).get_mpz_t(), h.at(piv, c).get_mpz_t()) < 0) piv = i;
      }
      if (piv < 0) break;
      swap_rows(h, r, piv);
      swap_rows(u, r, piv);
      bool clean = true;
      for (int i = r + 1; i < h.rows; ++i) {
        if (h.at(i, c) == 0) continue;
        Int q = floor_div(h.at(i, c), h.at(r, c));
        add_row(h, i, r, -q);
        add_row(u, i, r, -q);
        if (h.at(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h.at(r, c) == 0) continue;
    if (h.at(r, c) < 0) {
      negate_row(h, r);
      negate_row(u, r);
    }
    for (int i = 0; i < r; ++i) {
      Int q = floor_div(h.at(i, c), h.at(r, c));
      if (q != 0) {
        add_row(h, i, r, -q);
        add_row(u, i, r, -q);
      }
    }
    ++r;
  }
  if (!(mat_mul(u, A) == h))
    throw certification_error("hermite_normal_form: U*A != H");
  return {h, u};
}

SnfResult smith_normal_form(const IntMatrix& A) {
  IntMatrix d = A;
  IntMatrix u = IntMatrix::identity(A.rows);
  IntMatrix v = IntMatrix::identity(A.cols);
  int n = std::min(A.rows, A.cols);
  for (int t = 0; t < n; ++t) {
    while (true) {
      int pi = -1, pj = -1;
      for (int i = t; i < d.rows; ++i)
        for (int j = t; j < d.cols; ++j) {
          if (d.at(i, j) == 0) continue;
          if (pi < 0 || mpz_cmpabs(d.at(i, j).get_mpz_t(), d.at(pi, pj).get_mpz_t()) < 0) {
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) { pi = t; break; }
      swap_rows(d, t, pi);
      swap_rows(u, t, pi);
      swap_cols(d, t, pj);
      swap_cols(v, t, pj);
      bool clean = true;
      for (int i = t + 1; i < d.rows; ++i) {
        if (d.at(i, t) == 0) continue;
        Int q = floor_div(d.at(i, t), d.at(t, t));
        add_row(d, i, t, -q);
        add_row(u, i, t, -q);
        if (d.at(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < d.cols; ++j) {
        if (d.at(t, j) == 0) continue;
        Int q = floor_div(d.at(t, j), d.at(t, t));
        add_col(d, j, t, -q);
        add_col(v, j, t, -q);
        if (d.at(t, j) != 0) clean = false;
      }
      if (clean) {
        // Pivot must divide the rest of the block, else fold a bad entry in.
        bool divides = true;
        for (int i = t + 1; i < d.rows && divides; ++i)
          for (int j = t + 1; j < d.cols && divides; ++j)
            if (d.at(i, j) % d.at(t, t) != 0) {
              add_row(d, t, i, 1);
              add_row(u, t, i, 1);
              divides = false;
            }
        if (divides) break;
      }
    }
    if (d.at(t, t) < 0) {
      negate_row(d, t);
      negate_row(u, t);
    }
  }
  SnfResult res;
  res.u = u;
  res.v = v;
  res.diag.resize(n);
  for (int t = 0; t < n; ++t) res.diag[t] = d.at(t, t);
  IntMatrix check = mat_mul(mat_mul(u, A), v);
  for (int i = 0; i < check.rows; ++i)
    for (int j = 0; j < check.cols; ++j) {
      Int expect = (i == j && i < n) ? res.diag[i] : Int(0);
      if (check.at(i, j) != expect)
        throw certification_error("smith_normal_form: U*A*V is not diagonal");
    }
  for (size_t t = 0; t + 1 < res.diag.size(); ++t)
    if (res.diag[t] != 0 && res.diag[t + 1] % res.diag[t] != 0)
      throw certification_error("smith_normal_form: divisibility chain broken");
  return res;
}

int lattice_rank(const IntMatrix& A) {
  if (A.rows == 0 || A.cols == 0) return 0;
  auto snf = smith_normal_form(A);
  int r = 0;
  for (const auto& x : snf.diag)
    if (x != 0) ++r;
  return r;
}

Int lattice_index(const IntMatrix& A) {
  if (A.rows == 0 || A.cols == 0) return 1;
  auto snf = smith_normal_form(A);
  Int p = 1;
  for (const auto& x : snf.diag)
    if (x != 0) p *= x;
  return p;
}

bool is_part_of_basis(const IntMatrix& A) {
  if (A.rows == 0) return true;
  auto snf = smith_normal_form(A);
  int r = 0;
  for (const auto& x : snf.diag)
    if (x != 0) ++r;
  if (r != A.rows) throw std::invalid_argument("is_part_of_basis: rows are dependent");
  for (const auto& x : snf.diag)
    if (x != 0 && x != 1) return false;
  return true;
}

std::optional<LinearSolution> solve_integer(const IntMatrix& A, const IVec& b) {
  if (int(b.size()) != A.rows) throw std::invalid_argument("solve_integer: size mismatch");
  if (A.rows == 0) {
    LinearSolution s;
    s.particular.assign(A.cols, Int(0));
    for (int j = 0; j < A.cols; ++j) {
      IVec k(A.cols, Int(0));
      k[j] = 1;
      s.kernel.push_back(k);
    }
    return s;
  }
  auto snf = smith_normal_form(A);
  int n = std::min(A.rows, A.cols);
  // D y = U b with x = V y.
  IVec ub(A.rows, Int(0));
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.rows; ++j) ub[i] += snf.u.at(i, j) * b[j];
  }
  IVec y(A.cols, Int(0));
  int r = 0;
  for (int i = 0; i < n; ++i)
    if (snf.diag[i] != 0) ++r;
  for (int i = 0; i < A.rows; ++i) {
    if (i < r) {
      if (ub[i] % snf.diag[i] != 0) return std::nullopt;
      y[i] = ub[i] / snf.diag[i];
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  LinearSolution s;
  s.particular.assign(A.cols, Int(0));
  for (int i = 0; i < A.cols; ++i)
    for (int j = 0; j < A.cols; ++j) s.particular[i] += snf.v.at(i, j) * y[j];
  for (int j = r; j < A.cols; ++j) s.kernel.push_back(snf.v.col(j));
  return s;
}

std::vector<IVec> kernel_basis(const IntMatrix& A) {
  IVec zero(A.rows, Int(0));
  auto sol = solve_integer(A, zero);
  return sol->kernel;
}

std::vector<IVec> row_lattice_basis(const std::vector<IVec>& rows, int ncols) {
  if (rows.empty()) return {};
  auto hnf = hermite_normal_form(IntMatrix::from_rows(rows, ncols));
  std::vector<IVec> basis;
  for (int i = 0; i < hnf.h.rows; ++i) {
    IVec r = hnf.h.row(i);
    if (!is_zero(r)) basis.push_back(r);
  }
  return basis;
}

}  // namespace toricmot
