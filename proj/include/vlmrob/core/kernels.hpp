#pragma once

#include "vlmrob/core/matrix.hpp"

namespace vlmrob::kernels {

// Dense kernels used by the encoders and losses. Every kernel has two
// implementations with identical per-element arithmetic: a serial reference
// (namespace `serial`) and an OpenMP version that partitions the output
// across threads. Because each output element is produced by exactly one
// thread with a fixed-order inner loop, the two paths are bitwise equal and
// results do not depend on the thread count. Tests assert this; the
// bench_kernels tool compares their throughput.

// Global switch (default on, overridable with VLMROB_SERIAL_KERNELS=1).
bool parallel_enabled();
void set_parallel(bool on);

namespace serial {
Matrix matmul_nn(const Matrix& a, const Matrix& b);  // (m,k)·(k,n)
Matrix matmul_nt(const Matrix& a, const Matrix& b);  // (m,k)·(n,k)^T
Matrix matmul_tn(const Matrix& a, const Matrix& b);  // (k,m)^T·(k,n)
Matrix colsum(const Matrix& a);                      // 1xN column sums
void add_row_vector(Matrix& a, const Matrix& v);     // a.row(i) += v
void tanh_inplace(Matrix& a);
Matrix tanh_backward(const Matrix& h, const Matrix& dh);  // dh ∘ (1 - h²)
// Row-wise L2 normalization; returns norms (Bx1). Rows with norm below
// `floor` are left unscaled and their reported norm is the raw one.
Matrix normalize_rows(Matrix& z, double floor = 1e-12);
// VJP of normalize_rows: given normalized rows e, raw norms, and upstream
// de, produces dz = (de - (de·e) e) / norm per row.
Matrix normalize_rows_backward(const Matrix& e, const Matrix& norms, const Matrix& de,
                               double floor = 1e-12);
} // namespace serial

namespace omp {
Matrix matmul_nn(const Matrix& a, const Matrix& b);
Matrix matmul_nt(const Matrix& a, const Matrix& b);
Matrix matmul_tn(const Matrix& a, const Matrix& b);
Matrix colsum(const Matrix& a);
void add_row_vector(Matrix& a, const Matrix& v);
void tanh_inplace(Matrix& a);
Matrix tanh_backward(const Matrix& h, const Matrix& dh);
Matrix normalize_rows(Matrix& z, double floor = 1e-12);
Matrix normalize_rows_backward(const Matrix& e, const Matrix& norms, const Matrix& de,
                               double floor = 1e-12);
} // namespace omp

// Dispatching entry points used by library code.
Matrix matmul_nn(const Matrix& a, const Matrix& b);
Matrix matmul_nt(const Matrix& a, const Matrix& b);
Matrix matmul_tn(const Matrix& a, const Matrix& b);
Matrix colsum(const Matrix& a);
void add_row_vector(Matrix& a, const Matrix& v);
void tanh_inplace(Matrix& a);
Matrix tanh_backward(const Matrix& h, const Matrix& dh);
Matrix normalize_rows(Matrix& z, double floor = 1e-12);
Matrix normalize_rows_backward(const Matrix& e, const Matrix& norms, const Matrix& de,
                               double floor = 1e-12);

} // namespace vlmrob::kernels
