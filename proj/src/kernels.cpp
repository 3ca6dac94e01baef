#include "vlmrob/core/kernels.hpp"

#include <cmath>
#include <cstdlib>

namespace vlmrob::kernels {

namespace {

bool initial_parallel() {
    const char* env = std::getenv("VLMROB_SERIAL_KERNELS");
    return !(env && env[0] == '1');
}

bool g_parallel = initial_parallel();

// Per-element bodies shared by the serial and OpenMP paths. A given output
// element is always produced by exactly this code, so both paths are
// bitwise identical.

inline void nn_row(const Matrix& a, const Matrix& b, Matrix& c, std::int64_t i) {
    const std::int64_t k = a.cols(), n = b.cols();
    double* crow = c.row_ptr(i);
    const double* arow = a.row_ptr(i);
    for (std::int64_t l = 0; l < k; ++l) {
        const double av = arow[l];
        const double* brow = b.row_ptr(l);
        for (std::int64_t j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
}

inline void nt_row(const Matrix& a, const Matrix& b, Matrix& c, std::int64_t i) {
    const std::int64_t k = a.cols(), n = b.rows();
    const double* arow = a.row_ptr(i);
    double* crow = c.row_ptr(i);
    for (std::int64_t j = 0; j < n; ++j) {
        const double* brow = b.row_ptr(j);
        double acc = 0.0;
        for (std::int64_t l = 0; l < k; ++l) acc += arow[l] * brow[l];
        crow[j] = acc;
    }
}

inline void tn_row(const Matrix& a, const Matrix& b, Matrix& c, std::int64_t i) {
    // c(i,j) = sum_r a(r,i) * b(r,j)
    const std::int64_t r_count = a.rows(), n = b.cols();
    double* crow = c.row_ptr(i);
    for (std::int64_t r = 0; r < r_count; ++r) {
        const double av = a(r, i);
        const double* brow = b.row_ptr(r);
        for (std::int64_t j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
}

inline void colsum_col(const Matrix& a, Matrix& out, std::int64_t j) {
    double acc = 0.0;
    for (std::int64_t i = 0; i < a.rows(); ++i) acc += a(i, j);
    out(0, j) = acc;
}

inline void normalize_row(Matrix& z, Matrix& norms, std::int64_t i, double floor) {
    double acc = 0.0;
    const double* row = z.row_ptr(i);
    for (std::int64_t j = 0; j < z.cols(); ++j) acc += row[j] * row[j];
    const double norm = std::sqrt(acc);
    norms(i, 0) = norm;
    if (norm > floor) {
        const double inv = 1.0 / norm;
        double* wrow = z.row_ptr(i);
        for (std::int64_t j = 0; j < z.cols(); ++j) wrow[j] *= inv;
    }
}

inline void normalize_bwd_row(const Matrix& e, const Matrix& norms, const Matrix& de,
                              Matrix& dz, std::int64_t i, double floor) {
    const double norm = norms(i, 0);
    const double* erow = e.row_ptr(i);
    const double* grow = de.row_ptr(i);
    double* drow = dz.row_ptr(i);
    if (norm <= floor) {
        for (std::int64_t j = 0; j < e.cols(); ++j) drow[j] = grow[j];
        return;
    }
    double dot = 0.0;
    for (std::int64_t j = 0; j < e.cols(); ++j) dot += grow[j] * erow[j];
    const double inv = 1.0 / norm;
    for (std::int64_t j = 0; j < e.cols(); ++j) drow[j] = (grow[j] - dot * erow[j]) * inv;
}

void check_nn(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw ShapeError("matmul_nn: inner dims " + a.shape_str() + " vs " + b.shape_str());
}
void check_nt(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols())
        throw ShapeError("matmul_nt: inner dims " + a.shape_str() + " vs " + b.shape_str());
}
void check_tn(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows())
        throw ShapeError("matmul_tn: inner dims " + a.shape_str() + " vs " + b.shape_str());
}

} // namespace

bool parallel_enabled() { return g_parallel; }
void set_parallel(bool on) { g_parallel = on; }

namespace serial {

Matrix matmul_nn(const Matrix& a, const Matrix& b) {
    check_nn(a, b);
    Matrix c(a.rows(), b.cols());
    for (std::int64_t i = 0; i < a.rows(); ++i) nn_row(a, b, c, i);
    return c;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
    check_nt(a, b);
    Matrix c(a.rows(), b.rows());
    for (std::int64_t i = 0; i < a.rows(); ++i) nt_row(a, b, c, i);
    return c;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
    check_tn(a, b);
    Matrix c(a.cols(), b.cols());
    for (std::int64_t i = 0; i < a.cols(); ++i) tn_row(a, b, c, i);
    return c;
}

Matrix colsum(const Matrix& a) {
    Matrix out(1, a.cols());
    for (std::int64_t j = 0; j < a.cols(); ++j) colsum_col(a, out, j);
    return out;
}

void add_row_vector(Matrix& a, const Matrix& v) {
    require_shape(v, 1, a.cols(), "add_row_vector");
    for (std::int64_t i = 0; i < a.rows(); ++i) {
        double* row = a.row_ptr(i);
        for (std::int64_t j = 0; j < a.cols(); ++j) row[j] += v(0, j);
    }
}

void tanh_inplace(Matrix& a) {
    for (double& x : a.data()) x = std::tanh(x);
}

Matrix tanh_backward(const Matrix& h, const Matrix& dh) {
    Matrix dz(h.rows(), h.cols());
    for (std::int64_t i = 0; i < h.size(); ++i)
        dz.data()[i] = dh.data()[i] * (1.0 - h.data()[i] * h.data()[i]);
    return dz;
}

Matrix normalize_rows(Matrix& z, double floor) {
    Matrix norms(z.rows(), 1);
    for (std::int64_t i = 0; i < z.rows(); ++i) normalize_row(z, norms, i, floor);
    return norms;
}

Matrix normalize_rows_backward(const Matrix& e, const Matrix& norms, const Matrix& de,
                               double floor) {
    Matrix dz(e.rows(), e.cols());
    for (std::int64_t i = 0; i < e.rows(); ++i) normalize_bwd_row(e, norms, de, dz, i, floor);
    return dz;
}

} // namespace serial

namespace omp {

Matrix matmul_nn(const Matrix& a, const Matrix& b) {
    check_nn(a, b);
    Matrix c(a.rows(), b.cols());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < a.rows(); ++i) nn_row(a, b, c, i);
    return c;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
    check_nt(a, b);
    Matrix c(a.rows(), b.rows());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < a.rows(); ++i) nt_row(a, b, c, i);
    return c;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
    check_tn(a, b);
    Matrix c(a.cols(), b.cols());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < a.cols(); ++i) tn_row(a, b, c, i);
    return c;
}

Matrix colsum(const Matrix& a) {
    Matrix out(1, a.cols());
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < a.cols(); ++j) colsum_col(a, out, j);
    return out;
}

void add_row_vector(Matrix& a, const Matrix& v) {
    require_shape(v, 1, a.cols(), "add_row_vector");
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < a.rows(); ++i) {
        double* row = a.row_ptr(i);
        for (std::int64_t j = 0; j < a.cols(); ++j) row[j] += v(0, j);
    }
}

void tanh_inplace(Matrix& a) {
    double* p = a.data().data();
    const std::int64_t n = a.size();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) p[i] = std::tanh(p[i]);
}

Matrix tanh_backward(const Matrix& h, const Matrix& dh) {
    Matrix dz(h.rows(), h.cols());
    const std::int64_t n = h.size();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
        dz.data()[i] = dh.data()[i] * (1.0 - h.data()[i] * h.data()[i]);
    return dz;
}

Matrix normalize_rows(Matrix& z, double floor) {
    Matrix norms(z.rows(), 1);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < z.rows(); ++i) normalize_row(z, norms, i, floor);
    return norms;
}

Matrix normalize_rows_backward(const Matrix& e, const Matrix& norms, const Matrix& de,
                               double floor) {
    Matrix dz(e.rows(), e.cols());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < e.rows(); ++i) normalize_bwd_row(e, norms, de, dz, i, floor);
    return dz;
}

} // namespace omp

Matrix matmul_nn(const Matrix& a, const Matrix& b) {
    return g_parallel ? omp::matmul_nn(a, b) : serial::matmul_nn(a, b);
}
Matrix matmul_nt(const Matrix& a, const Matrix& b) {
    return g_parallel ? omp::matmul_nt(a, b) : serial::matmul_nt(a, b);
}
Matrix matmul_tn(const Matrix& a, const Matrix& b) {
    return g_parallel ? omp::matmul_tn(a, b) : serial::matmul_tn(a, b);
}
Matrix colsum(const Matrix& a) { return g_parallel ? omp::colsum(a) : serial::colsum(a); }
void add_row_vector(Matrix& a, const Matrix& v) {
    g_parallel ? omp::add_row_vector(a, v) : serial::add_row_vector(a, v);
}
void tanh_inplace(Matrix& a) { g_parallel ? omp::tanh_inplace(a) : serial::tanh_inplace(a); }
Matrix tanh_backward(const Matrix& h, const Matrix& dh) {
    return g_parallel ? omp::tanh_backward(h, dh) : serial::tanh_backward(h, dh);
}
Matrix normalize_rows(Matrix& z, double floor) {
    return g_parallel ? omp::normalize_rows(z, floor) : serial::normalize_rows(z, floor);
}
Matrix normalize_rows_backward(const Matrix& e, const Matrix& norms, const Matrix& de,
                               double floor) {
    return g_parallel ? omp::normalize_rows_backward(e, norms, de, floor)
                      : serial::normalize_rows_backward(e, norms, de, floor);
}

} // namespace vlmrob::kernels
