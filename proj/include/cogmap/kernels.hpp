#pragma once

#include <cstddef>

namespace cogmap::kernels {

// Dense numeric kernels backing the nearest-centroid scan and the MLP.
//
// Every kernel exists in two variants: a `_serial` reference and an `_omp`
// version parallelized with OpenMP. The parallel variants assign each output
// element to exactly one thread and keep the inner accumulation order fixed,
// so they are bit-identical to the serial reference for any thread count.
// The unsuffixed wrappers dispatch on problem size and the global toggle.

void set_parallel_enabled(bool enabled);
bool parallel_enabled();

// y[i] = dot(m[i*d .. i*d+d), v) for i in [0, rows)
void matvec_serial(const double* m, std::size_t rows, std::size_t d, const double* v, double* y);
void matvec_omp(const double* m, std::size_t rows, std::size_t d, const double* v, double* y);
void matvec(const double* m, std::size_t rows, std::size_t d, const double* v, double* y);

struct Argmax {
    std::size_t index = 0;
    double value = 0.0;
};

// Index of the row with the largest dot product against v; ties resolve to
// the lowest index. rows must be >= 1.
Argmax argmax_dot_serial(const double* m, std::size_t rows, std::size_t d, const double* v);
Argmax argmax_dot(const double* m, std::size_t rows, std::size_t d, const double* v);

// Y = X * W^T + b, X is n x in (row-major), W is out x in, b is out, Y is n x out.
void linear_forward_serial(const double* x, std::size_t n, std::size_t in, const double* w,
                           const double* b, std::size_t out, double* y);
void linear_forward_omp(const double* x, std::size_t n, std::size_t in, const double* w,
                        const double* b, std::size_t out, double* y);
void linear_forward(const double* x, std::size_t n, std::size_t in, const double* w,
                    const double* b, std::size_t out, double* y);

// dW[j*in+k] = sum_r delta[r*out+j] * x[r*in+k];  db[j] = sum_r delta[r*out+j]
void linear_grad_serial(const double* x, const double* delta, std::size_t n, std::size_t in,
                        std::size_t out, double* dw, double* db);
void linear_grad_omp(const double* x, const double* delta, std::size_t n, std::size_t in,
                     std::size_t out, double* dw, double* db);
void linear_grad(const double* x, const double* delta, std::size_t n, std::size_t in,
                 std::size_t out, double* dw, double* db);

// dX[r*in+k] = sum_j delta[r*out+j] * w[j*in+k]
void linear_backprop_serial(const double* delta, const double* w, std::size_t n, std::size_t in,
                            std::size_t out, double* dx);
void linear_backprop_omp(const double* delta, const double* w, std::size_t n, std::size_t in,
                         std::size_t out, double* dx);
void linear_backprop(const double* delta, const double* w, std::size_t n, std::size_t in,
                     std::size_t out, double* dx);

}  // namespace cogmap::kernels
