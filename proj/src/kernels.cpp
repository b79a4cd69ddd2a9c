#include "cogmap/kernels.hpp"

#include <atomic>
#include <vector>

namespace cogmap::kernels {

namespace {
std::atomic<bool> g_parallel{true};

// Below this many multiply-adds the fork/join overhead dominates.
constexpr std::size_t kParallelWorkThreshold = 1 << 15;

inline double dot(const double* a, const double* b, std::size_t d) {
    double s = 0.0;
    for (std::size_t k = 0; k < d; ++k) s += a[k] * b[k];
    return s;
}
}  // namespace

void set_parallel_enabled(bool enabled) { g_parallel.store(enabled); }
bool parallel_enabled() { return g_parallel.load(); }

void matvec_serial(const double* m, std::size_t rows, std::size_t d, const double* v, double* y) {
    for (std::size_t i = 0; i < rows; ++i) y[i] = dot(m + i * d, v, d);
}

void matvec_omp(const double* m, std::size_t rows, std::size_t d, const double* v, double* y) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(rows); ++i) {
        y[i] = dot(m + static_cast<std::size_t>(i) * d, v, d);
    }
}

void matvec(const double* m, std::size_t rows, std::size_t d, const double* v, double* y) {
    if (parallel_enabled() && rows * d >= kParallelWorkThreshold) {
        matvec_omp(m, rows, d, v, y);
    } else {
        matvec_serial(m, rows, d, v, y);
    }
}

Argmax argmax_dot_serial(const double* m, std::size_t rows, std::size_t d, const double* v) {
    Argmax best{0, dot(m, v, d)};
    for (std::size_t i = 1; i < rows; ++i) {
        double s = dot(m + i * d, v, d);
        if (s > best.value) best = {i, s};
    }
    return best;
}

Argmax argmax_dot(const double* m, std::size_t rows, std::size_t d, const double* v) {
    if (!parallel_enabled() || rows * d < kParallelWorkThreshold) {
        return argmax_dot_serial(m, rows, d, v);
    }
    // Scores are materialized in parallel (one row per element), then reduced
    // serially; strict > with ascending scan keeps the lowest-index tie rule.
    static thread_local std::vector<double> scores;
    scores.resize(rows);
    matvec_omp(m, rows, d, v, scores.data());
    Argmax best{0, scores[0]};
    for (std::size_t i = 1; i < rows; ++i) {
        if (scores[i] > best.value) best = {i, scores[i]};
    }
    return best;
}

void linear_forward_serial(const double* x, std::size_t n, std::size_t in, const double* w,
                           const double* b, std::size_t out, double* y) {
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t j = 0; j < out; ++j) {
            y[r * out + j] = b[j] + dot(x + r * in, w + j * in, in);
        }
    }
}

void linear_forward_omp(const double* x, std::size_t n, std::size_t in, const double* w,
                        const double* b, std::size_t out, double* y) {
#pragma omp parallel for schedule(static)
    for (long long r = 0; r < static_cast<long long>(n); ++r) {
        const double* xr = x + static_cast<std::size_t>(r) * in;
        double* yr = y + static_cast<std::size_t>(r) * out;
        for (std::size_t j = 0; j < out; ++j) yr[j] = b[j] + dot(xr, w + j * in, in);
    }
}

void linear_forward(const double* x, std::size_t n, std::size_t in, const double* w,
                    const double* b, std::size_t out, double* y) {
    if (parallel_enabled() && n * in * out >= kParallelWorkThreshold) {
        linear_forward_omp(x, n, in, w, b, out, y);
    } else {
        linear_forward_serial(x, n, in, w, b, out, y);
    }
}

void linear_grad_serial(const double* x, const double* delta, std::size_t n, std::size_t in,
                        std::size_t out, double* dw, double* db) {
    for (std::size_t j = 0; j < out; ++j) {
        for (std::size_t k = 0; k < in; ++k) {
            double s = 0.0;
            for (std::size_t r = 0; r < n; ++r) s += delta[r * out + j] * x[r * in + k];
            dw[j * in + k] = s;
        }
        double s = 0.0;
        for (std::size_t r = 0; r < n; ++r) s += delta[r * out + j];
        db[j] = s;
    }
}

void linear_grad_omp(const double* x, const double* delta, std::size_t n, std::size_t in,
                     std::size_t out, double* dw, double* db) {
#pragma omp parallel for schedule(static)
    for (long long j = 0; j < static_cast<long long>(out); ++j) {
        for (std::size_t k = 0; k < in; ++k) {
            double s = 0.0;
            for (std::size_t r = 0; r < n; ++r) {
                s += delta[r * out + static_cast<std::size_t>(j)] * x[r * in + k];
            }
            dw[static_cast<std::size_t>(j) * in + k] = s;
        }
        double s = 0.0;
        for (std::size_t r = 0; r < n; ++r) s += delta[r * out + static_cast<std::size_t>(j)];
        db[j] = s;
    }
}

void linear_grad(const double* x, const double* delta, std::size_t n, std::size_t in,
                 std::size_t out, double* dw, double* db) {
    if (parallel_enabled() && n * in * out >= kParallelWorkThreshold) {
        linear_grad_omp(x, delta, n, in, out, dw, db);
    } else {
        linear_grad_serial(x, delta, n, in, out, dw, db);
    }
}

void linear_backprop_serial(const double* delta, const double* w, std::size_t n, std::size_t in,
                            std::size_t out, double* dx) {
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t k = 0; k < in; ++k) {
            double s = 0.0;
            for (std::size_t j = 0; j < out; ++j) s += delta[r * out + j] * w[j * in + k];
            dx[r * in + k] = s;
        }
    }
}

void linear_backprop_omp(const double* delta, const double* w, std::size_t n, std::size_t in,
                         std::size_t out, double* dx) {
#pragma omp parallel for schedule(static)
    for (long long r = 0; r < static_cast<long long>(n); ++r) {
        for (std::size_t k = 0; k < in; ++k) {
            double s = 0.0;
            for (std::size_t j = 0; j < out; ++j) {
                s += delta[static_cast<std::size_t>(r) * out + j] * w[j * in + k];
            }
            dx[static_cast<std::size_t>(r) * in + k] = s;
        }
    }
}

void linear_backprop(const double* delta, const double* w, std::size_t n, std::size_t in,
                     std::size_t out, double* dx) {
    if (parallel_enabled() && n * in * out >= kParallelWorkThreshold) {
        linear_backprop_omp(delta, w, n, in, out, dx);
    } else {
        linear_backprop_serial(delta, w, n, in, out, dx);
    }
}

}  // namespace cogmap::kernels
