#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace rentwist::kernels {

using cdouble = std::complex<double>;

enum class Isa { Scalar, Avx2, Neon };

const char* isa_name(Isa isa);
bool isa_available(Isa isa);
// Best available instruction set, unless overridden by force_isa.
Isa active_isa();
void force_isa(Isa isa);
void reset_isa();

// Real compressed-sparse-row matrix.
struct Csr {
    std::size_t rows = 0, cols = 0;
    std::vector<std::int64_t> ptr;
    std::vector<std::int32_t> idx;
    std::vector<double> val;
};

// sum_i conj(a_i) b_i
cdouble cdot(const cdouble* a, const cdouble* b, std::size_t n);
// y += alpha x
void caxpy(cdouble alpha, const cdouble* x, cdouble* y, std::size_t n);
// y = A x for rows [r0, r1)
void spmv(const Csr& A, const cdouble* x, cdouble* y, std::size_t r0, std::size_t r1);
void spmv(const Csr& A, const cdouble* x, cdouble* y);

// Explicit variants for equivalence testing; calling an unavailable variant is undefined.
cdouble cdot_isa(Isa isa, const cdouble* a, const cdouble* b, std::size_t n);
void caxpy_isa(Isa isa, cdouble alpha, const cdouble* x, cdouble* y, std::size_t n);
void spmv_isa(Isa isa, const Csr& A, const cdouble* x, cdouble* y, std::size_t r0, std::size_t r1);

}  // namespace rentwist::kernels
