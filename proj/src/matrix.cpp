#include "feather/matrix.hpp"

#include "feather/errors.hpp"

#include <string>

namespace feather {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw ShapeMismatch(what);
}

}  // namespace

Matrix multiply(const Matrix& a, const Matrix& b) {
    require(a.cols() == b.rows(), "multiply: inner dimensions differ");
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double* oi = out.data() + i * out.cols();
        const double* ai = a.data() + i * a.cols();
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = ai[k];
            if (aik == 0.0) continue;
            const double* bk = b.data() + k * b.cols();
            for (std::size_t j = 0; j < b.cols(); ++j) oi[j] += aik * bk[j];
        }
    }
    return out;
}

Matrix multiply_at(const Matrix& a, const Matrix& b) {
    require(a.rows() == b.rows(), "multiply_at: row counts differ");
    Matrix out(a.cols(), b.cols());
    for (std::size_t k = 0; k < a.rows(); ++k) {
        const double* ak = a.data() + k * a.cols();
        const double* bk = b.data() + k * b.cols();
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const double aki = ak[i];
            if (aki == 0.0) continue;
            double* oi = out.data() + i * out.cols();
            for (std::size_t j = 0; j < b.cols(); ++j) oi[j] += aki * bk[j];
        }
    }
    return out;
}

Matrix multiply_bt(const Matrix& a, const Matrix& b) {
    require(a.cols() == b.cols(), "multiply_bt: column counts differ");
    Matrix out(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* ai = a.data() + i * a.cols();
        for (std::size_t j = 0; j < b.rows(); ++j) {
            const double* bj = b.data() + j * b.cols();
            double acc = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) acc += ai[k] * bj[k];
            out(i, j) = acc;
        }
    }
    return out;
}

}  // namespace feather
