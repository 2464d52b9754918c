// Small dense exact linear algebra over the scalar field Q(q).

#pragma once

#include <optional>
#include <vector>

#include "qhf/coefficients.hpp"

namespace qhf::la {

using coeff::ScalarQ;
using Vec = std::vector<ScalarQ>;
using Mat = std::vector<Vec>;

Mat identity(std::size_t n);
Vec mat_vec(const Mat& a, const Vec& v);
Mat mat_mul(const Mat& a, const Mat& b);

// In-place reduced row echelon form; returns the pivot column of each
// nonzero row (rows are compacted, zero rows dropped).
std::vector<std::size_t> rref(Mat& m);

std::size_t rank(Mat m);

// One exact solution of a x = b (a may be rectangular); nullopt when the
// system is inconsistent.  Free variables are set to zero.
std::optional<Vec> solve(const Mat& a, const Vec& b);

// Inverse of a square matrix; throws std::logic_error when singular.
Mat inverse(const Mat& a);

// Basis of the right kernel { x : a x = 0 }.
std::vector<Vec> kernel(Mat a);

}  // namespace qhf::la
