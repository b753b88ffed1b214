#include "treehom/matrix.hpp"

#include "treehom/errors.hpp"

namespace treehom {

IntMatrix identity_matrix(std::size_t k) {
    IntMatrix m(k, std::vector<BigInt>(k, 0));
    for (std::size_t i = 0; i < k; ++i) m[i][i] = 1;
    return m;
}

static void require_square(const IntMatrix& a) {
    for (const auto& row : a)
        if (row.size() != a.size()) throw invalid_argument_error("matrix is not square");
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
    require_square(a);
    require_square(b);
    if (a.size() != b.size()) throw invalid_argument_error("matrix size mismatch");
    std::size_t k = a.size();
    IntMatrix out(k, std::vector<BigInt>(k, 0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (std::size_t j = 0; j < k; ++j) out[i][j] += a[i][l] * b[l][j];
        }
    return out;
}

std::vector<BigInt> mat_vec(const IntMatrix& a, const std::vector<BigInt>& v) {
    require_square(a);
    if (a.size() != v.size()) throw invalid_argument_error("matrix and vector sizes differ");
    std::size_t k = a.size();
    std::vector<BigInt> out(k, 0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (a[i][j] != 0) out[i] += a[i][j] * v[j];
    return out;
}

IntMatrix mat_pow(const IntMatrix& a, unsigned long n) {
    require_square(a);
    IntMatrix result = identity_matrix(a.size());
    IntMatrix base = a;
    while (n > 0) {
        if (n & 1UL) result = mat_mul(result, base);
        n >>= 1;
        if (n > 0) base = mat_mul(base, base);
    }
    return result;
}

} // namespace treehom
