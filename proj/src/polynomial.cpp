#include "green_teich/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace gt {

cplx poly_eval(std::span<const cplx> coeffs, cplx z) {
    cplx acc = 0.0;
    for (size_t m = coeffs.size(); m-- > 0;) acc = acc * z + coeffs[m];
    return acc;
}

std::vector<Root> poly_roots(std::span<const cplx> coeffs, double merge_tol) {
    double scale = 0.0;
    for (const cplx& c : coeffs) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) return {};

    size_t deg = coeffs.size() - 1;
    while (deg > 0 && std::abs(coeffs[deg]) <= 1e-14 * scale) --deg;
    if (deg == 0) return {};

    // leading zero roots are exact; peel them off before the eigensolve
    size_t zeros = 0;
    while (zeros < deg && coeffs[zeros] == cplx(0.0)) ++zeros;

    std::vector<cplx> raw(zeros, cplx(0.0));
    const size_t n = deg - zeros;
    if (n == 1) {
        raw.push_back(-coeffs[zeros] / coeffs[deg]);
    } else if (n > 1) {
        Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
        for (size_t i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
        for (size_t i = 0; i < n; ++i) companion(i, n - 1) = -coeffs[zeros + i] / coeffs[deg];
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
        for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) raw.push_back(solver.eigenvalues()(i));
    }

    // single-linkage clustering of nearby roots
    std::vector<int> cluster(raw.size(), -1);
    int n_clusters = 0;
    for (size_t i = 0; i < raw.size(); ++i) {
        if (cluster[i] >= 0) continue;
        cluster[i] = n_clusters;
        std::vector<size_t> stack{i};
        while (!stack.empty()) {
            const size_t k = stack.back();
            stack.pop_back();
            for (size_t j = 0; j < raw.size(); ++j) {
                if (cluster[j] < 0 && std::abs(raw[j] - raw[k]) < merge_tol) {
                    cluster[j] = n_clusters;
                    stack.push_back(j);
                }
            }
        }
        ++n_clusters;
    }
    std::vector<Root> roots(n_clusters, Root{cplx(0.0), 0});
    for (size_t i = 0; i < raw.size(); ++i) {
        roots[cluster[i]].value += raw[i];
        roots[cluster[i]].multiplicity += 1;
    }
    for (Root& r : roots) r.value /= static_cast<double>(r.multiplicity);
    return roots;
}

std::vector<cplx> poly_mul_linear(std::span<const cplx> p, cplx a) {
    std::vector<cplx> out(p.size() + 1, cplx(0.0));
    for (size_t m = 0; m < p.size(); ++m) {
        out[m + 1] += p[m];
        out[m] -= a * p[m];
    }
    return out;
}

} // namespace gt
