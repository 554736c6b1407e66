#include "fas/correlation.hpp"

#include "fas/errors.hpp"
#include "fas/specfun.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fas {

void ApertureGeometry::validate() const {
    if (ports < 1) throw std::domain_error("ApertureGeometry: ports must be >= 1");
    if (!(width >= 0.0) || !std::isfinite(width)) {
        throw std::domain_error("ApertureGeometry: width must be finite and >= 0");
    }
    if (ports >= 2 && width == 0.0) {
        throw std::domain_error("ApertureGeometry: width must be > 0 when ports >= 2");
    }
}

double port_spacing(int i, int j, const ApertureGeometry& geom) {
    geom.validate();
    if (geom.ports < 2) throw std::domain_error("port_spacing: undefined for a single port");
    if (i < 1 || i > geom.ports || j < 1 || j > geom.ports) {
        throw std::domain_error("port_spacing: port index out of range");
    }
    return std::abs(i - j) * geom.width / (geom.ports - 1);
}

CorrelationSpectrum build_correlation(const ApertureGeometry& geom) {
    geom.validate();
    const int n = geom.ports;

    CorrelationSpectrum spec;
    spec.geom_ = geom;
    spec.matrix_.resize(n, n);

    if (n == 1) {
        spec.matrix_(0, 0) = 1.0;
        spec.eigenvalues_ = Eigen::VectorXd::Ones(1);
        spec.eigenvectors_ = Eigen::MatrixXd::Ones(1, 1);
        return spec;
    }

    // Toeplitz: the coefficient depends only on |i - j|, so evaluate J0 once
    // per off-diagonal lag and fan it out.
    Eigen::VectorXd lag(n);
    for (int d = 0; d < n; ++d) {
        lag(d) = specfun::bessel_j0(2.0 * std::numbers::pi * geom.width * d / (n - 1));
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) spec.matrix_(i, j) = lag(std::abs(i - j));
        spec.matrix_(i, i) = 1.0;
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(spec.matrix_);
    if (solver.info() != Eigen::Success) {
        throw numerical_error("build_correlation: eigendecomposition failed");
    }

    // Eigen returns ascending order; flip to descending with columns in step.
    const int last = n - 1;
    spec.eigenvalues_.resize(n);
    spec.eigenvectors_.resize(n, n);
    for (int m = 0; m < n; ++m) {
        spec.eigenvalues_(m) = solver.eigenvalues()(last - m);
        spec.eigenvectors_.col(m) = solver.eigenvectors().col(last - m);
    }

    for (int m = 0; m < n; ++m) {
        double& lambda = spec.eigenvalues_(m);
        if (lambda < -1e-10) {
            throw numerical_error(
                "build_correlation: eigenvalue " + std::to_string(lambda) +
                " below the PSD noise floor; solver output is untrustworthy");
        }
        if (lambda < 0.0) {
            lambda = 0.0;
            ++spec.clamped_count_;
        }
    }
    return spec;
}

int CorrelationSpectrum::positive_count() const {
    int count = 0;
    while (count < eigenvalues_.size() && eigenvalues_(count) > 0.0) ++count;
    return count;
}

double log_det(const CorrelationSpectrum& spec, std::optional<int> top_k) {
    const int n = spec.ports();
    const int positive = spec.positive_count();
    if (top_k) {
        const int k = *top_k;
        if (k < 1 || k > n) throw std::domain_error("log_det: top_k out of range");
        if (k > positive) {
            throw std::domain_error("log_det: top_k reaches into the zero eigenvalues");
        }
        double sum = 0.0;
        for (int m = 0; m < k; ++m) sum += std::log(spec.eigenvalues()(m));
        return sum;
    }
    if (positive < n) return -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (int m = 0; m < n; ++m) sum += std::log(spec.eigenvalues()(m));
    return sum;
}

double energy_ratio(const CorrelationSpectrum& spec, int k) {
    const int n = spec.ports();
    if (k < 1 || k > n) throw std::domain_error("energy_ratio: k out of range");
    const double total = spec.eigenvalues().sum();
    const double head = spec.eigenvalues().head(k).sum();
    return head / total;
}

} // namespace fas
