#pragma once

#include <Eigen/Dense>

#include <optional>

namespace fas {

// Linear aperture: N uniformly spaced ports over a span of W carrier
// wavelengths. W is dimensionless (length in wavelengths).
struct ApertureGeometry {
    int ports = 1;
    double width = 0.0;

    // Throws std::domain_error unless N >= 1, W >= 0, and W > 0 when N >= 2.
    void validate() const;
};

// Wavelength-normalized distance between ports i and j (1-based):
// |i - j| * W / (N - 1). Undefined for N = 1 (throws std::domain_error).
double port_spacing(int i, int j, const ApertureGeometry& geom);

// Jakes correlation matrix J_{ij} = J0(2 pi * spacing(i,j)) together with its
// eigendecomposition. Immutable once built; safe to share across threads.
class CorrelationSpectrum {
public:
    const ApertureGeometry& geometry() const { return geom_; }
    const Eigen::MatrixXd& matrix() const { return matrix_; }

    // Descending, clamped to be nonnegative.
    const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

    // Columns ordered to match eigenvalues().
    const Eigen::MatrixXd& eigenvectors() const { return eigenvectors_; }

    // How many eigenvalues in [-1e-10, 0) were floored to 0.
    int clamped_count() const { return clamped_count_; }

    int ports() const { return static_cast<int>(eigenvalues_.size()); }

    // Number of strictly positive eigenvalues (they lead the sorted vector).
    int positive_count() const;

private:
    friend CorrelationSpectrum build_correlation(const ApertureGeometry&);

    ApertureGeometry geom_;
    Eigen::MatrixXd matrix_;
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXd eigenvectors_;
    int clamped_count_ = 0;
};

// Builds J and its spectrum. J is PSD in exact arithmetic, so eigenvalues in
// [-1e-10, 0) are treated as solver noise and clamped to 0; anything below
// -1e-10 throws fas::numerical_error.
CorrelationSpectrum build_correlation(const ApertureGeometry& geom);

// Sum of ln(lambda_n) over the leading top_k eigenvalues, or over all N when
// top_k is absent. Without top_k, a spectrum containing a zero eigenvalue
// yields -infinity (rank deficiency is a meaningful regime, not an error).
// With top_k, lambda_{top_k} must be strictly positive or std::domain_error
// is thrown.
double log_det(const CorrelationSpectrum& spec, std::optional<int> top_k = std::nullopt);

// Fraction of total eigenvalue mass captured by the leading k modes,
// sum_{n<=k} lambda_n / sum_n lambda_n. Nondecreasing in k, 1 at k = N.
double energy_ratio(const CorrelationSpectrum& spec, int k);

} // namespace fas
