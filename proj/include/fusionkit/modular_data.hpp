#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fusionkit/check.hpp"
#include "fusionkit/fusion_ring.hpp"

namespace fusionkit {

using Complex = std::complex<double>;

/// Unnormalized S-matrix (S(0,0) = 1) and twist diagonal.
struct ModularData {
    Eigen::MatrixXcd S;
    std::vector<Complex> T;
    double tolerance = 1e-9;
    std::vector<std::string> labels; ///< optional; index 0 is the unit

    std::size_t rank() const { return T.size(); }
    std::string label(std::size_t i) const;
};

struct ModularOptions {
    double verlinde_residual = 1e-6;
    int t_order_cap = 10000;
};

struct GaussSums {
    Complex p_plus;
    Complex p_minus;
    double global = 0.0;   ///< sum of squared first-row entries
    double residual = 0.0; ///< |p+ p- - global|
};

struct ModularReport : ValidationReport {
    double global = 0.0;
    int t_order = 0; ///< 0 when no order <= cap was found
    GaussSums gauss;
};

/// Throws InputError unless S is square and matches T.
void check_shape(const ModularData& md);

ModularReport verify_modular(const ModularData& md, const ModularOptions& options = {});

GaussSums gauss_sums(const ModularData& md);

/// Fusion rules from the Verlinde formula; InconsistencyError names the worst
/// triple when the result is not a nonnegative integral fusion ring.
FusionRing verlinde_fusion(const ModularData& md, const ModularOptions& options = {});

/// Largest |S(i,j) - theta_i^-1 theta_j^-1 sum_k N(i, j*, k) theta_k d_k|.
double twist_equation_check(const ModularData& md, const FusionRing& ring);

struct CentralizerResult {
    SubBasis sub;
    /// filled for nondegenerate data: FPdim(D) FPdim(D') against the global
    /// dimension, and whether the double centralizer returns D
    double dimension_residual = 0.0;
    bool double_centralizer = true;
};

/// Objects whose S-entries against every member of `sub` equal d_i d_j.
CentralizerResult centralizer(const ModularData& md, const FusionRing& ring, const SubBasis& sub);
CentralizerResult centralizer(const ModularData& md, const SubBasis& sub);

/// All fusion- and dual-closed sub-bases, sorted by (size, members).
std::vector<SubBasis> fusion_subcategory_lattice(const FusionRing& ring, std::size_t rank_cap = 32);

struct SymmetricSubcategory {
    SubBasis sub;
    double fpdim = 0.0;
    bool tannakian_candidate = false; ///< symmetric and theta = 1 on every member
    bool certifies = false;
};

struct Certificate {
    bool found = false;
    SubBasis L;
    SubBasis L_prime;
    double fpdim_L = 0.0;
    std::size_t lattice_size = 0;
    std::vector<SymmetricSubcategory> symmetric; ///< every symmetric sub-basis, lattice order
};

/// Searches the sub-basis lattice for a symmetric L with (L')_ad inside L.
/// When several certify, the one of largest FPdim is reported.
Certificate group_theoretical_certificate(const ModularData& md,
                                          const ModularOptions& options = {});

/// Finite abelian group with a quadratic form q given by its values.
struct MetricGroup {
    std::vector<std::vector<int>> table; ///< identity at index 0
    std::vector<Complex> q;
    double tolerance = 1e-9;

    std::size_t order() const { return table.size(); }
    Complex bilinear(int a, int b) const { return q[table[a][b]] / (q[a] * q[b]); }
};

/// Checks q(-a) = q(a) and that b is a bicharacter; InputError otherwise.
void check_metric_group(const MetricGroup& mg);
bool is_nondegenerate(const MetricGroup& mg);

/// Pointed modular data with S(a,b) = conj(b(a,b)) and theta_a = q(a).
/// DegeneracyError when b is degenerate.
ModularData metric_group_data(const MetricGroup& mg);

} // namespace fusionkit
