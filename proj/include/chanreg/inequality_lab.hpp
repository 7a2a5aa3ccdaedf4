#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chanreg/state.hpp"

namespace chanreg {

/// Outcome of one inequality check. empirical_constant = lhs / rhs_structure.
struct InequalityReport {
    std::string name;
    double lhs = 0.0;
    double rhs_structure = 0.0;
    double empirical_constant = 0.0;
    bool pass = true;
    double max_violation = 0.0;       // pointwise checks only
    std::size_t violation_count = 0;  // pointwise checks only
};

inline constexpr double default_cap = 100.0;

/// ||phi||_{L^a(M)} <= C ||phi||_2^{2/a} ||phi||_{H1}^{(a-2)/a}, a >= 2.
InequalityReport check_gn_2d(const PlanarField& phi, double alpha, double cap = default_cap);
/// ||psi||_{L^a} <= C ||psi||_2^{(6-a)/(2a)} ||psi||_{H1}^{3(a-2)/(2a)}, 2 <= a <= 6.
InequalityReport check_gn_3d(const ScalarField& psi, double alpha, double cap = default_cap);
/// ||phi||_b <= C ||phi||_a^{a/b} (int |phi|^{a-2} |grad_h phi|^2)^{(b-a)/(ab)} + ||phi||_a.
InequalityReport check_interp_2d(const PlanarField& phi, double alpha, double beta, double cap = default_cap);

/// Samples of f on a product of two discretized sets with quadrature weights;
/// values are row-major with the Omega_1 index slowest.
struct ProductTable {
    std::vector<double> w1;
    std::vector<double> w2;
    std::vector<double> values;
};

/// [int_1 (int_2 |f|)^b]^{1/b} <= int_2 (int_1 |f|^b)^{1/b}. reversed swaps
/// the two sides (a negative control that must fail for non-separable f).
InequalityReport check_minkowski(const ProductTable& f, double beta, bool reversed = false);
/// Physical samples of f on the grid as a table over M x (0,1).
ProductTable column_table(const ScalarField& f);

/// |p~(x,y,z)| <= int_0^1 |p_z(x,y,xi)| dxi + 1e-8 at every node.
InequalityReport check_poincare_pz(const ScalarField& p);

/// int |v||phi||psi| against the right side of the velocity lemma; the
/// constant is max(0, lhs - eps part) / (bracket * ||phi||_2^2).
InequalityReport check_lemma_ll(const ScalarField& phi, const ScalarField& psi, const VelocityState& v, double r,
                                double eps, double cap = default_cap);

/// Seeded family sweep. Member 0 is constant; members k >= 1 are random
/// band-limited fields with horizontal modes up to nx/4 whose coefficients
/// depend only on (seed, k), so the family is the same on every grid that
/// resolves it.
struct FamilyConfig {
    std::uint64_t seed = 1;
    int count = 100;
    int kmax = 4;  // horizontal band, nx/4 of the base grid
    int mmax = 4;  // vertical band
    double cap = default_cap;
    double gn2d_alpha = 4.0;
    double gn3d_alpha = 6.0;
    double interp_alpha = 2.0;
    double interp_beta = 4.0;
    double minkowski_beta = 3.0;
    double lemma_r = 3.5;
    double lemma_eps = 0.1;
    bool reversed_minkowski = false;
};

struct FamilyRow {
    int member = 0;
    InequalityReport report;
    double scaled_constant = 0.0;  // constant after scaling the inputs by 10
};

std::vector<FamilyRow> run_family(const Grid& grid, const FamilyConfig& config);

/// Names of the checks run by run_family, in row order per member.
std::vector<std::string> family_checks();

} // namespace chanreg
