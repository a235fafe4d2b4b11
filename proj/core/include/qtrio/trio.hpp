#pragma once

#include <functional>
#include <vector>

#include "qtrio/matrix.hpp"
#include "qtrio/params.hpp"
#include "qtrio/report.hpp"
#include "qtrio/wilson.hpp"

namespace qtrio {

using RMatrix = DenseMatrix<Rational>;

/// The realized operator triple in the z-basis together with the coordinate
/// matrices of the two eigenbases and their duals:
///   column n of P_v  = coordinates of v_n,   column x of P_vt = those of vt_x,
///   column n of D_v  = coordinates of v*_n,  column x of D_vt = those of vt*_x,
/// so the matrix of an operator O in the v-basis is D_v^T O P_v.
struct TrioRealization {
  ParameterSet ps;
  RMatrix V_z, Vt_z, Z_z;
  RMatrix P_v, P_vt, D_v, D_vt;
};

TrioRealization build_realization(const ParameterSet& ps);

/// Leonard-trio axiom battery: band predicates after conjugation into the
/// v- and vt-bases, the irreducibility clauses, the z-basis clauses, the
/// negative probe that Vt stays full in the v-basis, the reordering
/// invariance, and the (V, Z0, I) triple built from the plain LP.
VerificationReport verify_trio_axioms(const TrioRealization& tr);

/// The four operator identities tying Vt Z, Z V, (Z + rho) Vt and
/// V (Z + rho) to the Heun combinations of V, Z (resp. Vt, Z), as exact
/// matrix residuals, plus the two-formula consistency of the constant terms
/// and the entrywise action checks in both eigenbases.
VerificationReport verify_heun_relations(const TrioRealization& tr,
                                         const HeunConstants& hc);

/// The six scalar constraint families on the z-basis coefficients, the
/// four-root multiset equality, the explicit product-form identity, and the
/// nonvanishing scans.
VerificationReport verify_constraint_equations(const ParameterSet& ps);

/// w_n(x) = <vt*_x, v_n>, the (x, n) entry of D_vt^T P_v.
Rational overlap_w(const TrioRealization& tr, int n, int x);

/// wt_n(x) = <v*_n, vt_x>, the (n, x) entry of D_v^T P_vt.
Rational overlap_w_partner(const TrioRealization& tr, int n, int x);

RMatrix overlap_matrix(const TrioRealization& tr);          // [x][n] = w_n(x)
RMatrix overlap_partner_matrix(const TrioRealization& tr);  // [n][x] = wt_n(x)

/// Weighted q-Racah sum route for w_n(x) (independent of the matrix route).
Rational overlap_w_sum_route(const ParameterSet& ps, int n, int x);

/// Closed form of w_0(0).
Rational overlap_w00_closed_form(const ParameterSet& ps);

/// Both biorthogonality products of the overlap matrices against identity.
VerificationReport verify_biorthogonality(const TrioRealization& tr);

/// Assembles the GEVP coefficient matrices by conjugation, checks both
/// generalized eigenvalue relations on the full grid, and compares the
/// assembled entries with the closed coefficient forms.
VerificationReport verify_gevp_from_matrices(const TrioRealization& tr);

/// Two-route check of the summation formula: the Wilson rational function
/// under the trio substitution against the weighted double q-Racah sum.
VerificationReport verify_summation_formula(const ParameterSet& ps);

/// Generic Leonard-pair assembly from bispectral family data.
struct GenericLpData {
  int N = 0;
  std::vector<Rational> xi;      // Z eigenvalues on z_i
  std::vector<Rational> lambda;  // V eigenvalues on v_n
  std::vector<Rational> rec_A, rec_B, rec_C;     // recurrence coefficients
  std::vector<Rational> diff_A, diff_B, diff_C;  // difference coefficients
  std::vector<Rational> point_weight;            // Omega_x (argument index)
  std::vector<Rational> norm;                    // omega_n (degree index)
  std::function<Rational(int i, int n)> P;       // P_i(n)
};

struct GenericLp {
  RMatrix Z, V, P, D;
};

/// Builds Z diagonal and V tridiagonal in the z-basis, the eigenbasis
/// coordinates P and duals D, and verifies the eigen-equation, the
/// tridiagonal Z action, and the duality pairing. Throws NondegeneracyError
/// if some rec_A[n] or rec_C[n+1] vanishes (n < N).
GenericLp generic_lp_from_family(const GenericLpData& data,
                                 VerificationReport* report);

/// Family data of the q-Racah LP attached to a ParameterSet (used both by
/// generic_lp_from_family tests and the (V, Z0, I) axiom probe).
GenericLpData qracah_lp_data(const ParameterSet& ps);

/// Exact type-(n, n) rational interpolation check: w rows (or any sequence
/// over the spectral nodes) must be reproduced by a ratio of degree <= deg
/// polynomials in the node variable; existence is decided by an exact
/// nullspace computation over all nodes.
bool admits_rational_interpolant(const std::vector<Rational>& nodes,
                                 const std::vector<Rational>& values, int deg);

}  // namespace qtrio
