#pragma once

#include "gsp4/group.hpp"
#include "gsp4/hecke_data.hpp"
#include "gsp4/scalar.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace gsp4 {

// GL2Max is GL2(Z_p), used only as a small sanity instance.
enum class Parahoric { Hyperspecial, Siegel, Klingen, Iwahori, GL2Max };

std::string to_string(Parahoric k);
Parahoric parahoric_from_string(const std::string& s);  // "hyp", "sieg", "kl", "iw"
// k1 is contained in k2
bool parahoric_contained(Parahoric k1, Parahoric k2);
int group_dim(Parahoric k);

// Column bases of the lattices whose common stabilizer is the parahoric.
std::vector<QMatrix> lattice_chain(Parahoric k, long p);
bool in_parahoric(const QMatrix& g, Parahoric k, long p);
// Topological generators of the parahoric (torus units, root elements, p-depth
// root elements); they generate it modulo any principal congruence subgroup.
std::vector<QMatrix> parahoric_generators(Parahoric k, long p);

// Hermite normal form over Z/p^k of the lattice g L + p^k L0 for each chain
// lattice L, flattened.  Equal labels <=> equal cosets gK once p^k L0 is inside
// every g L.
using CosetLabel = std::vector<long>;
CosetLabel coset_label(const QMatrix& g, Parahoric k, long p, int precision);

struct CosetList {
  Parahoric level = Parahoric::Hyperspecial;
  long p = 2;
  int precision = 1;
  std::vector<QMatrix> reps;  // sorted by label
  std::vector<CosetLabel> labels;
  size_t size() const { return reps.size(); }
  // index of the coset of g, or -1
  long find(const QMatrix& g) const;
};

// Left coset representatives u_i with K g K = disjoint union of u_i K.  With
// precision < 0 the default (1 + max exponent of the elementary divisors) is used.
CosetList enumerate_cosets(Parahoric k, const QMatrix& g, long p, int precision = -1);
// Representatives of G(Z_p) / K (or GL2(Z_p) / K).
const CosetList& compact_quotient(Parahoric k, long p);

// Cells B(Z_p) \ G(Z_p) / K, i.e. W / W_K, each with its shortest Weyl
// representative and the number of K-cosets it contains.
struct CellBasis {
  Parahoric level = Parahoric::Hyperspecial;
  long p = 2;
  std::vector<int> weyl_rep;             // index into weyl_group()
  std::vector<std::vector<int>> labels;  // rank profiles
  std::vector<long> coset_count;
  size_t size() const { return weyl_rep.size(); }
};
const CellBasis& cell_basis(Parahoric k, long p);
// Cell index of k in G(Z_p).
int cell_of(const QMatrix& kmat, Parahoric level, long p);

// Unramified character chi1 x chi2 x| sigma of the Borel, evaluated together
// with delta_B^{1/2} at torus elements.
struct InducedCharacter {
  Scalar chi1, chi2, sigma;
  long p = 2;
  static InducedCharacter from_params(const HeckeParams& params);
  InducedCharacter dual() const;
  Scalar value(const TorusExp& t) const;
};

// Hecke operator [K diag K] times u^{u_r1 * r1 + u_r2 * r2}.
struct OperatorSpec {
  std::string name;
  Parahoric level;
  std::array<int, 4> diag;
  int u_r1 = 0, u_r2 = 0;
  Scalar normalization(const HeckeParams& params) const;
  QMatrix matrix(long p) const;
  int similitude_exp() const { return diag[0] + diag[3]; }
};
// Known names: T1, T2, Center (hyperspecial); U1Sieg; U2Kl, UKl0, UKl1, UKl1p,
// UKl2, UKl2p; U1Iw, U2Iw, U2pIw, Zp, Phi.
const OperatorSpec& operator_spec(const std::string& name);
std::vector<std::string> operator_names();

// Cached double coset decomposition for an operator.
const CosetList& operator_cosets(const OperatorSpec& op, long p);

using ScalarMatrix = std::vector<std::vector<Scalar>>;
ScalarMatrix smat_identity(size_t n);
ScalarMatrix smat_mul(const ScalarMatrix& a, const ScalarMatrix& b);
ScalarMatrix smat_add(const ScalarMatrix& a, const ScalarMatrix& b, const Scalar& scale_b = Scalar(1));
ScalarMatrix smat_scale(const ScalarMatrix& a, const Scalar& s);
ScalarMatrix smat_transpose(const ScalarMatrix& a);
std::vector<Scalar> smat_apply(const ScalarMatrix& a, const std::vector<Scalar>& v);
Scalar smat_trace(const ScalarMatrix& a);
bool smat_equal(const ScalarMatrix& a, const ScalarMatrix& b);

// Unnormalized double coset [K g K] on the cell basis of the K-invariants of
// the induced model.  Column x is the image of the cell function f_x.
ScalarMatrix double_coset_matrix(const OperatorSpec& op, const InducedCharacter& chi);
// Normalized operator matrix for the model attached to params.
ScalarMatrix hecke_matrix(const std::string& op, const HeckeParams& params);

// Checks tr(M^k) = sum r_i^k for k = 1..n and prod (M - r_i) = 0.
bool eigenvalues_match(const ScalarMatrix& m, const std::vector<Scalar>& roots);

// Cell vector of the spherical vector (all ones) at level k.
std::vector<Scalar> spherical_vector(Parahoric k, long p);
// Sum over G(Z_p)/K of translates, as a multiple of the spherical vector.
Scalar trace_to_spherical(const std::vector<Scalar>& v, Parahoric k, long p);

// Klingen eigenvector for U2Kl (or UKl2p when transposed) with eigenvalue
// alpha*beta/p^{r2+1}, normalized as in the Whittaker model.
std::vector<Scalar> klingen_eigenvector(const HeckeParams& params, bool transposed = false);
// p^3 (1 - gamma/(p beta)) (1 - delta/(p alpha)) (1 - delta/(p beta))
Scalar klingen_trace_formula(const HeckeParams& params);
// Competing form with (1 - gamma/beta) in place of (1 - gamma/(p beta)).
Scalar klingen_trace_alternative(const HeckeParams& params);

struct DiscriminatorReport {
  Scalar enumerated;
  Scalar residual_main;         // enumerated - main formula
  Scalar residual_alternative;  // enumerated - alternative
  bool main_matches = false;
  bool alternative_matches = false;
};
DiscriminatorReport genestier_tilouine_discriminator(const HeckeParams& params);

// Tr(phi_1) = p^3 phi_sph and the Casselman-Shalika constant of phi_sph equals
// (1 - beta/(p alpha))(1 - gamma/(p beta))(1 - delta/(p alpha))(1 - delta/(p beta)).
bool phi1_trace_check(const HeckeParams& params);
// Product over positive coroots of (1 - p^{-1} chi(coroot(p))).
Scalar casselman_shalika_constant(const InducedCharacter& chi);

// D A = B^t D, with A = [Kl diag(p,p,1,1) Kl] on the model, B = <p>^{-1}
// [Kl diag(1,1,p,p) Kl] on the dual model and D the cell volumes.
bool serre_transpose_check(const HeckeParams& params);

struct IwahoriIdentityReport {
  ScalarMatrix lhs;  // Z' Phi
  ScalarMatrix rhs;  // p^{r2+1} U'_{Iw,2}
  bool holds = false;
  bool lhs_commutes = false;  // U'_{Iw,2} commutes with Z' and Phi
};
IwahoriIdentityReport iwahori_commutation_identity(const HeckeParams& params);

}  // namespace gsp4
