#pragma once
// Almost generalized Kahler pairs (J1, J_psi) with psi of symplectic type.

#include <optional>
#include <random>
#include <vector>

#include "gkcurv/gcs.hpp"

namespace gkcurv {

using SE = ScalarExpr;

// ---- evaluation at a point -----------------------------------------------------

Mat<GaussRat> eval_mat(const Mat<SE>& A, const Point& p);
GenVec<GaussRat> eval_vec(const GenVec<SE>& e, const Point& p);
BiVec<GaussRat> eval_bivec(const BiVec<SE>& b, const Point& p);
TriVec<GaussRat> eval_trivec(const TriVec<SE>& t, const Point& p);
/// The structure's spinor and annihilator frame at a point (J via the Gram route).
GCStruct<GaussRat> eval_gcs(const GCStruct<SE>& g, const Point& p);

/// Leading principal minors, all strictly positive (M real symmetric or Hermitian).
bool sylvester_positive(const Mat<GaussRat>& M);
/// Smallest eigenvalue of the Hermitian part, as a float diagnostic.
double min_eigenvalue(const Mat<GaussRat>& M);

// ---- pairs ---------------------------------------------------------------------

struct GKPair {
    GCStruct<SE> J1;
    GCStruct<SE> psi;  // symplectic type
    Mat<SE> ghat;      // -J1 J2

    ChartPtr chart() const { return J1.chart; }
    int n() const { return J1.n(); }
    /// G(a, b) = <Ghat a, b> as a matrix on the coordinate frame.
    Mat<SE> metric() const { return ghat.transpose() * pairing_matrix<SE>(J1.dim()); }
};

GKPair make_gk_pair(GCStruct<SE> J1, GCStruct<SE> psi);

struct CompatibilityReport {
    bool commute = false;     // [J1, J2] = 0 exactly
    bool involution = false;  // Ghat^2 = 1 exactly
    bool symmetric = false;   // G symmetric exactly
    bool positive = false;    // Sylvester minors > 0 at every point
    double min_eigenvalue = 0;
    int failing_point = -1;
    bool ok() const { return commute && involution && symmetric && positive; }
};

CompatibilityReport compatibility_check(const GKPair& pair, const std::vector<Point>& points);

/// Simultaneous eigenbundles at a point: E+ = E1 n E2, E- = E1 n conj(E2).
struct EpmFrame {
    std::vector<GenVec<GaussRat>> plus, minus;
};
EpmFrame epm_split(const GKPair& pair, const Point& p);

/// The same frames as symbolic fields.
struct EpmFields {
    std::vector<GenVec<SE>> plus, minus;
};
EpmFields epm_fields(const GKPair& pair);

// ---- type (0,0) ------------------------------------------------------------------

struct Type00Report {
    bool four_dim = false;
    bool b_w1 = false, b_w2 = false, w1_w2 = false;  // B^w1 = B^w2 = w1^w2 = 0
    bool bb_sum = false;                             // B^B = w1^2 + w2^2
    bool bb_nonzero = false;
    bool kernel_dims = false;  // dim ker(B + i(w1 -/+ w2)) = n at every point
    bool tame = false;         // w2 tames both complex structures
    int failing_point = -1;
    bool ok() const {
        bool algebra = !four_dim || (b_w1 && b_w2 && w1_w2 && bb_sum && bb_nonzero);
        return algebra && kernel_dims && tame;
    }
};
Type00Report type00_check(const Form<SE>& B, const Form<SE>& w1, const Form<SE>& w2, const std::vector<Point>& points);

// ---- Hamiltonian elements and dbar+ dbar- ------------------------------------------

/// e = J_psi(df); checks e.psi = i df ^ psi.
GenVec<SE> hamiltonian_element(const GKPair& pair, const SE& f);

struct DdbarResult {
    Mat<SE> mixed;        // W(i, j) on (E+_i, E-_j), first route
    Mat<SE> via_cochain;  // (i/2) d_L sigma_e on the same block, second route
    bool pure_blocks_vanish = false;
    BiVec<SE> element;    // sum W_ij dual(E+_i) ^ dual(E-_j) in conj(E+) ^ conj(E-)
};
DdbarResult ddbar_pm(const GKPair& pair, const SE& f);

// ---- trace pairing ------------------------------------------------------------------

/// [h, J] as a matrix, h acting by its adjoint.
template <class S>
Mat<S> jdot(const BiVec<S>& h, const Mat<S>& J) {
    Mat<S> A = ad_matrix(h);
    return A * J - J * A;
}

struct TracePairing {
    GaussRat trace;        // tr(J [h1,J] [h2,J])
    GaussRat spinor_side;  // -(i/2)(<h1 phi, conj(h2 phi)> - <h2 phi, conj(h1 phi)>) / <phi, conj phi>
};
/// Throws WrongBidegree unless both h lie in Lambda^2 E + Lambda^2 conj(E).
TracePairing trace_pairing(const GCStruct<GaussRat>& g, const BiVec<GaussRat>& h1, const BiVec<GaussRat>& h2);

/// Random real h = c + conj(c), c in Lambda^2 of the given frame.
BiVec<GaussRat> random_h(std::mt19937_64& rng, const std::vector<GenVec<GaussRat>>& frame);
/// Random real h in Lambda^2 E + Lambda^2 conj(E) commuting with J_psi: c in E+ ^ E-.
BiVec<GaussRat> random_compatible_h(std::mt19937_64& rng, const EpmFrame& f);

}  // namespace gkcurv
