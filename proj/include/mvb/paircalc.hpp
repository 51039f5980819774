#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mvb/duality.hpp"
#include "mvb/report.hpp"

namespace mvb {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using IntMat = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

// Exact rank by fraction-free elimination.
int exact_rank(const IntMat& m);

struct TrivDVB {
    int dA = 0, dB = 0, dC = 0;
    std::vector<int> dims() const { return {dA, dB, dC}; }
};

struct ElemD {
    Vec a, b, c;
};
// element of the dual over A: base point a, core covector beta on B, side covector gamma on C
struct DualAElem {
    Vec a, beta, gamma;
};
// element of the dual over B: core covector alpha on A, base point b, side covector gamma on C
struct DualBElem {
    Vec alpha, b, gamma;
};

ElemD add_A(const ElemD& d1, const ElemD& d2);
ElemD add_B(const ElemD& d1, const ElemD& d2);
ElemD scal_A(double t, const ElemD& d);
ElemD scal_B(double t, const ElemD& d);
ElemD core_embed_A(const Vec& a, const Vec& c, int dB);
VerificationReport exactness_check_A(const TrivDVB& D);

double eval_A(const DualAElem& phi, const ElemD& d);
double eval_B(const DualBElem& psi, const ElemD& d);
double pair_duals(const DualAElem& phi, const DualBElem& psi, const ElemD& d);
// the all-plus pairing of a C*-dual element (a, beta) of the dual over A with the dual over B
double pair_cstar(const DualAElem& x, const DualBElem& psi);
VerificationReport nondegeneracy_check(const TrivDVB& D);

DualAElem Z_A(const DualAElem& phi);
DualBElem Z_B(const DualBElem& psi);
Mat Z_A_matrix(const TrivDVB& D);  // acts on (a, beta)
Mat Z_B_matrix(const TrivDVB& D);  // acts on (alpha, b)

// Realized through three concrete dualizations; lands in the flip (b, a, c) layout.
ElemD Q_map(const ElemD& d);

// Two bundles sharing a side: (s, x, k) and (s, y, l) with y paired against
// the core k and l against the other side x.
struct PairingModel {
    std::string name;
    int dS = 0, dX = 0, dK = 0;
    std::function<double(const Vec& s, const Vec& x, const Vec& k, const Vec& y, const Vec& l)> value;
};
PairingModel pair_duals_model(const TrivDVB& D);
PairingModel tangent_pairing_model(int dM, int dV);
PairingModel eval_A_model(const TrivDVB& D);
PairingModel zero_pairing_model(int dS, int dX, int dK);
VerificationReport pairing_axioms_check(const PairingModel& p, int trials, std::uint64_t seed);

struct TangentElem {  // over E: base x, point v, tangent w
    Vec x, v, w;
};
struct TangentDualElem {  // over E*: base x, point phi, tangent psi
    Vec x, phi, psi;
};
double tangent_pairing(const TangentDualElem& X, const TangentElem& xi);
Vec internalize(const TangentDualElem& X);  // covector (mu_v, mu_w)
VerificationReport tangent_checks(int dM, int dV, int trials, std::uint64_t seed);

struct CotangentElem {  // T*E over the point v
    Vec v, omega, phi;
};
struct CotangentDualElem {  // T*(E*) over the point phiHat
    Vec phiHat, omegaHat, vHat;
};
CotangentElem reversal_R(const CotangentDualElem& F);
VerificationReport reversal_check(int dM, int dV, int trials, std::uint64_t seed);
VerificationReport antisymplectic_check(int dM, int dV);

// D1 = D, D2 = dual over A, D3 = dual over B, sharing A, B and C* pairwise
struct CorneringSystem {
    TrivDVB D;
    std::function<double(const DualAElem&, const ElemD&)> p12;
    std::function<double(const DualBElem&, const ElemD&)> p13;
    std::function<double(const DualAElem&, const DualBElem&)> p23;
};
CorneringSystem standard_cornering(const TrivDVB& D);
VerificationReport cornering_check(const CorneringSystem& sys, int trials, std::uint64_t seed);

struct DualMorphism {
    Mat sideCStar;  // C'* -> C*
    Mat core;       // B'* -> B*
    std::function<DualAElem(const DualAElem&)> apply;
};
// lambda[k] is the A x B matrix of the k-th component of the bilinear twist
DualMorphism dual_morphism(const Mat& phiB, const Mat& phiC, const std::vector<Mat>& lambda);
VerificationReport dual_morphism_check(const TrivDVB& D, int dB2, int dC2, int trials, std::uint64_t seed);

// Executes a word over {V, H} on concrete models; the rightmost letter acts first.
SignedRelabeling oracle_signed_relabeling(const Word& word, const TrivDVB& D = {2, 3, 2});
VerificationReport oracle_agreement_check(int maxLength);

VerificationReport interchange_check(const TrivDVB& D, int trials, std::uint64_t seed);
VerificationReport pair_duals_check(const TrivDVB& D, int trials, std::uint64_t seed);
VerificationReport z_maps_check(const TrivDVB& D, int trials, std::uint64_t seed);
VerificationReport q_map_check(const TrivDVB& D, int trials, std::uint64_t seed);

// every numeric check at the given dims
VerificationReport numeric_suite(const TrivDVB& D, int trials, std::uint64_t seed);

}  // namespace mvb
