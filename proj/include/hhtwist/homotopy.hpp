#pragma once

#include "hhtwist/complex.hpp"

namespace hht {

/// Maps K (x)_Lambda K -> K of homological degree 0 or +1, given on cores.
///
/// f_left collapses the left factor when it has degree 0, f_right the right
/// factor, and f_total = f_left - f_right.
HomotopyPtr f_left(const ComplexPtr& k);
HomotopyPtr f_right(const ComplexPtr& k);
HomotopyPtr f_total(const ComplexPtr& k);

/// Contracting homotopy of a bar or normalized bar resolution: the core
/// (w1, m, w2) goes to (-1)^{deg w1} [w1|m|w2]; normalized terms with a unit
/// middle vanish.
HomotopyPtr phi_bar(const ComplexPtr& bar);
/// phi(e_i (x) x^m e_j) = delta_{m,1} (-1)^i e_{i+j+1}.
HomotopyPtr phi_koszul_dual_numbers(const ComplexPtr& k);
/// Closed-form homotopy on the Koszul resolution of Lambda_q, where the
/// complex is the total complex of two dual-numbers Koszul resolutions.
HomotopyPtr phi_qci(const ComplexPtr& tot);

/// The isomorphism (P (x)^t Q) (x)_Lambda (P (x)^t Q) -> (P (x)_R P) (x)^t (Q (x)_S Q)
/// with its inverse. `tt` is the total complex of the two tensor squares.
struct Sigma {
    ComplexPtr k, pp, qq, tt;
    HomotopyPtr forward;
    DiagonalPtr inverse;
};

Sigma sigma(const ComplexPtr& tot);

/// Applies A (x) B to a chain of sigma.tt and converts into sigma.k, with
/// the sign (-1)^{deg a} on the generator (a, b) when `koszul_sign` is set.
Chain<1> apply_tensor_of_maps(const Sigma& s, const Homotopy& a, const Homotopy& b, const Chain<1>& c, bool koszul_sign);

/// (phi_P (x) F^l_Q + (-1)^{deg} F^r_P (x) phi_Q) sigma.
HomotopyPtr phi_twisted(const Sigma& s, const HomotopyPtr& phi_p, const HomotopyPtr& phi_q);

/// d phi + phi d = F on every core of (K (x) K)_n for n < max_degree.
CheckReport check_contracting_homotopy(const FreeBimoduleComplex& k, const Homotopy& phi, const Homotopy& f, int max_degree);
/// Chain property and two-sided inverse of sigma through max_degree.
CheckReport check_sigma(const Sigma& s, int max_degree);
/// (F^l_P (x) F^l_Q - F^r_P (x) F^r_Q) sigma = F on cores through max_degree.
CheckReport check_factorization(const Sigma& s, int max_degree);
/// Equality of two maps on every core of (K (x) K)_n for n <= max_degree.
CheckReport check_maps_agree(const FreeBimoduleComplex& k, const Homotopy& a, const Homotopy& b, int max_degree);

std::string core_str(const FreeBimoduleComplex& k, const Core<2>& c);

}  // namespace hht
