#pragma once

#include "hhtwist/homotopy.hpp"

namespace hht {

using Diagonal2 = CoreMap<1, 3>;
using Diagonal2Ptr = std::shared_ptr<const Diagonal2>;

/// Front/back splitting of bar words with unit middles.
DiagonalPtr diagonal_bar(const ComplexPtr& bar);
/// e(n) -> sum_w e(w) (x) e(n-w) on the dual-numbers Koszul resolution.
DiagonalPtr diagonal_koszul(const ComplexPtr& k);
/// e(i,l) -> sum q^{j(i+j-w)} e(w-j,j) (x) e(i+j-w,l-j) on the Koszul resolution of Lambda_q.
DiagonalPtr diagonal_qci(const ComplexPtr& tot);
/// sigma^-1 (Delta_P (x) Delta_Q) on a twisted total complex.
DiagonalPtr diagonal_twisted(const Sigma& s, const DiagonalPtr& dp, const DiagonalPtr& dq);
/// Closed-form diagonal on Tot of two normalized bar resolutions, splitting
/// both words with the twist correction for r's moved past s's.
DiagonalPtr diagonal_twisted_nbar(const ComplexPtr& tot);
/// (Delta (x) 1) Delta.
Diagonal2Ptr diagonal2(const DiagonalPtr& d);

/// Comparison map from the Koszul resolution of Lambda_q into its bar
/// resolution, tabulated through degree 3.
ChainMapPtr iota_qci(const ComplexPtr& tot, const ComplexPtr& bar);
/// Normalized bar of R (x)^t S -> Tot of the normalized bars of R and S.
ChainMapPtr aw_twisted(const ComplexPtr& nbar, const ComplexPtr& tot);
/// Tot of the normalized bars of R and S -> normalized bar of R (x)^t S.
ChainMapPtr ez_twisted(const ComplexPtr& tot, const ComplexPtr& nbar);
/// Word-by-word inclusion of the normalized bar resolution into the bar resolution.
ChainMapPtr bar_inclusion(const ComplexPtr& nbar, const ComplexPtr& bar);
/// g after f.
ChainMapPtr compose(const ChainMapPtr& g, const ChainMapPtr& f);

/// Chain map into K (x) K and counit compatibility in degree 0.
CheckReport check_diagonal(const FreeBimoduleComplex& k, const DiagonalMap& d, int max_degree);
CheckReport check_coassociative(const FreeBimoduleComplex& k, const DiagonalMap& d, int max_degree);
/// Delta_B iota = (iota (x) iota) Delta_K on generators of K through max_degree.
CheckReport check_condition_c(const FreeBimoduleComplex& k, const FreeBimoduleComplex& b, const ChainMap& iota,
                              const DiagonalMap& dk, const DiagonalMap& db, int max_degree);
/// f = identity on generators through max_degree.
CheckReport check_identity(const FreeBimoduleComplex& k, const ChainMap& f, int max_degree);
CheckReport check_diagonals_agree(const FreeBimoduleComplex& k, const DiagonalMap& a, const DiagonalMap& b, int max_degree);

/// (f (x) g) applied to a chain of K (x) K, both maps of degree 0.
Chain<2> tensor_apply(const GradedAlgebra& a, const ChainMap& f, const ChainMap& g, const Chain<2>& c);

}  // namespace hht
