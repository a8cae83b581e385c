#ifndef GOI_EXECUTION_HPP
#define GOI_EXECUTION_HPP

#include <vector>

#include "goi/dialect.hpp"
#include "goi/groupoid.hpp"
#include "goi/measurement.hpp"

namespace goi {

/// Partition of the combined carrier of a feedback problem into the part
/// that survives and the part that is cut.
struct InterfaceSplit {
  std::vector<Index> kept;
  std::vector<Index> cut;
};

/// sum_k (1 - c) u (v u)^k (1 - c) by exact path summation.
///
/// Throws NotNilpotentError when uv has a cycle and IndeterminateError when
/// the orbit budget runs out.
PartialInjectionOp ex_goi1(PartialInjectionOp const& u,
                           PartialInjectionOp const& v,
                           PartialInjectionOp const& cut_proj);

/// (p + p''v)(1 - uv)^{-1}(up + p'') restricted to split.kept, where u acts
/// on H + H', v on H' + H'' and H' = split.cut. Solved by elimination;
/// throws FeedbackSingularError when 1 - uv is singular.
DenseOperator feedback_dense(DenseOperator const& u, DenseOperator const& v,
                             InterfaceSplit const& split);

/// The same expression expanded as sum_{i<terms} (uv)^i; a test oracle.
DenseOperator feedback_series(DenseOperator const& u, DenseOperator const& v,
                              InterfaceSplit const& split, unsigned terms);

/// A (plug) B = (pA(dagger) + q)(1 - B(ddagger)A(dagger))^{-1}(p + B(ddagger)q)
/// on the symmetric difference of the carriers, dialect A (x) B.
///
/// Two tables are executed by path summation; otherwise the dense
/// feedback solution is used. Throws NotOrthogonalError when the product
/// has spectral radius >= 1 and IndeterminateError when the certificate
/// straddles 1.
DialectalOperator plug_dialectal(DialectalOperator const& a,
                                 DialectalOperator const& b);

/// |<<u, v + w>> - <<u, v>> - <<u plug v, w>>|: u acts on kept + cut, v on
/// cut and w on kept.
double adjunction_residual_hyp(DenseOperator const& u, DenseOperator const& v,
                               DenseOperator const& w,
                               InterfaceSplit const& split);

/// |[[F, G u H]] - rho(1_H)[[F, G]] - [[H, F plug G]]| for G, H of disjoint
/// carriers.
double adjunction_residual_mat(DialectalOperator const& f,
                               DialectalOperator const& g,
                               DialectalOperator const& h);

/// max |(a plug f) plug b - a plug (f plug b)| entrywise.
double associativity_residual(DialectalOperator const& a,
                              DialectalOperator const& f,
                              DialectalOperator const& b);
/// Exact equality of both evaluation orders (tables).
bool associativity_exact(DialectalOperator const& a, DialectalOperator const& f,
                         DialectalOperator const& b);

} // namespace goi

#endif
