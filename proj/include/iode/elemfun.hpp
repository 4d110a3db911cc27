#ifndef IODE_ELEMFUN_HPP
#define IODE_ELEMFUN_HPP

#include "iode/grossnum.hpp"

namespace iode {

enum class ElemFun { Exp, Ln, Sin, Cos };

/// Elementary function applied to a grossnumber x = F + I with purely finite
/// part F and infinitesimal part I (no infinite part). The result is the
/// Taylor expansion about F truncated to K infinitesimal orders:
///   sum_{j=0..K} f^(j)(F)/j! * I^j, keeping only powers >= -K.
/// The finite coefficient equals f(F) under the active scalar backend.
/// Throws InfinitePartUnsupported when x has an infinite part and DomainError
/// outside the function domain (or in rational mode away from the points
/// where the value is rational).
GrossNumber lift(ElemFun f, const GrossNumber& x, int order_k, const ScalarContext& ctx);

} // namespace iode

#endif
