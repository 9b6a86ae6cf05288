#include "flatflight/series.hpp"

namespace flatflight {

// Explicit instantiations for the two scalar fields used across the toolkit.
template class BasicTaylorSeries<double>;
template class BasicTaylorSeries<Dual>;

} // namespace flatflight
