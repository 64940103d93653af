#include "siegel/numeric_policy.hpp"

namespace siegel {

NumericPolicy& numeric_policy() {
    static NumericPolicy policy;
    return policy;
}

} // namespace siegel
