#include "skewca/engine.hpp"

#include <ostream>

namespace skewca {

std::ostream& operator<<(std::ostream& os, const PeriodReport& r) {
  return os << "preperiod=" << r.preperiod << " period=" << r.period
            << " confirmed=" << (r.confirmed ? "true" : "false") << " horizon=" << r.horizon;
}

}  // namespace skewca
