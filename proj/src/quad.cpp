#include "qmp/quad.hpp"

namespace qmp::quad::detail {

boost::math::quadrature::tanh_sinh<double>& tanh_sinh_instance() {
  thread_local boost::math::quadrature::tanh_sinh<double> inst(15);
  return inst;
}

boost::math::quadrature::exp_sinh<double>& exp_sinh_instance() {
  thread_local boost::math::quadrature::exp_sinh<double> inst(12);
  return inst;
}

}  // namespace qmp::quad::detail
