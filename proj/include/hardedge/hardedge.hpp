#ifndef HARDEDGE_HARDEDGE_HPP
#define HARDEDGE_HARDEDGE_HPP

#include "hardedge/asymptotics.hpp"
#include "hardedge/convergence.hpp"
#include "hardedge/errors.hpp"
#include "hardedge/fredholm.hpp"
#include "hardedge/kernel.hpp"
#include "hardedge/kernel_series.hpp"
#include "hardedge/params.hpp"
#include "hardedge/quadrature.hpp"
#include "hardedge/specfun.hpp"
#include "hardedge/verify.hpp"

#endif  // HARDEDGE_HARDEDGE_HPP
