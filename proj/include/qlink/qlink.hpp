#pragma once

// Umbrella header.

#include "qlink/constants.hpp"
#include "qlink/environments.hpp"
#include "qlink/errors.hpp"
#include "qlink/gravity.hpp"
#include "qlink/propagation.hpp"
#include "qlink/qstate.hpp"
#include "qlink/quadrature.hpp"
#include "qlink/refcases.hpp"
#include "qlink/report.hpp"
#include "qlink/scenario.hpp"
#include "qlink/teleport.hpp"
#include "qlink/units.hpp"
#include "qlink/xsec.hpp"
