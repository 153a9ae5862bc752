// Umbrella header.
#pragma once

#include "linsets/bounds.hpp"
#include "linsets/common.hpp"
#include "linsets/constructions.hpp"
#include "linsets/fields.hpp"
#include "linsets/fqlinalg.hpp"
#include "linsets/linset.hpp"
#include "linsets/oracle.hpp"
#include "linsets/polynomials.hpp"
#include "linsets/projgeo.hpp"
#include "linsets/traceforms.hpp"
