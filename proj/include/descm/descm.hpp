#pragma once

#include "descm/de_transform.hpp"
#include "descm/discretization.hpp"
#include "descm/driver.hpp"
#include "descm/errors.hpp"
#include "descm/laurent_potential.hpp"
#include "descm/matrix.hpp"
#include "descm/potential_io.hpp"
#include "descm/random_potential.hpp"
#include "descm/reference_oracle.hpp"
#include "descm/sinc_basis.hpp"
#include "descm/symmetric_eigensolver.hpp"
