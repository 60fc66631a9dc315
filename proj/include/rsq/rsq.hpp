#pragma once

#include "rsq/arith.hpp"
#include "rsq/errors.hpp"
#include "rsq/genus.hpp"
#include "rsq/identities.hpp"
#include "rsq/localdensity.hpp"
#include "rsq/modforms.hpp"
#include "rsq/polynomial.hpp"
#include "rsq/qseries.hpp"
#include "rsq/quadform.hpp"
#include "rsq/rational.hpp"
#include "rsq/restricted.hpp"
#include "rsq/suites.hpp"
