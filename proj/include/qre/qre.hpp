#pragma once

#include "qre/core/errors.hpp"
#include "qre/core/functions.hpp"
#include "qre/core/io.hpp"
#include "qre/core/jacobi.hpp"
#include "qre/core/matrix.hpp"
#include "qre/core/optimize.hpp"
#include "qre/core/random.hpp"
#include "qre/core/types.hpp"
#include "qre/entropy.hpp"
#include "qre/harness/catalogue.hpp"
#include "qre/harness/report.hpp"
#include "qre/harness/strictness.hpp"
#include "qre/legendre.hpp"
#include "qre/majorization.hpp"
#include "qre/means.hpp"
